//! Forms and linear maps on R^7: the defining 3-form φ, its interior
//! products, the seven-dimensional cross product and the linear conditions
//! cutting g2 out of so(7).
//!
//! Indices are 1-based throughout (`e_1 … e_7`, `E_{ij}`).

use std::collections::BTreeMap;
use std::ops::{Add, Index, Sub};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::FieldElement;

pub const DIM: usize = 7;

/// Sorts `idx` in place; returns the permutation sign, or `None` on a repeat.
pub fn sort_with_sign<T: Ord>(idx: &mut [T]) -> Option<i8> {
    let mut sign = 1i8;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector7(pub [FieldElement; DIM]);

impl Vector7 {
    pub fn zero() -> Self {
        Self(std::array::from_fn(|_| FieldElement::zero()))
    }

    /// Standard basis vector `e_i`, 1-based.
    pub fn e(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i - 1] = FieldElement::one();
        v
    }

    pub fn from_ints(xs: [i64; DIM]) -> Self {
        Self(xs.map(FieldElement::from_int))
    }

    pub fn dot(&self, o: &Vector7) -> FieldElement {
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> FieldElement {
        self.dot(self)
    }

    pub fn scale(&self, s: &FieldElement) -> Vector7 {
        Vector7(std::array::from_fn(|k| &self.0[k] * s))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FieldElement::is_zero)
    }
}

impl Add for &Vector7 {
    type Output = Vector7;
    fn add(self, o: &Vector7) -> Vector7 {
        Vector7(std::array::from_fn(|k| &self.0[k] + &o.0[k]))
    }
}

impl Sub for &Vector7 {
    type Output = Vector7;
    fn sub(self, o: &Vector7) -> Vector7 {
        Vector7(std::array::from_fn(|k| &self.0[k] - &o.0[k]))
    }
}

/// A k-form on R^7 stored over strictly increasing 1-based index tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormR7 {
    degree: usize,
    terms: BTreeMap<Vec<u8>, FieldElement>,
}

impl FormR7 {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The monomial `c·e^{i1}∧…∧e^{ik}`; indices need not be sorted.
    pub fn monomial(indices: &[u8], c: FieldElement) -> Self {
        let mut f = Self::zero(indices.len());
        f.add_term(indices, c);
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &FieldElement)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·e^{indices}` after normalizing the index order.
    pub fn add_term(&mut self, indices: &[u8], c: FieldElement) {
        assert_eq!(indices.len(), self.degree, "degree mismatch");
        assert!(indices.iter().all(|&i| (1..=DIM as u8).contains(&i)));
        let mut key = indices.to_vec();
        let Some(sign) = sort_with_sign(&mut key) else {
            return;
        };
        let c = if sign < 0 { -c } else { c };
        let entry = self.terms.entry(key.clone()).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Coefficient at an index tuple in any order, with the permutation sign.
    pub fn coeff(&self, indices: &[u8]) -> FieldElement {
        let mut key = indices.to_vec();
        match sort_with_sign(&mut key) {
            None => FieldElement::zero(),
            Some(s) => {
                let c = self.terms.get(&key).cloned().unwrap_or_default();
                if s < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn add(&self, o: &FormR7) -> FormR7 {
        assert_eq!(self.degree, o.degree);
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k, v.clone());
        }
        out
    }

    pub fn scale(&self, s: &FieldElement) -> FormR7 {
        let mut out = FormR7::zero(self.degree);
        for (k, v) in &self.terms {
            out.add_term(k, v * s);
        }
        out
    }

    /// Evaluates the form on `vectors.len() == degree` vectors.
    pub fn evaluate(&self, vectors: &[Vector7]) -> FieldElement {
        assert_eq!(vectors.len(), self.degree);
        let mut total = FieldElement::zero();
        for (idx, c) in &self.terms {
            let minor = Matrix::from_rows(
                vectors
                    .iter()
                    .map(|v| idx.iter().map(|&i| v.0[i as usize - 1].clone()).collect())
                    .collect(),
            );
            total += &(c * &minor.determinant());
        }
        total
    }
}

/// `α ∧ β` with permutation-sign bookkeeping.
pub fn wedge_r7(alpha: &FormR7, beta: &FormR7) -> Result<FormR7> {
    let deg = alpha.degree + beta.degree;
    if deg > DIM {
        return Err(Error::DegreeOverflow(deg));
    }
    let mut out = FormR7::zero(deg);
    for (ka, ca) in &alpha.terms {
        for (kb, cb) in &beta.terms {
            if ka.iter().any(|i| kb.contains(i)) {
                continue;
            }
            let idx: Vec<u8> = ka.iter().chain(kb).copied().collect();
            out.add_term(&idx, ca * cb);
        }
    }
    Ok(out)
}

/// `ι_u α = α(u, ·, …, ·)`.
pub fn interior_product(u: &Vector7, alpha: &FormR7) -> Result<FormR7> {
    if alpha.degree == 0 {
        return Err(Error::DegreeZero);
    }
    let mut out = FormR7::zero(alpha.degree - 1);
    for (idx, c) in &alpha.terms {
        for (pos, &i) in idx.iter().enumerate() {
            let ui = &u.0[i as usize - 1];
            if ui.is_zero() {
                continue;
            }
            let rest: Vec<u8> = idx.iter().enumerate().filter(|&(p, _)| p != pos).map(|(_, &k)| k).collect();
            let term = c * ui;
            out.add_term(&rest, if pos % 2 == 0 { term } else { -term });
        }
    }
    Ok(out)
}

/// The defining 3-form `e^{147}+e^{257}+e^{367}+e^{123}−e^{156}+e^{246}−e^{345}`.
pub fn build_phi() -> FormR7 {
    const TERMS: [([u8; 3], i64); 7] = [
        ([1, 4, 7], 1),
        ([2, 5, 7], 1),
        ([3, 6, 7], 1),
        ([1, 2, 3], 1),
        ([1, 5, 6], -1),
        ([2, 4, 6], 1),
        ([3, 4, 5], -1),
    ];
    let mut phi = FormR7::zero(3);
    for (idx, c) in TERMS {
        phi.add_term(&idx, FieldElement::from_int(c));
    }
    phi
}

/// The volume form `μ0 = e^1 ∧ … ∧ e^7`.
pub fn volume_form() -> FormR7 {
    FormR7::monomial(&[1, 2, 3, 4, 5, 6, 7], FieldElement::one())
}

/// The scalar `s` with `ι_uφ ∧ ι_vφ ∧ φ = s·μ0`.
pub fn phi_contraction_scalar(u: &Vector7, v: &Vector7) -> FieldElement {
    let phi = build_phi();
    let iu = interior_product(u, &phi).expect("phi has degree 3");
    let iv = interior_product(v, &phi).expect("phi has degree 3");
    let top = wedge_r7(&wedge_r7(&iu, &iv).expect("degree 4"), &phi).expect("degree 7");
    top.coeff(&[1, 2, 3, 4, 5, 6, 7])
}

/// The cross product, `⟨u×v, w⟩ = φ(u, v, w)`.
pub fn cross(u: &Vector7, v: &Vector7) -> Vector7 {
    let phi = build_phi();
    let uv = interior_product(v, &interior_product(u, &phi).expect("deg 3")).expect("deg 2");
    // uv = φ(u, v, ·) as a 1-form; its coefficients are the components.
    Vector7(std::array::from_fn(|k| uv.coeff(&[k as u8 + 1])))
}

/// A 7×7 matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix7(Matrix);

impl Matrix7 {
    pub fn zero() -> Self {
        Self(Matrix::zeros(DIM, DIM))
    }

    pub fn from_matrix(m: Matrix) -> Self {
        assert_eq!((m.rows(), m.cols()), (DIM, DIM));
        Self(m)
    }

    /// `E_{ij}`: +1 at (i, j), −1 at (j, i); 1-based.
    pub fn e(i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(DIM, DIM);
        m[(i - 1, j - 1)] = FieldElement::one();
        m[(j - 1, i - 1)] = FieldElement::from_int(-1);
        Self(m)
    }

    /// Only the (i, j) entry set to 1, no skew partner.
    pub fn unit(i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(DIM, DIM);
        m[(i - 1, j - 1)] = FieldElement::one();
        Self(m)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    /// 1-based entry access.
    pub fn at(&self, i: usize, j: usize) -> &FieldElement {
        &self.0[(i - 1, j - 1)]
    }

    pub fn add(&self, o: &Matrix7) -> Matrix7 {
        Self(self.0.add(&o.0))
    }

    pub fn sub(&self, o: &Matrix7) -> Matrix7 {
        Self(self.0.sub(&o.0))
    }

    pub fn scale(&self, s: &FieldElement) -> Matrix7 {
        Self(self.0.scale(s))
    }

    pub fn apply(&self, v: &Vector7) -> Vector7 {
        let out = self.0.mul_vec(&v.0);
        Vector7(std::array::from_fn(|k| out[k].clone()))
    }

    pub fn is_skew(&self) -> bool {
        self.0.add(&self.0.transpose()).is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Entries flattened row-major, for expansion against a basis.
    pub fn flatten(&self) -> Vec<FieldElement> {
        (0..DIM).flat_map(|i| self.0.row(i).to_vec()).collect()
    }
}

impl Index<(usize, usize)> for Matrix7 {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        self.at(i, j)
    }
}

/// Matrix commutator `XY − YX`.
pub fn bracket_matrices(x: &Matrix7, y: &Matrix7) -> Matrix7 {
    Matrix7((&x.0 * &y.0).sub(&(&y.0 * &x.0)))
}

/// `X_lhs = Σ sign·X_{ij}` as `(lhs, [(sign, i, j); 2])`.
pub type G2Constraint = ((usize, usize), [(i8, usize, usize); 2]);

/// The seven linear relations on `X_{ij}` that, together with
/// skew-symmetry, define g2. Each entry is `(lhs, [(sign, i, j), …])`
/// meaning `X_lhs = Σ sign·X_{ij}`.
pub const G2_CONSTRAINTS: [G2Constraint; 7] = [
    ((7, 6), [(1, 5, 4), (1, 1, 2)]),
    ((6, 1), [(1, 7, 2), (-1, 3, 4)]),
    ((6, 2), [(1, 5, 3), (1, 1, 7)]),
    ((1, 4), [(1, 6, 3), (1, 5, 2)]),
    ((5, 1), [(1, 4, 2), (1, 3, 7)]),
    ((6, 4), [(1, 3, 1), (-1, 7, 5)]),
    ((7, 4), [(1, 2, 3), (-1, 5, 6)]),
];

fn constraint_residual(x: &Matrix7, c: &G2Constraint) -> FieldElement {
    let ((li, lj), rhs) = c;
    let mut r = x.at(*li, *lj).clone();
    for &(s, i, j) in rhs {
        let v = x.at(i, j);
        r = if s > 0 { r - v } else { r + v };
    }
    r
}

/// Skew-symmetric and satisfying the seven g2 relations.
pub fn g2_membership(x: &Matrix7) -> bool {
    x.is_skew() && G2_CONSTRAINTS.iter().all(|c| constraint_residual(x, c).is_zero())
}

/// The 7×21 coefficient matrix of the g2 relations in the skew
/// parameters `X_{ij}`, `i < j` (lexicographic column order).
pub fn constraint_system() -> Matrix {
    let pairs: Vec<(usize, usize)> = (1..=DIM).flat_map(|i| (i + 1..=DIM).map(move |j| (i, j))).collect();
    let rows = G2_CONSTRAINTS
        .iter()
        .map(|c| {
            pairs
                .iter()
                .map(|&(i, j)| constraint_residual(&Matrix7::e(i, j), c))
                .collect()
        })
        .collect();
    Matrix::from_rows(rows)
}

/// The derivative of `exp(tX)^*φ` at t = 0:
/// `(u, v, w) ↦ φ(Xu, v, w) + φ(u, Xv, w) + φ(u, v, Xw)`.
pub fn phi_derivative(x: &Matrix7) -> FormR7 {
    let phi = build_phi();
    let mut out = FormR7::zero(3);
    for i in 1..=DIM as u8 {
        for j in i + 1..=DIM as u8 {
            for k in j + 1..=DIM as u8 {
                let idx = [i, j, k];
                let mut c = FieldElement::zero();
                for slot in 0..3 {
                    let col = idx[slot] as usize;
                    for m in 1..=DIM {
                        let xm = x.at(m, col);
                        if xm.is_zero() {
                            continue;
                        }
                        let mut t = idx;
                        t[slot] = m as u8;
                        c += &(xm * &phi.coeff(&t));
                    }
                }
                out.add_term(&idx, c);
            }
        }
    }
    out
}

/// Membership through the linearized invariance of φ, with no
/// skew-symmetry assumed.
pub fn g2_membership_linearized(x: &Matrix7) -> bool {
    phi_derivative(x).is_empty()
}

/// The 35×49 system `d/dt exp(tX)^*φ = 0` in the entries of a general X
/// (column `7(i−1)+(j−1)` holds `X_{ij}`).
pub fn linearized_system() -> Matrix {
    let triples: Vec<[u8; 3]> = (1..=7u8)
        .flat_map(|i| (i + 1..=7).flat_map(move |j| (j + 1..=7).map(move |k| [i, j, k])))
        .collect();
    let mut m = Matrix::zeros(triples.len(), DIM * DIM);
    for i in 1..=DIM {
        for j in 1..=DIM {
            let d = phi_derivative(&Matrix7::unit(i, j));
            for (r, t) in triples.iter().enumerate() {
                m[(r, (i - 1) * DIM + (j - 1))] = d.coeff(t);
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn phi_coefficients() {
        let phi = build_phi();
        assert_eq!(phi.len(), 7);
        assert_eq!(phi.coeff(&[1, 4, 7]), fe(1));
        assert_eq!(phi.coeff(&[1, 5, 6]), fe(-1));
        assert_eq!(phi.coeff(&[1, 2, 4]), fe(0));
        assert_eq!(phi.coeff(&[7, 4, 1]), fe(-1));
    }

    #[test]
    fn wedge_examples() {
        let e12 = FormR7::monomial(&[1, 2], FieldElement::one());
        let e3 = FormR7::monomial(&[3], FieldElement::one());
        assert_eq!(wedge_r7(&e12, &e3).unwrap().coeff(&[1, 2, 3]), fe(1));
        let e1 = FormR7::monomial(&[1], FieldElement::one());
        assert!(wedge_r7(&e1, &e1).unwrap().is_empty());
        let big = FormR7::monomial(&[1, 2, 3, 4], FieldElement::one());
        assert_eq!(wedge_r7(&big, &big), Err(Error::DegreeOverflow(8)));
    }

    #[test]
    fn interior_products_of_phi() {
        let phi = build_phi();
        let i2 = interior_product(&Vector7::e(2), &phi).unwrap();
        let mut expect = FormR7::zero(2);
        expect.add_term(&[5, 7], fe(1));
        expect.add_term(&[1, 3], fe(-1));
        expect.add_term(&[4, 6], fe(1));
        assert_eq!(i2, expect);

        let i5 = interior_product(&Vector7::e(5), &phi).unwrap();
        let mut expect5 = FormR7::zero(2);
        expect5.add_term(&[2, 7], fe(-1));
        expect5.add_term(&[1, 6], fe(1));
        expect5.add_term(&[3, 4], fe(-1));
        assert_eq!(i5, expect5);

        // e^{5716} − e^{5734} + e^{1327} − e^{4627}, as printed.
        let mut prod = FormR7::zero(4);
        prod.add_term(&[5, 7, 1, 6], fe(1));
        prod.add_term(&[5, 7, 3, 4], fe(-1));
        prod.add_term(&[1, 3, 2, 7], fe(1));
        prod.add_term(&[4, 6, 2, 7], fe(-1));
        assert_eq!(wedge_r7(&i2, &i5).unwrap(), prod);

        let u = &Vector7::e(1) + &Vector7::e(2);
        let iu = interior_product(&u, &phi).unwrap();
        assert!(interior_product(&u, &iu).unwrap().is_empty());
        assert_eq!(interior_product(&u, &FormR7::zero(0)), Err(Error::DegreeZero));
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(phi_contraction_scalar(&Vector7::e(1), &Vector7::e(1)), fe(-6));
        assert_eq!(phi_contraction_scalar(&Vector7::e(2), &Vector7::e(5)), fe(0));
        let u = &Vector7::e(1) + &Vector7::e(2);
        assert_eq!(phi_contraction_scalar(&u, &Vector7::e(1)), fe(-6));
    }

    #[test]
    fn cross_examples() {
        assert_eq!(cross(&Vector7::e(1), &Vector7::e(4)), Vector7::e(7));
        assert_eq!(cross(&Vector7::e(1), &Vector7::e(5)), Vector7::e(6).scale(&fe(-1)));
        let u = Vector7::from_ints([1, -2, 0, 3, 1, 0, 5]);
        assert!(cross(&u, &u).is_zero());
        // agrees with evaluating φ directly
        let v = Vector7::from_ints([0, 1, 1, -1, 2, 0, 0]);
        let w = Vector7::from_ints([2, 0, -1, 0, 0, 3, 1]);
        assert_eq!(cross(&u, &v).dot(&w), build_phi().evaluate(&[u, v, w]));
    }

    #[test]
    fn membership_examples() {
        let b1 = Matrix7::e(1, 2).sub(&Matrix7::e(6, 7));
        assert!(g2_membership(&b1));
        assert!(!g2_membership(&Matrix7::e(1, 2)));
        assert!(g2_membership(&Matrix7::zero()));
        assert!(g2_membership_linearized(&b1));
        assert!(!g2_membership_linearized(&Matrix7::e(1, 2)));
        // non-skew diagonal is rejected by the linearized test too
        assert!(!g2_membership_linearized(&Matrix7::unit(3, 3)));
    }

    #[test]
    fn constraint_ranks() {
        assert_eq!(constraint_system().rank(), 7);
        let lin = linearized_system();
        assert_eq!(lin.rank(), 35);
        assert_eq!(lin.nullspace().len(), 14);
    }
}
