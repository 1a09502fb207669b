//! The 14-dimensional algebra g2 ⊂ so(7): its standard basis, exact
//! structure constants and Killing form.

use std::fmt;
use std::ops::{Add, Index, Sub};

use crate::error::{Error, Result};
use crate::linalg::{express_in_basis, Matrix};
use crate::r7::{bracket_matrices, g2_membership, Matrix7};
use crate::scalar::{FieldElement, Rational};

pub const G2_DIM: usize = 14;

/// `Σ c_k b_k` as `(k, c_k)` pairs.
pub type RealTerms = Vec<(usize, Rational)>;

/// Coefficients over a 14-element basis (the real `b`-basis, or the
/// complexified `H, E, Ē` basis when used by the root-system layer).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AlgebraElement {
    coeffs: Vec<FieldElement>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self {
            coeffs: vec![FieldElement::zero(); G2_DIM],
        }
    }

    /// The `k`-th basis element, 1-based.
    pub fn basis(k: usize) -> Self {
        let mut e = Self::zero();
        e.coeffs[k - 1] = FieldElement::one();
        e
    }

    pub fn from_coeffs(coeffs: Vec<FieldElement>) -> Self {
        assert_eq!(coeffs.len(), G2_DIM, "algebra elements have 14 coefficients");
        Self { coeffs }
    }

    /// Builds `Σ c·b_k` from `(c, k)` pairs with 1-based `k`.
    pub fn from_terms(terms: impl IntoIterator<Item = (FieldElement, usize)>) -> Self {
        let mut e = Self::zero();
        for (c, k) in terms {
            e.coeffs[k - 1] += &c;
        }
        e
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// 1-based coefficient.
    pub fn coeff(&self, k: usize) -> &FieldElement {
        &self.coeffs[k - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_real)
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn conjugate(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(FieldElement::conjugate).collect(),
        }
    }

    /// Nonzero `(k, coefficient)` pairs, 1-based, ascending.
    pub fn support(&self) -> impl Iterator<Item = (usize, &FieldElement)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k + 1, c))
    }
}

impl Index<usize> for AlgebraElement {
    type Output = FieldElement;
    fn index(&self, k: usize) -> &FieldElement {
        self.coeff(k)
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, o: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, o: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("AlgebraElement(")?;
        let mut first = true;
        for (k, c) in self.support() {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "({c})b{k}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(")")
    }
}

/// Each `b_k` as a sum of `sign·E_{ij}`.
const BASIS_SPEC: [[(i8, usize, usize); 2]; G2_DIM] = [
    [(1, 1, 2), (-1, 6, 7)],
    [(1, 1, 3), (1, 4, 6)],
    [(1, 1, 7), (-1, 2, 6)],
    [(1, 2, 3), (-1, 4, 7)],
    [(1, 2, 4), (1, 1, 5)],
    [(1, 2, 5), (-1, 1, 4)],
    [(1, 2, 7), (1, 1, 6)],
    [(1, 3, 4), (1, 1, 6)],
    [(1, 3, 5), (1, 2, 6)],
    [(1, 3, 6), (-1, 1, 4)],
    [(1, 3, 7), (-1, 1, 5)],
    [(1, 4, 5), (1, 6, 7)],
    [(1, 5, 6), (1, 4, 7)],
    [(1, 5, 7), (-1, 4, 6)],
];

/// The ordered basis `b_1 … b_14` of g2 as 7×7 matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G2Basis {
    elements: Vec<Matrix7>,
    /// 49×14 matrix whose columns are the flattened basis matrices.
    columns: Matrix,
}

impl G2Basis {
    pub fn new(elements: Vec<Matrix7>) -> Self {
        assert_eq!(elements.len(), G2_DIM);
        let flat: Vec<Vec<FieldElement>> = elements.iter().map(Matrix7::flatten).collect();
        let columns = Matrix::from_columns(&flat);
        Self { elements, columns }
    }

    pub fn elements(&self) -> &[Matrix7] {
        &self.elements
    }

    /// `b_k`, 1-based.
    pub fn get(&self, k: usize) -> &Matrix7 {
        &self.elements[k - 1]
    }

    pub fn is_independent(&self) -> bool {
        self.columns.rank() == G2_DIM
    }

    /// Coordinates of a matrix in this basis.
    pub fn expand(&self, x: &Matrix7) -> Result<AlgebraElement> {
        express_in_basis(&self.columns, &x.flatten())
            .map(AlgebraElement::from_coeffs)
            .map_err(|e| match e {
                Error::NotInSpan(_) => Error::NotInSpan("matrix outside the span of b1..b14".into()),
                other => other,
            })
    }

    pub fn to_matrix(&self, x: &AlgebraElement) -> Matrix7 {
        let mut m = Matrix7::zero();
        for (k, c) in x.support() {
            m = m.add(&self.get(k).scale(c));
        }
        m
    }
}

/// The fourteen matrices `b_1 … b_14`.
pub fn build_g2_basis() -> G2Basis {
    let elements = BASIS_SPEC
        .iter()
        .map(|terms| {
            terms.iter().fold(Matrix7::zero(), |acc, &(s, i, j)| {
                let e = Matrix7::e(i, j);
                if s > 0 {
                    acc.add(&e)
                } else {
                    acc.sub(&e)
                }
            })
        })
        .collect();
    G2Basis::new(elements)
}

/// Exact structure constants `[b_i, b_j] = Σ_k c_{ij}^k b_k`, with the
/// adjoint matrices cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTable {
    dense: Vec<Vec<AlgebraElement>>,
    ad: Vec<Matrix>,
}

impl BracketTable {
    /// Builds the table from the brackets of all pairs `i < j` (1-based);
    /// missing pairs are zero.
    pub fn from_upper(mut upper: impl FnMut(usize, usize) -> Result<AlgebraElement>) -> Result<Self> {
        let mut dense = vec![vec![AlgebraElement::zero(); G2_DIM]; G2_DIM];
        for i in 1..=G2_DIM {
            for j in i + 1..=G2_DIM {
                let v = upper(i, j)?;
                dense[j - 1][i - 1] = v.scale(&FieldElement::from_int(-1));
                dense[i - 1][j - 1] = v;
            }
        }
        let ad = (0..G2_DIM)
            .map(|i| {
                let cols: Vec<Vec<FieldElement>> = dense[i].iter().map(|e| e.coeffs().to_vec()).collect();
                Matrix::from_columns(&cols)
            })
            .collect();
        Ok(Self { dense, ad })
    }

    /// `[b_i, b_j]`, 1-based.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.dense[i - 1][j - 1]
    }

    /// The constant `c_{ij}^k` (1-based); real tables have rational entries.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &FieldElement {
        self.bracket_basis(i, j).coeff(k)
    }

    /// Nonzero relations for `i < j` in lexicographic order, with rational
    /// coefficients; panics if a constant is irrational.
    pub fn relations(&self) -> Vec<((usize, usize), RealTerms)> {
        let mut out = Vec::new();
        for i in 1..=G2_DIM {
            for j in i + 1..=G2_DIM {
                let v = self.bracket_basis(i, j);
                if v.is_zero() {
                    continue;
                }
                let terms = v
                    .support()
                    .map(|(k, c)| (k, c.as_rational().expect("rational structure constant").clone()))
                    .collect();
                out.push(((i, j), terms));
            }
        }
        out
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = vec![FieldElement::zero(); G2_DIM];
        for (i, xi) in x.support() {
            for (j, yj) in y.support() {
                let c = xi * yj;
                for (k, v) in self.bracket_basis(i, j).support() {
                    out[k - 1] += &(&c * v);
                }
            }
        }
        AlgebraElement::from_coeffs(out)
    }

    /// `ad_X` acting on coefficient columns.
    pub fn ad(&self, x: &AlgebraElement) -> Matrix {
        let mut m = Matrix::zeros(G2_DIM, G2_DIM);
        for (i, xi) in x.support() {
            m = m.add(&self.ad[i - 1].scale(xi));
        }
        m
    }

    /// `ad_{b_k}`, 1-based.
    pub fn ad_basis(&self, k: usize) -> &Matrix {
        &self.ad[k - 1]
    }

    /// `K(X, Y) = tr(ad_X ∘ ad_Y)`.
    pub fn killing_form(&self, x: &AlgebraElement, y: &AlgebraElement) -> FieldElement {
        trace_of_product(&self.ad(x), &self.ad(y))
    }

    /// Gram matrix `K(b_i, b_j)`.
    pub fn killing_matrix(&self) -> Matrix {
        let mut k = Matrix::zeros(G2_DIM, G2_DIM);
        for i in 0..G2_DIM {
            for j in i..G2_DIM {
                let v = trace_of_product(&self.ad[i], &self.ad[j]);
                k[(j, i)] = v.clone();
                k[(i, j)] = v;
            }
        }
        k
    }

    /// Triples `i < j < k` where the cyclic Jacobi sum is nonzero.
    pub fn jacobi_failures(&self) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for i in 1..=G2_DIM {
            for j in i + 1..=G2_DIM {
                for k in j + 1..=G2_DIM {
                    let (bi, bj, bk) = (AlgebraElement::basis(i), AlgebraElement::basis(j), AlgebraElement::basis(k));
                    let s = &(&self.bracket(self.bracket_basis(i, j), &bk)
                        + &self.bracket(self.bracket_basis(j, k), &bi))
                        + &self.bracket(self.bracket_basis(k, i), &bj);
                    if !s.is_zero() {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }
}

fn trace_of_product(a: &Matrix, b: &Matrix) -> FieldElement {
    let n = a.rows();
    let mut t = FieldElement::zero();
    for p in 0..n {
        for q in 0..n {
            let x = &a[(p, q)];
            if x.is_zero() {
                continue;
            }
            let y = &b[(q, p)];
            if !y.is_zero() {
                t += &(x * y);
            }
        }
    }
    t
}

/// Expands every matrix commutator `[b_i, b_j]` in the basis.
pub fn structure_constants(basis: &G2Basis) -> Result<BracketTable> {
    BracketTable::from_upper(|i, j| basis.expand(&bracket_matrices(basis.get(i), basis.get(j))))
}

/// Pairs `(i, j)`, `i < j`, whose matrix bracket leaves g2.
pub fn closure_failures(basis: &G2Basis) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for i in 1..=G2_DIM {
        for j in i + 1..=G2_DIM {
            if !g2_membership(&bracket_matrices(basis.get(i), basis.get(j))) {
                bad.push((i, j));
            }
        }
    }
    bad
}
