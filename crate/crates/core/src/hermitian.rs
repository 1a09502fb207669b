//! The seven-parameter family of `J`-Hermitian inner products, diagonal in
//! the complex basis, and its components on the real basis.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::g2::{AlgebraElement, BracketTable, G2_DIM};
use crate::lambda::{LambdaLinear, N_LAMBDA};
use crate::linalg::Matrix;
use crate::roots::{ChangeOfBasis, Label};
use crate::samelson::ComplexStructure;
use crate::scalar::{FieldElement, Rational, Sign};

/// Positive parameters `λ0 … λ6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricParams7 {
    lambda: [Rational; N_LAMBDA],
}

impl MetricParams7 {
    pub fn new(lambda: [Rational; N_LAMBDA]) -> Result<Self> {
        if let Some((index, value)) = lambda.iter().enumerate().find(|(_, l)| !l.is_positive()) {
            return Err(Error::NonPositive {
                index,
                value: value.to_string(),
            });
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> &[Rational; N_LAMBDA] {
        &self.lambda
    }

    pub fn as_field(&self) -> [FieldElement; N_LAMBDA] {
        std::array::from_fn(|k| FieldElement::from_rational(self.lambda[k].clone()))
    }
}

/// Which `λ` weights the diagonal entry of a complex-basis label.
pub fn lambda_index(label: Label) -> usize {
    match label {
        Label::H(_) => 0,
        Label::E(j) | Label::Ebar(j) => j as usize,
    }
}

/// A 14×14 array of `λ`-linear entries on the real basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMetric {
    entries: Vec<Vec<LambdaLinear>>,
}

impl SymbolicMetric {
    pub fn from_entries(entries: Vec<Vec<LambdaLinear>>) -> Self {
        assert_eq!(entries.len(), G2_DIM);
        assert!(entries.iter().all(|r| r.len() == G2_DIM));
        Self { entries }
    }

    /// Entry `(b_p, b_q)`, 1-based.
    pub fn entry(&self, p: usize, q: usize) -> &LambdaLinear {
        &self.entries[p - 1][q - 1]
    }

    /// Nonzero entries with `p ≤ q`, row-major.
    pub fn nonzero_upper(&self) -> Vec<((usize, usize), LambdaLinear)> {
        let mut out = Vec::new();
        for p in 1..=G2_DIM {
            for q in p..=G2_DIM {
                let e = self.entry(p, q);
                if !e.is_zero() {
                    out.push(((p, q), e.clone()));
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (1..=G2_DIM).all(|p| (1..=G2_DIM).all(|q| self.entry(p, q) == self.entry(q, p)))
    }

    pub fn is_real(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|e| e.coeffs().iter().all(FieldElement::is_real))
    }

    pub fn evaluate(&self, lambda: &[FieldElement; N_LAMBDA]) -> MetricMatrix {
        MetricMatrix::from_matrix(Matrix::from_rows(
            self.entries
                .iter()
                .map(|r| r.iter().map(|e| e.evaluate(lambda)).collect())
                .collect(),
        ))
    }

    pub fn substitute(&self, images: &[LambdaLinear; N_LAMBDA]) -> SymbolicMetric {
        SymbolicMetric::from_entries(
            self.entries
                .iter()
                .map(|r| r.iter().map(|e| e.substitute(images)).collect())
                .collect(),
        )
    }

    /// `Mᵀ S N` with scalar matrices on either side.
    fn sandwich(&self, left_t: &Matrix, right: &Matrix) -> Vec<Vec<LambdaLinear>> {
        let n = G2_DIM;
        let mut out = vec![vec![LambdaLinear::zero(); n]; n];
        for p in 0..n {
            for q in 0..n {
                let mut acc = LambdaLinear::zero();
                for r in 0..n {
                    let a = &left_t[(r, p)];
                    if a.is_zero() {
                        continue;
                    }
                    for s in 0..n {
                        let b = &right[(s, q)];
                        if b.is_zero() || self.entries[r][s].is_zero() {
                            continue;
                        }
                        acc = acc.add(&self.entries[r][s].scale(&(a * b)));
                    }
                }
                out[p][q] = acc;
            }
        }
        out
    }

    /// `Jᵀ g J = g` identically in `λ`.
    pub fn j_compatible(&self, j: &ComplexStructure) -> bool {
        self.sandwich(j.matrix(), j.matrix()) == self.entries
    }

    /// `ad_Hᵀ g + g ad_H = 0` for `H ∈ {b1, b12}`, identically in `λ`.
    pub fn torus_invariant(&self, table: &BracketTable) -> bool {
        let id = Matrix::identity(G2_DIM);
        [1, 12].iter().all(|&h| {
            let ad = table.ad_basis(h);
            let a = self.sandwich(ad, &id);
            let b = self.sandwich(&id, ad);
            a.iter().flatten().zip(b.iter().flatten()).all(|(x, y)| x.add(y).is_zero())
        })
    }
}

/// `ĝ(b_p, b_q) = Σ_l conj(x_p^l)·x_q^l·λ(l)`, where `x_p` are the
/// coordinates of `b_p` in the complex basis.
pub fn hermitian_components_symbolic(cob: &ChangeOfBasis) -> SymbolicMetric {
    let cols: Vec<AlgebraElement> = (1..=G2_DIM).map(|k| cob.b_in_complex(k)).collect();
    let mut entries = vec![vec![LambdaLinear::zero(); G2_DIM]; G2_DIM];
    for p in 0..G2_DIM {
        for q in 0..G2_DIM {
            let mut acc = LambdaLinear::zero();
            for l in Label::all() {
                let x = cols[p].coeff(l.index() + 1);
                let y = cols[q].coeff(l.index() + 1);
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                acc = acc.add(&LambdaLinear::var(lambda_index(l)).scale(&(&x.conjugate() * y)));
            }
            entries[p][q] = acc;
        }
    }
    SymbolicMetric::from_entries(entries)
}

/// The real components at positive parameters.
pub fn hermitian_components(sym: &SymbolicMetric, p: &MetricParams7) -> MetricMatrix {
    sym.evaluate(&p.as_field())
}

/// A bilinear form on the real basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricMatrix {
    m: Matrix,
}

impl MetricMatrix {
    pub fn from_matrix(m: Matrix) -> Self {
        assert_eq!((m.rows(), m.cols()), (G2_DIM, G2_DIM));
        Self { m }
    }

    pub fn identity() -> Self {
        Self::from_matrix(Matrix::identity(G2_DIM))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    /// Entry `(b_p, b_q)`, 1-based.
    pub fn entry(&self, p: usize, q: usize) -> &FieldElement {
        &self.m[(p - 1, q - 1)]
    }

    pub fn set_entry(&mut self, p: usize, q: usize, v: FieldElement) {
        self.m[(p - 1, q - 1)] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        self.m.transpose() == self.m
    }

    /// Exact test by leading principal minors; non-real entries fail.
    pub fn is_positive_definite(&self) -> bool {
        self.is_symmetric()
            && self
                .m
                .leading_principal_minors()
                .iter()
                .all(|d| d.sign_real() == Ok(Sign::Positive))
    }

    pub fn evaluate(&self, x: &AlgebraElement, y: &AlgebraElement) -> FieldElement {
        x.coeffs()
            .iter()
            .zip(self.m.mul_vec(y.coeffs()))
            .map(|(a, b)| a * &b)
            .sum()
    }
}

/// `Jᵀ m J = m`.
pub fn check_j_compatible(m: &MetricMatrix, j: &ComplexStructure) -> bool {
    let jm = j.matrix();
    (&(&jm.transpose() * m.matrix()) * jm) == *m.matrix()
}

/// Triples `(h, j, k)` with `g([b_h, b_j], b_k) + g(b_j, [b_h, b_k]) ≠ 0`
/// for `h ∈ {1, 12}`, in order.
pub fn torus_invariance_failures(table: &BracketTable, m: &MetricMatrix) -> Vec<(usize, usize, usize)> {
    let mut bad = Vec::new();
    for h in [1, 12] {
        let ad = table.ad_basis(h);
        let s = (&ad.transpose() * m.matrix()).add(&(m.matrix() * ad));
        for j in 0..G2_DIM {
            for k in 0..G2_DIM {
                if !s[(j, k)].is_zero() {
                    bad.push((h, j + 1, k + 1));
                }
            }
        }
    }
    bad
}

pub fn torus_invariance(table: &BracketTable, m: &MetricMatrix) -> bool {
    torus_invariance_failures(table, m).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2::{build_g2_basis, structure_constants};
    use crate::roots::{build_complex_basis, change_of_basis};
    use crate::samelson::build_samelson;
    use crate::scalar::rational;

    fn ll(s: &str) -> LambdaLinear {
        s.parse().unwrap()
    }

    fn setup() -> (BracketTable, ComplexStructure, SymbolicMetric) {
        let t = structure_constants(&build_g2_basis()).unwrap();
        let cob = change_of_basis(&build_complex_basis()).unwrap();
        let j = build_samelson(&cob);
        (t, j, hermitian_components_symbolic(&cob))
    }

    fn params(xs: [i64; 7]) -> MetricParams7 {
        MetricParams7::new(xs.map(|x| rational(x, 1))).unwrap()
    }

    #[test]
    fn component_examples() {
        let (_, _, g) = setup();
        assert_eq!(g.entry(1, 12), &ll("-1/2 λ0"));
        assert_eq!(g.entry(6, 10), &ll("1/4 λ1"));
        assert!(g.entry(2, 3).is_zero());
        assert_eq!(g.entry(2, 2), &ll("1/8 λ2 + 1/8 λ3"));
        assert!(g.is_symmetric());
        assert!(g.is_real());
        assert_eq!(g.nonzero_upper().len(), 21);
    }

    #[test]
    fn compatibility_and_invariance() {
        let (t, j, g) = setup();
        assert!(g.j_compatible(&j));
        assert!(g.torus_invariant(&t));
        let m = hermitian_components(&g, &params([1, 2, 3, 4, 5, 6, 7]));
        assert!(check_j_compatible(&m, &j));
        assert!(torus_invariance(&t, &m));
        assert!(m.is_positive_definite());
        let mut bumped = m.clone();
        bumped.set_entry(3, 3, m.entry(3, 3) + &FieldElement::one());
        assert!(!check_j_compatible(&bumped, &j));
        assert!(!check_j_compatible(&MetricMatrix::identity(), &j));
        assert!(!torus_invariance(&t, &MetricMatrix::identity()));
    }

    #[test]
    fn rejects_non_positive() {
        let mut l = [1, 1, 1, 1, 1, 1, 1].map(|x| rational(x, 1));
        l[4] = rational(0, 1);
        assert_eq!(
            MetricParams7::new(l),
            Err(Error::NonPositive {
                index: 4,
                value: "0".into()
            })
        );
    }
}
