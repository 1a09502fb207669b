//! The Samelson complex structure `J`: `J H1 = H2`, `J H2 = −H1`,
//! `J E_j = i E_j`, `J Ebar_j = −i Ebar_j`, pulled back to the real basis.

use crate::g2::{AlgebraElement, BracketTable, G2_DIM};
use crate::linalg::Matrix;
use crate::roots::{ChangeOfBasis, Label};
use crate::scalar::FieldElement;

/// A linear endomorphism of g2 acting on `b`-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStructure {
    matrix: Matrix,
}

impl ComplexStructure {
    pub fn from_matrix(matrix: Matrix) -> Self {
        assert_eq!((matrix.rows(), matrix.cols()), (G2_DIM, G2_DIM));
        Self { matrix }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::from_coeffs(self.matrix.mul_vec(x.coeffs()))
    }

    /// `J b_k`, 1-based.
    pub fn image_of_basis(&self, k: usize) -> AlgebraElement {
        AlgebraElement::from_coeffs(self.matrix.column(k - 1))
    }

    pub fn squares_to_minus_identity(&self) -> bool {
        (&self.matrix * &self.matrix)
            .add(&Matrix::identity(G2_DIM))
            .is_zero()
    }

    /// All entries real (in `Q(√3)`), so real elements map to real elements.
    pub fn is_real(&self) -> bool {
        (0..G2_DIM).all(|k| self.image_of_basis(k + 1).is_real())
    }

    /// `J b1` and `J b12` lie in `span{b1, b12}`.
    pub fn preserves_torus(&self) -> bool {
        [1, 12].iter().all(|&k| {
            self.image_of_basis(k)
                .support()
                .all(|(j, _)| j == 1 || j == 12)
        })
    }
}

/// The Samelson structure in `b`-coordinates.
pub fn build_samelson(cob: &ChangeOfBasis) -> ComplexStructure {
    let i = FieldElement::i();
    let mut jc = Matrix::zeros(G2_DIM, G2_DIM);
    jc[(Label::H(2).index(), Label::H(1).index())] = FieldElement::one();
    jc[(Label::H(1).index(), Label::H(2).index())] = FieldElement::from_int(-1);
    for j in 1..=6 {
        let e = Label::E(j).index();
        let eb = Label::Ebar(j).index();
        jc[(e, e)] = i.clone();
        jc[(eb, eb)] = -&i;
    }
    ComplexStructure::from_matrix(&(&cob.to_real * &jc) * &cob.to_complex)
}

/// `N_J(X, Y) = J[JX, Y] + J[X, JY] + [X, Y] − [JX, JY]`.
pub fn nijenhuis(table: &BracketTable, j: &ComplexStructure, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    let jx = j.apply(x);
    let jy = j.apply(y);
    let a = j.apply(&table.bracket(&jx, y));
    let b = j.apply(&table.bracket(x, &jy));
    let c = table.bracket(x, y);
    let d = table.bracket(&jx, &jy);
    &(&(&a + &b) + &c) - &d
}

/// Pairs `i < j` with `N_J(b_i, b_j) ≠ 0`.
pub fn nijenhuis_failures(table: &BracketTable, j: &ComplexStructure) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for p in 1..=G2_DIM {
        for q in p + 1..=G2_DIM {
            if !nijenhuis(table, j, &AlgebraElement::basis(p), &AlgebraElement::basis(q)).is_zero() {
                bad.push((p, q));
            }
        }
    }
    bad
}

/// `K(J b_i, J b_j) = K(b_i, b_j)` for every pair.
pub fn check_killing_compatible(table: &BracketTable, j: &ComplexStructure) -> bool {
    let k = table.killing_matrix();
    let jm = j.matrix();
    (&(&jm.transpose() * &k) * jm) == k
}

/// Compatibility restricted to the Cartan subalgebra `span{b1, b12}`.
pub fn check_killing_compatible_on_torus(table: &BracketTable, j: &ComplexStructure) -> bool {
    let t = [AlgebraElement::basis(1), AlgebraElement::basis(12)];
    t.iter().all(|x| {
        t.iter()
            .all(|y| table.killing_form(&j.apply(x), &j.apply(y)) == table.killing_form(x, y))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2::{build_g2_basis, structure_constants};
    use crate::roots::{build_complex_basis, change_of_basis};

    fn setup() -> (BracketTable, ComplexStructure, ChangeOfBasis) {
        let t = structure_constants(&build_g2_basis()).unwrap();
        let cob = change_of_basis(&build_complex_basis()).unwrap();
        let j = build_samelson(&cob);
        (t, j, cob)
    }

    fn elt(terms: &[(&str, usize)]) -> AlgebraElement {
        AlgebraElement::from_terms(terms.iter().map(|&(c, k)| (c.parse().unwrap(), k)))
    }

    #[test]
    fn real_display() {
        let (_, j, _) = setup();
        assert_eq!(j.image_of_basis(2), elt(&[("-1", 4)]));
        assert_eq!(j.image_of_basis(8), elt(&[("1", 3), ("1", 9)]));
        assert_eq!(j.image_of_basis(1), elt(&[("-1/3*sqrt3", 1), ("-2/3*sqrt3", 12)]));
        assert_eq!(j.image_of_basis(14), elt(&[("-1", 13)]));
        assert_eq!(j.apply(&j.image_of_basis(10)), elt(&[("-1", 10)]));
        assert!(j.is_real());
        assert!(j.squares_to_minus_identity());
        assert!(j.preserves_torus());
    }

    #[test]
    fn integrable() {
        let (t, j, _) = setup();
        let b = AlgebraElement::basis;
        assert!(nijenhuis(&t, &j, &b(2), &b(4)).is_zero());
        assert!(nijenhuis(&t, &j, &b(1), &b(5)).is_zero());
        assert!(nijenhuis_failures(&t, &j).is_empty());
    }

    #[test]
    fn killing_compatibility() {
        let (t, j, _) = setup();
        assert!(check_killing_compatible(&t, &j));
        assert!(check_killing_compatible_on_torus(&t, &j));

        // J b1 := b12 with every other column unchanged
        let mut m = j.matrix().clone();
        for r in 0..G2_DIM {
            m[(r, 0)] = FieldElement::zero();
        }
        m[(11, 0)] = FieldElement::one();
        let bad = ComplexStructure::from_matrix(m);
        assert!(!check_killing_compatible(&t, &bad));
        assert!(!check_killing_compatible_on_torus(&t, &bad));
    }

    #[test]
    fn eigenvectors() {
        let (_, j, _) = setup();
        let cb = build_complex_basis();
        let i = FieldElement::i();
        for k in 0..6 {
            assert_eq!(j.apply(&cb.e[k]), cb.e[k].scale(&i));
            assert_eq!(j.apply(&cb.ebar[k]), cb.ebar[k].scale(&-&i));
        }
        assert_eq!(j.apply(&cb.h1), cb.h2);
    }
}
