//! The fundamental form, the torsion 3-form `c = J dω`, its derivative,
//! the exact solution of `dc = 0`, and the resulting three-parameter
//! family of SKT metrics.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::{DTable, DualLabel, LambdaForm};
use crate::g2::{BracketTable, G2_DIM};
use crate::hermitian::{MetricMatrix, SymbolicMetric};
use crate::lambda::{LambdaLinear, N_LAMBDA};
use crate::linalg::Matrix;
use crate::roots::Label;
use crate::samelson::ComplexStructure;
use crate::scalar::{int, FieldElement, Rational};

/// Elimination column order; pivots land on `λ0, λ1, λ2, λ4`.
pub const PIVOT_ORDER: [usize; N_LAMBDA] = [0, 1, 2, 4, 3, 5, 6];

/// Where `a1, a2, a3` sit among the `λ`'s.
pub const A_INDEX: [usize; 3] = [3, 5, 6];

/// `ω = λ0 H1*∧H2* + i Σ λj Ej*∧Ejbar*`.
pub fn fundamental_form() -> LambdaForm {
    let mut w = LambdaForm::zero(2);
    w.add_term(&[DualLabel(Label::H(1)), DualLabel(Label::H(2))], LambdaLinear::var(0));
    for j in 1..=6u8 {
        w.add_term(
            &[DualLabel(Label::E(j)), DualLabel(Label::Ebar(j))],
            LambdaLinear::var(j as usize).scale(&FieldElement::i()),
        );
    }
    w
}

/// `c = J(dω)`.
pub fn torsion_c(d: &DTable) -> LambdaForm {
    d.d(&fundamental_form()).j_action()
}

/// `dc`.
pub fn torsion_dc(d: &DTable) -> LambdaForm {
    d.d(&torsion_c(d))
}

/// The real linear system on `λ` from the coefficients of a form: real and
/// imaginary parts of each coefficient, duplicates and zero rows dropped.
pub fn real_system(form: &LambdaForm) -> Matrix {
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for (_, c) in form.terms() {
        for part in [c.real_part(), c.imag_part()] {
            if part.is_zero() {
                continue;
            }
            let row = part.coeffs().to_vec();
            if !rows.contains(&row) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(0, N_LAMBDA);
    }
    Matrix::from_rows(rows)
}

/// Solution of the homogeneous system: pinned variables as linear forms
/// in the free ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SktSolution {
    pub pinned: BTreeMap<usize, LambdaLinear>,
    pub free: Vec<usize>,
}

impl SktSolution {
    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    /// Each `λ_k` as a linear form in the free variables.
    pub fn images(&self) -> [LambdaLinear; N_LAMBDA] {
        std::array::from_fn(|k| self.pinned.get(&k).cloned().unwrap_or_else(|| LambdaLinear::var(k)))
    }
}

/// Exact elimination of `dc = 0` with the column order [`PIVOT_ORDER`].
pub fn solve_skt(dc: &LambdaForm) -> Result<SktSolution> {
    let mut sys = real_system(dc);
    if sys.rows() == 0 {
        return Ok(SktSolution {
            pinned: BTreeMap::new(),
            free: (0..N_LAMBDA).collect(),
        });
    }
    if !(0..sys.rows()).all(|r| sys.row(r).iter().all(FieldElement::is_rational)) {
        return Err(Error::Inconsistent);
    }
    let pivots = sys.rref_with_order(&PIVOT_ORDER);
    let free: Vec<usize> = PIVOT_ORDER.iter().copied().filter(|c| !pivots.contains(c)).collect();
    let mut pinned = BTreeMap::new();
    for (r, &p) in pivots.iter().enumerate() {
        let mut expr = LambdaLinear::zero();
        for &f in &free {
            let v = &sys[(r, f)];
            if !v.is_zero() {
                expr = expr.add(&LambdaLinear::var(f).scale(&-v));
            }
        }
        pinned.insert(p, expr);
    }
    let mut free_sorted = free;
    free_sorted.sort_unstable();
    Ok(SktSolution {
        pinned,
        free: free_sorted,
    })
}

/// Parameters `(a1, a2, a3) = (λ3, λ5, λ6)` of the SKT family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricParams3 {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
}

impl MetricParams3 {
    pub fn new(a1: Rational, a2: Rational, a3: Rational) -> Self {
        Self { a1, a2, a3 }
    }

    pub fn from_ints(a1: i64, a2: i64, a3: i64) -> Self {
        Self::new(int(a1), int(a2), int(a3))
    }

    /// `γ = max{3a2 − 2a1, a1 − 3a2, 0}`.
    pub fn gamma(&self) -> Rational {
        let x = int(3) * &self.a2 - int(2) * &self.a1;
        let y = &self.a1 - int(3) * &self.a2;
        x.max(y).max(Rational::zero())
    }

    /// `4a1 − 3a2`.
    pub fn upper(&self) -> Rational {
        int(4) * &self.a1 - int(3) * &self.a2
    }

    /// The first violated inequality of `0 < a2 < a1`, `γ < a3 < 4a1 − 3a2`.
    pub fn region_violation(&self) -> Option<String> {
        if !self.a2.is_positive() {
            return Some("0 < a2 violated".into());
        }
        if self.a2 >= self.a1 {
            return Some("a2 < a1 violated".into());
        }
        let g = self.gamma();
        if self.a3 <= g {
            return Some(format!("gamma < a3 violated (gamma = {g})"));
        }
        if self.a3 >= self.upper() {
            return Some(format!("a3 < 4a1 - 3a2 violated (4a1 - 3a2 = {})", self.upper()));
        }
        None
    }

    pub fn as_lambda_inputs(&self) -> [FieldElement; N_LAMBDA] {
        let mut l: [FieldElement; N_LAMBDA] = Default::default();
        l[A_INDEX[0]] = FieldElement::from_rational(self.a1.clone());
        l[A_INDEX[1]] = FieldElement::from_rational(self.a2.clone());
        l[A_INDEX[2]] = FieldElement::from_rational(self.a3.clone());
        l
    }
}

pub fn positivity_region(a: &MetricParams3) -> bool {
    a.region_violation().is_none()
}

/// All seven `λ`'s at `(a1, a2, a3)`.
pub fn lambda_values(sol: &SktSolution, a: &MetricParams3) -> [FieldElement; N_LAMBDA] {
    let inputs = a.as_lambda_inputs();
    sol.images().map(|e| e.evaluate(&inputs))
}

/// Every `λ_j` from the solution is strictly positive.
pub fn lambdas_positive(sol: &SktSolution, a: &MetricParams3) -> bool {
    lambda_values(sol, a).iter().all(FieldElement::is_positive)
}

/// The Hermitian components with the solution substituted, as linear forms
/// in `a1 = λ3, a2 = λ5, a3 = λ6`.
pub fn skt_metric_symbolic(sym: &SymbolicMetric, sol: &SktSolution) -> SymbolicMetric {
    sym.substitute(&sol.images())
}

pub fn skt_metric(sym: &SymbolicMetric, sol: &SktSolution, a: &MetricParams3) -> Result<MetricMatrix> {
    if let Some(v) = a.region_violation() {
        return Err(Error::OutsideRegion(v));
    }
    Ok(skt_metric_symbolic(sym, sol).evaluate(&a.as_lambda_inputs()))
}

/// Parses an expression in `a1, a2, a3` into the matching `λ`-linear form.
pub fn parse_in_a(s: &str) -> Result<LambdaLinear> {
    let t = s
        .replace("a1", &format!("λ{}", A_INDEX[0]))
        .replace("a2", &format!("λ{}", A_INDEX[1]))
        .replace("a3", &format!("λ{}", A_INDEX[2]));
    t.parse()
}

/// Renders a form in `λ3, λ5, λ6` using `a1, a2, a3`.
pub fn render_in_a(l: &LambdaLinear) -> String {
    l.to_string()
        .replace(&format!("λ{}", A_INDEX[0]), "a1")
        .replace(&format!("λ{}", A_INDEX[1]), "a2")
        .replace(&format!("λ{}", A_INDEX[2]), "a3")
}

/// `(96λ, 32λ, 96λ)`.
pub fn biinvariant_params(lambda: &Rational) -> Result<MetricParams3> {
    if !lambda.is_positive() {
        return Err(Error::NonPositive {
            index: 0,
            value: lambda.to_string(),
        });
    }
    let k = |n: i64| int(n) * lambda;
    Ok(MetricParams3::new(k(96), k(32), k(96)))
}

/// Outcome of enumerating `J`-invariant, torus-invariant symmetric forms.
#[derive(Clone, Debug)]
pub struct ConverseSpace {
    /// Basis of the solution space as symmetric 14×14 matrices.
    pub basis: Vec<Matrix>,
    /// The span equals the span of the unit-`λ` members of the Hermitian family.
    pub spans_family: bool,
    /// Dimension of the subspace where `dc = 0`.
    pub skt_dimension: usize,
}

impl ConverseSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Index pairs `(p, q)`, `p ≤ q`, of the upper triangle.
fn upper_pairs() -> Vec<(usize, usize)> {
    (0..G2_DIM).flat_map(|p| (p..G2_DIM).map(move |q| (p, q))).collect()
}

fn sym_unit(p: usize, q: usize) -> Matrix {
    let mut m = Matrix::zeros(G2_DIM, G2_DIM);
    m[(p, q)] = FieldElement::one();
    m[(q, p)] = FieldElement::one();
    m
}

fn upper_vec(m: &Matrix) -> Vec<FieldElement> {
    upper_pairs().iter().map(|&(p, q)| m[(p, q)].clone()).collect()
}

/// The constraint operators applied to a symmetric matrix, stacked.
fn constraints(table: &BracketTable, j: &ComplexStructure, h: &Matrix) -> Vec<FieldElement> {
    let jm = j.matrix();
    let mut out = upper_vec(&(&(&jm.transpose() * h) * jm).sub(h));
    for b in [1, 12] {
        let ad = table.ad_basis(b);
        out.extend(upper_vec(&(&ad.transpose() * h).add(&(h * ad))));
    }
    out
}

/// Enumerates symmetric bilinear forms `h` with `h(J·, J·) = h` and
/// `ad_H`-invariance for `H ∈ {b1, b12}`, then intersects with `dc = 0`.
pub fn converse_space(
    table: &BracketTable,
    j: &ComplexStructure,
    family: &SymbolicMetric,
    dc: &LambdaForm,
) -> Result<ConverseSpace> {
    let pairs = upper_pairs();
    let cols: Vec<Vec<FieldElement>> = pairs
        .iter()
        .map(|&(p, q)| constraints(table, j, &sym_unit(p, q)))
        .collect();
    let system = Matrix::from_columns(&cols);
    let basis: Vec<Matrix> = system
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut m = Matrix::zeros(G2_DIM, G2_DIM);
            for (x, &(p, q)) in v.iter().zip(&pairs) {
                m[(p, q)] = x.clone();
                m[(q, p)] = x.clone();
            }
            m
        })
        .collect();

    // Unit-λ members of the family, as upper-triangle vectors.
    let units: Vec<Vec<FieldElement>> = (0..N_LAMBDA)
        .map(|k| {
            let mut l: [FieldElement; N_LAMBDA] = Default::default();
            l[k] = FieldElement::one();
            upper_vec(family.evaluate(&l).matrix())
        })
        .collect();
    let family_cols = Matrix::from_columns(&units);
    let mut joint: Vec<Vec<FieldElement>> = units.clone();
    joint.extend(basis.iter().map(upper_vec));
    let spans_family = family_cols.rank() == basis.len() && Matrix::from_columns(&joint).rank() == basis.len();

    // Coordinates of the basis in unit-λ terms, then the dc rows on them.
    let skt_dimension = if spans_family {
        let coords: Vec<Vec<FieldElement>> = basis
            .iter()
            .map(|m| crate::linalg::express_in_basis(&family_cols, &upper_vec(m)))
            .collect::<Result<_>>()?;
        let c = Matrix::from_columns(&coords);
        let rows = real_system(dc);
        if rows.rows() == 0 {
            basis.len()
        } else {
            basis.len() - (&rows * &c).rank()
        }
    } else {
        0
    };
    Ok(ConverseSpace {
        basis,
        spans_family,
        skt_dimension,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::DualLabel;
    use crate::g2::{build_g2_basis, structure_constants};
    use crate::hermitian::{check_j_compatible, hermitian_components_symbolic, torus_invariance};
    use crate::roots::{build_complex_basis, change_of_basis, complexified_structure_constants};
    use crate::samelson::build_samelson;
    use crate::scalar::rational;

    struct Fx {
        table: BracketTable,
        j: ComplexStructure,
        d: DTable,
        sym: SymbolicMetric,
    }

    fn fx() -> Fx {
        let table = structure_constants(&build_g2_basis()).unwrap();
        let cb = build_complex_basis();
        let cob = change_of_basis(&cb).unwrap();
        let ct = complexified_structure_constants(&table, &cb, &cob).unwrap();
        Fx {
            j: build_samelson(&cob),
            d: DTable::new(&ct),
            sym: hermitian_components_symbolic(&cob),
            table,
        }
    }

    fn dl(s: &str) -> DualLabel {
        s.parse().unwrap()
    }

    fn ll(s: &str) -> LambdaLinear {
        s.parse().unwrap()
    }

    #[test]
    fn omega_coefficients() {
        let w = fundamental_form();
        assert_eq!(w.coeff(&[dl("H1*"), dl("H2*")]), ll("λ0"));
        assert_eq!(w.coeff(&[dl("E3*"), dl("E3bar*")]), ll("i λ3"));
        assert_eq!(w.coeff(&[dl("E1bar*"), dl("E1*")]), ll("-i λ1"));
    }

    #[test]
    fn torsion_examples() {
        let f = fx();
        let c = torsion_c(&f.d);
        assert_eq!(c.len(), 20);
        assert_eq!(c.coeff(&[dl("H1*"), dl("E1*"), dl("E1bar*")]), ll("-2*i λ0"));
        assert_eq!(c.coeff(&[dl("E5*"), dl("E1bar*"), dl("E2bar*")]), ll("-2 λ1 - 2 λ2 + 2 λ5"));
        let dc = torsion_dc(&f.d);
        assert_eq!(dc.len(), 16);
        assert_eq!(
            dc.coeff(&[dl("E1*"), dl("E2*"), dl("E1bar*"), dl("E2bar*")]),
            ll("-16 λ0 + 8 λ1 + 8 λ2 - 8 λ5")
        );
        assert_eq!(
            dc.coeff(&[dl("E3*"), dl("E4*"), dl("E3bar*"), dl("E4bar*")]),
            ll("48 λ0 - 8 λ3 + 56 λ4 - 72 λ5 - 32 λ6")
        );
        assert!(dc.coeff(&[dl("H1*"), dl("H2*"), dl("E1*"), dl("E1bar*")]).is_zero());
    }

    #[test]
    fn solve() {
        let f = fx();
        let dc = torsion_dc(&f.d);
        let sol = solve_skt(&dc).unwrap();
        assert_eq!(sol.free, vec![3, 5, 6]);
        assert_eq!(sol.pinned[&0], ll("1/6 λ3 - 1/4 λ5 + 1/12 λ6"));
        assert_eq!(sol.pinned[&1], ll("2/3 λ3 - 1/2 λ5 - 1/6 λ6"));
        assert_eq!(sol.pinned[&2], ll("-1/3 λ3 + λ5 + 1/3 λ6"));
        assert_eq!(sol.pinned[&4], ll("3/2 λ5 + 1/2 λ6"));
        let images = sol.images();
        assert!(dc.map_coeffs(|c| c.substitute(&images)).is_empty());
    }

    #[test]
    fn region_examples() {
        let f = fx();
        let sol = solve_skt(&torsion_dc(&f.d)).unwrap();
        let a = MetricParams3::from_ints(3, 1, 1);
        assert!(positivity_region(&a));
        let expect = ["1/3", "4/3", "1/3", "3", "2", "1", "1"].map(|s| s.parse::<FieldElement>().unwrap());
        assert_eq!(lambda_values(&sol, &a), expect);
        assert!(positivity_region(&MetricParams3::from_ints(96, 32, 96)));
        let bad = MetricParams3::from_ints(1, 2, 1);
        assert!(!positivity_region(&bad));
        assert_eq!(bad.region_violation().unwrap(), "a2 < a1 violated");
        assert!(matches!(skt_metric(&f.sym, &sol, &bad), Err(Error::OutsideRegion(_))));
    }

    #[test]
    fn metric_examples() {
        let f = fx();
        let sol = solve_skt(&torsion_dc(&f.d)).unwrap();
        let s = skt_metric_symbolic(&f.sym, &sol);
        assert_eq!(s.entry(3, 3), &parse_in_a("1/2 a2").unwrap());
        assert_eq!(s.entry(13, 13), &parse_in_a("-1/6 a1 + 1/2 a2 + 1/6 a3").unwrap());
        assert_eq!(s.entry(5, 11), &parse_in_a("-1/6 a1 + 1/8 a2 + 1/24 a3").unwrap());
        assert_eq!(render_in_a(s.entry(3, 3)), "1/2 a2");
        let m = skt_metric(&f.sym, &sol, &MetricParams3::from_ints(3, 1, 1)).unwrap();
        assert!(m.is_positive_definite());
        assert!(check_j_compatible(&m, &f.j));
        assert!(torus_invariance(&f.table, &m));
    }

    #[test]
    fn biinvariant() {
        let f = fx();
        let sol = solve_skt(&torsion_dc(&f.d)).unwrap();
        assert_eq!(biinvariant_params(&rational(1, 1)).unwrap(), MetricParams3::from_ints(96, 32, 96));
        assert_eq!(biinvariant_params(&rational(1, 32)).unwrap(), MetricParams3::from_ints(3, 1, 3));
        assert!(biinvariant_params(&rational(0, 1)).is_err());
        let m = skt_metric(&f.sym, &sol, &MetricParams3::from_ints(96, 32, 96)).unwrap();
        let minus_k = f.table.killing_matrix().scale(&FieldElement::from_int(-1));
        assert_eq!(m.matrix(), &minus_k);
    }

    #[test]
    fn converse() {
        let f = fx();
        let dc = torsion_dc(&f.d);
        let cs = converse_space(&f.table, &f.j, &f.sym, &dc).unwrap();
        assert_eq!(cs.dimension(), 7);
        assert!(cs.spans_family);
        assert_eq!(cs.skt_dimension, 3);
    }
}
