//! Root-space decomposition of the complexified algebra with respect to
//! the Cartan subalgebra `t = span{b1, b12}`, the complex basis
//! `H1, H2, E1..E6, E1bar..E6bar`, and its bracket table.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::g2::{AlgebraElement, BracketTable, G2_DIM};
use crate::linalg::Matrix;
use crate::scalar::FieldElement;

/// A complex-basis label, ordered `H1 < H2 < E1 < … < E6 < E1bar < … < E6bar`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    H(u8),
    E(u8),
    Ebar(u8),
}

impl Label {
    /// All 14 labels in canonical order.
    pub fn all() -> [Label; G2_DIM] {
        std::array::from_fn(Label::from_index)
    }

    /// 0-based position in the canonical order.
    pub fn index(self) -> usize {
        match self {
            Label::H(j) => j as usize - 1,
            Label::E(j) => j as usize + 1,
            Label::Ebar(j) => j as usize + 7,
        }
    }

    pub fn from_index(k: usize) -> Label {
        match k {
            0 | 1 => Label::H(k as u8 + 1),
            2..=7 => Label::E(k as u8 - 1),
            8..=13 => Label::Ebar(k as u8 - 7),
            _ => panic!("label index out of range: {k}"),
        }
    }

    /// Complex conjugation on labels: `H` fixed, `E ↔ Ebar`.
    pub fn conjugate(self) -> Label {
        match self {
            Label::H(j) => Label::H(j),
            Label::E(j) => Label::Ebar(j),
            Label::Ebar(j) => Label::E(j),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::H(j) => write!(f, "H{j}"),
            Label::E(j) => write!(f, "E{j}"),
            Label::Ebar(j) => write!(f, "E{j}bar"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownLabel(s.to_string());
        let t = s.trim();
        let (head, rest) = t.split_at(t.chars().next().map_or(0, char::len_utf8));
        let (num, bar) = match rest.strip_suffix("bar") {
            Some(n) => (n, true),
            None => (rest, false),
        };
        let j: u8 = num.parse().map_err(|_| bad())?;
        match (head, bar) {
            ("H", false) if (1..=2).contains(&j) => Ok(Label::H(j)),
            ("E", false) if (1..=6).contains(&j) => Ok(Label::E(j)),
            ("E", true) if (1..=6).contains(&j) => Ok(Label::Ebar(j)),
            _ => Err(bad()),
        }
    }
}

/// A root, stored by its values on `b1` and `b12`.
/// Terms `(label, coefficient)` of an element in the complex basis.
pub type ComplexTerms = Vec<(Label, FieldElement)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub value_on_b1: FieldElement,
    pub value_on_b12: FieldElement,
}

impl Root {
    pub fn new(value_on_b1: FieldElement, value_on_b12: FieldElement) -> Self {
        Self {
            value_on_b1,
            value_on_b12,
        }
    }

    /// `(p·i, q·i)` for integers `p`, `q`.
    pub fn imaginary(p: i64, q: i64) -> Self {
        let i = FieldElement::i();
        Self::new(&i * FieldElement::from_int(p), &i * FieldElement::from_int(q))
    }

    pub fn zero() -> Self {
        Self::new(FieldElement::zero(), FieldElement::zero())
    }

    pub fn is_purely_imaginary(&self) -> bool {
        self.value_on_b1.is_imaginary() && self.value_on_b12.is_imaginary()
    }

    pub fn add(&self, o: &Root) -> Root {
        Root::new(&self.value_on_b1 + &o.value_on_b1, &self.value_on_b12 + &o.value_on_b12)
    }

    pub fn neg(&self) -> Root {
        Root::new(-&self.value_on_b1, -&self.value_on_b12)
    }

    pub fn is_zero(&self) -> bool {
        self.value_on_b1.is_zero() && self.value_on_b12.is_zero()
    }

    /// Value on `x·b1 + y·b12`; other components of `h` are ignored.
    pub fn evaluate(&self, h: &AlgebraElement) -> FieldElement {
        &(h.coeff(1) * &self.value_on_b1) + &(h.coeff(12) * &self.value_on_b12)
    }

    pub fn on_h1(&self) -> FieldElement {
        self.evaluate(&h1())
    }

    pub fn on_h2(&self) -> FieldElement {
        self.evaluate(&h2())
    }
}

fn h1() -> AlgebraElement {
    AlgebraElement::basis(1)
}

/// `H2 = −(1/√3)b1 − (2/√3)b12`.
fn h2() -> AlgebraElement {
    let s = FieldElement::sqrt3();
    AlgebraElement::from_terms([
        (&s * FieldElement::frac(-1, 3), 1),
        (&s * FieldElement::frac(-2, 3), 12),
    ])
}

/// The complex basis with its six positive roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBasis {
    pub h1: AlgebraElement,
    pub h2: AlgebraElement,
    pub e: [AlgebraElement; 6],
    pub ebar: [AlgebraElement; 6],
    pub roots: [Root; 6],
}

impl ComplexBasis {
    /// The element carrying `label`, in `b`-coordinates.
    pub fn element(&self, label: Label) -> &AlgebraElement {
        match label {
            Label::H(1) => &self.h1,
            Label::H(_) => &self.h2,
            Label::E(j) => &self.e[j as usize - 1],
            Label::Ebar(j) => &self.ebar[j as usize - 1],
        }
    }

    /// The weight of `label`: zero on `H`, `α_j` on `E_j`, `−α_j` on `Ebar_j`.
    pub fn weight(&self, label: Label) -> Root {
        match label {
            Label::H(_) => Root::zero(),
            Label::E(j) => self.roots[j as usize - 1].clone(),
            Label::Ebar(j) => self.roots[j as usize - 1].neg(),
        }
    }

    /// 14×14 matrix whose columns are the complex-basis elements in
    /// `b`-coordinates.
    pub fn columns(&self) -> Matrix {
        let cols: Vec<Vec<FieldElement>> = Label::all()
            .iter()
            .map(|&l| self.element(l).coeffs().to_vec())
            .collect();
        Matrix::from_columns(&cols)
    }
}

/// The complex basis built from the root vectors.
pub fn build_complex_basis() -> ComplexBasis {
    let i = FieldElement::i();
    let re_im = |re: &[(i64, usize)], im: &[(i64, usize)]| {
        AlgebraElement::from_terms(
            re.iter()
                .map(|&(c, k)| (FieldElement::from_int(c), k))
                .chain(im.iter().map(|&(c, k)| (&i * FieldElement::from_int(c), k))),
        )
    };
    let e = [
        re_im(&[(1, 5)], &[(1, 6)]),
        re_im(&[(1, 14)], &[(1, 13)]),
        re_im(&[(2, 2), (1, 14)], &[(2, 4), (1, 13)]),
        re_im(&[(-1, 5), (-2, 11)], &[(1, 6), (-2, 10)]),
        re_im(&[(1, 3)], &[(1, 7)]),
        re_im(&[(1, 7), (-2, 8)], &[(1, 3), (2, 9)]),
    ];
    let ebar = std::array::from_fn(|j| e[j].conjugate());
    let roots = [
        Root::imaginary(1, 1),
        Root::imaginary(1, -2),
        Root::imaginary(1, 0),
        Root::imaginary(1, -1),
        Root::imaginary(2, -1),
        Root::imaginary(0, -1),
    ];
    ComplexBasis {
        h1: h1(),
        h2: h2(),
        e,
        ebar,
        roots,
    }
}

/// `[b1, E] = α(b1)·E` and `[b12, E] = α(b12)·E`.
pub fn verify_root_vector(table: &BracketTable, e: &AlgebraElement, alpha: &Root) -> bool {
    let b1 = AlgebraElement::basis(1);
    let b12 = AlgebraElement::basis(12);
    table.bracket(&b1, e) == e.scale(&alpha.value_on_b1) && table.bracket(&b12, e) == e.scale(&alpha.value_on_b12)
}

/// Change of basis between `b`-coordinates and complex-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChangeOfBasis {
    /// Maps `b`-coordinates to complex-basis coordinates.
    pub to_complex: Matrix,
    /// Maps complex-basis coordinates to `b`-coordinates.
    pub to_real: Matrix,
}

impl ChangeOfBasis {
    /// `b_k` written in the complex basis, 1-based.
    pub fn b_in_complex(&self, k: usize) -> AlgebraElement {
        AlgebraElement::from_coeffs(self.to_complex.column(k - 1))
    }

    pub fn complex_coords(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::from_coeffs(self.to_complex.mul_vec(x.coeffs()))
    }

    pub fn real_coords(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::from_coeffs(self.to_real.mul_vec(x.coeffs()))
    }
}

pub fn change_of_basis(basis: &ComplexBasis) -> Result<ChangeOfBasis> {
    let to_real = basis.columns();
    let to_complex = to_real.inverse()?;
    Ok(ChangeOfBasis { to_complex, to_real })
}

/// Structure constants in the complex basis, indexed by [`Label`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBracketTable {
    table: BracketTable,
}

impl ComplexBracketTable {
    pub fn bracket_labels(&self, a: Label, b: Label) -> &AlgebraElement {
        self.table.bracket_basis(a.index() + 1, b.index() + 1)
    }

    /// Terms of `[a, b]` as `(label, coefficient)` in label order.
    pub fn terms(&self, a: Label, b: Label) -> Vec<(Label, FieldElement)> {
        self.bracket_labels(a, b)
            .support()
            .map(|(k, c)| (Label::from_index(k - 1), c.clone()))
            .collect()
    }

    /// Nonzero relations `[a, b]` with `a < b`, in label order.
    pub fn relations(&self) -> Vec<((Label, Label), ComplexTerms)> {
        let mut out = Vec::new();
        for a in Label::all() {
            for b in Label::all() {
                if a < b {
                    let t = self.terms(a, b);
                    if !t.is_empty() {
                        out.push(((a, b), t));
                    }
                }
            }
        }
        out
    }

    /// Underlying table over 1-based label positions.
    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    /// Pairs whose bracket does not map to the bracket of the conjugate
    /// labels under conjugation.
    pub fn conjugation_failures(&self) -> Vec<(Label, Label)> {
        let mut bad = Vec::new();
        for a in Label::all() {
            for b in Label::all() {
                let lhs = self.terms(a.conjugate(), b.conjugate());
                let mut rhs: Vec<(Label, FieldElement)> = self
                    .terms(a, b)
                    .into_iter()
                    .map(|(l, c)| (l.conjugate(), c.conjugate()))
                    .collect();
                rhs.sort_by_key(|(l, _)| *l);
                if lhs != rhs {
                    bad.push((a, b));
                }
            }
        }
        bad
    }

    /// Pairs whose bracket leaves the weight space of the summed weight
    /// (`t_C` when the sum is zero, zero when the sum is not a weight).
    pub fn grading_failures(&self, basis: &ComplexBasis) -> Vec<(Label, Label)> {
        let mut bad = Vec::new();
        for a in Label::all() {
            for b in Label::all() {
                let w = basis.weight(a).add(&basis.weight(b));
                let ok = self.terms(a, b).iter().all(|(l, _)| basis.weight(*l) == w);
                if !ok {
                    bad.push((a, b));
                }
            }
        }
        bad
    }
}

/// Brackets of complex-basis pairs expanded in the complex basis.
pub fn complexified_structure_constants(
    table: &BracketTable,
    basis: &ComplexBasis,
    cob: &ChangeOfBasis,
) -> Result<ComplexBracketTable> {
    let table = BracketTable::from_upper(|i, j| {
        let x = basis.element(Label::from_index(i - 1));
        let y = basis.element(Label::from_index(j - 1));
        Ok(cob.complex_coords(&table.bracket(x, y)))
    })?;
    Ok(ComplexBracketTable { table })
}

/// `K(X, Y)` for all pairs of complex-basis elements (bilinear, no
/// conjugation), indexed by label position.
pub fn killing_complex_pairings(table: &BracketTable, basis: &ComplexBasis) -> Matrix {
    let mut k = Matrix::zeros(G2_DIM, G2_DIM);
    for a in Label::all() {
        for b in Label::all() {
            k[(a.index(), b.index())] = table.killing_form(basis.element(a), basis.element(b));
        }
    }
    k
}
