//! Left-invariant alternating forms on the complexified algebra, written
//! in the dual basis `H1*, H2*, E1*..E6*, E1bar*..E6bar*`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::g2::G2_DIM;
use crate::lambda::LambdaLinear;
use crate::r7::sort_with_sign;
use crate::roots::{ComplexBracketTable, Label};
use crate::scalar::FieldElement;

/// The dual covector of a complex-basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualLabel(pub Label);

impl DualLabel {
    pub fn all() -> [DualLabel; G2_DIM] {
        Label::all().map(DualLabel)
    }

    pub fn index(self) -> usize {
        self.0.index()
    }

    pub fn conjugate(self) -> DualLabel {
        DualLabel(self.0.conjugate())
    }
}

impl fmt::Display for DualLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*", self.0)
    }
}

impl FromStr for DualLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let body = t.strip_suffix('*').ok_or_else(|| Error::UnknownLabel(t.to_string()))?;
        body.parse().map(DualLabel)
    }
}

/// Coefficient ring for forms: exact scalars or linear forms in `λ`.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, s: &FieldElement) -> Self;
    fn conjugate(&self) -> Self;
    /// Product of two coefficients; fails when the result would be quadratic in `λ`.
    fn try_mul(&self, o: &Self) -> Result<Self>;
}

impl Coeff for FieldElement {
    fn zero() -> Self {
        FieldElement::zero()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: &FieldElement) -> Self {
        self * s
    }
    fn conjugate(&self) -> Self {
        FieldElement::conjugate(self)
    }
    fn try_mul(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
}

impl Coeff for LambdaLinear {
    fn zero() -> Self {
        LambdaLinear::zero()
    }
    fn is_zero(&self) -> bool {
        LambdaLinear::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        LambdaLinear::add(self, o)
    }
    fn neg(&self) -> Self {
        LambdaLinear::neg(self)
    }
    fn scale(&self, s: &FieldElement) -> Self {
        LambdaLinear::scale(self, s)
    }
    fn conjugate(&self) -> Self {
        LambdaLinear::conjugate(self)
    }
    fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.is_zero() || o.is_zero() {
            Ok(LambdaLinear::zero())
        } else {
            Err(Error::QuadraticLambda)
        }
    }
}

pub type ScalarForm = InvariantForm<FieldElement>;
pub type LambdaForm = InvariantForm<LambdaLinear>;

/// A sparse k-form keyed by strictly increasing label tuples.
#[derive(Clone, PartialEq)]
pub struct InvariantForm<C> {
    degree: usize,
    terms: BTreeMap<Vec<DualLabel>, C>,
}

impl<C: Coeff> InvariantForm<C> {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// `c·θ1∧…∧θk` for labels in any order.
    pub fn monomial(labels: &[DualLabel], c: C) -> Self {
        let mut f = Self::zero(labels.len());
        f.add_term(labels, c);
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[DualLabel], &C)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Adds `c·θ_labels`, normalizing order with the permutation sign.
    pub fn add_term(&mut self, labels: &[DualLabel], c: C) {
        assert_eq!(labels.len(), self.degree, "degree mismatch");
        if c.is_zero() {
            return;
        }
        let mut key = labels.to_vec();
        let Some(sign) = sort_with_sign(&mut key) else {
            return;
        };
        let c = if sign < 0 { c.neg() } else { c };
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Coefficient at a label tuple in any order, including the sign.
    pub fn coeff(&self, labels: &[DualLabel]) -> C {
        let mut key = labels.to_vec();
        match sort_with_sign(&mut key) {
            None => C::zero(),
            Some(s) => {
                let c = self.terms.get(&key).cloned().unwrap_or_else(C::zero);
                if s < 0 {
                    c.neg()
                } else {
                    c
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree);
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k, v.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> InvariantForm<D> {
        let mut out = InvariantForm::zero(self.degree);
        for (k, v) in &self.terms {
            out.add_term(k, f(v));
        }
        out
    }

    /// Conjugates labels and coefficients.
    pub fn conjugate(&self) -> Self {
        let mut out = Self::zero(self.degree);
        for (k, v) in &self.terms {
            let labels: Vec<DualLabel> = k.iter().map(|l| l.conjugate()).collect();
            out.add_term(&labels, v.conjugate());
        }
        out
    }

    /// `J` acting factorwise: `J H1* = −H2*`, `J H2* = H1*`,
    /// `J Ej* = i Ej*`, `J Ejbar* = −i Ejbar*`.
    pub fn j_action(&self) -> Self {
        let mut out = Self::zero(self.degree);
        for (k, v) in &self.terms {
            let mut factor = FieldElement::one();
            let mut labels = Vec::with_capacity(k.len());
            for &l in k {
                let (c, img) = j_on_label(l);
                factor *= &c;
                labels.push(img);
            }
            out.add_term(&labels, v.scale(&factor));
        }
        out
    }

    /// Lines `"coef labels"` in label order, e.g. `-2*i E1*^E1bar*`.
    pub fn render_terms(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(k, v)| format!("{} {}", render_coeff(v), render_labels(k)))
            .collect()
    }
}

fn render_coeff<C: fmt::Display>(c: &C) -> String {
    let s = c.to_string();
    if s.contains(' ') {
        format!("({s})")
    } else {
        s
    }
}

pub fn render_labels(labels: &[DualLabel]) -> String {
    labels.iter().map(ToString::to_string).collect::<Vec<_>>().join("^")
}

impl<C: Coeff> fmt::Display for InvariantForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&self.render_terms().join(" + "))
    }
}

impl<C: Coeff> fmt::Debug for InvariantForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InvariantForm[{}]({self})", self.degree)
    }
}

fn j_on_label(l: DualLabel) -> (FieldElement, DualLabel) {
    match l.0 {
        Label::H(1) => (FieldElement::from_int(-1), DualLabel(Label::H(2))),
        Label::H(_) => (FieldElement::one(), DualLabel(Label::H(1))),
        Label::E(_) => (FieldElement::i(), l),
        Label::Ebar(_) => (-FieldElement::i(), l),
    }
}

/// `α ∧ β`; fails when both carry `λ`-linear coefficients.
pub fn wedge<C: Coeff>(alpha: &InvariantForm<C>, beta: &InvariantForm<C>) -> Result<InvariantForm<C>> {
    let mut out = InvariantForm::zero(alpha.degree + beta.degree);
    for (ka, ca) in &alpha.terms {
        for (kb, cb) in &beta.terms {
            if ka.iter().any(|l| kb.contains(l)) {
                continue;
            }
            let labels: Vec<DualLabel> = ka.iter().chain(kb).copied().collect();
            out.add_term(&labels, ca.try_mul(cb)?);
        }
    }
    Ok(out)
}

/// `α ∧ s` with a scalar-coefficient right factor.
pub fn wedge_scalar<C: Coeff>(alpha: &InvariantForm<C>, s: &ScalarForm) -> InvariantForm<C> {
    let mut out = InvariantForm::zero(alpha.degree + s.degree);
    for (ka, ca) in &alpha.terms {
        for (kb, cb) in &s.terms {
            if ka.iter().any(|l| kb.contains(l)) {
                continue;
            }
            let labels: Vec<DualLabel> = ka.iter().chain(kb).copied().collect();
            out.add_term(&labels, ca.scale(cb));
        }
    }
    out
}

/// `dθ(X, Y) = −θ([X, Y])` for a dual basis covector.
pub fn d_one_form(table: &ComplexBracketTable, theta: DualLabel) -> ScalarForm {
    let mut out = ScalarForm::zero(2);
    let all = Label::all();
    for (p, &a) in all.iter().enumerate() {
        for &b in &all[p + 1..] {
            let c = table.bracket_labels(a, b).coeff(theta.index() + 1);
            if !c.is_zero() {
                out.add_term(&[DualLabel(a), DualLabel(b)], -c);
            }
        }
    }
    out
}

/// The exterior derivative on invariant forms, driven by its values on
/// the 14 dual covectors.
#[derive(Clone, Debug)]
pub struct DTable {
    one_forms: Vec<ScalarForm>,
}

impl DTable {
    pub fn new(table: &ComplexBracketTable) -> Self {
        Self {
            one_forms: DualLabel::all().iter().map(|&l| d_one_form(table, l)).collect(),
        }
    }

    pub fn d_label(&self, l: DualLabel) -> &ScalarForm {
        &self.one_forms[l.index()]
    }

    /// Anti-derivation extension:
    /// `d(θ1∧…∧θk) = Σ_p (−1)^(p−1) θ1∧…∧dθp∧…∧θk`.
    pub fn d<C: Coeff>(&self, alpha: &InvariantForm<C>) -> InvariantForm<C> {
        let mut out = InvariantForm::zero(alpha.degree + 1);
        for (k, c) in &alpha.terms {
            for (p, &l) in k.iter().enumerate() {
                let sign = if p % 2 == 0 { c.clone() } else { c.neg() };
                for (dk, dc) in &self.d_label(l).terms {
                    if dk.iter().any(|x| k.iter().enumerate().any(|(q, y)| q != p && y == x)) {
                        continue;
                    }
                    let mut labels: Vec<DualLabel> = k[..p].to_vec();
                    labels.extend_from_slice(dk);
                    labels.extend_from_slice(&k[p + 1..]);
                    out.add_term(&labels, sign.scale(dc));
                }
            }
        }
        out
    }
}

/// All strictly increasing label tuples of length `k`, in lexicographic order.
pub fn label_tuples(k: usize) -> Vec<Vec<DualLabel>> {
    fn rec(start: usize, k: usize, cur: &mut Vec<DualLabel>, out: &mut Vec<Vec<DualLabel>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..G2_DIM {
            cur.push(DualLabel(Label::from_index(i)));
            rec(i + 1, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, &mut Vec::new(), &mut out);
    out
}

/// The Chevalley–Eilenberg differential from the alternating-sum formula
/// `dα(X0..Xk) = Σ_{i<j} (−1)^(i+j) α([Xi, Xj], X0, …, X̂i, …, X̂j, …, Xk)`,
/// evaluated on basis tuples.
pub fn d_alternating_sum<C: Coeff>(table: &ComplexBracketTable, alpha: &InvariantForm<C>) -> InvariantForm<C> {
    let k = alpha.degree;
    let mut out = InvariantForm::zero(k + 1);
    for tuple in label_tuples(k + 1) {
        let mut total = C::zero();
        for i in 0..=k {
            for j in i + 1..=k {
                let rest: Vec<DualLabel> = tuple
                    .iter()
                    .enumerate()
                    .filter(|&(q, _)| q != i && q != j)
                    .map(|(_, &l)| l)
                    .collect();
                for (lab, c) in table.terms(tuple[i].0, tuple[j].0) {
                    let mut args = vec![DualLabel(lab)];
                    args.extend_from_slice(&rest);
                    let v = alpha.coeff(&args);
                    if v.is_zero() {
                        continue;
                    }
                    let v = v.scale(&c);
                    total = if (i + j) % 2 == 0 { total.add(&v) } else { total.add(&v.neg()) };
                }
            }
        }
        out.add_term(&tuple, total);
    }
    out
}
