//! Reference tables compiled into the crate, with parsers.
//!
//! Every table is plain text. A relation or form line has the shape
//! `lhs = t1 + t2 - t3`, where each term is an optional coefficient followed
//! by a label token. Coefficients use the `FieldElement` text grammar
//! (`-2*sqrt3*i`); `λ`-linear coefficients are parenthesized. Form labels are
//! `^`-joined dual labels in any order; the parser applies the permutation
//! sign. Parsed tables are oracles for the computed objects, never inputs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::forms::{Coeff, DualLabel, InvariantForm, LambdaForm, ScalarForm};
use crate::g2::{AlgebraElement, RealTerms, G2_DIM};
use crate::lambda::{LambdaLinear, N_LAMBDA};
use crate::roots::{ComplexTerms, Label};
use crate::scalar::{parse_err, FieldElement};
use crate::skt::parse_in_a;

/// Nonzero brackets of the real basis `b1 … b14`.
pub const REAL_BRACKETS: &str = "\
[b1,b2] = -b4
[b1,b3] = -2 b7
[b1,b4] = b2
[b1,b5] = -b6
[b1,b6] = b5
[b1,b7] = 2 b3
[b1,b8] = b3
[b1,b9] = b7
[b1,b10] = b5 + b11
[b1,b11] = b6 - b10
[b1,b13] = b14
[b1,b14] = -b13
[b2,b3] = -b5 - b11
[b2,b4] = -b1
[b2,b5] = -b9
[b2,b6] = b8
[b2,b7] = -b10
[b2,b8] = -2 b10
[b2,b9] = b5
[b2,b10] = 2 b8
[b2,b11] = b3 + b9
[b2,b12] = b13
[b2,b13] = -b12
[b3,b4] = -b10
[b3,b5] = b14
[b3,b6] = -b13
[b3,b7] = -2 b1
[b3,b8] = -b1
[b3,b10] = b4
[b3,b11] = -b2 - b14
[b3,b12] = -b7
[b3,b13] = b6
[b3,b14] = -b5
[b4,b5] = b7 - b8
[b4,b6] = -b3 - b9
[b4,b7] = -b5 - b11
[b4,b8] = b5 + b11
[b4,b9] = b6 - b10
[b4,b10] = -b3
[b4,b11] = b7 - b8
[b4,b12] = -b14
[b4,b14] = b12
[b5,b6] = -2 b1 - 2 b12
[b5,b7] = -b13
[b5,b8] = -b4 - b13
[b5,b9] = -b2
[b5,b10] = -b1 - b12
[b5,b12] = b6
[b5,b13] = b7
[b5,b14] = b3
[b6,b7] = -b14
[b6,b8] = b2
[b6,b9] = -b4 - b13
[b6,b11] = -b1 - b12
[b6,b12] = -b5
[b6,b13] = -b3
[b6,b14] = b7
[b7,b9] = -b1
[b7,b10] = -b2
[b7,b11] = -b4 - b13
[b7,b12] = b3
[b7,b13] = -b5
[b7,b14] = -b6
[b8,b9] = -b1 - b12
[b8,b10] = -2 b2
[b8,b11] = -b13
[b8,b12] = b3 + b9
[b8,b13] = b11
[b8,b14] = -b10
[b9,b10] = -b4 - b13
[b9,b11] = -b2 - b14
[b9,b12] = b7 - b8
[b9,b13] = -b6 + b10
[b9,b14] = b5 + b11
[b10,b11] = -b12
[b10,b12] = b11
[b10,b13] = -b3 - b9
[b10,b14] = b8
[b11,b12] = -b10
[b11,b13] = -b8
[b11,b14] = -b3 - b9
[b12,b13] = -2 b14
[b12,b14] = 2 b13
[b13,b14] = -2 b12
";

/// Nonzero brackets of the complex basis `H1, H2, E1 … E6, E1bar … E6bar`.
pub const COMPLEX_BRACKETS: &str = "\
[H1,E1] = i E1
[H1,E2] = i E2
[H1,E3] = i E3
[H1,E4] = i E4
[H1,E5] = 2*i E5
[H1,E1bar] = -i E1bar
[H1,E2bar] = -i E2bar
[H1,E3bar] = -i E3bar
[H1,E4bar] = -i E4bar
[H1,E5bar] = -2*i E5bar
[H2,E1] = -sqrt3*i E1
[H2,E2] = sqrt3*i E2
[H2,E3] = -1/3*sqrt3*i E3
[H2,E4] = 1/3*sqrt3*i E4
[H2,E6] = 2/3*sqrt3*i E6
[H2,E1bar] = sqrt3*i E1bar
[H2,E2bar] = -sqrt3*i E2bar
[H2,E3bar] = 1/3*sqrt3*i E3bar
[H2,E4bar] = -1/3*sqrt3*i E4bar
[H2,E6bar] = -2/3*sqrt3*i E6bar
[E1,E2] = 2 E5
[E1,E6] = -2*i E3
[E1,E1bar] = 2*i H1 - 2*sqrt3*i H2
[E1,E3bar] = 2*i E6bar
[E1,E5bar] = -2 E2bar
[E2,E2bar] = 2*i H1 + 2*sqrt3*i H2
[E2,E4bar] = 2*i E6
[E2,E5bar] = 2 E1bar
[E2,E6bar] = -2*i E4
[E3,E4] = -6 E5
[E3,E6] = 4*i E4
[E3,E1bar] = 2*i E6
[E3,E3bar] = 6*i H1 - 2*sqrt3*i H2
[E3,E4bar] = -4*i E6bar
[E3,E5bar] = 2 E4bar
[E3,E6bar] = -6*i E1
[E4,E6] = -6*i E2
[E4,E2bar] = 2*i E6bar
[E4,E3bar] = -4*i E6
[E4,E4bar] = 6*i H1 + 2*sqrt3*i H2
[E4,E5bar] = -2 E3bar
[E4,E6bar] = 4*i E3
[E5,E1bar] = 2 E2
[E5,E2bar] = -2 E1
[E5,E3bar] = -2 E4
[E5,E4bar] = 2 E3
[E5,E5bar] = 4*i H1
[E6,E2bar] = -2*i E4bar
[E6,E3bar] = -6*i E1bar
[E6,E4bar] = 4*i E3bar
[E6,E6bar] = 4*sqrt3*i H2
[E1bar,E2bar] = 2 E5bar
[E1bar,E6bar] = 2*i E3bar
[E3bar,E4bar] = -6 E5bar
[E3bar,E6bar] = -4*i E4bar
[E4bar,E6bar] = 6*i E2bar
";

/// The complex basis in real coordinates.
pub const ROOT_VECTORS: &str = "\
H1 = b1
H2 = -1/3*sqrt3 b1 - 2/3*sqrt3 b12
E1 = b5 + i b6
E2 = b14 + i b13
E3 = 2 b2 + b14 + 2*i b4 + i b13
E4 = -b5 - 2 b11 + i b6 - 2*i b10
E5 = b3 + i b7
E6 = b7 - 2 b8 + i b3 + 2*i b9
";

/// Root values, columns: on `b1`, on `b12`, on `H1`, on `H2`.
pub const ROOT_VALUES: &str = "\
E1 | i | i | i | -sqrt3*i
E2 | i | -2*i | i | sqrt3*i
E3 | i | 0 | i | -1/3*sqrt3*i
E4 | i | -i | i | 1/3*sqrt3*i
E5 | 2*i | -i | 2*i | 0
E6 | 0 | -i | 0 | 2/3*sqrt3*i
";

/// The real basis in complex coordinates.
pub const CHANGE_OF_BASIS: &str = "\
b1 = H1
b12 = -1/2 H1 - 1/2*sqrt3 H2
b2 = 1/4 E3 + 1/4 E3bar - 1/4 E2 - 1/4 E2bar
b3 = 1/2 E5 + 1/2 E5bar
b4 = -1/4*i E3 + 1/4*i E3bar + 1/4*i E2 - 1/4*i E2bar
b5 = 1/2 E1 + 1/2 E1bar
b6 = -1/2*i E1 + 1/2*i E1bar
b7 = -1/2*i E5 + 1/2*i E5bar
b8 = -1/4 E6 - 1/4 E6bar - 1/4*i E5 + 1/4*i E5bar
b9 = -1/4 E5 - 1/4 E5bar - 1/4*i E6 + 1/4*i E6bar
b10 = 1/4*i E4 - 1/4*i E4bar - 1/4*i E1 + 1/4*i E1bar
b11 = -1/4 E4 - 1/4 E4bar - 1/4 E1 - 1/4 E1bar
b13 = -1/2*i E2 + 1/2*i E2bar
b14 = 1/2 E2 + 1/2 E2bar
";

/// The complex structure on the real basis.
pub const J_REAL: &str = "\
J b1 = -1/3*sqrt3 b1 - 2/3*sqrt3 b12
J b2 = -b4
J b3 = -b7
J b4 = b2
J b5 = -b6
J b6 = b5
J b7 = b3
J b8 = b3 + b9
J b9 = b7 - b8
J b10 = b5 + b11
J b11 = b6 - b10
J b12 = 2/3*sqrt3 b1 + 1/3*sqrt3 b12
J b13 = b14
J b14 = -b13
";

/// Nonzero Killing pairings on the complex basis, `a ≤ b`.
pub const KILLING_COMPLEX: &str = "\
K(H1,H1) = -16
K(H2,H2) = -16
K(E1,E1bar) = -32
K(E2,E2bar) = -32
K(E5,E5bar) = -32
K(E3,E3bar) = -96
K(E4,E4bar) = -96
K(E6,E6bar) = -96
";

/// `K(b1, b1)`.
pub const KILLING_B1_B1: i64 = -16;

/// Nonzero components, `p ≤ q`, of the seven-parameter Hermitian family.
pub const HERMITIAN_ENTRIES: &str = "\
g(b1,b1) = g(b12,b12) = λ0
g(b1,b12) = -1/2 λ0
g(b2,b2) = 1/8 λ2 + 1/8 λ3
g(b2,b14) = -1/4 λ2
g(b3,b3) = 1/2 λ5
g(b3,b9) = -1/4 λ5
g(b4,b4) = 1/8 λ2 + 1/8 λ3
g(b4,b13) = -1/4 λ2
g(b5,b5) = 1/2 λ1
g(b5,b11) = -1/4 λ1
g(b6,b6) = 1/2 λ1
g(b6,b10) = 1/4 λ1
g(b7,b7) = 1/2 λ5
g(b7,b8) = 1/4 λ5
g(b8,b8) = g(b9,b9) = 1/8 λ5 + 1/8 λ6
g(b10,b10) = g(b11,b11) = 1/8 λ1 + 1/8 λ4
g(b13,b13) = g(b14,b14) = 1/2 λ2
";

/// Exterior derivatives of the dual basis.
pub const D_TABLE: &str = "\
dH1* = -2*i E1*^E1bar* - 2*i E2*^E2bar* - 6*i E3*^E3bar* - 6*i E4*^E4bar* - 4*i E5*^E5bar*
dH2* = 2*sqrt3*i E1*^E1bar* - 2*sqrt3*i E2*^E2bar* + 2*sqrt3*i E3*^E3bar* - 2*sqrt3*i E4*^E4bar* - 4*sqrt3*i E6*^E6bar*
dE1* = -i H1*^E1* + sqrt3*i H2*^E1* + 6*i E3*^E6bar* + 2 E5*^E2bar*
dE2* = -i H1*^E2* - sqrt3*i H2*^E2* + 6*i E4*^E6* - 2 E5*^E1bar*
dE3* = -i H1*^E3* + 1/3*sqrt3*i H2*^E3* + 2*i E1*^E6* - 4*i E4*^E6bar* - 2 E5*^E4bar*
dE4* = -i H1*^E4* - 1/3*sqrt3*i H2*^E4* + 2*i E2*^E6bar* - 4*i E3*^E6* + 2 E5*^E3bar*
dE5* = -2*i H1*^E5* - 2 E1*^E2* + 6 E3*^E4*
dE6* = -2/3*sqrt3*i H2*^E6* - 2*i E2*^E4bar* - 2*i E3*^E1bar* + 4*i E4*^E3bar*
dE1bar* = i H1*^E1bar* - sqrt3*i H2*^E1bar* - 2 E2*^E5bar* + 6*i E6*^E3bar*
dE2bar* = i H1*^E2bar* + sqrt3*i H2*^E2bar* + 2 E1*^E5bar* - 6*i E4bar*^E6bar*
dE3bar* = i H1*^E3bar* - 1/3*sqrt3*i H2*^E3bar* + 2 E4*^E5bar* - 4*i E6*^E4bar* - 2*i E1bar*^E6bar*
dE4bar* = i H1*^E4bar* + 1/3*sqrt3*i H2*^E4bar* - 2 E3*^E5bar* + 2*i E6*^E2bar* + 4*i E3bar*^E6bar*
dE5bar* = 2*i H1*^E5bar* - 2 E1bar*^E2bar* + 6 E3bar*^E4bar*
dE6bar* = 2/3*sqrt3*i H2*^E6bar* - 2*i E1*^E3bar* + 4*i E3*^E4bar* - 2*i E4*^E2bar*
";

/// The torsion 3-form, one term per line.
pub const TORSION_C: &str = "\
(-2*i λ0) H1*^E1*^E1bar*
(-2*i λ0) H1*^E2*^E2bar*
(-6*i λ0) H1*^E3*^E3bar*
(-6*i λ0) H1*^E4*^E4bar*
(-4*i λ0) H1*^E5*^E5bar*
(2*sqrt3*i λ0) H2*^E1*^E1bar*
(-2*sqrt3*i λ0) H2*^E2*^E2bar*
(2*sqrt3*i λ0) H2*^E3*^E3bar*
(-2*sqrt3*i λ0) H2*^E4*^E4bar*
(-4*sqrt3*i λ0) H2*^E6*^E6bar*
(-6*i λ1 + 2*i λ3 - 2*i λ6) E3*^E1bar*^E6bar*
(-2 λ1 - 2 λ2 + 2 λ5) E5*^E1bar*^E2bar*
(-2 λ1 - 2 λ2 + 2 λ5) E1*^E2*^E5bar*
(6*i λ1 - 2*i λ3 + 2*i λ6) E1*^E6*^E3bar*
(-6*i λ2 + 2*i λ4 + 2*i λ6) E4*^E6*^E2bar*
(6*i λ2 - 2*i λ4 - 2*i λ6) E2*^E4bar*^E6bar*
(4*i λ3 - 4*i λ4 + 4*i λ6) E4*^E3bar*^E6bar*
(2 λ3 + 2 λ4 - 6 λ5) E5*^E3bar*^E4bar*
(2 λ3 + 2 λ4 - 6 λ5) E3*^E4*^E5bar*
(-4*i λ3 + 4*i λ4 - 4*i λ6) E3*^E6*^E4bar*
";

/// The exterior derivative of the torsion, one term per line.
pub const TORSION_DC: &str = "\
(-16 λ0 + 8 λ1 + 8 λ2 - 8 λ5) E1*^E2*^E1bar*^E2bar*
(48 λ0 - 24 λ1 + 8 λ3 - 8 λ6) E1*^E3*^E1bar*^E3bar*
(16 λ0 - 8 λ1 - 8 λ2 + 8 λ5) E1*^E5*^E1bar*^E5bar*
(48 λ0 + 24 λ2 - 8 λ4 - 8 λ6) E2*^E4*^E2bar*^E4bar*
(16 λ0 - 8 λ1 - 8 λ2 + 8 λ5) E2*^E5*^E2bar*^E5bar*
(48 λ0 - 8 λ3 + 56 λ4 - 72 λ5 - 32 λ6) E3*^E4*^E3bar*^E4bar*
(48 λ0 - 8 λ3 - 8 λ4 + 24 λ5) E3*^E5*^E3bar*^E5bar*
(48 λ0 - 8 λ3 - 8 λ4 + 24 λ5) E4*^E5*^E4bar*^E5bar*
(-48 λ0 + 24 λ1 - 8 λ3 + 8 λ6) E1*^E6*^E1bar*^E6bar*
(48 λ0 + 24 λ2 - 8 λ4 - 8 λ6) E2*^E6*^E2bar*^E6bar*
(-48 λ0 - 72 λ1 + 56 λ3 - 32 λ4 + 8 λ6) E3*^E6*^E3bar*^E6bar*
(48 λ0 - 72 λ2 - 32 λ3 + 56 λ4 - 8 λ6) E4*^E6*^E4bar*^E6bar*
(24*i λ1 + 24*i λ2 - 8*i λ3 - 8*i λ4) E2*^E3*^E5bar*^E6bar*
(-24*i λ1 - 24*i λ2 + 8*i λ3 + 8*i λ4) E5*^E6*^E2bar*^E3bar*
(-24 λ2 - 8 λ3 + 24 λ5 + 8 λ6) E3*^E4*^E1bar*^E2bar*
(-24 λ2 - 8 λ3 + 24 λ5 + 8 λ6) E1*^E2*^E3bar*^E4bar*
";

/// The pinned parameters of the SKT solution.
pub const SKT_SOLUTION: &str = "\
λ0 = 1/6 λ3 - 1/4 λ5 + 1/12 λ6
λ1 = 2/3 λ3 - 1/2 λ5 - 1/6 λ6
λ2 = -1/3 λ3 + λ5 + 1/3 λ6
λ4 = 3/2 λ5 + 1/2 λ6
";

/// Nonzero components, `p ≤ q`, of the SKT metric in `a1, a2, a3`.
pub const SKT_METRIC_ENTRIES: &str = "\
g(b1,b1) = g(b12,b12) = (2 a1 - 3 a2 + a3)/12
g(b1,b12) = -(2 a1 - 3 a2 + a3)/24
g(b2,b2) = (2 a1 + 3 a2 + a3)/24
g(b2,b14) = -(-a1 + 3 a2 + a3)/12
g(b3,b3) = 1/2 a2
g(b3,b9) = -1/4 a2
g(b4,b4) = (2 a1 + 3 a2 + a3)/24
g(b4,b13) = -(-a1 + 3 a2 + a3)/12
g(b5,b5) = (4 a1 - 3 a2 - a3)/12
g(b5,b11) = -(4 a1 - 3 a2 - a3)/24
g(b6,b6) = (4 a1 - 3 a2 - a3)/12
g(b6,b10) = (4 a1 - 3 a2 - a3)/24
g(b7,b7) = 1/2 a2
g(b7,b8) = 1/4 a2
g(b8,b8) = g(b9,b9) = 1/8 a2 + 1/8 a3
g(b10,b10) = g(b11,b11) = (2 a1 + 3 a2 + a3)/24
g(b13,b13) = g(b14,b14) = (-a1 + 3 a2 + a3)/6
";

/// `λ0 … λ6` of the bi-invariant metric `−K`.
pub const BIINVARIANT_LAMBDAS: [i64; N_LAMBDA] = [16, 32, 32, 96, 96, 32, 96];

/// `(a1, a2, a3)` of the bi-invariant metric `−K`.
pub const BIINVARIANT_A: [i64; 3] = [96, 32, 96];

/// Non-empty, trimmed lines.
fn lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty())
}

fn split_eq(line: &str) -> Result<(&str, &str)> {
    line.split_once(" = ")
        .map(|(l, r)| (l.trim(), r.trim()))
        .ok_or_else(|| parse_err(line, "missing ` = `"))
}

/// Splits `t1 + t2 - t3` into `(negated, tokens)` at top-level signs.
fn signed_terms(rhs: &str) -> Result<Vec<(bool, Vec<&str>)>> {
    let mut out: Vec<(bool, Vec<&str>)> = Vec::new();
    let mut cur: Vec<&str> = Vec::new();
    let mut neg = false;
    let mut depth = 0i32;
    for tok in rhs.split_whitespace() {
        if depth == 0 && (tok == "+" || tok == "-") {
            if cur.is_empty() {
                return Err(parse_err(rhs, "dangling sign"));
            }
            out.push((neg, std::mem::take(&mut cur)));
            neg = tok == "-";
            continue;
        }
        depth += tok.matches('(').count() as i32 - tok.matches(')').count() as i32;
        cur.push(tok);
    }
    if cur.is_empty() || depth != 0 {
        return Err(parse_err(rhs, "malformed term list"));
    }
    out.push((neg, cur));
    Ok(out)
}

/// `(coefficient, label token)` pairs; a missing coefficient is one, and a
/// bare `-label` is minus one.
fn terms<C: Coeff>(rhs: &str, parse: impl Fn(&str) -> Result<C>) -> Result<Vec<(C, String)>> {
    let mut out = Vec::new();
    for (neg, toks) in signed_terms(rhs)? {
        let (label, coef) = toks.split_last().expect("non-empty term");
        let (label, bare_neg) = match label.strip_prefix('-') {
            Some(rest) if coef.is_empty() => (rest, true),
            _ => (*label, false),
        };
        let coef = coef.join(" ");
        let coef = coef
            .strip_prefix('(')
            .and_then(|c| c.strip_suffix(')'))
            .unwrap_or(&coef);
        let mut c = parse(if coef.is_empty() { "1" } else { coef })?;
        if neg != bare_neg {
            c = c.neg();
        }
        out.push((c, label.to_string()));
    }
    Ok(out)
}

fn scalar(s: &str) -> Result<FieldElement> {
    s.parse()
}

fn b_index(s: &str) -> Result<usize> {
    s.strip_prefix('b')
        .and_then(|k| k.parse().ok())
        .filter(|k| (1..=G2_DIM).contains(k))
        .ok_or_else(|| Error::UnknownLabel(s.to_string()))
}

fn pair<'a>(s: &'a str, open: &str, close: char) -> Result<(&'a str, &'a str)> {
    s.strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .and_then(|r| r.split_once(','))
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| parse_err(s, "expected a bracketed pair"))
}

fn real_element(rhs: &str) -> Result<AlgebraElement> {
    let mut coeffs = vec![FieldElement::zero(); G2_DIM];
    for (c, l) in terms(rhs, scalar)? {
        coeffs[b_index(&l)? - 1] += &c;
    }
    Ok(AlgebraElement::from_coeffs(coeffs))
}

/// An element in complex-basis coordinates, slot `label.index()`.
fn complex_element(rhs: &str) -> Result<AlgebraElement> {
    let mut coeffs = vec![FieldElement::zero(); G2_DIM];
    for (c, l) in terms(rhs, scalar)? {
        coeffs[l.parse::<Label>()?.index()] += &c;
    }
    Ok(AlgebraElement::from_coeffs(coeffs))
}

fn dual_labels(tok: &str) -> Result<Vec<DualLabel>> {
    tok.split('^').map(str::parse).collect()
}

fn form_from_terms<C: Coeff>(degree: Option<usize>, ts: Vec<(C, String)>) -> Result<InvariantForm<C>> {
    let mut parsed = Vec::with_capacity(ts.len());
    for (c, l) in ts {
        parsed.push((c, dual_labels(&l)?));
    }
    let degree = degree
        .or_else(|| parsed.first().map(|(_, l)| l.len()))
        .ok_or_else(|| parse_err("", "empty form"))?;
    let mut out = InvariantForm::zero(degree);
    for (c, l) in parsed {
        if l.len() != degree {
            return Err(Error::DegreeOverflow(l.len()));
        }
        out.add_term(&l, c);
    }
    Ok(out)
}

/// Relations `[b_i, b_j] = Σ c_k b_k` keyed by `(i, j)` with `i < j`.
pub fn parse_real_brackets(text: &str) -> Result<BTreeMap<(usize, usize), RealTerms>> {
    let mut out = BTreeMap::new();
    for line in lines(text) {
        let (lhs, rhs) = split_eq(line)?;
        let (a, b) = pair(lhs, "[", ']')?;
        let (i, j) = (b_index(a)?, b_index(b)?);
        let x = real_element(rhs)?;
        let (key, x) = if i < j { ((i, j), x) } else { ((j, i), x.scale(&FieldElement::from_int(-1))) };
        let mut ts = Vec::new();
        for (k, c) in x.support() {
            let q = c.as_rational().ok_or_else(|| parse_err(line, "non-rational constant"))?;
            ts.push((k, q.clone()));
        }
        if out.insert(key, ts).is_some() {
            return Err(parse_err(line, "duplicate pair"));
        }
    }
    Ok(out)
}

/// Relations on complex-basis labels keyed by `(a, b)` with `a < b`, terms
/// in label order.
pub fn parse_complex_brackets(text: &str) -> Result<BTreeMap<(Label, Label), ComplexTerms>> {
    let mut out = BTreeMap::new();
    for line in lines(text) {
        let (lhs, rhs) = split_eq(line)?;
        let (a, b) = pair(lhs, "[", ']')?;
        let (a, b): (Label, Label) = (a.parse()?, b.parse()?);
        let mut x = complex_element(rhs)?;
        let key = if a < b {
            (a, b)
        } else {
            x = x.scale(&FieldElement::from_int(-1));
            (b, a)
        };
        let ts: Vec<_> = x.support().map(|(k, c)| (Label::from_index(k - 1), c.clone())).collect();
        if out.insert(key, ts).is_some() {
            return Err(parse_err(line, "duplicate pair"));
        }
    }
    Ok(out)
}

/// Complex-basis labels with their real coordinates.
pub fn parse_root_vectors(text: &str) -> Result<Vec<(Label, AlgebraElement)>> {
    lines(text)
        .map(|line| {
            let (lhs, rhs) = split_eq(line)?;
            Ok((lhs.parse()?, real_element(rhs)?))
        })
        .collect()
}

/// Values of each root on `b1`, `b12`, `H1`, `H2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootValues {
    pub label: Label,
    pub on_b1: FieldElement,
    pub on_b12: FieldElement,
    pub on_h1: FieldElement,
    pub on_h2: FieldElement,
}

pub fn parse_root_values(text: &str) -> Result<Vec<RootValues>> {
    lines(text)
        .map(|line| {
            let cols: Vec<&str> = line.split('|').map(str::trim).collect();
            let [label, b1, b12, h1, h2] = cols[..] else {
                return Err(parse_err(line, "expected five columns"));
            };
            Ok(RootValues {
                label: label.parse()?,
                on_b1: b1.parse()?,
                on_b12: b12.parse()?,
                on_h1: h1.parse()?,
                on_h2: h2.parse()?,
            })
        })
        .collect()
}

/// Real basis index with complex coordinates (slot `label.index()`).
pub fn parse_change_of_basis(text: &str) -> Result<Vec<(usize, AlgebraElement)>> {
    lines(text)
        .map(|line| {
            let (lhs, rhs) = split_eq(line)?;
            Ok((b_index(lhs)?, complex_element(rhs)?))
        })
        .collect()
}

/// `J b_k` in real coordinates.
pub fn parse_j_real(text: &str) -> Result<Vec<(usize, AlgebraElement)>> {
    lines(text)
        .map(|line| {
            let (lhs, rhs) = split_eq(line)?;
            let k = lhs
                .strip_prefix("J ")
                .ok_or_else(|| parse_err(line, "expected `J b_k`"))?;
            Ok((b_index(k.trim())?, real_element(rhs)?))
        })
        .collect()
}

pub fn parse_killing_complex(text: &str) -> Result<BTreeMap<(Label, Label), FieldElement>> {
    let mut out = BTreeMap::new();
    for line in lines(text) {
        let (lhs, rhs) = split_eq(line)?;
        let (a, b) = pair(lhs, "K(", ')')?;
        let (a, b): (Label, Label) = (a.parse()?, b.parse()?);
        out.insert((a.min(b), a.max(b)), rhs.parse()?);
    }
    Ok(out)
}

/// `g(b_p, b_q)` chains; each left-hand side receives the right-hand side.
fn parse_entries(
    text: &str,
    value: impl Fn(&str) -> Result<LambdaLinear>,
) -> Result<BTreeMap<(usize, usize), LambdaLinear>> {
    let mut out = BTreeMap::new();
    for line in lines(text) {
        let parts: Vec<&str> = line.split(" = ").map(str::trim).collect();
        let (rhs, lhss) = parts
            .split_last()
            .filter(|(_, l)| !l.is_empty())
            .ok_or_else(|| parse_err(line, "missing ` = `"))?;
        let v = value(rhs)?;
        for lhs in lhss {
            let (p, q) = pair(lhs, "g(", ')')?;
            let (p, q) = (b_index(p)?, b_index(q)?);
            if out.insert((p.min(q), p.max(q)), v.clone()).is_some() {
                return Err(parse_err(line, "duplicate entry"));
            }
        }
    }
    Ok(out)
}

pub fn parse_hermitian_entries(text: &str) -> Result<BTreeMap<(usize, usize), LambdaLinear>> {
    parse_entries(text, |s| s.parse())
}

/// Accepts `expr`, `(expr)/n` and `-(expr)/n` with `expr` linear in
/// `a1, a2, a3`.
pub fn parse_a_expression(s: &str) -> Result<LambdaLinear> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(r) if r.starts_with('(') => (true, r),
        _ => (false, s),
    };
    let (inner, den) = match body.strip_prefix('(').and_then(|r| r.rsplit_once(")/")) {
        Some((inner, den)) => (inner, den.trim().parse::<i64>().map_err(|_| parse_err(s, "bad denominator"))?),
        None => (body, 1),
    };
    let l = parse_in_a(inner)?.scale(&FieldElement::frac(1, den));
    Ok(if neg { l.neg() } else { l })
}

pub fn parse_skt_metric_entries(text: &str) -> Result<BTreeMap<(usize, usize), LambdaLinear>> {
    parse_entries(text, parse_a_expression)
}

/// Exterior derivatives keyed by the differentiated label.
pub fn parse_d_table(text: &str) -> Result<Vec<(DualLabel, ScalarForm)>> {
    lines(text)
        .map(|line| {
            let (lhs, rhs) = split_eq(line)?;
            let l = lhs
                .strip_prefix('d')
                .ok_or_else(|| parse_err(line, "expected `d<label>*`"))?
                .parse()?;
            Ok((l, form_from_terms(Some(2), terms(rhs, scalar)?)?))
        })
        .collect()
}

/// One `(coefficient) labels` term per line.
pub fn parse_lambda_form(text: &str) -> Result<LambdaForm> {
    let mut ts = Vec::new();
    for line in lines(text) {
        ts.extend(terms(line, |s| s.parse::<LambdaLinear>())?);
    }
    form_from_terms(None, ts)
}

/// Number of term lines, before any normalization.
pub fn term_lines(text: &str) -> usize {
    lines(text).count()
}

pub fn parse_skt_solution(text: &str) -> Result<BTreeMap<usize, LambdaLinear>> {
    let mut out = BTreeMap::new();
    for line in lines(text) {
        let (lhs, rhs) = split_eq(line)?;
        let k = lhs
            .strip_prefix('λ')
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|&k| k < N_LAMBDA)
            .ok_or_else(|| parse_err(line, "expected `λk`"))?;
        out.insert(k, rhs.parse()?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_sizes() {
        assert_eq!(parse_real_brackets(REAL_BRACKETS).unwrap().len(), 84);
        assert_eq!(parse_complex_brackets(COMPLEX_BRACKETS).unwrap().len(), 56);
        assert_eq!(parse_root_vectors(ROOT_VECTORS).unwrap().len(), 8);
        assert_eq!(parse_root_values(ROOT_VALUES).unwrap().len(), 6);
        assert_eq!(parse_change_of_basis(CHANGE_OF_BASIS).unwrap().len(), 14);
        assert_eq!(parse_j_real(J_REAL).unwrap().len(), 14);
        assert_eq!(parse_killing_complex(KILLING_COMPLEX).unwrap().len(), 8);
        assert_eq!(parse_hermitian_entries(HERMITIAN_ENTRIES).unwrap().len(), 21);
        assert_eq!(parse_skt_metric_entries(SKT_METRIC_ENTRIES).unwrap().len(), 21);
        assert_eq!(parse_d_table(D_TABLE).unwrap().len(), 14);
        assert_eq!(parse_lambda_form(TORSION_C).unwrap().len(), 20);
        assert_eq!(parse_lambda_form(TORSION_DC).unwrap().len(), 16);
        assert_eq!(parse_skt_solution(SKT_SOLUTION).unwrap().len(), 4);
    }

    #[test]
    fn term_grammar() {
        let t = parse_real_brackets("[b2,b1] = b4\n[b5,b6] = -2 b1 - 2 b12").unwrap();
        assert_eq!(t[&(1, 2)], vec![(4, crate::scalar::int(-1))]);
        assert_eq!(t[&(5, 6)].len(), 2);
        let d = parse_d_table("dE5* = -2*i E5*^H1*").unwrap();
        let f = &d[0].1;
        assert_eq!(f.coeff(&dual_labels("H1*^E5*").unwrap()), FieldElement::i().scale(&crate::scalar::int(2)));
        assert_eq!(
            parse_a_expression("-(2 a1 - 3 a2 + a3)/24").unwrap(),
            parse_in_a("-1/12 a1 + 1/8 a2 - 1/24 a3").unwrap()
        );
        assert!(parse_real_brackets("[b1,b15] = b2").is_err());
        assert!(parse_real_brackets("[b1,b2] -b4").is_err());
        assert!(parse_lambda_form("(λ0 E1*").is_err());
    }
}
