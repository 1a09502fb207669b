//! Homogeneous linear forms `c0·λ0 + … + c6·λ6` with coefficients in
//! `Q(√3, i)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{parse_err, FieldElement};

pub const N_LAMBDA: usize = 7;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LambdaLinear {
    coeffs: [FieldElement; N_LAMBDA],
}

impl LambdaLinear {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The variable `λ_k`.
    pub fn var(k: usize) -> Self {
        let mut l = Self::zero();
        l.coeffs[k] = FieldElement::one();
        l
    }

    pub fn from_coeffs(coeffs: [FieldElement; N_LAMBDA]) -> Self {
        Self { coeffs }
    }

    pub fn from_ints(xs: [i64; N_LAMBDA]) -> Self {
        Self::from_coeffs(xs.map(FieldElement::from_int))
    }

    pub fn coeffs(&self) -> &[FieldElement; N_LAMBDA] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &FieldElement {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_coeffs(std::array::from_fn(|k| &self.coeffs[k] + &o.coeffs[k]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_coeffs(std::array::from_fn(|k| &self.coeffs[k] - &o.coeffs[k]))
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(std::array::from_fn(|k| -&self.coeffs[k]))
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        Self::from_coeffs(std::array::from_fn(|k| &self.coeffs[k] * s))
    }

    /// Conjugates the coefficients; the `λ`'s are real.
    pub fn conjugate(&self) -> Self {
        Self::from_coeffs(std::array::from_fn(|k| self.coeffs[k].conjugate()))
    }

    pub fn real_part(&self) -> Self {
        Self::from_coeffs(std::array::from_fn(|k| self.coeffs[k].real_part()))
    }

    pub fn imag_part(&self) -> Self {
        Self::from_coeffs(std::array::from_fn(|k| self.coeffs[k].imag_part()))
    }

    pub fn evaluate(&self, lambda: &[FieldElement; N_LAMBDA]) -> FieldElement {
        self.coeffs.iter().zip(lambda).map(|(c, l)| c * l).sum()
    }

    /// Replaces each `λ_k` by `images[k]`.
    pub fn substitute(&self, images: &[LambdaLinear; N_LAMBDA]) -> Self {
        self.coeffs
            .iter()
            .zip(images)
            .filter(|(c, _)| !c.is_zero())
            .fold(Self::zero(), |acc, (c, img)| acc.add(&img.scale(c)))
    }
}

/// A coefficient with exactly one nonzero rational component renders
/// without parentheses; its sign is pulled out.
fn split_sign(c: &FieldElement) -> (bool, String) {
    let parts = [c.a(), c.b(), c.c(), c.d()];
    let nonzero: Vec<_> = parts.into_iter().filter(|q| !num_traits::Zero::is_zero(*q)).collect();
    if nonzero.len() == 1 {
        let neg = num_traits::Signed::is_negative(nonzero[0]);
        let mag = if neg { -c } else { c.clone() };
        let s = mag.to_string();
        (neg, if s == "1" { String::new() } else { s })
    } else {
        (false, format!("({c})"))
    }
}

/// Renders e.g. `1/6 λ3 - 1/4 λ5 + 1/12 λ6`, or `0`.
impl fmt::Display for LambdaLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = split_sign(c);
            let term = if body.is_empty() {
                format!("λ{k}")
            } else {
                format!("{body} λ{k}")
            };
            match (first, neg) {
                (true, true) => write!(f, "-{term}")?,
                (true, false) => write!(f, "{term}")?,
                (false, true) => write!(f, " - {term}")?,
                (false, false) => write!(f, " + {term}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LambdaLinear({self})")
    }
}

/// Splits at top-level `+`/`-`, leaving parenthesized coefficients intact.
fn split_top_level(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(parse_err(s, "unbalanced parentheses"));
        }
        let is_sign = (ch == '+' || ch == '-') && depth == 0;
        let after_op = matches!(prev, None | Some('/') | Some('*') | Some('+') | Some('-'));
        if is_sign && !after_op {
            out.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if is_sign && prev.is_none() {
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    if depth != 0 {
        return Err(parse_err(s, "unbalanced parentheses"));
    }
    out.push((neg, cur));
    Ok(out)
}

/// Parses `Display` output; `l` is accepted as a spelling of `λ`.
impl FromStr for LambdaLinear {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(parse_err(s, "empty input"));
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for (neg, term) in split_top_level(&compact)? {
            let cut = term
                .rfind(['λ', 'l'])
                .ok_or_else(|| parse_err(s, "term without a lambda variable"))?;
            let var_len = term[cut..].chars().next().map_or(1, char::len_utf8);
            let k: usize = term[cut + var_len..]
                .parse()
                .map_err(|_| parse_err(s, "bad lambda index"))?;
            if k >= N_LAMBDA {
                return Err(parse_err(s, "lambda index out of range"));
            }
            let coef = term[..cut].trim_end_matches('*');
            let coef = coef.strip_prefix('(').and_then(|c| c.strip_suffix(')')).unwrap_or(coef);
            let mut c = if coef.is_empty() {
                FieldElement::one()
            } else {
                coef.parse()?
            };
            if neg {
                c = -c;
            }
            out.coeffs[k] += &c;
        }
        Ok(out)
    }
}
