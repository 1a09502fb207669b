//! Exact arithmetic in Q(√3, i).
//!
//! An element is stored as `re + im·i` where `re` and `im` are elements of
//! Q(√3), each written `rat + irr·√3`. The four rationals are the coordinates
//! of the element in the fixed basis {1, √3, i, √3·i}, so equality is
//! componentwise and the representation is unique.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub const SQRT3_F64: f64 = 1.732_050_807_568_877_2;

/// Build a rational from a numerator and a nonzero denominator.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// An element `rat + irr·√3` of the real quadratic field Q(√3).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    pub rat: Rational,
    pub irr: Rational,
}

impl Surd {
    pub fn new(rat: Rational, irr: Rational) -> Self {
        Self { rat, irr }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    fn mul_ref(&self, o: &Surd) -> Surd {
        let three = int(3);
        Surd {
            rat: &self.rat * &o.rat + &three * &self.irr * &o.irr,
            irr: &self.rat * &o.irr + &self.irr * &o.rat,
        }
    }

    /// Conjugate under √3 ↦ −√3.
    fn galois(&self) -> Surd {
        Surd::new(self.rat.clone(), -&self.irr)
    }

    /// Field norm `rat² − 3·irr²`, nonzero for nonzero input.
    fn norm(&self) -> Rational {
        &self.rat * &self.rat - int(3) * &self.irr * &self.irr
    }

    fn invert(&self) -> Result<Surd> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let g = self.galois();
        Ok(Surd::new(g.rat / &n, g.irr / &n))
    }

    pub fn sign(&self) -> Ordering {
        let a = self.rat.signum();
        let b = self.irr.signum();
        let zero = Rational::zero();
        match (a.cmp(&zero), b.cmp(&zero)) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (sa, sb) if sa == sb => sa,
            (sa, sb) => {
                // Opposite signs: the larger of a² and 3b² wins. Equality is
                // impossible for nonzero a, b since √3 is irrational.
                let a2 = &self.rat * &self.rat;
                let b2 = int(3) * &self.irr * &self.irr;
                if a2 > b2 {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64().unwrap_or(f64::NAN) + self.irr.to_f64().unwrap_or(f64::NAN) * SQRT3_F64
    }
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, o: &Surd) -> Surd {
        Surd::new(&self.rat + &o.rat, &self.irr + &o.irr)
    }
}

impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, o: &Surd) -> Surd {
        Surd::new(&self.rat - &o.rat, &self.irr - &o.irr)
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::new(-&self.rat, -&self.irr)
    }
}

/// Sign of a real element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl From<Ordering> for Sign {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }
}

/// An element `a + b√3 + c·i + d·√3·i` of Q(√3, i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FieldElement {
    re: Surd,
    im: Surd,
}

impl FieldElement {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Self {
            re: Surd::new(a, b),
            im: Surd::new(c, d),
        }
    }

    pub fn from_parts(re: Surd, im: Surd) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::new(q, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Self::from_rational(rational(num, den))
    }

    /// `√3`
    pub fn sqrt3() -> Self {
        Self::new(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    /// `i`
    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    pub fn a(&self) -> &Rational {
        &self.re.rat
    }
    pub fn b(&self) -> &Rational {
        &self.re.irr
    }
    pub fn c(&self) -> &Rational {
        &self.im.rat
    }
    pub fn d(&self) -> &Rational {
        &self.im.irr
    }

    pub fn re(&self) -> &Surd {
        &self.re
    }

    pub fn im(&self) -> &Surd {
        &self.im
    }

    /// Real part as a field element.
    pub fn real_part(&self) -> FieldElement {
        Self::from_parts(self.re.clone(), Surd::zero())
    }

    /// Imaginary part as a (real) field element.
    pub fn imag_part(&self) -> FieldElement {
        Self::from_parts(self.im.clone(), Surd::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.is_real() && self.re.irr.is_zero()
    }

    /// Purely imaginary (zero real part).
    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.re.rat)
    }

    pub fn conjugate(&self) -> FieldElement {
        Self::from_parts(self.re.clone(), -&self.im)
    }

    pub fn invert(&self) -> Result<FieldElement> {
        // 1/(p + qi) = (p − qi)/(p² + q²) with p, q ∈ Q(√3).
        let n = &self.re.mul_ref(&self.re) + &self.im.mul_ref(&self.im);
        let inv_n = n.invert()?;
        Ok(Self::from_parts(self.re.mul_ref(&inv_n), (-&self.im).mul_ref(&inv_n)))
    }

    pub fn checked_div(&self, o: &FieldElement) -> Result<FieldElement> {
        Ok(self * &o.invert()?)
    }

    pub fn sign_real(&self) -> Result<Sign> {
        if !self.is_real() {
            return Err(Error::NotReal(self.to_string()));
        }
        Ok(self.re.sign().into())
    }

    pub fn is_positive(&self) -> bool {
        matches!(self.sign_real(), Ok(Sign::Positive))
    }

    pub fn scale(&self, q: &Rational) -> FieldElement {
        Self::new(self.a() * q, self.b() * q, self.c() * q, self.d() * q)
    }

    /// Floating-point real part; `None` for non-real input.
    pub fn to_f64(&self) -> Option<f64> {
        self.is_real().then(|| self.re.to_f64())
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for FieldElement {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        FieldElement::from_parts(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        FieldElement::from_parts(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        if self.is_zero() || o.is_zero() {
            return FieldElement::zero();
        }
        let re = &self.re.mul_ref(&o.re) - &self.im.mul_ref(&o.im);
        let im = &self.re.mul_ref(&o.im) + &self.im.mul_ref(&o.re);
        FieldElement::from_parts(re, im)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::from_parts(-&self.re, -&self.im)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$m(&o)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement {
                (&self).$m(o)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, o: &FieldElement) {
        *self = &*self + o;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, o: &FieldElement) {
        *self = &*self - o;
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, o: &FieldElement) {
        *self = &*self * o;
    }
}

impl std::iter::Sum for FieldElement {
    fn sum<I: Iterator<Item = FieldElement>>(iter: I) -> Self {
        iter.fold(FieldElement::zero(), |acc, x| acc + x)
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders `a + b*sqrt3 + c*i + d*sqrt3*i`, skipping zero components.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [
            (self.a(), ""),
            (self.b(), "sqrt3"),
            (self.c(), "i"),
            (self.d(), "sqrt3*i"),
        ];
        let mut first = true;
        for (q, unit) in parts {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = q.abs();
            let body = match (unit.is_empty(), mag.is_one()) {
                (true, _) => fmt_rational(&mag),
                (false, true) => unit.to_string(),
                (false, false) => format!("{}*{}", fmt_rational(&mag), unit),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub(crate) fn parse_err(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| parse_err(s, "bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| parse_err(s, "bad denominator"))?;
    if den.is_zero() {
        return Err(parse_err(s, "zero denominator"));
    }
    Ok(Rational::new(num, den))
}

fn parse_term(term: &str, whole: &str) -> Result<FieldElement> {
    let mut coeff = FieldElement::one();
    for factor in term.split('*') {
        let factor = factor.trim();
        let f = match factor {
            "" => return Err(parse_err(whole, "empty factor")),
            "i" => FieldElement::i(),
            "sqrt3" => FieldElement::sqrt3(),
            _ => FieldElement::from_rational(parse_rational(factor)?),
        };
        coeff = coeff * f;
    }
    Ok(coeff)
}

/// Splits whitespace-free text into signed terms at top-level `+`/`-`.
/// A sign following `/`, `*` or another sign belongs to the term.
/// Returns `(negated, body)` pairs.
pub fn split_signed_terms(compact: &str) -> Vec<(bool, &str)> {
    let bytes = compact.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    for idx in 1..=bytes.len() {
        let boundary = idx == bytes.len()
            || ((bytes[idx] == b'+' || bytes[idx] == b'-')
                && !matches!(bytes[idx - 1], b'/' | b'*' | b'+' | b'-'));
        if boundary {
            let term = &compact[start..idx];
            out.push(match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            });
            start = idx;
        }
    }
    out
}

/// Parses the grammar produced by `Display`: signed terms joined by `+`/`-`,
/// each a `*`-separated product of rationals, `sqrt3` and `i`.
impl FromStr for FieldElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(parse_err(s, "empty input"));
        }
        let mut total = FieldElement::zero();
        for (neg, body) in split_signed_terms(&compact) {
            let t = parse_term(body, s)?;
            total = if neg { total - t } else { total + t };
        }
        Ok(total)
    }
}
