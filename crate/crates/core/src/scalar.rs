//! Exact scalars: arbitrary-precision rationals, their extension by ±∞, and
//! closed intervals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact rational number, always kept in lowest terms.
pub type Scalar = BigRational;

/// Builds `num / den` from machine integers.
pub fn rat(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// `|x - y|`.
pub fn dist(x: &Scalar, y: &Scalar) -> Scalar {
    (x - y).abs()
}

/// A rational or one of the two infinities, totally ordered `-inf < finite < +inf`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum XScalar {
    NegInf,
    Finite(Scalar),
    PosInf,
}

impl XScalar {
    pub fn zero() -> Self {
        XScalar::Finite(Scalar::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, XScalar::Finite(_))
    }

    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            XScalar::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// `self <= r` for a finite bound `r`.
    pub fn le(&self, r: &Scalar) -> bool {
        match self {
            XScalar::NegInf => true,
            XScalar::Finite(v) => v <= r,
            XScalar::PosInf => false,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            XScalar::NegInf => f64::NEG_INFINITY,
            XScalar::Finite(v) => to_f64(v),
            XScalar::PosInf => f64::INFINITY,
        }
    }
}

impl From<Scalar> for XScalar {
    fn from(v: Scalar) -> Self {
        XScalar::Finite(v)
    }
}

impl fmt::Display for XScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XScalar::NegInf => f.write_str("-inf"),
            XScalar::Finite(v) => f.write_str(&fmt_rational(v)),
            XScalar::PosInf => f.write_str("+inf"),
        }
    }
}

/// A closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Scalar,
    hi: Scalar,
}

impl Interval {
    pub fn new(lo: Scalar, hi: Scalar) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvariantViolation(format!(
                "interval [{}, {}] has lo > hi",
                fmt_rational(&lo),
                fmt_rational(&hi)
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(a: Scalar) -> Self {
        Interval { lo: a.clone(), hi: a }
    }

    /// `[center - radius, center + radius]`; `radius` must be non-negative.
    pub fn around(center: &Scalar, radius: &Scalar) -> Result<Self> {
        Interval::new(center - radius, center + radius)
    }

    pub fn lo(&self) -> &Scalar {
        &self.lo
    }

    pub fn hi(&self) -> &Scalar {
        &self.hi
    }

    pub fn length(&self) -> Scalar {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Scalar {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Distance from `x` to the nearest point of the interval.
    pub fn distance_to(&self, x: &Scalar) -> Scalar {
        if x < &self.lo {
            &self.lo - x
        } else if x > &self.hi {
            x - &self.hi
        } else {
            Scalar::zero()
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn widen(&self, margin: &Scalar) -> Interval {
        Interval { lo: &self.lo - margin, hi: &self.hi + margin }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_rational(&self.lo), fmt_rational(&self.hi))
    }
}

/// Canonical `p/q` rendering; integers keep the `/1`.
pub fn fmt_rational(v: &Scalar) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Fixed six-digit decimal rendering, rounded half away from zero.
pub fn fmt_decimal(v: &Scalar) -> String {
    const DIGITS: usize = 6;
    let scale = BigInt::from(10u32).pow(DIGITS as u32);
    let scaled = (v * BigRational::from_integer(scale.clone())).round().to_integer();
    let neg = scaled.is_negative();
    let mag = scaled.abs();
    let int_part = &mag / &scale;
    let frac_part = &mag % &scale;
    let frac = format!("{:0>width$}", frac_part.to_string(), width = DIGITS);
    format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac)
}

/// `p/q (~decimal)` as used in reports.
pub fn fmt_with_hint(v: &XScalar) -> String {
    match v {
        XScalar::Finite(x) => format!("{} (~{})", fmt_rational(x), fmt_decimal(x)),
        other => other.to_string(),
    }
}

pub fn to_f64(v: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p/q`, an integer, or a finite decimal such as `-0.25` exactly.
pub fn parse_rational(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let bad = || Error::invalid(format!("not a rational number: `{s}`"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = parse_int(p).ok_or_else(bad)?;
        let q: BigInt = parse_int(q).ok_or_else(bad)?;
        if q.is_zero() {
            return Err(Error::invalid(format!("zero denominator in `{s}`")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let (neg, whole) = match whole.strip_prefix('-') {
            Some(w) => (true, w),
            None => (false, whole.strip_prefix('+').unwrap_or(whole)),
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if !whole.bytes().all(|b| b.is_ascii_digit()) || (whole.is_empty() && frac.is_empty()) {
            return Err(bad());
        }
        let digits = format!("{whole}{frac}");
        let mag: BigInt = digits.parse().map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let v = BigRational::new(mag, den);
        return Ok(if neg { -v } else { v });
    }
    parse_int(t).map(BigRational::from_integer).ok_or_else(bad)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.strip_prefix('+').unwrap_or(s).parse().ok()
}

/// Like [`parse_rational`] but also accepts `+inf`, `inf` and `-inf`.
pub fn parse_xscalar(s: &str) -> Result<XScalar> {
    match s.trim() {
        "+inf" | "inf" | "∞" | "+∞" => Ok(XScalar::PosInf),
        "-inf" | "-∞" => Ok(XScalar::NegInf),
        other => parse_rational(other).map(XScalar::Finite),
    }
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn zero() -> Scalar {
    Scalar::zero()
}
