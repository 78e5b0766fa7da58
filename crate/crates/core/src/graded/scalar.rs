use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Which arithmetic a scalar type lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Arbitrary precision rationals; every comparison is exact.
    Exact,
    /// Double precision complex numbers compared up to [`Scalar::tolerance`].
    Approximate,
}

/// Ground field element. Implemented for [`BigRational`] and [`Cx`].
pub trait Scalar:
    Clone
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const REGIME: Regime;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Zero test; approximate scalars use [`Scalar::tolerance`].
    fn is_zero(&self) -> bool;
    fn inverse(&self) -> Option<Self>;
    /// Exact view of the value, only available in the exact regime.
    fn to_rational(&self) -> Option<BigRational>;
    /// Comparison tolerance: `0.0` for exact scalars.
    fn tolerance() -> f64;

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }
}

impl Scalar for BigRational {
    const REGIME: Regime = Regime::Exact;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
    fn tolerance() -> f64 {
        0.0
    }
}

/// Complex double with the crate-wide comparison tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Cx(pub Complex64);

impl Cx {
    pub const TOLERANCE: f64 = 1e-10;

    pub fn new(re: f64, im: f64) -> Self {
        Cx(Complex64::new(re, im))
    }
}

impl Add for Cx {
    type Output = Cx;
    fn add(self, rhs: Cx) -> Cx {
        Cx(self.0 + rhs.0)
    }
}
impl Sub for Cx {
    type Output = Cx;
    fn sub(self, rhs: Cx) -> Cx {
        Cx(self.0 - rhs.0)
    }
}
impl Mul for Cx {
    type Output = Cx;
    fn mul(self, rhs: Cx) -> Cx {
        Cx(self.0 * rhs.0)
    }
}
impl Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx(-self.0)
    }
}

impl Scalar for Cx {
    const REGIME: Regime = Regime::Approximate;

    fn zero() -> Self {
        Cx(Complex64::new(0.0, 0.0))
    }
    fn one() -> Self {
        Cx(Complex64::new(1.0, 0.0))
    }
    fn from_i64(v: i64) -> Self {
        Cx(Complex64::new(v as f64, 0.0))
    }
    fn is_zero(&self) -> bool {
        self.0.norm() <= Self::TOLERANCE
    }
    fn inverse(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(Cx(self.0.inv()))
        }
    }
    fn to_rational(&self) -> Option<BigRational> {
        None
    }
    fn tolerance() -> f64 {
        Self::TOLERANCE
    }
}

/// Parse `"p/q"`, `"p"` or `"-p/q"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    if num.is_empty() || den.is_empty() {
        return None;
    }
    let num: num_bigint::BigInt = num.parse().ok()?;
    let den: num_bigint::BigInt = den.parse().ok()?;
    if Zero::is_zero(&den) {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Render a rational as `"p/q"` (or `"p"` for integers).
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let s = if q.is_negative() { -1.0 } else { 1.0 };
        s * f64::INFINITY
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("3/6"), Some(BigRational::new(1.into(), 2.into())));
        assert_eq!(parse_rational("-4"), Some(BigRational::from_integer((-4).into())));
        assert_eq!(parse_rational("3/"), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn approximate_zero_uses_tolerance() {
        assert!(Scalar::is_zero(&Cx::new(1e-12, 0.0)));
        assert!(!Scalar::is_zero(&Cx::new(1e-8, 0.0)));
        assert_eq!(<BigRational as Scalar>::tolerance(), 0.0);
    }
}
