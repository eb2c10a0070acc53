//! Numeric backends for distances.
//!
//! Two implementations of [`Scalar`] are provided: [`Rat`] (arbitrary-precision
//! rationals, used for matrix-backed instances where derived quantities such as
//! `3*D + 1` and `delta = min_dist/2` must stay exact) and [`F64`] (finite
//! floats, used for coordinate-backed instances where distances involve square
//! roots). Every algorithm in this crate is generic over the backend.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use ordered_float::NotNan;
use std::fmt::{Debug, Display};
use std::str::FromStr;

/// Exact rational distance value.
pub type Rat = BigRational;

/// Finite floating-point distance value with a total order.
pub type F64 = NotNan<f64>;

/// The arithmetic a distance value must support.
///
/// Solvers only ever compare existing matrix entries, so the surface is small:
/// the additions come from triangle checks, the scaled forms from the derived
/// gadget distances and ratio bounds.
pub trait Scalar: Clone + Ord + Eq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    /// `self * m` for a small integer factor.
    fn mul_u32(&self, m: u32) -> Self;
    /// `self / 2`, exact in both backends.
    fn half(&self) -> Self;
    /// Lossy conversion for reports and ratio columns.
    fn to_f64(&self) -> f64;
    /// Slack admitted by triangle-inequality checks: zero for exact
    /// rationals, 1e-9 for floats.
    fn triangle_tol() -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }

    fn one() -> Self {
        <BigRational as One>::one()
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn mul_u32(&self, m: u32) -> Self {
        self * BigRational::from_integer(BigInt::from(m))
    }

    fn half(&self) -> Self {
        self / BigRational::from_integer(BigInt::from(2))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn triangle_tol() -> Self {
        <BigRational as Zero>::zero()
    }
}

impl Scalar for F64 {
    fn zero() -> Self {
        fp(0.0)
    }

    fn one() -> Self {
        fp(1.0)
    }

    fn add(&self, rhs: &Self) -> Self {
        *self + *rhs
    }

    fn mul_u32(&self, m: u32) -> Self {
        fp(self.into_inner() * f64::from(m))
    }

    fn half(&self) -> Self {
        fp(self.into_inner() / 2.0)
    }

    fn to_f64(&self) -> f64 {
        self.into_inner()
    }

    fn triangle_tol() -> Self {
        fp(1e-9)
    }
}

/// Wraps a finite `f64`. Panics on NaN or infinity; distances are always
/// finite by construction.
pub fn fp(x: f64) -> F64 {
    assert!(x.is_finite(), "distance value must be finite, got {x}");
    NotNan::new(x).expect("finite value is not NaN")
}

/// Exact rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact rational `p/q`.
pub fn rat(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// The exact rational value of a float (every finite `f64` is one).
pub fn rat_from_f64(x: f64) -> Rat {
    BigRational::from_float(x).expect("finite float converts exactly")
}

/// Parses `"p/q"`, an integer, or a decimal such as `"3.5"` or `"-2.5e-1"`
/// into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".to_string());
    }
    if let Some((p, q)) = s.split_once('/') {
        let num = BigInt::from_str(p.trim()).map_err(|e| format!("bad numerator {p:?}: {e}"))?;
        let den = BigInt::from_str(q.trim()).map_err(|e| format!("bad denominator {q:?}: {e}"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(BigRational::new(num, den));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rat, String> {
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e
                .parse()
                .map_err(|err| format!("bad exponent in {s:?}: {err}"))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(format!("no digits in {s:?}"));
    }
    let num = BigInt::from_str(&digits).map_err(|e| format!("bad number {s:?}: {e}"))?;
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(num * ten.pow(scale as u32))
    } else {
        BigRational::new(num, ten.pow((-scale) as u32))
    };
    Ok(value)
}

/// Canonical text form of a rational: plain integer when the denominator is
/// one, `"p/q"` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True when the rational is an integer that fits in `i64`.
pub fn rat_as_i64(r: &Rat) -> Option<i64> {
    if r.denom().is_one() {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn is_nonnegative_rat(r: &Rat) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fraction() {
        assert_eq!(parse_rat("7/2").unwrap(), rat(7, 2));
        assert_eq!(parse_rat(" -3/6 ").unwrap(), rat(-1, 2));
    }

    #[test]
    fn parse_decimal_exactly() {
        assert_eq!(parse_rat("3.5").unwrap(), rat(7, 2));
        assert_eq!(parse_rat("0.1").unwrap(), rat(1, 10));
        assert_eq!(parse_rat("-2.5e-1").unwrap(), rat(-1, 4));
        assert_eq!(parse_rat("12e2").unwrap(), rat_int(1200));
        assert_eq!(parse_rat("42").unwrap(), rat_int(42));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
        assert!(parse_rat("1.2.3").is_err());
    }

    #[test]
    fn format_round_trips() {
        for r in [rat(7, 2), rat_int(-4), rat(22, 7), rat_int(0)] {
            assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
        }
        assert_eq!(format_rat(&rat(6, 4)), "3/2");
        assert_eq!(format_rat(&rat_int(5)), "5");
    }

    #[test]
    fn scalar_ops_rat() {
        let d = rat_int(3);
        assert_eq!(d.mul_u32(3).add(&Scalar::one()), rat_int(10));
        assert_eq!(rat_int(5).half(), rat(5, 2));
        assert!(Scalar::is_zero(&<Rat as Scalar>::zero()));
    }

    #[test]
    fn scalar_ops_f64() {
        let d = fp(3.0);
        assert_eq!(d.mul_u32(3).add(&Scalar::one()), fp(10.0));
        assert_eq!(fp(5.0).half(), fp(2.5));
        assert_eq!(<F64 as Scalar>::triangle_tol(), fp(1e-9));
    }

    #[test]
    fn f64_to_rat_is_exact() {
        assert_eq!(rat_from_f64(0.5), rat(1, 2));
        assert_eq!(rat_from_f64(3.0), rat_int(3));
    }

    #[test]
    #[should_panic]
    fn fp_rejects_nan() {
        fp(f64::NAN);
    }
}
