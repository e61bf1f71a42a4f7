//! Coefficient fields for jets and matrices.
//!
//! Two fields are supported: exact Gaussian rationals (pairs of big
//! rationals) and double precision complex numbers. Everything downstream is
//! generic over [`Coefficient`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Default relative tolerance for float zero tests.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientField {
    ExactGaussianRational,
    ComplexFloat,
}

impl CoefficientField {
    pub fn is_exact(self) -> bool {
        matches!(self, CoefficientField::ExactGaussianRational)
    }
}

/// A commutative field of coefficients.
pub trait Coefficient: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    const FIELD: CoefficientField;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// `num / den` as a real element. Panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;
    /// `re + im·i` from two real ratios.
    fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for (exact) zero.
    fn inv(&self) -> Option<Self>;

    /// Exactly zero (no tolerance).
    fn is_exact_zero(&self) -> bool;
    fn modulus(&self) -> f64;
    fn to_complex(&self) -> Complex64;

    /// `2π√−1`, if representable in the field.
    fn two_pi_i() -> Option<Self>;

    /// Real part, as a field element.
    fn real_part(&self) -> Self;
    /// Imaginary part, as a (real) field element.
    fn imag_part(&self) -> Self;
    /// Compares real parts; floats treat differences below `1e-12` (relative
    /// to the larger magnitude, floored at 1) as equal.
    fn compare_real(&self, other: &Self) -> std::cmp::Ordering;
    /// Nearest integer to the real part, ties rounded up.
    fn round_real(&self) -> i64;

    /// JSON representation of the real and imaginary parts.
    fn to_json_parts(&self) -> (Value, Value);
    fn from_json_parts(re: &Value, im: &Value) -> Result<Self>;

    /// Zero test: exact equality for exact fields, `|x| <= tol * scale` for
    /// floats. `scale` is clamped below by 1 when zero so that an all-zero
    /// reference does not make every value look non-zero.
    fn is_negligible(&self, scale: f64, tol: f64) -> bool {
        if Self::FIELD.is_exact() {
            self.is_exact_zero()
        } else {
            let s = if scale > 0.0 { scale } else { 1.0 };
            self.modulus() <= tol * s
        }
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self.mul(&inv))
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

fn ratio(num: i64, den: i64) -> BigRational {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Fall back to a scaled division for values outside f64 range of the
        // separate numerator/denominator.
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", rational_to_string(&self.re)),
            (true, false) => write!(f, "({})i", rational_to_string(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{} {} ({})i",
                    rational_to_string(&self.re),
                    sign,
                    rational_to_string(&self.im.abs())
                )
            }
        }
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Coefficient for GaussianRational {
    const FIELD: CoefficientField = CoefficientField::ExactGaussianRational;

    fn zero() -> Self {
        GaussianRational::default()
    }

    fn one() -> Self {
        GaussianRational::real(BigRational::one())
    }

    fn from_i64(n: i64) -> Self {
        GaussianRational::real(BigRational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::real(ratio(num, den))
    }

    fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussianRational::new(ratio(re.0, re.1), ratio(im.0, im.1))
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }

    fn is_exact_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn modulus(&self) -> f64 {
        self.to_complex().norm()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn two_pi_i() -> Option<Self> {
        None
    }

    fn real_part(&self) -> Self {
        GaussianRational::real(self.re.clone())
    }

    fn imag_part(&self) -> Self {
        GaussianRational::real(self.im.clone())
    }

    fn compare_real(&self, other: &Self) -> std::cmp::Ordering {
        self.re.cmp(&other.re)
    }

    fn round_real(&self) -> i64 {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        (&self.re + half)
            .floor()
            .to_integer()
            .to_i64()
            .expect("real part fits in i64")
    }

    fn to_json_parts(&self) -> (Value, Value) {
        (
            Value::String(rational_to_string(&self.re)),
            Value::String(rational_to_string(&self.im)),
        )
    }

    fn from_json_parts(re: &Value, im: &Value) -> Result<Self> {
        let part = |v: &Value| -> Result<BigRational> {
            match v {
                Value::String(s) => parse_rational(s),
                Value::Number(n) => match n.as_i64() {
                    Some(k) => Ok(BigRational::from_integer(BigInt::from(k))),
                    None => Err(Error::Parse(format!(
                        "exact coefficient must be an integer or a \"p/q\" string, got {n}"
                    ))),
                },
                other => Err(Error::Parse(format!("bad coefficient part {other}"))),
            }
        };
        Ok(GaussianRational::new(part(re)?, part(im)?))
    }
}

impl Coefficient for Complex64 {
    const FIELD: CoefficientField = CoefficientField::ComplexFloat;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        assert!(re.1 != 0 && im.1 != 0, "zero denominator");
        Complex64::new(re.0 as f64 / re.1 as f64, im.0 as f64 / im.1 as f64)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        if self.norm_sqr() == 0.0 {
            None
        } else {
            Some(self.inv())
        }
    }

    fn is_exact_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn two_pi_i() -> Option<Self> {
        Some(Complex64::new(0.0, 2.0 * std::f64::consts::PI))
    }

    fn real_part(&self) -> Self {
        Complex64::new(self.re, 0.0)
    }

    fn imag_part(&self) -> Self {
        Complex64::new(self.im, 0.0)
    }

    fn compare_real(&self, other: &Self) -> std::cmp::Ordering {
        let scale = self.re.abs().max(other.re.abs()).max(1.0);
        if (self.re - other.re).abs() <= 1e-12 * scale {
            std::cmp::Ordering::Equal
        } else {
            self.re.total_cmp(&other.re)
        }
    }

    fn round_real(&self) -> i64 {
        (self.re + 0.5).floor() as i64
    }

    fn to_json_parts(&self) -> (Value, Value) {
        (Value::from(self.re), Value::from(self.im))
    }

    fn from_json_parts(re: &Value, im: &Value) -> Result<Self> {
        // Rational strings are accepted so one configuration serves both fields.
        let part = |v: &Value| match v {
            Value::String(s) => parse_rational(s).map(|q| rational_to_f64(&q)),
            _ => v
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("float coefficient expected, got {v}"))),
        };
        Ok(Complex64::new(part(re)?, part(im)?))
    }
}

/// Reads a `[re, im]` JSON pair into a coefficient.
pub fn coefficient_from_pair<F: Coefficient>(v: &Value) -> Result<F> {
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => F::from_json_parts(re, im),
        _ => Err(Error::Parse(format!("expected [re, im], got {v}"))),
    }
}

pub fn coefficient_to_pair<F: Coefficient>(x: &F) -> Value {
    let (re, im) = x.to_json_parts();
    Value::Array(vec![re, im])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_ratio(n, d)
    }

    #[test]
    fn inverse_is_exact() {
        let z = GaussianRational::from_parts((3, 2), (-5, 7));
        let w = Coefficient::inv(&z).unwrap();
        assert_eq!(Coefficient::mul(&z, &w), GaussianRational::one());
        assert!(Coefficient::inv(&GaussianRational::zero()).is_none());
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(Coefficient::mul(&i, &i), GaussianRational::from_i64(-1));
    }

    #[test]
    fn json_parts_round_trip() {
        let z = GaussianRational::from_parts((-3, 4), (10, 1));
        let (re, im) = z.to_json_parts();
        assert_eq!(re, Value::String("-3/4".into()));
        assert_eq!(im, Value::String("10".into()));
        assert_eq!(GaussianRational::from_json_parts(&re, &im).unwrap(), z);
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn negligible_uses_relative_scale_for_floats() {
        let x = Complex64::new(1e-12, 0.0);
        assert!(x.is_negligible(1.0, DEFAULT_TOLERANCE));
        assert!(!x.is_negligible(1e-6, DEFAULT_TOLERANCE));
        assert!(!q(1, 1_000_000_000).is_negligible(1.0, DEFAULT_TOLERANCE));
    }

    #[test]
    fn display() {
        assert_eq!(q(1, 2).to_string(), "1/2");
        assert_eq!(GaussianRational::from_parts((1, 1), (-1, 3)).to_string(), "1 - (1/3)i");
    }
}
