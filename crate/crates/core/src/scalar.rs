//! Scalar abstraction for the floating-point parts of the crate.
//!
//! Everything that touches eigenvalues, representations or Bohr radii is
//! generic over [`Real`]; the exact parts (representation counts, bound
//! formulas, balanced functions) use integers and [`Ratio`] instead.

use nalgebra::RealField;
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

/// Exact rational numbers used for bound formulas and balanced functions.
pub type Ratio = BigRational;

/// Real floating-point scalar accepted by the numeric modules.
///
/// Implemented for `f32` and `f64`.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + Send + Sync {
    /// Absolute tolerance that matches the precision of the type.
    fn tolerance() -> Self;
}

impl Real for f64 {
    fn tolerance() -> Self {
        1e-9
    }
}

impl Real for f32 {
    fn tolerance() -> Self {
        1e-4
    }
}

/// Converts an `f64` constant into the working scalar.
#[inline]
pub fn real<T: Real>(x: f64) -> T {
    nalgebra::convert(x)
}

/// Converts a scalar back to `f64` for reporting.
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().expect("finite scalar")
}

#[inline]
pub fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

/// `|z|`.
#[inline]
pub fn modulus<T: Real>(z: Complex<T>) -> T {
    z.norm_sqr().sqrt()
}

/// `e^{2πi·num/den}`.
pub fn root_of_unity<T: Real>(num: i64, den: u64) -> Complex<T> {
    let r = num.rem_euclid(den as i64) as f64 / den as f64;
    let angle = real::<T>(r) * T::two_pi();
    Complex::new(angle.cos(), angle.sin())
}

/// Values that can be built from an exact fraction `num/den`.
///
/// Lets the same construction (balanced functions, for instance) produce
/// either exact rationals or floating-point values.
pub trait FromFraction: Sized {
    fn from_fraction(num: i128, den: i128) -> Self;
}

impl FromFraction for BigRational {
    fn from_fraction(num: i128, den: i128) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl FromFraction for f64 {
    fn from_fraction(num: i128, den: i128) -> Self {
        num as f64 / den as f64
    }
}

impl FromFraction for f32 {
    fn from_fraction(num: i128, den: i128) -> Self {
        (num as f64 / den as f64) as f32
    }
}

/// Rational from an integer.
pub fn ratio_int<I: Into<BigInt>>(n: I) -> Ratio {
    Ratio::from_integer(n.into())
}

/// Rational `num/den`.
pub fn ratio(num: i128, den: i128) -> Ratio {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

/// Integer power of a rational.
pub fn ratio_pow(base: &Ratio, exp: u32) -> Ratio {
    let mut acc = Ratio::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Nearest `f64` to an exact rational.
pub fn ratio_to_f64(q: &Ratio) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    q.to_f64().unwrap_or_else(|| {
        // Very large numerators/denominators: scale through logarithms.
        let sign = if q.numer().sign() == num_bigint::Sign::Minus { -1.0 } else { 1.0 };
        let ln = bigint_ln(q.numer()) - bigint_ln(q.denom());
        sign * ln.exp()
    })
}

fn bigint_ln(n: &BigInt) -> f64 {
    let digits = n.magnitude().to_str_radix(10);
    let lead: f64 = digits[..digits.len().min(17)].parse().unwrap_or(1.0);
    lead.ln() + (digits.len().saturating_sub(17)) as f64 * std::f64::consts::LN_10
}

/// Rational approximation of a finite `f64` (exact binary expansion).
pub fn ratio_from_f64(x: f64) -> Ratio {
    Ratio::from_float(x).expect("finite value")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_wrap() {
        let z: Complex<f64> = root_of_unity(-1, 4);
        assert!((z.re - 0.0).abs() < 1e-15 && (z.im + 1.0).abs() < 1e-15);
        let w: Complex<f32> = root_of_unity(6, 4);
        assert!((w.re + 1.0).abs() < 1e-6);
    }

    #[test]
    fn ratio_helpers() {
        let q = ratio(7, 32);
        assert_eq!(ratio_to_f64(&q), 0.21875);
        assert_eq!(ratio_pow(&ratio(2, 3), 3), ratio(8, 27));
        assert_eq!(f64::from_fraction(-1, 4), -0.25);
        let huge = ratio_pow(&ratio_int(10), 400) / ratio_pow(&ratio_int(10), 399);
        assert!((ratio_to_f64(&huge) - 10.0).abs() < 1e-9);
    }
}
