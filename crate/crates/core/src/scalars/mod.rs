//! Scalar kernels: exact rationals, multivariate Laurent polynomials and their
//! fraction field, truncated power series, and certified ball reals.
//!
//! Every algebraic routine in this crate is written against [`Field`] (exact
//! arithmetic with decidable equality) or the weaker [`Scalar`] (a ring whose
//! elements can be multiplied into matrices, which is all the ball backend
//! offers).

mod ball;
mod gcd;
mod laurent;
mod ratfunc;
mod series;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use ball::{BallReal, Mag, DEFAULT_PRECISION};
pub use gcd::poly_gcd;
pub use laurent::LaurentPoly;
pub use ratfunc::RatFunc;
pub use series::{expand_series, ExpansionPoint, TruncSeries};

/// A commutative ring element that can live inside a matrix.
pub trait Scalar:
    Clone
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Decide whether this value is zero for the purpose of a relation check.
    ///
    /// Exact types answer exactly; ball types answer "contains zero and is
    /// narrower than `2^-tol_bits`".
    fn zero_test(&self, tol_bits: u32) -> ZeroVerdict;
}

/// Outcome of [`Scalar::zero_test`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroVerdict {
    pub is_zero: bool,
    /// `log2` of the enclosure width; `None` when the value is an exact zero.
    pub log2_width: Option<f64>,
}

impl ZeroVerdict {
    pub fn exact(is_zero: bool) -> Self {
        ZeroVerdict { is_zero, log2_width: None }
    }
}

/// An exact field with decidable equality.
pub trait Field: Scalar + PartialEq + Div<Output = Self> {
    fn from_i64(n: i64) -> Self;

    fn from_rational(q: &BigRational) -> Self;

    /// Lift into the rational-function field (constants stay constants).
    fn to_ratfunc(&self) -> RatFunc;

    /// Fraction-style rendering, e.g. `"3/2"`.
    fn to_exact_string(&self) -> String;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Integer power; negative exponents go through [`Field::inv`].
    fn powi(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().powi(-e);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            k >>= 1;
            if k > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Scalar for BigRational {
    fn zero_test(&self, _tol_bits: u32) -> ZeroVerdict {
        ZeroVerdict::exact(self.is_zero())
    }
}

/// Bits below which an `f64` is treated as zero: half the 53-bit mantissa.
pub const F64_TOL_BITS: u32 = 26;

impl Scalar for f64 {
    /// `f64` carries no error bound; the tolerance is capped at [`F64_TOL_BITS`].
    fn zero_test(&self, tol_bits: u32) -> ZeroVerdict {
        let tol = tol_bits.min(F64_TOL_BITS) as i32;
        ZeroVerdict { is_zero: self.abs() < 2f64.powi(-tol), log2_width: None }
    }
}

impl Field for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn to_ratfunc(&self) -> RatFunc {
        RatFunc::constant(self.clone())
    }

    fn to_exact_string(&self) -> String {
        fraction_string(self)
    }

    fn inv(&self) -> Self {
        self.recip()
    }
}

/// `"p/q"` with `q > 0`; integers are printed as `"p/1"` so the format is uniform.
pub fn fraction_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parse `"p/q"`, `"p"` or a finite decimal such as `"2.5"`.
pub fn parse_fraction(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.trim_start().starts_with('-');
        let ip_val: BigInt = if ip.is_empty() || ip == "-" { BigInt::zero() } else { ip.parse().ok()? };
        if !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let scale = BigInt::from(10u32).pow(fp.len() as u32);
        let fp_val: BigInt = if fp.is_empty() { BigInt::zero() } else { fp.parse().ok()? };
        let mag = ip_val.abs() * &scale + fp_val;
        let num = if neg { -mag } else { mag };
        return Some(BigRational::new(num, scale));
    }
    let p: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(p))
}

/// Convenience constructor used throughout the tests and presets.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powi_handles_negative_exponents() {
        let two = rat(2, 1);
        assert_eq!(two.powi(10), rat(1024, 1));
        assert_eq!(two.powi(-3), rat(1, 8));
        assert_eq!(two.powi(0), rat(1, 1));
    }

    #[test]
    fn fractions_round_trip() {
        assert_eq!(parse_fraction("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_fraction(" -7 "), Some(rat(-7, 1)));
        assert_eq!(parse_fraction("2.25"), Some(rat(9, 4)));
        assert_eq!(parse_fraction("-0.5"), Some(rat(-1, 2)));
        assert_eq!(parse_fraction("1/0"), None);
        assert_eq!(fraction_string(&rat(-4, 6)), "-2/3");
        assert_eq!(fraction_string(&rat(5, 1)), "5/1");
    }
}
