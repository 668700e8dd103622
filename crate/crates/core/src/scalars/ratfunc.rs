use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::{denominator_lcm, integer_content, poly_gcd};
use super::laurent::LaurentPoly;
use super::{Field, Scalar, ZeroVerdict};
use crate::error::{Error, Result};

/// Element of the field of rational functions `Q(x_1, ..., x_m)`.
///
/// Always stored in normal form (see [`RatFunc::normalize`]), so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// Build `num/den` and normalize.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self::normalize(p, LaurentPoly::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(LaurentPoly::var(name))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n / d)
    }

    /// Canonical representative of `num/den`.
    ///
    /// The polynomial gcd is cancelled, monomial factors are moved out of the
    /// denominator (the numerator may keep negative exponents), integer
    /// content is cleared jointly and the lex-leading coefficient of the
    /// denominator is made positive.
    ///
    /// Panics on a zero denominator; use [`RatFunc::new`] for a checked build.
    pub fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = LaurentPoly::unify(&num, &den);
        if num.is_zero() {
            return RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() };
        }
        let mn = num.min_exponents();
        let md = den.min_exponents();
        let common: Vec<i32> = mn.iter().zip(&md).map(|(a, b)| -(*a.min(b))).collect();
        let (num, den) = (num.shift(&common), den.shift(&common));

        let g = poly_gcd(&num, &den);
        let (num, den) = if g.constant_value().is_some() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides numerator"), den.exact_div(&g).expect("gcd divides denominator"))
        };
        // Monomials are units in the Laurent ring: strip them from the denominator.
        let fix: Vec<i32> = den.min_exponents().iter().map(|d| -d).collect();
        let (num, den) = (num.shift(&fix), den.shift(&fix));

        let l = denominator_lcm(&num) * denominator_lcm(&den);
        let (num, den) = (num.scale(&l), den.scale(&l));
        let g = integer_gcd(&integer_content(&num), &integer_content(&den));
        let mut s = g.recip();
        if den.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            s = -s;
        }
        let num = num.scale(&s).compact();
        let den = den.scale(&s).compact();
        let (num, den) = LaurentPoly::unify(&num, &den);
        RatFunc { num, den }
    }

    /// Substitute rational values for every variable (by name).
    pub fn eval(&self, names: &[&str], values: &[BigRational]) -> Result<BigRational> {
        let point = |p: &LaurentPoly| -> Result<Vec<BigRational>> {
            p.vars()
                .iter()
                .map(|v| {
                    names
                        .iter()
                        .position(|n| n == v)
                        .map(|i| values[i].clone())
                        .ok_or_else(|| Error::UnknownVariable(v.clone()))
                })
                .collect()
        };
        let n = self.num.eval(&point(&self.num)?).ok_or(Error::ZeroDenominator)?;
        let d = self.den.eval(&point(&self.den)?).ok_or(Error::ZeroDenominator)?;
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(n / d)
    }

    pub fn try_inv(&self) -> Result<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }
}

fn integer_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    use num_integer::Integer;
    let g = a.numer().gcd(b.numer());
    if g.is_zero() {
        BigRational::one()
    } else {
        BigRational::from_integer(g)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::normalize(&self.num + &rhs.num, self.den);
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::normalize(num, &self.den * &rhs.den)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        RatFunc::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        assert!(!rhs.num.is_zero(), "division by zero rational function");
        RatFunc::normalize(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }
}

impl Scalar for RatFunc {
    fn zero_test(&self, _tol_bits: u32) -> ZeroVerdict {
        ZeroVerdict::exact(self.num.is_zero())
    }
}

impl Field for RatFunc {
    fn from_i64(n: i64) -> Self {
        RatFunc::constant(BigRational::from_integer(n.into()))
    }

    fn from_rational(q: &BigRational) -> Self {
        RatFunc::constant(q.clone())
    }

    fn to_ratfunc(&self) -> RatFunc {
        self.clone()
    }

    fn to_exact_string(&self) -> String {
        self.to_string()
    }

    fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero rational function")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn c(k: i64) -> RatFunc {
        RatFunc::constant(rat(k, 1))
    }

    #[test]
    fn content_reduction() {
        let x = LaurentPoly::var("x");
        let f = RatFunc::new(x.scale(&rat(2, 1)), LaurentPoly::constant(rat(4, 1))).unwrap();
        assert_eq!(f.num(), &x);
        assert_eq!(f.den().constant_value(), Some(rat(2, 1)));
    }

    #[test]
    fn common_factor_cancels() {
        let y = RatFunc::var("y");
        let f = (y.clone() * y.clone() - c(1)) / (y.clone() - c(1));
        assert_eq!(f, y + c(1));
        assert_eq!(f.den().constant_value(), Some(rat(1, 1)));
    }

    #[test]
    fn zero_normalizes_to_zero_over_one() {
        let y = LaurentPoly::var("y");
        let f = RatFunc::new(LaurentPoly::zero(), &y - &LaurentPoly::one()).unwrap();
        assert!(f.num().is_zero());
        assert_eq!(f.den().constant_value(), Some(rat(1, 1)));
    }

    #[test]
    fn zero_denominator_is_rejected() {
        let y = LaurentPoly::var("y");
        assert!(matches!(RatFunc::new(y, LaurentPoly::zero()), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn laurent_monomials_move_between_parts() {
        let x = RatFunc::var("x");
        let f = x.inv() + x.clone();
        assert_eq!(f.den().constant_value(), Some(rat(1, 1)));
        assert_eq!(f.num().min_exponents(), vec![-1]);
        let back = f * x;
        assert_eq!(back, RatFunc::var("x") * RatFunc::var("x") + c(1));
    }

    #[test]
    fn negative_leading_denominator_is_flipped() {
        let y = LaurentPoly::var("y");
        let f = RatFunc::new(LaurentPoly::one(), &LaurentPoly::one() - &y).unwrap();
        assert!(f.den().leading().unwrap().1.is_positive());
    }
}
