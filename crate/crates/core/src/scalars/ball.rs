//! Midpoint-radius real balls over dyadic midpoints.
//!
//! A [`BallReal`] is `mid * 2^exp ± rad`. Every operation returns a ball that
//! contains the exact result for every choice of inputs inside the operand
//! balls. Midpoints are rounded to the working precision and the rounding
//! error is folded into the radius; radii are [`Mag`] values rounded upward.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Scalar, ZeroVerdict};
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 512;

const MAG_BITS: u32 = 62;

/// Non-negative magnitude `man * 2^exp` with a 62-bit mantissa.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mag {
    man: u64,
    exp: i64,
}

fn bitlen128(x: u128) -> u32 {
    128 - x.leading_zeros()
}

fn isqrt128(v: u128) -> u128 {
    if v < 2 {
        return v;
    }
    let mut x = (v as f64).sqrt() as u128;
    loop {
        let y = (x + v / x.max(1)) / 2;
        if y.abs_diff(x) <= 1 {
            x = y;
            break;
        }
        x = y;
    }
    while x.checked_mul(x).is_none_or(|p| p > v) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|p| p <= v) {
        x += 1;
    }
    x
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    fn norm(man: u128, exp: i64, up: bool) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let bl = bitlen128(man);
        if bl > MAG_BITS {
            let s = bl - MAG_BITS;
            let mut q = man >> s;
            if up && man & ((1u128 << s) - 1) != 0 {
                q += 1;
            }
            let mut e = exp + s as i64;
            if q == 1u128 << MAG_BITS {
                q >>= 1;
                e += 1;
            }
            Mag { man: q as u64, exp: e }
        } else {
            let s = MAG_BITS - bl;
            Mag { man: (man << s) as u64, exp: exp - s as i64 }
        }
    }

    pub fn pow2(e: i64) -> Mag {
        Mag::norm(1, e, true)
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    /// Upper bound for `|x| * 2^exp`.
    pub fn from_bigint_up(x: &BigInt, exp: i64) -> Mag {
        Mag::from_bigint(x, exp, true)
    }

    /// Lower bound for `|x| * 2^exp`.
    pub fn from_bigint_down(x: &BigInt, exp: i64) -> Mag {
        Mag::from_bigint(x, exp, false)
    }

    fn from_bigint(x: &BigInt, exp: i64, up: bool) -> Mag {
        let a = x.magnitude();
        let bits = a.bits();
        if bits <= 120 {
            return Mag::norm(a.to_u128().unwrap(), exp, up);
        }
        let s = bits - 120;
        let top = (a >> s).to_u128().unwrap();
        let inexact = a.trailing_zeros().is_some_and(|tz| tz < s);
        let top = if up && inexact { top + 1 } else { top };
        Mag::norm(top, exp + s as i64, up)
    }

    pub fn add_up(self, o: Mag) -> Mag {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (a, b) = if self.exp >= o.exp { (self, o) } else { (o, self) };
        let d = (a.exp - b.exp) as u64;
        let base = a.exp - 64;
        let big = (a.man as u128) << 64;
        let small = if d <= 64 {
            (b.man as u128) << (64 - d)
        } else if d - 64 < 64 {
            let s = d - 64;
            let q = (b.man as u128) >> s;
            if (b.man as u128) & ((1u128 << s) - 1) != 0 {
                q + 1
            } else {
                q
            }
        } else {
            1
        };
        Mag::norm(big + small, base, true)
    }

    /// `max(self - o, 0)` rounded down.
    pub fn sub_down(self, o: Mag) -> Mag {
        if o.is_zero() {
            return self;
        }
        if self <= o {
            return Mag::ZERO;
        }
        let d = (self.exp - o.exp) as u64;
        let base = self.exp - 64;
        let big = (self.man as u128) << 64;
        let small = if d <= 64 {
            (o.man as u128) << (64 - d)
        } else if d - 64 < 64 {
            let s = d - 64;
            ((o.man as u128) >> s) + 1
        } else {
            1
        };
        Mag::norm(big.saturating_sub(small), base, false)
    }

    pub fn mul_up(self, o: Mag) -> Mag {
        if self.is_zero() || o.is_zero() {
            return Mag::ZERO;
        }
        Mag::norm(self.man as u128 * o.man as u128, self.exp + o.exp, true)
    }

    /// `self / o` rounded up; `o` must be nonzero.
    pub fn div_up(self, o: Mag) -> Mag {
        assert!(!o.is_zero(), "Mag division by zero");
        if self.is_zero() {
            return Mag::ZERO;
        }
        let num = (self.man as u128) << 64;
        let (q, r) = (num / o.man as u128, num % o.man as u128);
        Mag::norm(if r != 0 { q + 1 } else { q }, self.exp - 64 - o.exp, true)
    }

    fn sqrt_parts(self) -> (u128, u128, i64) {
        let (mut man, mut e) = (self.man as u128, self.exp);
        if e.rem_euclid(2) == 1 {
            man <<= 1;
            e -= 1;
        }
        let v = man << 64;
        (isqrt128(v), v, (e - 64) / 2)
    }

    pub fn sqrt_down(self) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        let (s, _, e) = self.sqrt_parts();
        Mag::norm(s, e, false)
    }

    pub fn sqrt_up(self) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        let (s, v, e) = self.sqrt_parts();
        let s = if s * s < v { s + 1 } else { s };
        Mag::norm(s, e, true)
    }

    /// `log2` of the value, `-inf` for zero.
    pub fn log2(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        (self.man as f64).log2() + self.exp as f64
    }

    pub fn to_rational(&self) -> BigRational {
        let m = BigRational::from_integer(BigInt::from(self.man));
        if self.exp >= 0 {
            m * BigRational::from_integer(BigInt::one() << self.exp as usize)
        } else {
            m / BigRational::from_integer(BigInt::one() << (-self.exp) as usize)
        }
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self.is_zero(), o.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            // normalized mantissas share a bit length, so exponents decide first
            _ => self.exp.cmp(&o.exp).then(self.man.cmp(&o.man)),
        }
    }
}

/// Real ball `mid * 2^exp ± rad` at a working precision of `prec` bits.
#[derive(Clone)]
pub struct BallReal {
    mid: BigInt,
    exp: i64,
    rad: Mag,
    prec: u32,
}

fn shl(x: &BigInt, s: i64) -> BigInt {
    debug_assert!(s >= 0);
    x << s as usize
}

impl BallReal {
    pub fn exact_int(n: i64, prec: u32) -> Self {
        BallReal { mid: BigInt::from(n), exp: 0, rad: Mag::ZERO, prec }.rounded()
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        BallReal { mid: n.clone(), exp: 0, rad: Mag::ZERO, prec }.rounded()
    }

    /// Tightest ball around a rational at `prec` bits.
    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let (n, d) = (q.numer(), q.denom());
        if d.is_one() {
            return BallReal::from_bigint(n, prec);
        }
        if n.is_zero() {
            return BallReal { mid: BigInt::zero(), exp: 0, rad: Mag::ZERO, prec };
        }
        let k = prec as i64 + d.bits() as i64 - n.bits() as i64 + 2;
        let (quo, rem) = if k >= 0 { shl(n, k).div_mod_floor(d) } else { n.div_mod_floor(&shl(d, -k)) };
        let rad = if rem.is_zero() { Mag::ZERO } else { Mag::pow2(-k) };
        BallReal { mid: quo, exp: -k, rad, prec }.rounded()
    }

    /// Ball with an explicit midpoint and radius (both rational); used in tests
    /// and for building inputs near zero.
    pub fn with_radius(mid: &BigRational, rad: &BigRational, prec: u32) -> Self {
        let m = BallReal::from_rational(mid, prec);
        let r = BallReal::from_rational(&rad.abs(), prec);
        let extra = r.upper_abs();
        BallReal { rad: m.rad.add_up(extra), ..m }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        BallReal { prec, ..self.clone() }.rounded()
    }

    pub fn radius(&self) -> Mag {
        self.rad
    }

    pub fn mid_rational(&self) -> BigRational {
        dyadic(&self.mid, self.exp)
    }

    pub fn rad_rational(&self) -> BigRational {
        self.rad.to_rational()
    }

    fn mid_mag_up(&self) -> Mag {
        Mag::from_bigint_up(&self.mid, self.exp)
    }

    fn mid_mag_down(&self) -> Mag {
        Mag::from_bigint_down(&self.mid, self.exp)
    }

    /// Upper bound on `|x|` over the ball.
    pub fn upper_abs(&self) -> Mag {
        self.mid_mag_up().add_up(self.rad)
    }

    /// Lower bound on `|x|` over the ball (zero if the ball contains zero).
    pub fn lower_abs(&self) -> Mag {
        self.mid_mag_down().sub_down(self.rad)
    }

    pub fn contains_zero(&self) -> bool {
        if self.mid.is_zero() {
            return true;
        }
        if self.mid_mag_down() > self.rad {
            return false;
        }
        if self.mid_mag_up() <= self.rad {
            return true;
        }
        self.mid_rational().abs() <= self.rad_rational()
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        (q - self.mid_rational()).abs() <= self.rad_rational()
    }

    pub fn is_certified_nonzero(&self) -> bool {
        !self.contains_zero()
    }

    pub fn is_certified_positive(&self) -> bool {
        self.mid.is_positive() && !self.contains_zero()
    }

    pub fn is_certified_negative(&self) -> bool {
        self.mid.is_negative() && !self.contains_zero()
    }

    /// Full width `2 * rad`, as a `log2` (`-inf` for exact values).
    pub fn log2_width(&self) -> f64 {
        self.rad.log2() + 1.0
    }

    /// Round the midpoint to the working precision.
    fn rounded(mut self) -> Self {
        if self.mid.is_zero() {
            self.exp = 0;
            return self;
        }
        let bl = self.mid.bits();
        if bl > self.prec as u64 {
            let s = bl - self.prec as u64;
            let exact = self.mid.trailing_zeros().is_some_and(|tz| tz >= s);
            self.mid >>= s as usize;
            self.exp += s as i64;
            if !exact {
                self.rad = self.rad.add_up(Mag::pow2(self.exp));
            }
        }
        self
    }

    fn prec_of(&self, o: &Self) -> u32 {
        self.prec.max(o.prec)
    }

    fn add_impl(&self, o: &Self, negate: bool) -> Self {
        let prec = self.prec_of(o);
        let om = if negate { -&o.mid } else { o.mid.clone() };
        if o.mid.is_zero() {
            return BallReal { rad: self.rad.add_up(o.rad), prec, ..self.clone() }.rounded();
        }
        if self.mid.is_zero() {
            return BallReal { mid: om, exp: o.exp, rad: self.rad.add_up(o.rad), prec }.rounded();
        }
        let top_a = self.mid.bits() as i64 + self.exp;
        let top_b = o.mid.bits() as i64 + o.exp;
        let gap = prec as i64 + 64;
        if top_b < top_a - gap {
            let rad = self.rad.add_up(o.rad).add_up(o.mid_mag_up());
            return BallReal { mid: self.mid.clone(), exp: self.exp, rad, prec }.rounded();
        }
        if top_a < top_b - gap {
            let rad = self.rad.add_up(o.rad).add_up(self.mid_mag_up());
            return BallReal { mid: om, exp: o.exp, rad, prec }.rounded();
        }
        let e = self.exp.min(o.exp);
        let mid = shl(&self.mid, self.exp - e) + shl(&om, o.exp - e);
        BallReal { mid, exp: e, rad: self.rad.add_up(o.rad), prec }.rounded()
    }

    fn mul_impl(&self, o: &Self) -> Self {
        let prec = self.prec_of(o);
        let mid = &self.mid * &o.mid;
        let exp = self.exp + o.exp;
        let rad = self
            .mid_mag_up()
            .mul_up(o.rad)
            .add_up(o.mid_mag_up().mul_up(self.rad))
            .add_up(self.rad.mul_up(o.rad));
        BallReal { mid, exp, rad, prec }.rounded()
    }

    /// Certified quotient; fails unless the divisor excludes zero.
    pub fn div(&self, o: &Self) -> Result<Self> {
        if !o.is_certified_nonzero() {
            return Err(Error::BallDivisionByZero);
        }
        let prec = self.prec_of(o);
        if self.mid.is_zero() {
            let rad = self.rad.div_up(o.lower_abs());
            return Ok(BallReal { mid: BigInt::zero(), exp: 0, rad, prec });
        }
        let k = prec as i64 + o.mid.bits() as i64 - self.mid.bits() as i64 + 2;
        let (quo, rem) = if k >= 0 {
            shl(&self.mid, k).div_mod_floor(&o.mid)
        } else {
            self.mid.div_mod_floor(&shl(&o.mid, -k))
        };
        let exp = self.exp - o.exp - k;
        let ulp = if rem.is_zero() { Mag::ZERO } else { Mag::pow2(exp) };
        let qmag = Mag::from_bigint_up(&quo, exp).add_up(ulp);
        let err = self.rad.add_up(qmag.mul_up(o.rad)).div_up(o.lower_abs());
        Ok(BallReal { mid: quo, exp, rad: err.add_up(ulp), prec }.rounded())
    }

    pub fn inv(&self) -> Result<Self> {
        BallReal::exact_int(1, self.prec).div(self)
    }

    /// Certified square root.
    ///
    /// A ball that touches zero is accepted only if it is narrower than
    /// `2^(-prec/2)`; its lower end is then clamped to zero.
    pub fn sqrt(&self) -> Result<Self> {
        let prec = self.prec;
        if self.mid.is_zero() && self.rad.is_zero() {
            return Ok(self.clone());
        }
        if self.is_certified_negative() {
            return Err(Error::NegativeRadicand);
        }
        if !self.is_certified_positive() {
            if self.log2_width() >= -((prec / 2) as f64) {
                return Err(Error::RadicandSignUnresolved);
            }
            // [0, sqrt(upper)] as a midpoint-radius ball
            let s = self.upper_abs().sqrt_up();
            let half = Mag { man: s.man, exp: s.exp - 1 };
            return Ok(BallReal { mid: BigInt::from(s.man), exp: s.exp - 1, rad: half, prec });
        }
        let e = self.exp;
        let bl = self.mid.bits() as i64;
        let mut t = (2 * prec as i64 + 2 - bl).max(0);
        if (e - t).rem_euclid(2) == 1 {
            t += 1;
        }
        let m = shl(&self.mid, t);
        let es = e - t;
        let s = m.sqrt();
        let exact = &s * &s == m;
        let half_exp = es / 2;
        let ulp = if exact { Mag::ZERO } else { Mag::pow2(half_exp) };
        let prop = if self.rad.is_zero() { Mag::ZERO } else { self.rad.div_up(self.lower_abs().sqrt_down()) };
        Ok(BallReal { mid: s, exp: half_exp, rad: prop.add_up(ulp), prec }.rounded())
    }

    pub fn abs(&self) -> Self {
        BallReal { mid: self.mid.abs(), ..self.clone() }
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.powi(-e);
        }
        let mut acc = BallReal::exact_int(1, self.prec);
        for _ in 0..e {
            acc = acc.mul_impl(self);
        }
        Ok(acc)
    }

    /// `"m ± r"` with a 20-significant-digit midpoint.
    pub fn to_ball_string(&self) -> String {
        format!("{} ± {}", sci_string(&self.mid_rational(), 20), sci_string(&self.rad_rational(), 3))
    }
}

fn dyadic(m: &BigInt, e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(shl(m, e))
    } else {
        BigRational::new(m.clone(), BigInt::one() << (-e) as usize)
    }
}

/// Decimal scientific notation with `digits` significant digits (rounded half up).
pub fn sci_string(q: &BigRational, digits: usize) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let ten = BigRational::from_integer(BigInt::from(10));
    let est = (a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2;
    let mut e10 = est.floor() as i64;
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            num_traits::pow(ten.clone(), k as usize)
        } else {
            num_traits::pow(ten.clone(), (-k) as usize).recip()
        }
    };
    // settle e10 so that 1 <= a / 10^e10 < 10
    loop {
        let scaled = &a / pow10(e10);
        if scaled >= ten {
            e10 += 1;
        } else if scaled < BigRational::one() {
            e10 -= 1;
        } else {
            break;
        }
    }
    let scaled = &a * pow10(digits as i64 - 1 - e10);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut n = (scaled + half).floor().to_integer();
    if n.to_string().len() > digits {
        n /= 10;
        e10 += 1;
    }
    let s = n.to_string();
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{e10}")
    } else {
        format!("{sign}{head}.{tail}e{e10}")
    }
}

impl fmt::Debug for BallReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BallReal({})", self.to_ball_string())
    }
}

impl fmt::Display for BallReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ball_string())
    }
}

impl Add for BallReal {
    type Output = BallReal;
    fn add(self, o: BallReal) -> BallReal {
        self.add_impl(&o, false)
    }
}

impl Sub for BallReal {
    type Output = BallReal;
    fn sub(self, o: BallReal) -> BallReal {
        self.add_impl(&o, true)
    }
}

impl Mul for BallReal {
    type Output = BallReal;
    fn mul(self, o: BallReal) -> BallReal {
        self.mul_impl(&o)
    }
}

impl<'a> Add<&'a BallReal> for &'a BallReal {
    type Output = BallReal;
    fn add(self, o: &BallReal) -> BallReal {
        self.add_impl(o, false)
    }
}

impl<'a> Sub<&'a BallReal> for &'a BallReal {
    type Output = BallReal;
    fn sub(self, o: &BallReal) -> BallReal {
        self.add_impl(o, true)
    }
}

impl<'a> Mul<&'a BallReal> for &'a BallReal {
    type Output = BallReal;
    fn mul(self, o: &BallReal) -> BallReal {
        self.mul_impl(o)
    }
}

impl Neg for BallReal {
    type Output = BallReal;
    fn neg(self) -> BallReal {
        BallReal { mid: -self.mid, ..self }
    }
}

impl Zero for BallReal {
    fn zero() -> Self {
        BallReal { mid: BigInt::zero(), exp: 0, rad: Mag::ZERO, prec: DEFAULT_PRECISION }
    }
    fn is_zero(&self) -> bool {
        self.mid.is_zero() && self.rad.is_zero()
    }
}

impl One for BallReal {
    fn one() -> Self {
        BallReal::exact_int(1, DEFAULT_PRECISION)
    }
}

impl Scalar for BallReal {
    fn zero_test(&self, tol_bits: u32) -> ZeroVerdict {
        let w = self.log2_width();
        let is_zero = self.contains_zero() && w < -(tol_bits as f64);
        ZeroVerdict { is_zero, log2_width: if w.is_finite() { Some(w) } else { None } }
    }
}

impl PartialEq for BallReal {
    /// Structural equality of the representation (not mathematical equality).
    fn eq(&self, o: &Self) -> bool {
        self.mid_rational() == o.mid_rational() && self.rad == o.rad
    }
}

impl BallReal {
    pub fn sign_of_mid(&self) -> Sign {
        self.mid.sign()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn mag_rounding_directions() {
        let three = Mag::from_bigint_up(&BigInt::from(3), 0);
        assert_eq!(three.to_rational(), rat(3, 1));
        let third_up = Mag::pow2(0).div_up(three);
        assert!(third_up.to_rational() > rat(1, 3));
        let s_down = Mag::from_bigint_down(&BigInt::from(2), 0).sqrt_down();
        let s_up = Mag::from_bigint_up(&BigInt::from(2), 0).sqrt_up();
        let sd = s_down.to_rational();
        let su = s_up.to_rational();
        assert!(&sd * &sd < rat(2, 1));
        assert!(&su * &su > rat(2, 1));
        assert_eq!(Mag::pow2(3).sub_down(Mag::pow2(4)), Mag::ZERO);
    }

    #[test]
    fn sqrt_of_exact_square_is_exact() {
        let b = BallReal::exact_int(4, 512).sqrt().unwrap();
        assert!(b.contains(&rat(2, 1)));
        assert!(b.radius().is_zero());
    }

    #[test]
    fn sqrt_two_at_128_bits() {
        let b = BallReal::exact_int(2, 128).sqrt().unwrap();
        assert!(b.rad.log2() < -120.0);
        let lo = b.mid_rational() - b.rad_rational();
        let hi = b.mid_rational() + b.rad_rational();
        assert!(&lo * &lo <= rat(2, 1) && &hi * &hi >= rat(2, 1));
        assert!(b.to_ball_string().starts_with("1.414213562373095048"));
    }

    #[test]
    fn sqrt_near_zero_is_clamped() {
        let tiny = BigRational::new(BigInt::one(), BigInt::from(10).pow(80));
        let b = BallReal::with_radius(&BigRational::zero(), &tiny, 512);
        let s = b.sqrt().unwrap();
        assert!(s.contains(&BigRational::zero()));
        let wide = BallReal::with_radius(&BigRational::zero(), &rat(1, 1000), 512);
        assert!(matches!(wide.sqrt(), Err(Error::RadicandSignUnresolved)));
        assert!(matches!(BallReal::exact_int(-1, 64).sqrt(), Err(Error::NegativeRadicand)));
    }

    #[test]
    fn division_needs_nonzero_divisor() {
        let z = BallReal::with_radius(&BigRational::zero(), &rat(1, 8), 64);
        assert!(BallReal::exact_int(1, 64).div(&z).is_err());
        let third = BallReal::exact_int(1, 64).div(&BallReal::exact_int(3, 64)).unwrap();
        assert!(third.contains(&rat(1, 3)));
    }

    #[test]
    fn scientific_strings() {
        assert_eq!(sci_string(&rat(1, 4), 5), "2.5e-1");
        assert_eq!(sci_string(&rat(-1234, 1), 3), "-1.23e3");
        assert_eq!(sci_string(&rat(999, 1000), 2), "1e0");
    }

    #[test]
    fn extreme_exponent_gap_is_absorbed() {
        let big = BallReal::from_rational(&rat(1, 1), 64);
        let tiny = BallReal::from_rational(&BigRational::new(BigInt::one(), BigInt::one() << 4000usize), 64);
        let s = &big + &tiny;
        assert!(s.contains(&(rat(1, 1) + tiny.mid_rational())));
    }
}
