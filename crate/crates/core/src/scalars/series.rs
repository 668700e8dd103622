use std::fmt;

use num_rational::BigRational;

use num_traits::Zero;

use super::laurent::LaurentPoly;
use super::ratfunc::RatFunc;
use super::Field;
use crate::error::{Error, Result};

/// Power series `c_0 + c_1 t + ... + c_N t^N` truncated at order `N`.
#[derive(Clone, PartialEq)]
pub struct TruncSeries<F> {
    var: String,
    coeffs: Vec<F>,
}

impl<F: Field> TruncSeries<F> {
    /// Pads or truncates `coeffs` to length `order + 1`.
    pub fn new(var: impl Into<String>, mut coeffs: Vec<F>, order: usize) -> Self {
        coeffs.resize(order + 1, F::zero());
        TruncSeries { var: var.into(), coeffs }
    }

    pub fn zero(var: impl Into<String>, order: usize) -> Self {
        Self::new(var, Vec::new(), order)
    }

    pub fn constant(var: impl Into<String>, c: F, order: usize) -> Self {
        Self::new(var, vec![c], order)
    }

    pub fn one(var: impl Into<String>, order: usize) -> Self {
        Self::constant(var, F::one(), order)
    }

    /// The series of `t` itself.
    pub fn t(var: impl Into<String>, order: usize) -> Self {
        Self::new(var, vec![F::zero(), F::one()], order)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.coeffs.len(), o.coeffs.len(), "series orders differ");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        TruncSeries { var: self.var.clone(), coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        TruncSeries { var: self.var.clone(), coeffs }
    }

    pub fn scale(&self, c: &F) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.clone() * c.clone()).collect();
        TruncSeries { var: self.var.clone(), coeffs }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let n = self.coeffs.len();
        let mut out = vec![F::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        TruncSeries { var: self.var.clone(), coeffs: out }
    }

    /// Multiplicative inverse; fails when the constant term vanishes.
    pub fn inv(&self) -> Result<Self> {
        self.one_like().div(self)
    }

    fn one_like(&self) -> Self {
        Self::one(self.var.clone(), self.order())
    }

    pub fn div(&self, d: &Self) -> Result<Self> {
        self.check(d);
        let d0 = d.coeffs[0].clone();
        if d0.is_zero() {
            return Err(Error::Pole(format!("{} = 0 (divisor has no constant term)", self.var)));
        }
        let d0inv = d0.inv();
        let n = self.coeffs.len();
        let mut out: Vec<F> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                if !d.coeffs[j].is_zero() {
                    acc = acc - d.coeffs[j].clone() * out[k - j].clone();
                }
            }
            out.push(acc * d0inv.clone());
        }
        Ok(TruncSeries { var: self.var.clone(), coeffs: out })
    }

    /// Geometric series `1/(1 - c t^k)`.
    pub fn geometric(var: impl Into<String>, c: F, k: usize, order: usize) -> Self {
        let mut coeffs = vec![F::zero(); order + 1];
        let mut p = F::one();
        let mut i = 0;
        while i <= order {
            coeffs[i] = p.clone();
            p = p * c.clone();
            i += k.max(1);
        }
        TruncSeries { var: var.into(), coeffs }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> TruncSeries<G> {
        TruncSeries { var: self.var.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl TruncSeries<RatFunc> {
    /// Coefficients that are constants, or `None` if any is not.
    pub fn to_constants(&self) -> Option<TruncSeries<BigRational>> {
        let coeffs = self.coeffs.iter().map(|c| c.constant_value()).collect::<Option<Vec<_>>>()?;
        Some(TruncSeries { var: self.var.clone(), coeffs })
    }
}

impl<F: Field> fmt::Debug for TruncSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_exact_string()).collect();
        write!(f, "TruncSeries[{}]({})", self.var, cs.join(", "))
    }
}

/// Where [`expand_series`] expands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionPoint {
    /// Powers of `var`.
    Zero,
    /// Powers of `var^-1`.
    Infinity,
}

/// Expand `f` through order `order` in `var` (at zero) or in `var^-1` (at
/// infinity). The other variables stay symbolic in the coefficients.
pub fn expand_series(f: &RatFunc, var: &str, point: ExpansionPoint, order: usize) -> Result<TruncSeries<RatFunc>> {
    let series_var = match point {
        ExpansionPoint::Zero => var.to_string(),
        ExpansionPoint::Infinity => format!("{var}^-1"),
    };
    let (num, den) = LaurentPoly::unify(f.num(), f.den());
    let Some(vi) = num.var_index(var) else {
        return Ok(TruncSeries::constant(series_var, f.clone(), order));
    };
    let (num, den) = match point {
        ExpansionPoint::Zero => (num, den),
        ExpansionPoint::Infinity => (num.invert_var(vi), den.invert_var(vi)),
    };
    let vn = num.min_exponent(vi).unwrap_or(0);
    let vd = den.min_exponent(vi).expect("nonzero denominator");
    if num.is_zero() {
        return Ok(TruncSeries::zero(series_var, order));
    }
    if vn < vd {
        return Err(Error::Pole(format!(
            "{} at {}: factor {}^{} in the denominator",
            var,
            if point == ExpansionPoint::Zero { "0" } else { "infinity" },
            series_var,
            vd - vn
        )));
    }
    let coeff = |p: &LaurentPoly, k: i32| -> RatFunc { RatFunc::from_poly(p.coeff_of(vi, k)) };
    let mk = |p: &LaurentPoly, base: i32| -> TruncSeries<RatFunc> {
        let cs = (0..=order as i32).map(|k| coeff(p, base + k)).collect();
        TruncSeries::new(series_var.clone(), cs, order)
    };
    // f = t^(vn - vd) * (num/t^vn) / (den/t^vd)
    let shift = (vn - vd) as usize;
    let ns = mk(&num, vn);
    let ds = mk(&den, vd);
    let q = ns.div(&ds)?;
    let mut cs = vec![RatFunc::zero(); shift.min(order + 1)];
    cs.extend(q.coeffs.into_iter().take(order + 1 - cs.len()));
    Ok(TruncSeries::new(series_var, cs, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use num_traits::One;

    fn c(k: i64) -> RatFunc {
        RatFunc::constant(rat(k, 1))
    }

    #[test]
    fn expand_q_factor_at_zero() {
        let (x, y) = (RatFunc::var("x"), RatFunc::var("y"));
        let f = (y.clone() - x.clone()) / (x.clone() * y - c(1));
        let s = expand_series(&f, "y", ExpansionPoint::Zero, 2).unwrap();
        assert_eq!(s.coeff(0), x.clone());
        assert_eq!(s.coeff(1), x.clone() * x.clone() - c(1));
        assert_eq!(s.coeff(2), x.clone() * x.clone() * x.clone() - x);
    }

    #[test]
    fn constant_expands_trivially() {
        let s = expand_series(&RatFunc::one(), "y", ExpansionPoint::Infinity, 3).unwrap();
        assert_eq!(s.to_constants().unwrap().coeffs(), &[rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
    }

    #[test]
    fn geometric_in_inverse_square() {
        let y = RatFunc::var("y");
        let f = y.clone() * y.clone() / (y.clone() * y - c(1));
        let s = expand_series(&f, "y", ExpansionPoint::Infinity, 4).unwrap().to_constants().unwrap();
        let want: Vec<_> = [1, 0, 1, 0, 1].iter().map(|&k| rat(k, 1)).collect();
        assert_eq!(s.coeffs(), want.as_slice());
    }

    #[test]
    fn pole_is_reported() {
        let y = RatFunc::var("y");
        let err = expand_series(&y.inv(), "y", ExpansionPoint::Zero, 2).unwrap_err();
        assert!(err.to_string().contains("y"));
        assert!(expand_series(&y, "y", ExpansionPoint::Infinity, 2).is_err());
    }

    #[test]
    fn series_division_round_trips() {
        let s = TruncSeries::new("t", vec![rat(2, 1), rat(3, 1), rat(-1, 1)], 5);
        let inv = s.inv().unwrap();
        let p = s.mul(&inv);
        assert_eq!(p, TruncSeries::one("t", 5));
        assert!(TruncSeries::<BigRational>::zero("t", 3).inv().is_err());
        assert!(TruncSeries::<BigRational>::zero("t", 3).is_zero());
        assert!(!BigRational::zero().is_one());
    }
}
