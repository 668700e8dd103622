use num_rational::BigRational;
use serde::Serialize;

use super::eval::eval_in;
use super::words::{e_f, GenWord, Token};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::params::GroundParams;
use crate::scalars::{BallReal, Field};
use crate::seminormal::{Embed, SeminormalModule, MAX_PRECISION};
use crate::tableaux::{shapes, RPartition};

#[derive(Clone, Debug, Serialize)]
pub struct GramValue {
    pub n: usize,
    pub l: i64,
    pub value: String,
    /// Every `ω_i`, `0 ≤ i ≤ r-1`, vanishes, so the form on the `f = n/2` cell is zero.
    pub degenerate: bool,
}

/// `ω_ℓ^{n/2}` from a supplied `ω`.
pub fn gram_half_with<F: Field>(n: usize, l: i64, r: usize, omega: impl Fn(i64) -> F) -> Result<(F, bool)> {
    if n % 2 == 1 {
        return Err(Error::OddN(n));
    }
    if l.abs() > r as i64 - 1 {
        return Err(Error::OutOfRange(format!("|l| = {} exceeds r - 1 = {}", l.abs(), r - 1)));
    }
    let degenerate = (0..r as i64).all(|i| omega(i) == F::zero());
    Ok((omega(l).powi((n / 2) as i64), degenerate))
}

/// The Gram value on the `f = n/2` cell pairing `E^{n/2}` with
/// `E^{n/2} X_{n-1}^ℓ ⋯ X_3^ℓ X_1^ℓ`.
pub fn gram_half(n: usize, l: i64, p: &GroundParams<BigRational>) -> Result<GramValue> {
    let (v, degenerate) = gram_half_with(n, l, p.r(), |a| p.omega(a))?;
    Ok(GramValue { n, l, value: v.to_exact_string(), degenerate })
}

/// `X_{n-1}^ℓ ⋯ X_3^ℓ X_1^ℓ`.
pub fn x_alternate(n: usize, l: i64) -> GenWord {
    let mut w = GenWord::identity();
    let mut i = n;
    while i >= 2 {
        w.push(Token::X(i - 1, l));
        i -= 2;
    }
    w
}

/// Compares `E^{n/2} X^ℓ E^{n/2}` with `gram_half · E^{n/2}` on `Δ(n/2, ∅)`;
/// returns whether every residual entry encloses zero with width below
/// `2^-tol_bits`.
pub fn gram_cross_check<S: Embed>(m: &SeminormalModule<S>, l: i64, p: &GroundParams<BigRational>, tol_bits: u32) -> Result<bool> {
    let n = m.n();
    if n % 2 == 1 {
        return Err(Error::OddN(n));
    }
    if !m.lambda().is_empty() {
        return Err(Error::ShapeMismatch(format!("expected the empty shape, got {}", m.lambda())));
    }
    let (value, _) = gram_half_with(n, l, p.r(), |a| p.omega(a))?;
    let ef = e_f(n / 2, n);
    let lhs_w = ef.clone().concat(x_alternate(n, l)).concat(ef.clone());
    let u: Vec<S> = p.u().iter().map(|x| S::embed(x, m.precision())).collect();
    let lhs = eval_in(m, &u, &lhs_w);
    let rhs: Matrix<S> = eval_in(m, &u, &ef).scale(&S::embed(&value, m.precision()));
    Ok(lhs.sub(&rhs).zero_test(tol_bits).0)
}

/// [`gram_cross_check`] on ball modules with tolerance `2^-(prec/2)`; the
/// working precision doubles while the check fails, up to the verifier's maximum.
pub fn gram_cross_check_ball(n: usize, l: i64, p: &GroundParams<BigRational>, prec: u32) -> Result<bool> {
    let mut work = prec;
    loop {
        let m = SeminormalModule::<BallReal>::build(n, &RPartition::empty(p.r()), p, work)?;
        if gram_cross_check(&m, l, p, prec / 2)? {
            return Ok(true);
        }
        if work * 2 > MAX_PRECISION {
            return Ok(false);
        }
        work *= 2;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Label {
    pub f: usize,
    pub lambda: String,
}

/// Labels `(f, λ)` of the irreducible modules at generic parameters; the
/// `f = n/2` label is dropped when `n` is even and `ω_0 = ⋯ = ω_{r-1} = 0`.
pub fn classify_with(n: usize, r: usize, omegas_vanish: bool) -> Result<Vec<Label>> {
    if r.is_multiple_of(2) {
        return Err(Error::EvenR(r));
    }
    Ok(shapes(r, n)
        .into_iter()
        .filter(|(f, _)| !(n.is_multiple_of(2) && *f == n / 2 && omegas_vanish))
        .map(|(f, l): (usize, RPartition)| Label { f, lambda: l.label() })
        .collect())
}

pub fn classify(n: usize, p: &GroundParams<BigRational>) -> Result<Vec<Label>> {
    let vanish = (0..p.r() as i64).all(|i| num_traits::Zero::is_zero(&p.omega(i)));
    classify_with(n, p.r(), vanish)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::generic_specialization;
    use num_traits::Zero;

    #[test]
    fn small_values() {
        let p = generic_specialization(3, 4, 0).unwrap();
        let g = gram_half_with(2, 0, 3, |a| p.omega(a)).unwrap().0;
        assert_eq!(g, p.omega(0));
        let g = gram_half_with(4, 1, 3, |a| p.omega(a)).unwrap().0;
        assert_eq!(g, p.omega(1) * p.omega(1));
        assert!(matches!(gram_half(3, 0, &p), Err(Error::OddN(3))));
    }

    #[test]
    fn vanishing_omegas_are_flagged() {
        let (v, degenerate) = gram_half_with(2, 1, 3, |_| BigRational::zero()).unwrap();
        assert!(v.is_zero() && degenerate);
        let labels = classify_with(2, 3, true).unwrap();
        assert!(labels.iter().all(|l| l.f == 0));
        assert!(classify_with(2, 3, false).unwrap().iter().any(|l| l.f == 1));
    }
}
