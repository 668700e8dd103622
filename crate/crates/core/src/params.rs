//! Admissible ground data: `q`, `u_1..u_r`, `delta`, `rho` and the `omega_a`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::RwLock;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{fraction_string, parse_fraction, Field, RatFunc, TruncSeries};

/// Which scalar field a parameter set lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Backend {
    Rational,
    Symbolic,
}

/// Elementary symmetric polynomial `sigma_i(u)`.
pub fn elem_symmetric<F: Field>(u: &[F], i: usize) -> Result<F> {
    if i > u.len() {
        return Err(Error::OutOfRange(format!("sigma_{i} with r = {}", u.len())));
    }
    // e[k] holds sigma_k of the prefix processed so far
    let mut e = vec![F::zero(); u.len() + 1];
    e[0] = F::one();
    for (m, x) in u.iter().enumerate() {
        for k in (1..=m + 1).rev() {
            e[k] = e[k].clone() + e[k - 1].clone() * x.clone();
        }
    }
    Ok(e[i].clone())
}

/// Coefficients `Q_0..Q_order` of `prod (y - x_i)/(x_i y - 1)` at `y = 0`
/// (or of the reciprocal product when `primed`).
pub fn q_series<F: Field>(u: &[F], primed: bool, order: usize) -> TruncSeries<F> {
    let mut acc = TruncSeries::one("y", order);
    for x in u {
        let f = if primed {
            // (x y - 1)/(y - x) = (1 - x y)/(x - y) = x^{-1} (1 - x y) / (1 - x^{-1} y)
            let xi = x.inv();
            let num = TruncSeries::new("y", vec![F::one(), -x.clone()], order).scale(&xi);
            num.mul(&TruncSeries::geometric("y", xi, 1, order))
        } else {
            // (y - x)/(x y - 1) = (x - y) / (1 - x y)
            let num = TruncSeries::new("y", vec![x.clone(), -F::one()], order);
            num.mul(&TruncSeries::geometric("y", x.clone(), 1, order))
        };
        acc = acc.mul(&f);
    }
    acc
}

/// `Q_a(u)` (or `Q'_a(u)`), zero for negative `a`.
pub fn q_poly<F: Field>(a: i64, u: &[F], primed: bool) -> F {
    if a < 0 {
        return F::zero();
    }
    q_series(u, primed, a as usize).coeff(a as usize)
}

/// Symmetric-function data derived from `u`.
pub struct SymCache<F> {
    pub sigma: Vec<F>,
    qpoly: RwLock<Vec<F>>,
    qpoly_prime: RwLock<Vec<F>>,
}

impl<F: Field> SymCache<F> {
    fn new(u: &[F]) -> Self {
        let sigma = (0..=u.len()).map(|i| elem_symmetric(u, i).unwrap()).collect();
        SymCache { sigma, qpoly: RwLock::new(Vec::new()), qpoly_prime: RwLock::new(Vec::new()) }
    }

    fn get(&self, u: &[F], a: i64, primed: bool) -> F {
        if a < 0 {
            return F::zero();
        }
        let a = a as usize;
        let lock = if primed { &self.qpoly_prime } else { &self.qpoly };
        if let Some(v) = lock.read().unwrap().get(a) {
            return v.clone();
        }
        let mut w = lock.write().unwrap();
        if w.len() <= a {
            let order = (2 * a).max(8);
            *w = q_series(u, primed, order).coeffs().to_vec();
        }
        w[a].clone()
    }
}

/// Admissible ground data for `B_{r,n}` with `r` odd.
pub struct GroundParams<F> {
    r: usize,
    q: F,
    u: Vec<F>,
    delta: F,
    alpha: i8,
    rho: F,
    prod_u: F,
    backend: Backend,
    exponents: Option<Vec<i64>>,
    sym: SymCache<F>,
    omega_memo: RwLock<BTreeMap<i64, F>>,
}

impl<F: Field> Clone for GroundParams<F> {
    fn clone(&self) -> Self {
        let mut p = GroundParams::build(self.q.clone(), self.u.clone(), self.alpha, self.backend).unwrap();
        p.exponents = self.exponents.clone();
        p
    }
}

impl<F: Field> fmt::Debug for GroundParams<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u: Vec<String> = self.u.iter().map(|x| x.to_exact_string()).collect();
        write!(f, "GroundParams(r={}, q={}, u=[{}], alpha={})", self.r, self.q.to_exact_string(), u.join(", "), self.alpha)
    }
}

impl<F: Field> GroundParams<F> {
    fn build(q: F, u: Vec<F>, alpha: i8, backend: Backend) -> Result<Self> {
        let r = u.len();
        if r == 0 {
            return Err(Error::InvalidParams("need at least one u_i".into()));
        }
        if r.is_multiple_of(2) {
            return Err(Error::EvenR(r));
        }
        if alpha != 1 && alpha != -1 {
            return Err(Error::InvalidParams(format!("alpha must be +1 or -1, got {alpha}")));
        }
        if q.is_zero() {
            return Err(Error::InvalidParams("q must be invertible".into()));
        }
        let delta = q.clone() - q.inv();
        if delta.is_zero() {
            return Err(Error::InvalidParams("delta = q - q^-1 must be invertible".into()));
        }
        if u.iter().any(|x| x.is_zero()) {
            return Err(Error::InvalidParams("every u_i must be invertible".into()));
        }
        let prod_u = u.iter().fold(F::one(), |a, b| a * b.clone());
        let rho = (F::from_i64(alpha as i64) * prod_u.clone()).inv();
        let sym = SymCache::new(&u);
        Ok(GroundParams {
            r,
            q,
            u,
            delta,
            alpha,
            rho,
            prod_u,
            backend,
            exponents: None,
            sym,
            omega_memo: RwLock::new(BTreeMap::new()),
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn u(&self) -> &[F] {
        &self.u
    }

    /// `u_s` for `s` in `1..=r`.
    pub fn u_at(&self, s: usize) -> &F {
        &self.u[s - 1]
    }

    pub fn delta(&self) -> &F {
        &self.delta
    }

    pub fn alpha(&self) -> i8 {
        self.alpha
    }

    pub fn rho(&self) -> &F {
        &self.rho
    }

    pub fn prod_u(&self) -> &F {
        &self.prod_u
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    /// Exponents `k_i` with `u_i = q^(2 k_i)`, when known.
    pub fn exponents(&self) -> Option<&[i64]> {
        self.exponents.as_deref()
    }

    /// `delta^-1 * rho`, which appears everywhere.
    pub fn dinv_rho(&self) -> F {
        self.rho.clone() / self.delta.clone()
    }

    pub fn sigma(&self, i: usize) -> Result<F> {
        self.sym.sigma.get(i).cloned().ok_or_else(|| Error::OutOfRange(format!("sigma_{i} with r = {}", self.r)))
    }

    pub fn q_poly(&self, a: i64, primed: bool) -> F {
        self.sym.get(&self.u, a, primed)
    }

    /// `omega_a` from the closed forms for odd `r`; memoized.
    pub fn omega(&self, a: i64) -> F {
        if let Some(v) = self.omega_memo.read().unwrap().get(&a) {
            return v.clone();
        }
        let v = self.omega_uncached(a);
        self.omega_memo.write().unwrap().insert(a, v.clone());
        v
    }

    fn omega_uncached(&self, a: i64) -> F {
        let parity = |k: i64| if k % 2 == 0 { F::one() } else { F::zero() };
        let dr = self.dinv_rho();
        if a >= 0 {
            let mut w = parity(a) + dr.clone() * self.q_poly(a, false) * self.prod_u.clone();
            for k in (0..a).step_by(2) {
                w = w + self.q_poly(a - 1 - k, false);
            }
            if a == 0 {
                w = w - dr;
            }
            w
        } else {
            let b = -a;
            let mut w = parity(b) - dr * self.q_poly(b, true) * self.prod_u.clone();
            for k in (0..b).step_by(2) {
                w = w + self.q_poly(b - 1 - k, true);
            }
            w
        }
    }

    /// `[omega_lo, ..., omega_hi]`.
    pub fn omega_range(&self, range: RangeInclusive<i64>) -> Vec<F> {
        range.map(|a| self.omega(a)).collect()
    }

    /// Check both admissibility families with `omega` supplied by `w`.
    pub fn check_admissible_with(
        &self,
        w: impl Fn(i64) -> F,
        b_range: RangeInclusive<i64>,
        a_max: i64,
    ) -> AdmissibilityReport {
        let r = self.r as i64;
        let mut first = Vec::new();
        for b in b_range {
            let mut acc = F::zero();
            for s in 0..=r {
                let sign = if (r - s) % 2 == 0 { F::one() } else { -F::one() };
                acc = acc + sign * self.sym.sigma[(r - s) as usize].clone() * w(s + b);
            }
            first.push(AdmissibilityCheck { index: b, pass: acc.is_zero() });
        }
        let rinv_d = self.rho.inv() * self.delta.clone();
        let mut second = Vec::new();
        for a in 0..=a_max {
            let mut rhs = w(-a);
            for i in 1..=a {
                rhs = rhs + rinv_d.clone() * (w(a - i) * w(-i) - w(a - 2 * i));
            }
            second.push(AdmissibilityCheck { index: a, pass: (w(a) - rhs).is_zero() });
        }
        AdmissibilityReport { first, second }
    }

    pub fn check_admissible(&self, b_range: RangeInclusive<i64>, a_max: i64) -> AdmissibilityReport {
        self.check_admissible_with(|a| self.omega(a), b_range, a_max)
    }

    /// Closed-form series of the generating functions in `t = y^-1`:
    /// `Sign::Plus` gives `[omega_0, omega_1, ...]`, `Sign::Minus` gives
    /// `[0, omega_-1, omega_-2, ...]`.
    pub fn wtilde_closed(&self, sign: Sign, order: usize) -> TruncSeries<F> {
        let t = "t";
        let one = TruncSeries::<F>::one(t, order);
        let tser = TruncSeries::<F>::t(t, order);
        let inv_1mt2 = TruncSeries::geometric(t, F::one(), 2, order);
        let t_over = tser.mul(&inv_1mt2);
        let dr = self.dinv_rho();
        let pu = self.prod_u.clone();
        // prod (1 - c_l t)/(1 - d_l t)
        let ratio = |num_c: &dyn Fn(&F) -> F, den_c: &dyn Fn(&F) -> F| {
            let mut acc = one.clone();
            for x in &self.u {
                let n = TruncSeries::new(t, vec![F::one(), -num_c(x)], order);
                acc = acc.mul(&n).mul(&TruncSeries::geometric(t, den_c(x), 1, order));
            }
            acc
        };
        match sign {
            Sign::Plus => {
                let prod = ratio(&|x: &F| x.inv(), &|x: &F| x.clone());
                let front = TruncSeries::constant(t, dr.clone() * pu.clone(), order).add(&t_over);
                inv_1mt2
                    .sub(&TruncSeries::constant(t, dr, order))
                    .add(&front.mul(&prod).scale(&pu))
            }
            Sign::Minus => {
                let prod = ratio(&|x: &F| x.clone(), &|x: &F| x.inv());
                let front = TruncSeries::constant(t, dr.clone() * pu.clone(), order).sub(&t_over);
                let t2 = tser.mul(&tser).mul(&inv_1mt2);
                t2.add(&TruncSeries::constant(t, dr, order)).sub(&front.mul(&prod).scale(&pu.inv()))
            }
        }
    }

    /// `(w̃_+ - 1/(1-t²) + δ^-1ρ)(w̃_- - t²/(1-t²) - δ^-1ρ)` and
    /// `t²/(1-t²)² - δ^-2`, each through order `order`; the two agree for
    /// admissible parameters.
    pub fn product_identity(&self, order: usize) -> (TruncSeries<F>, TruncSeries<F>) {
        let t = "t";
        let dr = TruncSeries::constant(t, self.dinv_rho(), order);
        let geo = TruncSeries::geometric(t, F::one(), 2, order);
        let t1 = TruncSeries::<F>::t(t, order);
        let t2 = t1.mul(&t1);
        let lhs_a = self.wtilde_closed(Sign::Plus, order).sub(&geo).add(&dr);
        let lhs_b = self.wtilde_closed(Sign::Minus, order).sub(&t2.mul(&geo)).sub(&dr);
        let d2 = self.delta.clone() * self.delta.clone();
        let rhs = t2.mul(&geo).mul(&geo).sub(&TruncSeries::constant(t, d2.inv(), order));
        (lhs_a.mul(&lhs_b), rhs)
    }

    /// `[omega_0..omega_N]` or `[0, omega_-1..omega_-N]` as a series, for
    /// comparison with [`GroundParams::wtilde_closed`].
    pub fn omega_series(&self, sign: Sign, order: usize) -> TruncSeries<F> {
        let cs = (0..=order as i64)
            .map(|a| match sign {
                Sign::Plus => self.omega(a),
                Sign::Minus if a == 0 => F::zero(),
                Sign::Minus => self.omega(-a),
            })
            .collect();
        TruncSeries::new("t", cs, order)
    }
}

impl GroundParams<BigRational> {
    /// Exact rational parameters.
    pub fn new(q: BigRational, u: Vec<BigRational>, alpha: i8) -> Result<Self> {
        GroundParams::build(q, u, alpha, Backend::Rational)
    }

    /// `u_i = q^(2 k_i)`.
    pub fn from_exponents(q: BigRational, k: &[i64], alpha: i8) -> Result<Self> {
        let u = k.iter().map(|&e| q.powi(2 * e)).collect();
        let mut p = GroundParams::new(q, u, alpha)?;
        p.exponents = Some(k.to_vec());
        Ok(p)
    }

    /// Lift to rational functions (constants).
    pub fn to_symbolic(&self) -> GroundParams<RatFunc> {
        GroundParams::build(
            RatFunc::constant(self.q.clone()),
            self.u.iter().map(|x| RatFunc::constant(x.clone())).collect(),
            self.alpha,
            Backend::Symbolic,
        )
        .unwrap()
    }

    /// Definition-level genericity scan: `u_i u_j^(+-1) != q^(2d)` for
    /// `i != j` and `u_i != +-q^d`, for every `|d| < 2n`.
    pub fn is_generic(&self, n: usize) -> bool {
        let bound = 2 * n as i64;
        let qp = |d: i64| self.q.powi(d);
        for i in 0..self.r {
            for d in -bound + 1..bound {
                let v = qp(d);
                if self.u[i] == v || self.u[i] == -v {
                    return false;
                }
            }
            for j in 0..self.r {
                if i == j {
                    continue;
                }
                for d in -bound + 1..bound {
                    let v = qp(2 * d);
                    if &self.u[i] * &self.u[j] == v || &self.u[i] / &self.u[j] == v {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Key/value rendering used by preset files.
    pub fn to_preset(&self) -> String {
        let mut s = format!("r={}\nq={}\n", self.r, fraction_string(&self.q));
        match &self.exponents {
            Some(k) => {
                let ks: Vec<String> = k.iter().map(|x| x.to_string()).collect();
                s += &format!("k={}\n", ks.join(","));
            }
            None => {
                let us: Vec<String> = self.u.iter().map(fraction_string).collect();
                s += &format!("u={}\n", us.join(","));
            }
        }
        s += &format!("alpha={}\n", self.alpha);
        s
    }
}

impl GroundParams<RatFunc> {
    /// Fully symbolic parameters in variables `q, u1, ..., ur`.
    pub fn symbolic(r: usize, alpha: i8) -> Result<Self> {
        let q = RatFunc::var("q");
        let u = (1..=r).map(|i| RatFunc::var(&format!("u{i}"))).collect();
        GroundParams::build(q, u, alpha, Backend::Symbolic)
    }

    pub fn symbolic_from(q: RatFunc, u: Vec<RatFunc>, alpha: i8) -> Result<Self> {
        GroundParams::build(q, u, alpha, Backend::Symbolic)
    }
}

/// Sign selector for the two generating functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityCheck {
    pub index: i64,
    pub pass: bool,
}

/// Per-equation outcome of the admissibility check. `first` is indexed by
/// `b`, `second` by `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub first: Vec<AdmissibilityCheck>,
    pub second: Vec<AdmissibilityCheck>,
}

impl AdmissibilityReport {
    pub fn all_pass(&self) -> bool {
        self.first.iter().chain(&self.second).all(|c| c.pass)
    }

    /// `(family, index)` of the first failure, families numbered 1 and 2.
    pub fn first_failure(&self) -> Option<(u8, i64)> {
        if let Some(c) = self.first.iter().find(|c| !c.pass) {
            return Some((1, c.index));
        }
        self.second.iter().find(|c| !c.pass).map(|c| (2, c.index))
    }
}

/// Parameters in the be-real pattern: `q = 2 + seed`, `u_i = q^(2 k_i)` with
/// `k_r = n`, `|k_i| = |k_(i+1)| + 2n`, positive for odd `i`, negative for
/// even `i`, and `alpha = +1`.
pub fn generic_specialization(r: usize, n: usize, seed: u64) -> Result<GroundParams<BigRational>> {
    if r.is_multiple_of(2) {
        return Err(Error::EvenR(r));
    }
    let n = n.max(1) as i64;
    let mut mags = vec![0i64; r];
    mags[r - 1] = n;
    for i in (0..r - 1).rev() {
        mags[i] = mags[i + 1] + 2 * n;
    }
    let k: Vec<i64> = mags.iter().enumerate().map(|(i, &m)| if i % 2 == 0 { m } else { -m }).collect();
    let q = BigRational::from_integer((2 + seed as i64).into());
    let p = GroundParams::from_exponents(q, &k, 1)?;
    debug_assert!(p.is_generic(n as usize));
    Ok(p)
}

/// Parse a preset file of `key=value` lines (`r`, `q`, `k` or `u`, `alpha`).
/// Blank lines and `#` comments are ignored.
pub fn parse_preset(text: &str) -> Result<GroundParams<BigRational>> {
    let mut r: Option<usize> = None;
    let mut q: Option<BigRational> = None;
    let mut k: Option<Vec<i64>> = None;
    let mut u: Option<Vec<BigRational>> = None;
    let mut alpha: i8 = 1;
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, val) = line
            .split_once('=')
            .ok_or_else(|| Error::Preset(format!("line {}: expected key=value", ln + 1)))?;
        let (key, val) = (key.trim(), val.trim());
        let bad = |what: &str| Error::Preset(format!("line {}: bad {what} `{val}`", ln + 1));
        match key {
            "r" => r = Some(val.parse().map_err(|_| bad("r"))?),
            "q" => q = Some(parse_fraction(val).ok_or_else(|| bad("q"))?),
            "k" => {
                k = Some(
                    val.split(',').map(|x| x.trim().parse::<i64>()).collect::<std::result::Result<_, _>>().map_err(|_| bad("k"))?,
                )
            }
            "u" => u = Some(val.split(',').map(parse_fraction).collect::<Option<_>>().ok_or_else(|| bad("u"))?),
            "alpha" => {
                alpha = match val {
                    "1" | "+1" => 1,
                    "-1" => -1,
                    _ => return Err(bad("alpha")),
                }
            }
            _ => return Err(Error::Preset(format!("line {}: unknown key `{key}`", ln + 1))),
        }
    }
    let q = q.unwrap_or_else(|| BigRational::from_integer(2.into()));
    let p = match (k, u) {
        (Some(k), None) => GroundParams::from_exponents(q, &k, alpha)?,
        (None, Some(u)) => GroundParams::new(q, u, alpha)?,
        (Some(_), Some(_)) => return Err(Error::Preset("give either k or u, not both".into())),
        (None, None) => return Err(Error::Preset("missing k (or u)".into())),
    };
    if let Some(r) = r {
        if r != p.r() {
            return Err(Error::Preset(format!("r = {r} but {} parameters given", p.r())));
        }
    }
    Ok(p)
}
