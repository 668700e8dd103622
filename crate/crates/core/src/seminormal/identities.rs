use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::data::{ab_coeffs, e_diag, e_diag_by_limit, e_diag_closed, w_rational};
use crate::error::Result;
use crate::params::GroundParams;
use crate::scalars::RatFunc;
use crate::tableaux::{enumerate_updown, shapes, RPartition, UpDownTableau};

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub instance: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentitySummary {
    pub identity: &'static str,
    pub instances: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub lambda: String,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&IdentityCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn count(&self, identity: &str) -> usize {
        self.checks.iter().filter(|c| c.identity == identity).count()
    }

    pub fn summary(&self) -> Vec<IdentitySummary> {
        let mut by: BTreeMap<&'static str, IdentitySummary> = BTreeMap::new();
        for c in &self.checks {
            let e = by.entry(c.identity).or_insert(IdentitySummary { identity: c.identity, instances: 0, pass: true });
            e.instances += 1;
            e.pass &= c.pass;
        }
        by.into_values().collect()
    }
}

/// Names of the identities checked by [`identity_suite`].
pub const IDENTITIES: &[&str] = &[
    "contents-product",
    "e-closed-form",
    "e-by-limit",
    "e-nonzero",
    "partial-fractions",
    "sum-a",
    "sum-b",
    "sum-c",
    "e-product",
    "b-e-squared",
    "a-swap",
    "a-undefined",
    "b-swap",
    "b-factored",
];

struct Suite<'a> {
    p: &'a GroundParams<BigRational>,
    checks: Vec<IdentityCheck>,
}

impl Suite<'_> {
    fn push(&mut self, identity: &'static str, instance: String, pass: bool) {
        self.checks.push(IdentityCheck { identity, instance, pass });
    }
}

fn one() -> BigRational {
    BigRational::one()
}

/// Every exact identity among the seminormal coefficients of `Δ(f, λ)`.
pub fn identity_suite(n: usize, lambda: &RPartition, p: &GroundParams<BigRational>) -> Result<IdentityReport> {
    let basis = enumerate_updown(n, lambda)?;
    let mut suite = Suite { p, checks: Vec::new() };

    let mut seen = BTreeSet::new();
    for s in &basis {
        for mu in s.partitions() {
            if seen.insert(mu.clone()) {
                let prod = mu.add_rem_nodes().into_iter().fold(one(), |acc, (nd, add)| acc * nd.content(add, p));
                suite.push("contents-product", mu.label(), &prod == p.prod_u());
            }
        }
    }

    let mut w_cache: BTreeMap<RPartition, RatFunc> = BTreeMap::new();
    for s in &basis {
        for k in 1..n {
            if s.is_turn(k) {
                turn_identities(&mut suite, s, k, &mut w_cache)?;
            } else {
                pass_identities(&mut suite, s, k)?;
            }
        }
    }
    Ok(IdentityReport { n, lambda: lambda.label(), checks: suite.checks })
}

/// [`identity_suite`] over every `(f, λ)` of `B_{r,n}`.
pub fn identity_suite_all(n: usize, p: &GroundParams<BigRational>) -> Result<Vec<IdentityReport>> {
    use rayon::prelude::*;
    shapes(p.r(), n).par_iter().map(|(_, l)| identity_suite(n, l, p)).collect()
}

fn turn_identities(
    suite: &mut Suite<'_>,
    s: &UpDownTableau,
    k: usize,
    w_cache: &mut BTreeMap<RPartition, RatFunc>,
) -> Result<()> {
    let p = suite.p;
    let inst = format!("{s} k={k}");
    let ess = e_diag(s, k, p)?;
    suite.push("e-closed-form", inst.clone(), ess == e_diag_closed(s, k, p)?);
    suite.push("e-by-limit", inst.clone(), ess == e_diag_by_limit(s, k, p)?);
    suite.push("e-nonzero", inst.clone(), !ess.is_zero());

    let nbrs = s.neighbors(k)?;
    let terms: Vec<(BigRational, BigRational)> =
        nbrs.iter().map(|t| Ok((e_diag(t, k, p)?, t.content(k, p)))).collect::<Result<_>>()?;

    // W_k(y,s)/y = Σ E_tt(k)/(y - c_t(k)) as rational functions
    let mu = s.at(k - 1);
    let w = w_cache.entry(mu.clone()).or_insert_with(|| w_rational(&mu, p)).clone();
    let y = RatFunc::var("y");
    let lhs = w / y.clone();
    let rhs = terms
        .iter()
        .fold(RatFunc::zero(), |acc, (e, c)| acc + RatFunc::constant(e.clone()) / (y.clone() - RatFunc::constant(c.clone())));
    suite.push("partial-fractions", inst.clone(), (lhs - rhs).is_zero());

    let cs = s.content(k, p);
    let dr = p.dinv_rho();
    let d = p.delta().clone();
    let cs2m1 = &cs * &cs - one();
    let sum_a = terms.iter().fold(BigRational::zero(), |acc, (e, c)| acc + e / (&cs * c - one()));
    suite.push("sum-a", inst.clone(), sum_a == &dr + one() / &cs2m1);

    let sum_b = terms.iter().fold(BigRational::zero(), |acc, (e, c)| {
        let den = &cs * c - one();
        acc + e / (&den * &den)
    });
    let rhs_b = (&cs * &cs + one()) / (&cs2m1 * &cs2m1) - &dr
        + (one() / (&d * &d) - &cs * &cs / (&cs2m1 * &cs2m1)) / &ess;
    suite.push("sum-b", inst.clone(), sum_b == rhs_b);

    for tp in nbrs.iter().filter(|t| *t != s) {
        let ctp = tp.content(k, p);
        let sum_c = terms.iter().fold(BigRational::zero(), |acc, (e, c)| acc + e / ((&cs * c - one()) * (c * &ctp - one())));
        let rhs_c = (&cs * &ctp + one()) / (&cs2m1 * (&ctp * &ctp - one())) - &dr;
        suite.push("sum-c", format!("{inst} t'={tp}"), sum_c == rhs_c);
    }

    if k + 1 < s.n() && s.is_turn(k + 1) {
        let next = e_diag(s, k + 1, p)?;
        suite.push("e-product", inst.clone(), &ess * &next == one());

        // b_t(k)² E_tt(k+1) = b_u(k+1)² E_uu(k) whenever s_k t = s_{k+1} u
        let ts: Vec<UpDownTableau> = s.neighbors(k + 1)?.into_iter().filter(|t| t != s).collect();
        let us: Vec<UpDownTableau> = nbrs.iter().filter(|u| *u != s).cloned().collect();
        for t in &ts {
            let Some(st) = t.sk_action(k)? else { continue };
            for u in &us {
                if u.sk_action(k + 1)?.as_ref() != Some(&st) {
                    continue;
                }
                let (_, bt) = ab_coeffs(t, k, p)?;
                let (_, bu) = ab_coeffs(u, k + 1, p)?;
                let lhs = bt * e_diag(t, k + 1, p)?;
                let rhs = bu * e_diag(u, k, p)?;
                suite.push("b-e-squared", format!("{inst} t={t} u={u}"), lhs == rhs);
            }
        }
    }
    Ok(())
}

fn pass_identities(suite: &mut Suite<'_>, s: &UpDownTableau, k: usize) -> Result<()> {
    let p = suite.p;
    let inst = format!("{s} k={k}");
    let (a, bsq) = ab_coeffs(s, k, p)?;
    match s.sk_action(k)? {
        Some(t) => {
            let (at, bt) = ab_coeffs(&t, k, p)?;
            suite.push("a-swap", inst.clone(), at == p.delta() - &a);
            suite.push("b-swap", inst.clone(), bt == bsq);
        }
        None => {
            let q = p.q().clone();
            let ok = (a == q || a == -q.recip()) && bsq.is_zero();
            suite.push("a-undefined", inst.clone(), ok);
        }
    }
    let (ca, cb) = (s.content(k, p), s.content(k + 1, p));
    let q2 = p.q() * p.q();
    let fact = (&cb - &ca / &q2) * (&cb - &q2 * &ca) / ((&cb - &ca) * (&cb - &ca));
    suite.push("b-factored", inst, fact == bsq);
    Ok(())
}
