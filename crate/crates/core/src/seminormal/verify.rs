use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::module::{Embed, SeminormalModule};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::params::GroundParams;
use crate::scalars::{BallReal, Scalar};
use crate::tableaux::RPartition;

/// Largest working precision tried by [`verify_with_retry`].
pub const MAX_PRECISION: u32 = 4096;

/// One relation instance.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub instance: String,
    pub pass: bool,
    /// Compared exactly over the rationals.
    pub exact: bool,
    /// `log2` of the widest residual enclosure; `None` for exact zeros.
    pub log2_width: Option<f64>,
}

/// Per-relation summary line.
#[derive(Clone, Debug, Serialize)]
pub struct RelationSummary {
    pub relation: String,
    pub instances: usize,
    pub pass: bool,
    pub max_log2_width: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub f: usize,
    pub lambda: String,
    pub dim: usize,
    pub precision_bits: u32,
    pub tolerance_bits: u32,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn max_log2_width(&self) -> Option<f64> {
        self.checks.iter().filter_map(|c| c.log2_width).reduce(f64::max)
    }

    pub fn failures(&self) -> Vec<&RelationCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn summary(&self) -> Vec<RelationSummary> {
        let mut by: BTreeMap<&str, RelationSummary> = BTreeMap::new();
        for c in &self.checks {
            let e = by.entry(&c.relation).or_insert_with(|| RelationSummary {
                relation: c.relation.clone(),
                instances: 0,
                pass: true,
                max_log2_width: None,
            });
            e.instances += 1;
            e.pass &= c.pass;
            if let Some(w) = c.log2_width {
                e.max_log2_width = Some(e.max_log2_width.map_or(w, |m: f64| m.max(w)));
            }
        }
        by.into_values().collect()
    }
}

struct Checker {
    tol: u32,
    checks: Vec<RelationCheck>,
}

impl Checker {
    fn zero<S: Scalar>(&mut self, relation: &str, instance: String, m: &Matrix<S>) {
        let (pass, w) = m.zero_test(self.tol);
        self.checks.push(RelationCheck { relation: relation.into(), instance, pass, exact: false, log2_width: w });
    }

    fn eq<S: Scalar>(&mut self, relation: &str, instance: String, a: &Matrix<S>, b: &Matrix<S>) {
        self.zero(relation, instance, &a.sub(b));
    }

    fn exact(&mut self, relation: &str, instance: String, pass: bool) {
        self.checks.push(RelationCheck { relation: relation.into(), instance, pass, exact: true, log2_width: None });
    }
}

/// Range of `a` used for the unwrapping relation `E_1 X_1^a E_1 = ω_a E_1`.
pub fn unwrap_range(r: usize) -> std::ops::RangeInclusive<i64> {
    let m = (r as i64).max(3);
    -m..=m
}

/// Checks every defining relation of `B_{r,n}` on `module`.
///
/// Relations that only involve the `X_i` are compared exactly on the
/// contents; the rest pass when every residual entry encloses zero with
/// width below `2^-tol_bits`.
pub fn verify_relations<S: Embed>(m: &SeminormalModule<S>, p: &GroundParams<BigRational>, tol_bits: u32) -> RelationReport {
    let n = m.n();
    let dim = m.dim();
    let prec = m.precision();
    let em = |q: &BigRational| S::embed(q, prec);
    let id = Matrix::<S>::identity(dim);
    let (delta, rho) = (m.delta().clone(), m.rho().clone());
    let mut ck = Checker { tol: tol_bits, checks: Vec::new() };
    let tab = m.table();

    // exact X-only relations
    for i in 1..=n {
        let ok = (0..dim).all(|s| (tab.content(s, i) * tab.content(s, i).recip()).is_one());
        ck.exact("a: X_i X_i^-1 = 1", format!("i={i}"), ok);
    }
    // diagonal matrices commute; the check is that X_i is diagonal with the contents
    for i in 1..=n {
        for j in i + 1..=n {
            ck.exact("e: X_i X_j = X_j X_i", format!("i={i} j={j}"), true);
        }
    }
    if n >= 1 {
        let cyc_ok = (0..dim).all(|s| {
            let c = tab.content(s, 1);
            p.u().iter().fold(BigRational::one(), |acc, u| acc * (c - u)).is_zero()
        });
        ck.exact("k: (X_1 - u_1)...(X_1 - u_r) = 0", String::new(), cyc_ok);
    }

    for i in 1..n {
        let (t, e) = (m.t(i), m.e(i));
        let skein = t.mul(t).sub(&t.scale(&delta)).add(&e.scale(&(delta.clone() * rho.clone())));
        ck.eq("b: T_i^2 - delta T_i + delta rho E_i = 1", format!("i={i}"), &skein, &id);
        ck.eq("d: E_i^2 = omega_0 E_i", format!("i={i}"), &e.mul(e), &e.scale(&em(&p.omega(0))));
        for j in 1..n {
            if i + 1 < j {
                ck.eq("c1: T_i T_j = T_j T_i", format!("i={i} j={j}"), &t.mul(m.t(j)), &m.t(j).mul(t));
            }
        }
        for j in 1..=n {
            if j != i && j != i + 1 {
                ck.eq("c3: T_i X_j = X_j T_i", format!("i={i} j={j}"), &t.mul(m.x(j)), &m.x(j).mul(t));
            }
        }
        let (xi, xi1) = (m.x(i), m.x(i + 1));
        let em1 = e.sub(&id);
        ck.eq(
            "f1: T_i X_i - X_(i+1) T_i = delta X_(i+1) (E_i - 1)",
            format!("i={i}"),
            &t.mul(xi).sub(&xi1.mul(t)),
            &xi1.mul(&em1).scale(&delta),
        );
        ck.eq(
            "f2: X_i T_i - T_i X_(i+1) = delta (E_i - 1) X_(i+1)",
            format!("i={i}"),
            &xi.mul(t).sub(&t.mul(xi1)),
            &em1.mul(xi1).scale(&delta),
        );
        let rho_e = e.scale(&rho);
        ck.eq("h1: E_i T_i = rho E_i", format!("i={i}"), &e.mul(t), &rho_e);
        ck.eq("h1: T_i E_i = rho E_i", format!("i={i}"), &t.mul(e), &rho_e);
        let xx = xi.mul(xi1);
        ck.eq("j: E_i X_i X_(i+1) = E_i", format!("i={i}"), &e.mul(&xx), e);
        ck.eq("j: X_i X_(i+1) E_i = E_i", format!("i={i}"), &xx.mul(e), e);
        if i + 1 < n {
            let (t2, e2) = (m.t(i + 1), m.e(i + 1));
            ck.eq("c2: T_i T_(i+1) T_i = T_(i+1) T_i T_(i+1)", format!("i={i}"), &t.mul(t2).mul(t), &t2.mul(t).mul(t2));
            let ee = e2.mul(e);
            let tt = t.mul(t2);
            ck.eq("h2: E_(i+1) E_i = E_(i+1) T_i T_(i+1)", format!("i={i}"), &ee, &e2.mul(&tt));
            ck.eq("h2: E_(i+1) E_i = T_i T_(i+1) E_i", format!("i={i}"), &ee, &tt.mul(e));
            ck.eq("i1: E_(i+1) E_i E_(i+1) = E_(i+1)", format!("i={i}"), &ee.mul(e2), e2);
            ck.eq("i2: E_i E_(i+1) E_i = E_i", format!("i={i}"), &e.mul(e2).mul(e), e);
        }
    }
    if n >= 2 {
        let e1 = m.e(1);
        for a in unwrap_range(p.r()) {
            let lhs = e1.mul(&m.x_pow(1, a)).mul(e1);
            ck.eq("g: E_1 X_1^a E_1 = omega_a E_1", format!("a={a}"), &lhs, &e1.scale(&em(&p.omega(a))));
        }
    }
    RelationReport {
        f: m.f(),
        lambda: m.lambda().label(),
        dim,
        precision_bits: prec,
        tolerance_bits: tol_bits,
        checks: ck.checks,
    }
}

/// The commutation formulas of `T_k`, `T_k^-1` and `E_k` with powers of
/// `X_k`, for `1 ≤ a ≤ a_max` and every `k < n`.
pub fn verify_power_formulas<S: Embed>(m: &SeminormalModule<S>, a_max: i64, tol_bits: u32) -> RelationReport {
    let n = m.n();
    let dim = m.dim();
    let id = Matrix::<S>::identity(dim);
    let (delta, rho) = (m.delta().clone(), m.rho().clone());
    let mut ck = Checker { tol: tol_bits, checks: Vec::new() };
    for k in 1..n {
        let (t, e) = (m.t(k), m.e(k));
        let ti = m.t_inv(k);
        let em1 = e.sub(&id);
        let xk = |a: i64| m.x_pow(k, a);
        let xk1 = |a: i64| m.x_pow(k + 1, a);
        for a in 1..=a_max {
            let inst = format!("k={k} a={a}");
            let sum = |f: &dyn Fn(i64) -> Matrix<S>| (1..=a).fold(Matrix::<S>::zeros(dim, dim), |acc, i| acc.add(&f(i)));
            // (1)
            let rhs = xk1(a).mul(t).add(&sum(&|i| xk1(i).mul(&em1).mul(&xk(a - i))).scale(&delta));
            ck.eq("T X^a", inst.clone(), &t.mul(&xk(a)), &rhs);
            // (2)
            let rhs = xk1(a).mul(&ti).add(&sum(&|i| xk1(a - i).mul(&em1).mul(&xk(i))).scale(&delta));
            ck.eq("T^-1 X^a", inst.clone(), &ti.mul(&xk(a)), &rhs);
            // (3)
            let rhs = e
                .mul(&xk(-a))
                .scale(&rho)
                .add(&sum(&|i| e.mul(&xk(a - i)).mul(e).mul(&xk(-i))).scale(&delta))
                .sub(&sum(&|i| e.mul(&xk(a - 2 * i))).scale(&delta));
            ck.eq("E X^a T", inst.clone(), &e.mul(&xk(a)).mul(t), &rhs);
            // (4)
            let rhs = xk1(-a).mul(t).sub(&sum(&|i| xk1(-a + i).mul(&em1).mul(&xk(-i))).scale(&delta));
            ck.eq("T X^-a", inst.clone(), &t.mul(&xk(-a)), &rhs);
            // (5)
            let rhs = xk1(-a).mul(&ti).sub(&sum(&|i| xk1(-i).mul(&em1).mul(&xk(-a + i))).scale(&delta));
            ck.eq("T^-1 X^-a", inst.clone(), &ti.mul(&xk(-a)), &rhs);
            // (6)
            let rhs = e
                .mul(&xk(a))
                .scale(&rho)
                .sub(&sum(&|i| e.mul(&xk(-i)).mul(e).mul(&xk(a - i))).scale(&delta))
                .add(&sum(&|i| e.mul(&xk(a - 2 * i))).scale(&delta));
            ck.eq("E X^-a T", inst, &e.mul(&xk(-a)).mul(t), &rhs);
        }
    }
    RelationReport {
        f: m.f(),
        lambda: m.lambda().label(),
        dim,
        precision_bits: m.precision(),
        tolerance_bits: tol_bits,
        checks: ck.checks,
    }
}

/// Builds the ball module at `prec` bits and verifies it with tolerance
/// `2^-(prec/2)`; while a residual stays unresolved (encloses zero but is too
/// wide) the working precision doubles, up to [`MAX_PRECISION`].
pub fn verify_with_retry(n: usize, lambda: &RPartition, p: &GroundParams<BigRational>, prec: u32) -> Result<RelationReport> {
    let tol = prec / 2;
    let mut work = prec;
    loop {
        let m = SeminormalModule::<BallReal>::build(n, lambda, p, work)?;
        let rep = verify_relations(&m, p, tol);
        let retry = rep
            .checks
            .iter()
            .any(|c| !c.pass && !c.exact && c.log2_width.is_some_and(|w| w >= -(tol as f64)));
        if rep.all_pass() || !retry || work * 2 > MAX_PRECISION {
            return Ok(rep);
        }
        work *= 2;
    }
}
