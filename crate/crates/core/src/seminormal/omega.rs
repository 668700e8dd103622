use serde::Serialize;

use super::data::node_residues;
use crate::error::{Error, Result};
use crate::params::{GroundParams, Sign};
use crate::scalars::{Field, TruncSeries};
use crate::tableaux::{enumerate_updown, shapes, RPartition, UpDownTableau};

const T: &str = "y^-1";

fn geo<F: Field>(c: F, order: usize) -> TruncSeries<F> {
    TruncSeries::geometric(T, c, 1, order)
}

/// `1 - c t`.
fn lin<F: Field>(c: F, order: usize) -> TruncSeries<F> {
    TruncSeries::new(T, vec![F::one(), -c], order)
}

/// `y²/(y²-1) = 1/(1-t²)` with `t = y^-1`.
fn y2_ratio<F: Field>(order: usize) -> TruncSeries<F> {
    TruncSeries::geometric(T, F::one(), 2, order)
}

/// The factor multiplying `W̃_k + δ^-1ρ - y²/(y²-1)` at step `k -> k+1`, with `X_k = x`.
fn step_factor<F: Field>(x: &F, q: &F, order: usize) -> TruncSeries<F> {
    let xi = x.inv();
    let q2 = q.clone() * q.clone();
    let q2i = q2.inv();
    let num = lin(x.clone(), order)
        .mul(&lin(x.clone(), order))
        .mul(&lin(q2i.clone() * xi.clone(), order))
        .mul(&lin(q2.clone() * xi.clone(), order));
    let den = lin(xi.clone(), order).mul(&lin(xi, order)).mul(&lin(q2i * x.clone(), order)).mul(&lin(q2 * x.clone(), order));
    num.div(&den).expect("constant term 1")
}

/// `W̃_k(y)` on a walk whose first `k-1` contents are `contents`, by the
/// recursion seeded with `w̃_{1,+}`.
pub fn recursion_series<F: Field>(contents: &[F], p: &GroundParams<F>, order: usize) -> TruncSeries<F> {
    let g = y2_ratio::<F>(order);
    let dr = TruncSeries::constant(T, p.dinv_rho(), order);
    let w = TruncSeries::new(T, p.wtilde_closed(Sign::Plus, order).coeffs().to_vec(), order);
    let mut shifted = w.add(&dr).sub(&g);
    for x in contents {
        shifted = shifted.mul(&step_factor(x, p.q(), order));
    }
    shifted.sub(&dr).add(&g)
}

/// `W(y, s_{k-1})` expanded through its partial fractions:
/// `Σ_α Res_α / (1 - c(α) t)`.
pub fn residue_series<F: Field>(mu: &RPartition, p: &GroundParams<F>, order: usize) -> TruncSeries<F> {
    node_residues(mu, p)
        .into_iter()
        .fold(TruncSeries::zero(T, order), |acc, r| acc.add(&geo(r.content, order).scale(&r.residue)))
}

/// `W(y, s_{k-1})` expanded from its product form.
pub fn product_series<F: Field>(mu: &RPartition, p: &GroundParams<F>, order: usize) -> TruncSeries<F> {
    let g = y2_ratio::<F>(order);
    let dr = p.dinv_rho();
    let pu = p.prod_u().clone();
    let tg = TruncSeries::t(T, order).mul(&g);
    let mut prod = TruncSeries::constant(T, pu.clone(), order);
    for (node, add) in mu.add_rem_nodes() {
        let c = node.content(add, p);
        prod = prod.mul(&lin(c.inv(), order)).mul(&geo(c, order));
    }
    let head = TruncSeries::constant(T, dr.clone() * pu, order).add(&tg);
    g.sub(&TruncSeries::constant(T, dr, order)).add(&head.mul(&prod))
}

/// `ω_k^(a)`, `0 ≤ a ≤ a_max`, for one walk prefix.
#[derive(Clone, Debug, Serialize)]
pub struct OmegaRow<F> {
    /// `s_0, ..., s_{k-1}` as signed steps.
    pub prefix: UpDownTableau,
    pub k: usize,
    #[serde(skip)]
    pub values: Vec<F>,
    pub exact: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaKTable<F> {
    pub n: usize,
    pub a_max: usize,
    pub rows: Vec<OmegaRow<F>>,
}

impl<F: Field> OmegaKTable<F> {
    /// Rows for a given `k`.
    pub fn rows_for(&self, k: usize) -> impl Iterator<Item = &OmegaRow<F>> {
        self.rows.iter().filter(move |r| r.k == k)
    }
}

/// `ω_k^(a)` for every walk prefix of length `k-1 < n`, computed by the
/// recursion and by the residues of `W_k`; any disagreement is an error.
pub fn omega_k_table<F: Field>(p: &GroundParams<F>, n: usize, a_max: usize) -> Result<OmegaKTable<F>> {
    let mut rows = Vec::new();
    for m in 0..n {
        for (_, l) in shapes(p.r(), m) {
            for w in enumerate_updown(m, &l)? {
                let rec = recursion_series(&w.content_seq(p), p, a_max);
                let res = residue_series(&l, p, a_max);
                if let Some(a) = (0..=a_max).find(|&a| rec.coeff(a) != res.coeff(a)) {
                    return Err(Error::OmegaMismatch { tableau: w.to_string(), k: m + 1, a: a as i64 });
                }
                let values: Vec<F> = rec.coeffs().to_vec();
                let exact = values.iter().map(|v| v.to_exact_string()).collect();
                rows.push(OmegaRow { prefix: w, k: m + 1, values, exact });
            }
        }
    }
    Ok(OmegaKTable { n, a_max, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::generic_specialization;

    #[test]
    fn empty_prefix_reproduces_omega() {
        let p = generic_specialization(1, 2, 0).unwrap();
        let w = recursion_series::<num_rational::BigRational>(&[], &p, 5);
        for a in 0..=5 {
            assert_eq!(w.coeff(a), p.omega(a as i64));
        }
    }
}
