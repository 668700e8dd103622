use std::time::Instant;

use num_rational::BigRational;
use serde::Serialize;

use super::datum::{index_set, CellDatum};
use super::eval::FaithfulRep;
use super::words::{cell_word, GenWord};
use crate::error::{Error, Result};
use crate::params::GroundParams;
use crate::scalars::BallReal;
use crate::seminormal::MAX_PRECISION;

/// Outcome of a certified elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LuOutcome {
    /// Pivots certified nonzero before the first failure.
    pub pivots: usize,
    pub full_rank: bool,
}

/// Gaussian elimination over balls with partial pivoting on the largest
/// certified lower bound; a column whose best pivot still contains zero stops
/// the run.
pub fn certified_lu(mut rows: Vec<Vec<BallReal>>) -> Result<LuOutcome> {
    let m = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::ShapeMismatch("ragged rows".into()));
    }
    let steps = m.min(ncols);
    for c in 0..steps {
        let (best, mag) = (c..m).map(|i| (i, rows[i][c].lower_abs())).max_by(|a, b| a.1.cmp(&b.1)).expect("c < m");
        if mag.is_zero() || !rows[best][c].is_certified_nonzero() {
            return Ok(LuOutcome { pivots: c, full_rank: false });
        }
        rows.swap(c, best);
        let (top, rest) = rows.split_at_mut(c + 1);
        let pivot_row = &top[c];
        let pinv = pivot_row[c].inv()?;
        for row in rest.iter_mut() {
            if num_traits::Zero::is_zero(&row[c]) {
                continue;
            }
            let factor = &row[c] * &pinv;
            for j in c + 1..ncols {
                if !num_traits::Zero::is_zero(&pivot_row[j]) {
                    row[j] = &row[j] - &(&factor * &pivot_row[j]);
                }
            }
            row[c] = num_traits::Zero::zero();
        }
    }
    Ok(LuOutcome { pivots: steps, full_rank: steps == m && steps == ncols })
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub r: usize,
    pub n: usize,
    /// Number of cellular words, `Σ |δ(f, λ)|²`.
    #[serde(rename = "D")]
    pub d: usize,
    /// `Σ dim Δ(f, λ)²` of the evaluation target.
    pub target_dim: usize,
    pub certified: bool,
    pub status: &'static str,
    pub precision_bits: u32,
    pub pivots: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

/// Every cellular word `C^{(f,λ)}_{(s,ρ,e)(t,κ,d)}`, cell by cell.
pub fn all_cell_words(r: usize, n: usize) -> Result<Vec<GenWord>> {
    let datum = CellDatum::new(r, n)?;
    let mut out = Vec::with_capacity(datum.total() as usize);
    for c in &datum.cells {
        let idx = index_set(c.f, &c.lambda, n)?;
        for a in &idx {
            for b in &idx {
                out.push(cell_word(c.f, n, a, b)?);
            }
        }
    }
    Ok(out)
}

/// Evaluates every cellular word in the faithful representation and
/// certifies that the resulting `D × D` matrix has full rank. Precision
/// doubles from `prec` up to the verifier's maximum while a pivot stays
/// unresolved; a persistent failure is reported, not raised.
pub fn rank_certify(n: usize, p: &GroundParams<BigRational>, prec: u32) -> Result<RankReport> {
    let r = p.r();
    let start = Instant::now();
    let words = all_cell_words(r, n)?;
    let mut work = prec;
    loop {
        let rep = FaithfulRep::<BallReal>::build(n, p, work)?;
        let target = rep.total_dim();
        let rows = rep.eval_words(&words)?;
        let lu = certified_lu(rows)?;
        let certified = lu.full_rank && words.len() == target;
        if certified || work * 2 > MAX_PRECISION {
            return Ok(RankReport {
                r,
                n,
                d: words.len(),
                target_dim: target,
                certified,
                status: if certified { "full rank" } else { "rank uncertified" },
                precision_bits: work,
                pivots: lu.pivots,
                elapsed_ms: Some(start.elapsed().as_millis()),
            });
        }
        work *= 2;
    }
}
