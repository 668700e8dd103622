use serde::Serialize;

use super::words::CellIndex;
use crate::error::{Error, Result};
use crate::tableaux::{coset_count, enumerate_cosets, enumerate_kappa, shapes, std_tableaux, RPartition};

/// Sizes attached to one cell `(f, λ)`.
#[derive(Clone, Debug, Serialize)]
pub struct CellInfo {
    pub f: usize,
    #[serde(serialize_with = "label")]
    pub lambda: RPartition,
    pub std: u128,
    pub r_pow_f: u128,
    pub cosets: u128,
    pub delta: u128,
}

fn label<S: serde::Serializer>(l: &RPartition, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&l.label())
}

/// The poset `Λ^+_{r,n}` with `|δ(f, λ)| = |T^std(λ)| · r^f · |D_{f,n}|`.
#[derive(Clone, Debug, Serialize)]
pub struct CellDatum {
    pub r: usize,
    pub n: usize,
    pub cells: Vec<CellInfo>,
}

impl CellDatum {
    pub fn new(r: usize, n: usize) -> Result<Self> {
        if r.is_multiple_of(2) {
            return Err(Error::EvenR(r));
        }
        let cells = shapes(r, n)
            .into_iter()
            .map(|(f, lambda)| {
                let std = std_tableaux(&lambda).len() as u128;
                let r_pow_f = (r as u128).pow(f as u32);
                let cosets = coset_count(f, n);
                CellInfo { f, lambda, std, r_pow_f, cosets, delta: std * r_pow_f * cosets }
            })
            .collect();
        Ok(CellDatum { r, n, cells })
    }

    /// `Σ |δ(f, λ)|²`.
    pub fn total(&self) -> u128 {
        self.cells.iter().map(|c| c.delta * c.delta).sum()
    }

    /// The cell order: more `E`s first, then dominance on `λ`.
    pub fn dominates(a: (usize, &RPartition), b: (usize, &RPartition)) -> bool {
        a.0 > b.0 || (a.0 == b.0 && a.1.dominates(b.1))
    }
}

/// Every `(t, κ, d)` in `δ(f, λ)`.
pub fn index_set(f: usize, lambda: &RPartition, n: usize) -> Result<Vec<CellIndex>> {
    let kappas = enumerate_kappa(f, n, lambda.r())?;
    let cosets = enumerate_cosets(f, n)?;
    let mut out = Vec::new();
    for t in std_tableaux(lambda) {
        for kappa in &kappas {
            for d in &cosets {
                out.push(CellIndex { t: t.clone(), kappa: kappa.clone(), d: d.clone() });
            }
        }
    }
    Ok(out)
}
