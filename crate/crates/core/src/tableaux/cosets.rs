use std::collections::BTreeSet;

use serde::Serialize;

use super::perm::{self, Perm};
use crate::error::{Error, Result};

/// A distinguished coset representative of `S_{n-2f} × B_f` in `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetRep {
    /// `(i_f, j_f), ..., (i_1, j_1)`.
    pub pairs: Vec<(usize, usize)>,
    /// The defining word, a product of `s_{a,b}` blocks.
    pub word: Vec<usize>,
    pub perm: Perm,
}

impl CosetRep {
    /// A reduced word for the representative.
    pub fn reduced_word(&self) -> Vec<usize> {
        perm::reduced_word(&self.perm)
    }
}

/// `s_{a,b}` as a word in simple transpositions.
pub fn s_block(a: usize, b: usize) -> Vec<usize> {
    use std::cmp::Ordering::*;
    match a.cmp(&b) {
        Greater => (b..a).rev().collect(),
        Equal => Vec::new(),
        Less => (a..b).collect(),
    }
}

/// `n! / ((n-2f)! f! 2^f)`.
pub fn coset_count(f: usize, n: usize) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    fact(n) / (fact(n - 2 * f) * fact(f) * (1u128 << f))
}

/// All of `D_{f,n}`: every index choice with `1 ≤ i_f < ⋯ < i_1 ≤ n` and
/// `i_k < j_k ≤ n - 2k + 2`.
pub fn enumerate_cosets(f: usize, n: usize) -> Result<Vec<CosetRep>> {
    if 2 * f > n {
        return Err(Error::OutOfRange(format!("f = {f} exceeds n/2 for n = {n}")));
    }
    let mut out = Vec::new();
    let mut pairs = Vec::with_capacity(f);
    choose(f, n, f, 0, &mut pairs, &mut out);
    let distinct: BTreeSet<&Perm> = out.iter().map(|c: &CosetRep| &c.perm).collect();
    debug_assert_eq!(distinct.len(), out.len());
    Ok(out)
}

// picks (i_k, j_k) for k = f, f-1, ..., 1 with i_k increasing
fn choose(f: usize, n: usize, k: usize, last_i: usize, pairs: &mut Vec<(usize, usize)>, out: &mut Vec<CosetRep>) {
    if k == 0 {
        let mut word = Vec::new();
        for (idx, &(i, j)) in pairs.iter().enumerate() {
            let kk = f - idx;
            word.extend(s_block(n - 2 * kk + 1, i));
            word.extend(s_block(n - 2 * kk + 2, j));
        }
        let perm = perm::from_word(n, &word);
        out.push(CosetRep { pairs: pairs.clone(), word, perm });
        return;
    }
    let jmax = n + 2 - 2 * k;
    for i in last_i + 1..jmax {
        for j in i + 1..=jmax {
            pairs.push((i, j));
            choose(f, n, k - 1, i, pairs, out);
            pairs.pop();
        }
    }
}

/// `κ` vectors: length `n`, entries in `-p..=p` at positions
/// `n-1, n-3, ..., n-2f+1`, zero elsewhere.
pub fn enumerate_kappa(f: usize, n: usize, r: usize) -> Result<Vec<Vec<i64>>> {
    if r.is_multiple_of(2) {
        return Err(Error::EvenR(r));
    }
    if 2 * f > n {
        return Err(Error::OutOfRange(format!("f = {f} exceeds n/2 for n = {n}")));
    }
    let p = (r as i64 - 1) / 2;
    let mut out = vec![vec![0i64; n]];
    for jj in 1..=f {
        let pos = n - 2 * jj; // 0-based index of n - 2j + 1
        let mut next = Vec::with_capacity(out.len() * r);
        for v in &out {
            for k in -p..=p {
                let mut w = v.clone();
                w[pos] = k;
                next.push(w);
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_formula() {
        for n in 0..=8 {
            for f in 0..=n / 2 {
                let v = enumerate_cosets(f, n).unwrap();
                assert_eq!(v.len() as u128, coset_count(f, n), "f={f} n={n}");
                let set: BTreeSet<_> = v.iter().map(|c| c.perm.clone()).collect();
                assert_eq!(set.len(), v.len());
            }
        }
        assert_eq!(coset_count(1, 4), 6);
        assert_eq!(coset_count(2, 4), 3);
    }

    #[test]
    fn trivial_coset() {
        let v = enumerate_cosets(0, 5).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].perm, perm::identity(5));
        assert!(enumerate_cosets(3, 5).is_err());
    }

    #[test]
    fn blocks() {
        assert_eq!(s_block(4, 1), vec![3, 2, 1]);
        assert_eq!(s_block(2, 4), vec![2, 3]);
        assert!(s_block(3, 3).is_empty());
    }

    #[test]
    fn kappa_vectors() {
        assert_eq!(enumerate_kappa(1, 2, 3).unwrap(), vec![vec![-1, 0], vec![0, 0], vec![1, 0]]);
        assert_eq!(enumerate_kappa(2, 5, 1).unwrap(), vec![vec![0; 5]]);
        assert_eq!(enumerate_kappa(2, 5, 3).unwrap().len(), 9);
        assert!(enumerate_kappa(1, 2, 2).is_err());
    }
}
