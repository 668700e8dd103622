use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::GroundParams;
use crate::scalars::Field;

/// A box `(s, i, j)`: component `s`, row `i`, column `j`, all 1-based.
///
/// The derived order is `(component, row, column)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Node {
    pub s: usize,
    pub i: usize,
    pub j: usize,
}

impl Node {
    pub fn new(s: usize, i: usize, j: usize) -> Self {
        Node { s, i, j }
    }

    /// `j - i`.
    pub fn diagonal(&self) -> i64 {
        self.j as i64 - self.i as i64
    }

    /// `u_s q^{2(j-i)}` for an added box, its inverse for a removed one.
    pub fn content<F: Field>(&self, added: bool, p: &GroundParams<F>) -> F {
        let c = p.u_at(self.s).clone() * p.q().powi(2 * self.diagonal());
        if added {
            c
        } else {
            c.inv()
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.s, self.i, self.j)
    }
}

/// An `r`-tuple of partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RPartition {
    comps: Vec<Vec<usize>>,
}

impl RPartition {
    pub fn empty(r: usize) -> Self {
        RPartition { comps: vec![Vec::new(); r] }
    }

    /// Validates that each component is weakly decreasing; zero parts are dropped.
    pub fn new(comps: Vec<Vec<usize>>) -> Result<Self> {
        let mut out = Vec::with_capacity(comps.len());
        for (s, c) in comps.into_iter().enumerate() {
            let c: Vec<usize> = c.into_iter().filter(|&x| x > 0).collect();
            if c.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidParams(format!("component {} is not a partition: {c:?}", s + 1)));
            }
            out.push(c);
        }
        Ok(RPartition { comps: out })
    }

    pub fn r(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.comps
    }

    /// Component `s` (1-based).
    pub fn component(&self, s: usize) -> &[usize] {
        &self.comps[s - 1]
    }

    pub fn size(&self) -> usize {
        self.comps.iter().flatten().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    fn row_len(&self, s: usize, i: usize) -> usize {
        self.comps[s - 1].get(i - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, n: &Node) -> bool {
        n.s >= 1 && n.s <= self.r() && n.i >= 1 && n.j >= 1 && n.j <= self.row_len(n.s, n.i)
    }

    pub fn addable(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (si, c) in self.comps.iter().enumerate() {
            for i in 1..=c.len() + 1 {
                let len = c.get(i - 1).copied().unwrap_or(0);
                let above = if i == 1 { usize::MAX } else { c[i - 2] };
                if len < above {
                    out.push(Node::new(si + 1, i, len + 1));
                }
            }
        }
        out
    }

    pub fn removable(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (si, c) in self.comps.iter().enumerate() {
            for (i0, &len) in c.iter().enumerate() {
                let below = c.get(i0 + 1).copied().unwrap_or(0);
                if len > below {
                    out.push(Node::new(si + 1, i0 + 1, len));
                }
            }
        }
        out
    }

    /// Addable then removable nodes, with the flag `true` for addable.
    pub fn add_rem_nodes(&self) -> Vec<(Node, bool)> {
        let mut v: Vec<(Node, bool)> = self.addable().into_iter().map(|n| (n, true)).collect();
        v.extend(self.removable().into_iter().map(|n| (n, false)));
        v
    }

    pub fn is_addable(&self, n: &Node) -> bool {
        n.s >= 1 && n.s <= self.r() && n.j == self.row_len(n.s, n.i) + 1 && (n.i == 1 || self.row_len(n.s, n.i - 1) >= n.j)
    }

    pub fn is_removable(&self, n: &Node) -> bool {
        self.contains(n) && n.j == self.row_len(n.s, n.i) && self.row_len(n.s, n.i + 1) < n.j
    }

    pub fn add(&self, n: &Node) -> Result<Self> {
        if !self.is_addable(n) {
            return Err(Error::OutOfRange(format!("node {n} is not addable to {self}")));
        }
        let mut out = self.clone();
        let c = &mut out.comps[n.s - 1];
        if n.i > c.len() {
            c.push(1);
        } else {
            c[n.i - 1] += 1;
        }
        Ok(out)
    }

    pub fn remove(&self, n: &Node) -> Result<Self> {
        if !self.is_removable(n) {
            return Err(Error::OutOfRange(format!("node {n} is not removable from {self}")));
        }
        let mut out = self.clone();
        let c = &mut out.comps[n.s - 1];
        c[n.i - 1] -= 1;
        if c[n.i - 1] == 0 {
            c.pop();
        }
        Ok(out)
    }

    /// Every box, ordered by `(component, row, column)`.
    pub fn nodes(&self) -> Vec<Node> {
        let mut out = Vec::with_capacity(self.size());
        for (si, c) in self.comps.iter().enumerate() {
            for (i0, &len) in c.iter().enumerate() {
                out.extend((1..=len).map(|j| Node::new(si + 1, i0 + 1, j)));
            }
        }
        out
    }

    /// Size of the symmetric difference of the two box sets.
    pub fn distance(&self, o: &Self) -> usize {
        let mut d = 0;
        for s in 1..=self.r().max(o.r()) {
            let a = self.comps.get(s - 1).map_or(&[][..], |c| c.as_slice());
            let b = o.comps.get(s - 1).map_or(&[][..], |c| c.as_slice());
            for i in 0..a.len().max(b.len()) {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                d += x.abs_diff(y);
            }
        }
        d
    }

    /// Dominance on equal sizes, by partial sums of the concatenated components.
    pub fn dominates(&self, o: &Self) -> bool {
        if self.size() != o.size() || self.r() != o.r() {
            return false;
        }
        let (mut a, mut b) = (0usize, 0usize);
        for s in 0..self.r() {
            let (x, y) = (&self.comps[s], &o.comps[s]);
            for i in 0..x.len().max(y.len()) {
                a += x.get(i).copied().unwrap_or(0);
                b += y.get(i).copied().unwrap_or(0);
                if a < b {
                    return false;
                }
            }
        }
        true
    }

    /// All `r`-partitions of `m`, in increasing derived order.
    pub fn all(r: usize, m: usize) -> Vec<Self> {
        fn partitions(m: usize, max: usize) -> Vec<Vec<usize>> {
            if m == 0 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for first in (1..=m.min(max)).rev() {
                for mut rest in partitions(m - first, first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        fn go(r: usize, m: usize) -> Vec<Vec<Vec<usize>>> {
            if r == 0 {
                return if m == 0 { vec![Vec::new()] } else { Vec::new() };
            }
            let mut out = Vec::new();
            for k in 0..=m {
                for p in partitions(k, k) {
                    for mut rest in go(r - 1, m - k) {
                        rest.insert(0, p.clone());
                        out.push(rest);
                    }
                }
            }
            out
        }
        let mut v: Vec<Self> = go(r, m).into_iter().map(|comps| RPartition { comps }).collect();
        v.sort();
        v
    }

    /// Text form such as `2,1|-|1`; `-` marks an empty component.
    pub fn label(&self) -> String {
        self.comps
            .iter()
            .map(|c| if c.is_empty() { "-".to_string() } else { c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",") })
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl fmt::Display for RPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

impl Serialize for RPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.comps.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[&[usize]]) -> RPartition {
        RPartition::new(c.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    #[test]
    fn empty_has_one_addable_per_component() {
        let e = RPartition::empty(3);
        assert_eq!(e.addable(), vec![Node::new(1, 1, 1), Node::new(2, 1, 1), Node::new(3, 1, 1)]);
        assert!(e.removable().is_empty());
    }

    #[test]
    fn single_row_nodes() {
        let l = p(&[&[2], &[], &[]]);
        assert_eq!(l.addable(), vec![Node::new(1, 1, 3), Node::new(1, 2, 1), Node::new(2, 1, 1), Node::new(3, 1, 1)]);
        assert_eq!(l.removable(), vec![Node::new(1, 1, 2)]);
    }

    #[test]
    fn add_and_remove_round_trip() {
        let l = p(&[&[2, 1], &[1]]);
        for n in l.addable() {
            assert_eq!(l.add(&n).unwrap().remove(&n).unwrap(), l);
        }
        for n in l.removable() {
            assert_eq!(l.remove(&n).unwrap().add(&n).unwrap(), l);
        }
        assert!(l.add(&Node::new(1, 3, 2)).is_err());
        assert!(l.remove(&Node::new(1, 1, 1)).is_err());
    }

    #[test]
    fn counts_of_multipartitions() {
        // number of 3-partitions of m: 1, 3, 9, 22
        let counts: Vec<usize> = (0..4).map(|m| RPartition::all(3, m).len()).collect();
        assert_eq!(counts, vec![1, 3, 9, 22]);
        assert!(RPartition::new(vec![vec![1, 2]]).is_err());
    }

    #[test]
    fn dominance_and_distance() {
        assert!(p(&[&[2], &[]]).dominates(&p(&[&[1, 1], &[]])));
        assert!(p(&[&[1], &[1]]).dominates(&p(&[&[], &[2]])));
        assert!(!p(&[&[], &[2]]).dominates(&p(&[&[1], &[1]])));
        assert_eq!(p(&[&[2], &[]]).distance(&p(&[&[1], &[1]])), 2);
        assert_eq!(p(&[&[2, 1], &[]]).label(), "2,1|-");
    }
}
