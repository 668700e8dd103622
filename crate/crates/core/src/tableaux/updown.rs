use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::partition::{Node, RPartition};
use crate::error::{Error, Result};
use crate::params::GroundParams;
use crate::scalars::Field;

/// One step of a walk: a box added (`add = true`) or removed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub node: Node,
    pub add: bool,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.add { '+' } else { '-' }, self.node)
    }
}

impl Serialize for Step {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A walk `t_0 = ∅, t_1, ..., t_n` of `r`-partitions, stored as signed steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UpDownTableau {
    r: usize,
    steps: Vec<Step>,
}

impl UpDownTableau {
    /// Checks that every step is legal.
    pub fn from_steps(r: usize, steps: Vec<Step>) -> Result<Self> {
        let mut cur = RPartition::empty(r);
        for st in &steps {
            cur = if st.add { cur.add(&st.node)? } else { cur.remove(&st.node)? };
        }
        Ok(UpDownTableau { r, steps })
    }

    /// Builds the walk through the given partitions (the first must be empty).
    pub fn from_partitions(parts: &[RPartition]) -> Result<Self> {
        let r = parts.first().map_or(0, |p| p.r());
        if parts.first().is_none_or(|p| !p.is_empty()) {
            return Err(Error::InvalidParams("a walk starts at the empty r-partition".into()));
        }
        let mut steps = Vec::with_capacity(parts.len() - 1);
        for w in parts.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let step = a
                .addable()
                .into_iter()
                .find(|n| a.add(n).as_ref() == Ok(b))
                .map(|node| Step { node, add: true })
                .or_else(|| a.removable().into_iter().find(|n| a.remove(n).as_ref() == Ok(b)).map(|node| Step { node, add: false }));
            match step {
                Some(s) => steps.push(s),
                None => return Err(Error::InvalidParams(format!("{a} and {b} do not differ by one box"))),
            }
        }
        Ok(UpDownTableau { r, steps })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.steps.len()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Step `k` (1-based).
    pub fn step(&self, k: usize) -> Step {
        self.steps[k - 1]
    }

    /// `t_0, ..., t_n`.
    pub fn partitions(&self) -> Vec<RPartition> {
        let mut out = Vec::with_capacity(self.n() + 1);
        let mut cur = RPartition::empty(self.r);
        out.push(cur.clone());
        for st in &self.steps {
            cur = apply(&cur, st);
            out.push(cur.clone());
        }
        out
    }

    /// `t_k`.
    pub fn at(&self, k: usize) -> RPartition {
        let mut cur = RPartition::empty(self.r);
        for st in &self.steps[..k] {
            cur = apply(&cur, st);
        }
        cur
    }

    pub fn shape(&self) -> RPartition {
        self.at(self.n())
    }

    /// `c_t(k)`.
    pub fn content<F: Field>(&self, k: usize, p: &GroundParams<F>) -> F {
        let st = self.step(k);
        st.node.content(st.add, p)
    }

    /// `c_t(1), ..., c_t(n)`.
    pub fn content_seq<F: Field>(&self, p: &GroundParams<F>) -> Vec<F> {
        (1..=self.n()).map(|k| self.content(k, p)).collect()
    }

    /// Whether `t_{k-1} = t_{k+1}`, i.e. steps `k` and `k+1` add and remove one box.
    pub fn is_turn(&self, k: usize) -> bool {
        let (a, b) = (self.step(k), self.step(k + 1));
        a.node == b.node && a.add != b.add
    }

    /// All `s` agreeing with `self` off position `k`, sorted.
    pub fn neighbors(&self, k: usize) -> Result<Vec<UpDownTableau>> {
        self.check_k(k)?;
        let mut out = if self.is_turn(k) {
            self.at(k - 1)
                .add_rem_nodes()
                .into_iter()
                .map(|(node, add)| {
                    let mut steps = self.steps.clone();
                    steps[k - 1] = Step { node, add };
                    steps[k] = Step { node, add: !add };
                    UpDownTableau { r: self.r, steps }
                })
                .collect()
        } else {
            let mut v = vec![self.clone()];
            v.extend(self.sk_action(k)?);
            v
        };
        out.sort();
        Ok(out)
    }

    /// `s_k t`: the walk with steps `k` and `k+1` swapped, or `None` when the
    /// two boxes share a row or a column.
    pub fn sk_action(&self, k: usize) -> Result<Option<UpDownTableau>> {
        self.check_k(k)?;
        if self.is_turn(k) {
            return Err(Error::OutOfRange(format!("s_k is not defined at k = {k}: t_(k-1) = t_(k+1)")));
        }
        let (a, b) = (self.step(k).node, self.step(k + 1).node);
        if a.s == b.s && (a.i == b.i || a.j == b.j) {
            return Ok(None);
        }
        let mut steps = self.steps.clone();
        steps.swap(k - 1, k);
        Ok(UpDownTableau::from_steps(self.r, steps).ok())
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k == 0 || k >= self.n() {
            return Err(Error::OutOfRange(format!("k = {k} outside 1..{}", self.n())));
        }
        Ok(())
    }
}

fn apply(p: &RPartition, st: &Step) -> RPartition {
    if st.add {
        p.add(&st.node).expect("legal step")
    } else {
        p.remove(&st.node).expect("legal step")
    }
}

impl fmt::Display for UpDownTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.steps.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

impl Serialize for UpDownTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.steps.serialize(s)
    }
}

fn parity_check(n: usize, lambda: &RPartition) -> Result<()> {
    let m = lambda.size();
    if m > n || !(n - m).is_multiple_of(2) {
        return Err(Error::ParityMismatch(n as i64 - m as i64));
    }
    Ok(())
}

/// All `n`-up-down `λ`-tableaux, sorted by step sequence.
pub fn enumerate_updown(n: usize, lambda: &RPartition) -> Result<Vec<UpDownTableau>> {
    parity_check(n, lambda)?;
    let r = lambda.r();
    let start = RPartition::empty(r);
    // parallelize over the first step
    let firsts: Vec<(Node, bool)> = if n == 0 { Vec::new() } else { start.add_rem_nodes() };
    if n == 0 {
        return Ok(vec![UpDownTableau { r, steps: Vec::new() }]);
    }
    let mut out: Vec<UpDownTableau> = firsts
        .par_iter()
        .flat_map_iter(|&(node, add)| {
            let mut acc = Vec::new();
            let st = Step { node, add };
            let cur = apply(&start, &st);
            let mut steps = vec![st];
            dfs(&cur, n - 1, lambda, &mut steps, &mut acc);
            acc.into_iter().map(move |steps| UpDownTableau { r, steps })
        })
        .collect();
    out.sort();
    Ok(out)
}

fn dfs(cur: &RPartition, left: usize, target: &RPartition, steps: &mut Vec<Step>, acc: &mut Vec<Vec<Step>>) {
    if cur.distance(target) > left {
        return;
    }
    if left == 0 {
        acc.push(steps.clone());
        return;
    }
    for (node, add) in cur.add_rem_nodes() {
        let st = Step { node, add };
        let next = apply(cur, &st);
        steps.push(st);
        dfs(&next, left - 1, target, steps, acc);
        steps.pop();
    }
}

/// `|T^ud_n(λ)|` for every `λ` reachable in `n` steps, by the branching rule.
pub fn updown_counts(r: usize, n: usize) -> BTreeMap<RPartition, u128> {
    let mut cur: BTreeMap<RPartition, u128> = BTreeMap::new();
    cur.insert(RPartition::empty(r), 1);
    for _ in 0..n {
        let mut next: BTreeMap<RPartition, u128> = BTreeMap::new();
        for (p, c) in &cur {
            for (node, add) in p.add_rem_nodes() {
                *next.entry(apply(p, &Step { node, add })).or_default() += c;
            }
        }
        cur = next;
    }
    cur
}

/// The cell labels `(f, λ)` with `λ ⊢ n - 2f`, by increasing `f`.
pub fn shapes(r: usize, n: usize) -> Vec<(usize, RPartition)> {
    (0..=n / 2).flat_map(|f| RPartition::all(r, n - 2 * f).into_iter().map(move |l| (f, l))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::generic_specialization;

    fn p(c: &[&[usize]]) -> RPartition {
        RPartition::new(c.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    fn walk(r: usize, steps: &[(usize, usize, usize, bool)]) -> UpDownTableau {
        UpDownTableau::from_steps(r, steps.iter().map(|&(s, i, j, add)| Step { node: Node::new(s, i, j), add }).collect()).unwrap()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_updown(2, &RPartition::empty(3)).unwrap().len(), 3);
        assert_eq!(enumerate_updown(2, &p(&[&[2], &[], &[]])).unwrap().len(), 1);
        assert!(matches!(enumerate_updown(3, &RPartition::empty(3)), Err(Error::ParityMismatch(3))));
        assert_eq!(enumerate_updown(0, &RPartition::empty(1)).unwrap().len(), 1);
    }

    #[test]
    fn contents_of_short_walks() {
        let prm = generic_specialization(1, 2, 0).unwrap();
        let u = prm.u_at(1).clone();
        let q2 = prm.q() * prm.q();
        let t = walk(1, &[(1, 1, 1, true), (1, 1, 1, false)]);
        assert_eq!(t.content_seq(&prm), vec![u.clone(), u.recip()]);
        let t = walk(1, &[(1, 1, 1, true), (1, 1, 2, true)]);
        assert_eq!(t.content_seq(&prm), vec![u.clone(), u * q2]);
    }

    #[test]
    fn neighbors_at_a_turn() {
        let t = walk(1, &[(1, 1, 1, true), (1, 1, 1, false)]);
        assert_eq!(t.neighbors(1).unwrap(), vec![t.clone()]);
        let t = walk(3, &[(1, 1, 1, true), (1, 1, 1, false)]);
        assert_eq!(t.neighbors(1).unwrap().len(), 3);
    }

    #[test]
    fn swap_rules() {
        let row = walk(1, &[(1, 1, 1, true), (1, 1, 2, true)]);
        assert_eq!(row.sk_action(1).unwrap(), None);
        assert_eq!(row.neighbors(1).unwrap(), vec![row.clone()]);
        let t = walk(2, &[(1, 1, 1, true), (2, 1, 1, true)]);
        let s = t.sk_action(1).unwrap().unwrap();
        assert_eq!(s.steps()[0].node, Node::new(2, 1, 1));
        assert_eq!(s.sk_action(1).unwrap().unwrap(), t);
        assert_eq!(t.neighbors(1).unwrap().len(), 2);
        let turn = walk(1, &[(1, 1, 1, true), (1, 1, 1, false)]);
        assert!(turn.sk_action(1).is_err());
    }

    #[test]
    fn partitions_round_trip() {
        let t = walk(2, &[(1, 1, 1, true), (2, 1, 1, true), (1, 1, 1, false)]);
        let parts = t.partitions();
        assert_eq!(parts[3], p(&[&[], &[1]]));
        assert_eq!(UpDownTableau::from_partitions(&parts).unwrap(), t);
        assert_eq!(t.to_string(), "[+(1,1,1) +(2,1,1) -(1,1,1)]");
    }

    #[test]
    fn dp_matches_enumeration() {
        let counts = updown_counts(3, 3);
        for (f, l) in shapes(3, 3) {
            let _ = f;
            let e = enumerate_updown(3, &l).unwrap().len() as u128;
            assert_eq!(counts.get(&l).copied().unwrap_or(0), e, "{l}");
        }
    }
}
