use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::partition::{Node, RPartition};
use super::perm::{self, Perm};

/// A standard filling of `λ` by `1..=|λ|`, increasing along rows and columns
/// of every component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StdTableau {
    shape: RPartition,
    /// `positions[k-1]` is the box holding `k`.
    positions: Vec<Node>,
}

impl StdTableau {
    pub fn shape(&self) -> &RPartition {
        &self.shape
    }

    pub fn positions(&self) -> &[Node] {
        &self.positions
    }

    pub fn size(&self) -> usize {
        self.positions.len()
    }

    pub fn entry(&self, node: &Node) -> Option<usize> {
        self.positions.iter().position(|x| x == node).map(|k| k + 1)
    }

    /// The row-reading tableau: components in order, rows top to bottom.
    pub fn superstandard(shape: &RPartition) -> Self {
        StdTableau { shape: shape.clone(), positions: shape.nodes() }
    }

    /// `d(t)`: the permutation with `t^λ d(t) = t`, i.e. `k ↦ t(box of k in t^λ)`.
    pub fn d(&self) -> Perm {
        StdTableau::superstandard(&self.shape)
            .positions
            .iter()
            .map(|n| self.entry(n).expect("same shape"))
            .collect()
    }

    /// Rows as lists of entries, per component.
    pub fn rows(&self) -> Vec<Vec<Vec<usize>>> {
        self.shape
            .components()
            .iter()
            .enumerate()
            .map(|(s0, c)| {
                c.iter()
                    .enumerate()
                    .map(|(i0, &len)| (1..=len).map(|j| self.entry(&Node::new(s0 + 1, i0 + 1, j)).unwrap()).collect())
                    .collect()
            })
            .collect()
    }

    pub fn is_standard(&self) -> bool {
        let at: BTreeMap<Node, usize> = self.positions.iter().enumerate().map(|(k, n)| (*n, k + 1)).collect();
        at.len() == self.shape.size()
            && self.shape.nodes().iter().all(|n| {
                let v = at[n];
                let right = at.get(&Node::new(n.s, n.i, n.j + 1)).is_none_or(|&w| w > v);
                let down = at.get(&Node::new(n.s, n.i + 1, n.j)).is_none_or(|&w| w > v);
                right && down
            })
    }
}

impl fmt::Display for StdTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .rows()
            .iter()
            .map(|c| {
                if c.is_empty() {
                    "-".to_string()
                } else {
                    c.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join("/")
                }
            })
            .collect();
        write!(f, "({})", comps.join("|"))
    }
}

impl Serialize for StdTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

/// All standard `λ`-tableaux, sorted.
pub fn std_tableaux(shape: &RPartition) -> Vec<StdTableau> {
    fn go(shape: &RPartition) -> Vec<Vec<Node>> {
        if shape.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for n in shape.removable() {
            let smaller = shape.remove(&n).expect("removable");
            for mut pos in go(&smaller) {
                pos.push(n);
                out.push(pos);
            }
        }
        out
    }
    let mut v: Vec<StdTableau> = go(shape).into_iter().map(|positions| StdTableau { shape: shape.clone(), positions }).collect();
    v.sort();
    v
}

/// The row stabiliser of the superstandard tableau: permutations of
/// `1..=|λ|` preserving each row's entry set.
pub fn row_stabilizer(shape: &RPartition) -> Vec<Perm> {
    let blocks: Vec<usize> = shape.components().iter().flatten().copied().collect();
    perm::young_subgroup(&blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[&[usize]]) -> RPartition {
        RPartition::new(c.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(std_tableaux(&p(&[&[1], &[1], &[]])).len(), 2);
        assert_eq!(std_tableaux(&p(&[&[2], &[], &[]])).len(), 1);
        assert_eq!(std_tableaux(&RPartition::empty(3)).len(), 1);
        assert_eq!(std_tableaux(&p(&[&[2, 1]])).len(), 2);
        assert_eq!(std_tableaux(&p(&[&[3, 2]])).len(), 5);
    }

    #[test]
    fn every_tableau_is_standard_and_d_maps_superstandard() {
        let shape = p(&[&[2, 1], &[1]]);
        let sup = StdTableau::superstandard(&shape);
        assert_eq!(sup.d(), perm::identity(4));
        for t in std_tableaux(&shape) {
            assert!(t.is_standard());
            let d = t.d();
            for (k, n) in sup.positions().iter().enumerate() {
                assert_eq!(t.entry(n), Some(d[k]));
            }
        }
        assert_eq!(sup.to_string(), "(1,2/3|4)");
    }

    #[test]
    fn stabilizer_order() {
        assert_eq!(row_stabilizer(&p(&[&[2, 1], &[2]])).len(), 4);
    }
}
