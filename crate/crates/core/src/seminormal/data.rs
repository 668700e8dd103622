use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::params::GroundParams;
use crate::scalars::{Field, RatFunc};
use crate::tableaux::{enumerate_updown, Node, RPartition, UpDownTableau};

/// Content `c(α)` and residue `Res_{y=c(α)} W/y` for one addable or removable node.
#[derive(Clone, Debug)]
pub struct NodeResidue<F> {
    pub node: Node,
    pub addable: bool,
    pub content: F,
    pub residue: F,
}

/// `W(y)` for the walk position `mu = s_{k-1}`, as a rational function in `y`.
pub fn w_rational<F: Field>(mu: &RPartition, p: &GroundParams<F>) -> RatFunc {
    let y = RatFunc::var("y");
    let one = RatFunc::one();
    let y2m1 = y.clone() * y.clone() - one.clone();
    let dr = p.dinv_rho().to_ratfunc();
    let pu = p.prod_u().to_ratfunc();
    let mut prod = pu.clone();
    for (node, add) in mu.add_rem_nodes() {
        let c = node.content(add, p);
        prod = prod * (y.clone() - c.inv().to_ratfunc()) / (y.clone() - c.to_ratfunc());
    }
    y.clone() * y.clone() / y2m1.clone() - dr.clone() + (dr * pu + y / y2m1) * prod
}

/// `W_k(y, s)`.
pub fn w_rational_for<F: Field>(s: &UpDownTableau, k: usize, p: &GroundParams<F>) -> RatFunc {
    w_rational(&s.at(k - 1), p)
}

/// Residues of `W(y)/y` at every node content of `mu`, from the product form.
pub fn node_residues<F: Field>(mu: &RPartition, p: &GroundParams<F>) -> Vec<NodeResidue<F>> {
    let nodes: Vec<(Node, bool, F)> = mu.add_rem_nodes().into_iter().map(|(n, a)| (n, a, n.content(a, p))).collect();
    let dr = p.dinv_rho();
    let pu = p.prod_u().clone();
    let one = F::one();
    nodes
        .iter()
        .enumerate()
        .map(|(i, (node, addable, c))| {
            let cinv = c.inv();
            let mut res = (dr.clone() * pu.clone() + c.clone() / (c.clone() * c.clone() - one.clone()))
                * pu.clone()
                * (c.clone() - cinv)
                / c.clone();
            for (j, (_, _, b)) in nodes.iter().enumerate() {
                if j != i {
                    res = res * (c.clone() - b.inv()) / (c.clone() - b.clone());
                }
            }
            NodeResidue { node: *node, addable: *addable, content: c.clone(), residue: res }
        })
        .collect()
}

fn check_turn(s: &UpDownTableau, k: usize) -> Result<()> {
    if k == 0 || k >= s.n() || !s.is_turn(k) {
        return Err(Error::NotEdiagCase(k));
    }
    Ok(())
}

/// `E_ss(k) = Res_{y=c_s(k)} W_k(y,s)/y`; defined only when `s_{k-1} = s_{k+1}`.
pub fn e_diag<F: Field>(s: &UpDownTableau, k: usize, p: &GroundParams<F>) -> Result<F> {
    check_turn(s, k)?;
    let node = s.step(k).node;
    node_residues(&s.at(k - 1), p)
        .into_iter()
        .find(|r| r.node == node)
        .map(|r| r.residue)
        .ok_or(Error::NotEdiagCase(k))
}

/// The closed form `1/(ρc) ((c - c^-1)/δ ± 1) Π_{α ≠ s_k∖s_(k-1)} (c - c(α)^-1)/(c - c(α))`,
/// with the sign equal to `α` in `ρ^-1 = α Π u`.
pub fn e_diag_closed<F: Field>(s: &UpDownTableau, k: usize, p: &GroundParams<F>) -> Result<F> {
    check_turn(s, k)?;
    let own = s.step(k).node;
    let c = s.content(k, p);
    let sign = F::from_i64(p.alpha() as i64);
    let mut v = (c.clone() - c.inv()) / p.delta().clone() + sign;
    v = v / (p.rho().clone() * c.clone());
    for (node, add) in s.at(k - 1).add_rem_nodes() {
        if node != own {
            let b = node.content(add, p);
            v = v * (c.clone() - b.inv()) / (c.clone() - b);
        }
    }
    Ok(v)
}

/// The residue computed from the rational function itself: `((y - c) W/y)|_{y=c}`.
pub fn e_diag_by_limit(s: &UpDownTableau, k: usize, p: &GroundParams<BigRational>) -> Result<BigRational> {
    check_turn(s, k)?;
    let c = s.content(k, p);
    let y = RatFunc::var("y");
    let g = (y.clone() - RatFunc::constant(c.clone())) * w_rational_for(s, k, p) / y;
    g.eval(&["y"], &[c])
}

/// `(a_s(k), b_s(k)^2)` with `a = δ c(k+1) / (c(k+1) - c(k))` and `b² = 1 - a² + δ a`.
pub fn ab_coeffs<F: Field>(s: &UpDownTableau, k: usize, p: &GroundParams<F>) -> Result<(F, F)> {
    if k == 0 || k >= s.n() {
        return Err(Error::OutOfRange(format!("k = {k} outside 1..{}", s.n())));
    }
    if s.is_turn(k) {
        return Err(Error::NotAbCase(k));
    }
    let (c0, c1) = (s.content(k, p), s.content(k + 1, p));
    let d = p.delta().clone();
    let a = d.clone() * c1.clone() / (c1 - c0);
    let bsq = F::one() - a.clone() * a.clone() + d * a.clone();
    Ok((a, bsq))
}

/// Per-position data of one basis vector.
#[derive(Clone, Debug)]
pub enum Slot<F> {
    /// `s_{k-1} = s_{k+1}`: `E_ss(k)` and the `∼_k` class (basis indices).
    Turn { e: F, class: Vec<usize> },
    /// `s_{k-1} ≠ s_{k+1}`: `a`, `b²` and the index of `s_k s` when defined.
    Pass { a: F, bsq: F, partner: Option<usize> },
}

/// Every square-root-free number needed to assemble a seminormal module.
#[derive(Clone, Debug)]
pub struct ResidueTable<F> {
    pub f: usize,
    pub lambda: RPartition,
    pub n: usize,
    pub basis: Vec<UpDownTableau>,
    /// `contents[s][k-1] = c_s(k)`.
    pub contents: Vec<Vec<F>>,
    /// `slots[k-1][s]` for `1 ≤ k < n`.
    pub slots: Vec<Vec<Slot<F>>>,
}

impl<F: Field> ResidueTable<F> {
    pub fn build(n: usize, lambda: &RPartition, p: &GroundParams<F>) -> Result<Self> {
        if lambda.r() != p.r() {
            return Err(Error::ShapeMismatch(format!("{lambda} has {} components, r = {}", lambda.r(), p.r())));
        }
        let basis = enumerate_updown(n, lambda)?;
        let f = (n - lambda.size()) / 2;
        let index: HashMap<&UpDownTableau, usize> = basis.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let contents: Vec<Vec<F>> = basis.iter().map(|t| t.content_seq(p)).collect();
        let mut slots = Vec::with_capacity(n.saturating_sub(1));
        for k in 1..n {
            let mut row = Vec::with_capacity(basis.len());
            for s in &basis {
                if s.is_turn(k) {
                    let class = s.neighbors(k)?.iter().map(|t| index[t]).collect();
                    row.push(Slot::Turn { e: e_diag(s, k, p)?, class });
                } else {
                    let (a, bsq) = ab_coeffs(s, k, p)?;
                    let partner = s.sk_action(k)?.map(|t| index[&t]);
                    row.push(Slot::Pass { a, bsq, partner });
                }
            }
            slots.push(row);
        }
        Ok(ResidueTable { f, lambda: lambda.clone(), n, basis, contents, slots })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn slot(&self, k: usize, s: usize) -> &Slot<F> {
        &self.slots[k - 1][s]
    }

    pub fn content(&self, s: usize, k: usize) -> &F {
        &self.contents[s][k - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::generic_specialization;
    use num_traits::Zero;

    #[test]
    fn residues_sum_to_w_at_infinity_r3() {
        let p = generic_specialization(3, 2, 0).unwrap();
        let mu = RPartition::new(vec![vec![1], vec![], vec![]]).unwrap();
        let res = node_residues(&mu, &p);
        assert_eq!(res.len(), mu.addable().len() + mu.removable().len());
        // the leading coefficient of W(y) at y = ∞ is ω_0
        let total = res.iter().fold(BigRational::zero(), |acc, r| acc + r.residue.clone());
        assert_eq!(total, p.omega(0));
    }

    #[test]
    fn turn_at_last_position_is_rejected() {
        let p = generic_specialization(1, 2, 0).unwrap();
        let s = &enumerate_updown(2, &RPartition::empty(1)).unwrap()[0];
        assert!(e_diag(s, 2, &p).is_err());
        assert!(e_diag(s, 0, &p).is_err());
    }
}
