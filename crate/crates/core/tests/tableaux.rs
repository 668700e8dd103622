use std::collections::BTreeSet;

use cycbmw::params::generic_specialization;
use cycbmw::scalars::Field;
use cycbmw::tableaux::*;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn arb_rpartition(r: usize, max: usize) -> impl Strategy<Value = RPartition> {
    prop::collection::vec(prop::collection::vec(1usize..5, 0..4), r).prop_map(move |comps| {
        let comps = comps
            .into_iter()
            .map(|mut c| {
                c.sort_unstable_by(|a, b| b.cmp(a));
                c.truncate(max);
                c
            })
            .collect();
        RPartition::new(comps).unwrap()
    })
}

#[test]
fn dimension_identity() {
    for (r, nmax) in [(1usize, 6usize), (3, 4), (5, 3)] {
        for n in 2..=nmax {
            let counts = updown_counts(r, n);
            let total: u128 = counts.values().map(|c| c * c).sum();
            assert_eq!(total, brauer_rank(r, n), "r={r} n={n}");
        }
    }
}

#[test]
fn enumeration_agrees_with_branching_counts() {
    for (r, n) in [(1usize, 4usize), (3, 3), (5, 2)] {
        let counts = updown_counts(r, n);
        let mut total = 0u128;
        for (_, l) in shapes(r, n) {
            let e = enumerate_updown(n, &l).unwrap();
            let set: BTreeSet<_> = e.iter().collect();
            assert_eq!(set.len(), e.len());
            assert!(e.iter().all(|t| t.shape() == l && t.n() == n));
            assert_eq!(e.len() as u128, counts[&l]);
            total += (e.len() * e.len()) as u128;
        }
        assert_eq!(total, brauer_rank(r, n));
    }
}

#[test]
fn branching_recursion() {
    let r = 3;
    for n in 1..=4 {
        let prev = updown_counts(r, n - 1);
        for (l, c) in updown_counts(r, n) {
            let mut sum = 0u128;
            for (node, add) in l.add_rem_nodes() {
                // mu with l obtained from mu by one step
                let mu = if add { l.add(&node).unwrap() } else { l.remove(&node).unwrap() };
                sum += prev.get(&mu).copied().unwrap_or(0);
            }
            assert_eq!(sum, c, "{l}");
        }
    }
}

#[test]
fn cell_index_sets_have_the_right_size() {
    for (r, n) in [(1usize, 4usize), (3, 3), (3, 4), (5, 2)] {
        let mut total = 0u128;
        for (f, l) in shapes(r, n) {
            let d = std_tableaux(&l).len() as u128 * (r as u128).pow(f as u32) * coset_count(f, n);
            assert_eq!(d, enumerate_updown(n, &l).unwrap().len() as u128, "f={f} {l}");
            total += d * d;
        }
        assert_eq!(total, brauer_rank(r, n));
    }
}

#[test]
fn neighbors_match_filtered_enumeration() {
    let n = 3;
    for (_, l) in shapes(3, n) {
        let all = enumerate_updown(n, &l).unwrap();
        for t in &all {
            for k in 1..n {
                let want: Vec<_> = all
                    .iter()
                    .filter(|s| (0..=n).all(|j| j == k || s.at(j) == t.at(j)))
                    .cloned()
                    .collect();
                let got = t.neighbors(k).unwrap();
                assert_eq!(got, want, "{t} k={k}");
                if t.is_turn(k) {
                    let mu = t.at(k - 1);
                    assert_eq!(got.len(), mu.addable().len() + mu.removable().len());
                }
            }
        }
    }
}

#[test]
fn contents_separate_tableaux() {
    let p = generic_specialization(3, 3, 0).unwrap();
    for (_, l) in shapes(3, 3) {
        let all = enumerate_updown(3, &l).unwrap();
        let seqs: BTreeSet<Vec<String>> =
            all.iter().map(|t| t.content_seq(&p).iter().map(|c| c.to_exact_string()).collect()).collect();
        assert_eq!(seqs.len(), all.len());
    }
}

#[test]
fn standard_tableau_counts() {
    let l = RPartition::new(vec![vec![1], vec![1], vec![]]).unwrap();
    assert_eq!(std_tableaux(&l).len(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addable_exceeds_removable_by_r(l in arb_rpartition(3, 3)) {
        prop_assert_eq!(l.addable().len(), l.removable().len() + 3);
    }

    #[test]
    fn content_product_is_product_of_u(l in arb_rpartition(3, 3)) {
        let p = generic_specialization(3, 2, 0).unwrap();
        let mut prod = BigRational::one();
        for (node, add) in l.add_rem_nodes() {
            prod *= node.content(add, &p);
        }
        prop_assert_eq!(&prod, p.prod_u());
    }

    #[test]
    fn swap_is_an_involution(seed in 0usize..1000) {
        let all: Vec<UpDownTableau> = shapes(3, 4).into_iter().flat_map(|(_, l)| enumerate_updown(4, &l).unwrap()).collect();
        let t = &all[seed % all.len()];
        for k in 1..4 {
            if !t.is_turn(k) {
                if let Some(s) = t.sk_action(k).unwrap() {
                    prop_assert_eq!(&s.sk_action(k).unwrap().unwrap(), t);
                    prop_assert_eq!(s.shape(), t.shape());
                }
            }
        }
    }
}
