use cycbmw::cellular::*;
use cycbmw::params::generic_specialization;
use cycbmw::scalars::BallReal;
use cycbmw::tableaux::{brauer_rank, std_tableaux};
use proptest::prelude::*;

fn close(a: &[BallReal], b: &[BallReal]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x.clone() - y.clone()).contains_zero())
}

fn block_product(rep: &FaithfulRep<BallReal>, a: &GenWord, b: &GenWord) -> Vec<BallReal> {
    let (x, y) = (rep.eval_blocks(a).unwrap(), rep.eval_blocks(b).unwrap());
    x.iter().zip(&y).flat_map(|(m, k)| m.mul(k).into_entries()).collect()
}

#[test]
fn count_identity() {
    for (r, n) in [(1usize, 2usize), (1, 5), (3, 2), (3, 4), (5, 3)] {
        let d = CellDatum::new(r, n).unwrap();
        assert_eq!(d.total(), brauer_rank(r, n));
    }
}

#[test]
fn rank_small_cases() {
    for (r, n, want) in [(1usize, 2usize, 3usize), (1, 3, 15), (3, 2, 27)] {
        let p = generic_specialization(r, n, 0).unwrap();
        let rep = rank_certify(n, &p, 512).unwrap();
        assert_eq!(rep.d, want);
        assert_eq!(rep.target_dim, want);
        assert!(rep.certified, "r={r} n={n}: {rep:?}");
    }
}

#[test]
fn rank_r3_n3() {
    let p = generic_specialization(3, 3, 0).unwrap();
    let rep = rank_certify(3, &p, 512).unwrap();
    assert_eq!(rep.d, 405);
    assert!(rep.certified);
}

#[test]
fn gram_values_match_blocks() {
    let p = generic_specialization(3, 4, 0).unwrap();
    for n in [2usize, 4] {
        for l in -2..=2 {
            assert!(gram_cross_check_ball(n, l, &p, 512).unwrap(), "n={n} l={l}");
        }
    }
    let g = gram_half(2, 1, &p).unwrap();
    assert!(!g.degenerate);
}

#[test]
fn m_word_commutes_with_e_f_and_x_kappa() {
    let n = 3;
    let p = generic_specialization(3, n, 0).unwrap();
    let rep = FaithfulRep::<BallReal>::build(n, &p, 256).unwrap();
    let l = cycbmw::tableaux::RPartition::new(vec![vec![], vec![1], vec![]]).unwrap();
    let t = &std_tableaux(&l)[0];
    let m = m_word(t, t).unwrap();
    for other in [e_f(1, n), x_kappa(&[0, 1, 0]), x_kappa(&[0, -1, 0])] {
        assert!(close(
            &rep.eval_word(&other.clone().concat(m.clone())).unwrap(),
            &rep.eval_word(&m.clone().concat(other)).unwrap()
        ));
    }
}

#[test]
fn e_f_absorbs_x_kappa_into_partner_strand() {
    // E_i X_i^k = E_i X_{i+1}^-k, so E^f X^κ only depends on κ through E^f
    let n = 4;
    let p = generic_specialization(1, n, 0).unwrap();
    let rep = FaithfulRep::<BallReal>::build(n, &p, 256).unwrap();
    for k in [-1i64, 1, 2] {
        let a = e_f(2, n).concat(GenWord(vec![Token::X(3, k), Token::X(1, k)]));
        let b = e_f(2, n).concat(GenWord(vec![Token::X(4, -k), Token::X(2, -k)]));
        assert!(close(&rep.eval_word(&a).unwrap(), &rep.eval_word(&b).unwrap()));
    }
}

#[test]
fn census() {
    let p = generic_specialization(3, 3, 0).unwrap();
    let labels = classify(3, &p).unwrap();
    assert_eq!(labels.len(), CellDatum::new(3, 3).unwrap().cells.len());
    assert!(labels.iter().all(|l| l.f <= 1));
    let p2 = generic_specialization(3, 2, 0).unwrap();
    assert!(classify(2, &p2).unwrap().iter().any(|l| l.f == 1 && l.lambda == "-|-|-"));
}

fn arb_token(n: usize) -> impl Strategy<Value = Token> {
    prop_oneof![
        (1..n).prop_map(Token::T),
        (1..n).prop_map(Token::TInv),
        (1..n).prop_map(Token::E),
        (1..=n, -2i64..=2).prop_map(|(j, a)| Token::X(j, a)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evaluation_is_multiplicative(
        a in prop::collection::vec(arb_token(3), 0..5),
        b in prop::collection::vec(arb_token(3), 0..5),
    ) {
        let p = generic_specialization(1, 3, 0).unwrap();
        let rep = FaithfulRep::<BallReal>::build(3, &p, 256).unwrap();
        let (wa, wb) = (GenWord(a), GenWord(b));
        let joint = rep.eval_word(&wa.clone().concat(wb.clone())).unwrap();
        prop_assert!(close(&joint, &block_product(&rep, &wa, &wb)));
    }

    #[test]
    fn star_twice_is_identity(a in prop::collection::vec(arb_token(4), 0..8)) {
        let w = GenWord(a);
        prop_assert_eq!(w.star().star(), w);
    }
}
