use cycbmw::params::{generic_specialization, Sign};
use cycbmw::scalars::{expand_series, BallReal, ExpansionPoint, F64_TOL_BITS};
use cycbmw::seminormal::*;
use cycbmw::tableaux::{enumerate_updown, shapes, RPartition};
use cycbmw::Error;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn one() -> BigRational {
    BigRational::one()
}

#[test]
fn single_tableau_module() {
    let p = generic_specialization(1, 2, 0).unwrap();
    let l = RPartition::empty(1);
    let tab = ResidueTable::build(2, &l, &p).unwrap();
    assert_eq!(tab.dim(), 1);
    let u = p.u()[0].clone();
    let w0 = p.omega(0);
    match tab.slot(1, 0) {
        Slot::Turn { e, class } => {
            assert_eq!(e, &w0);
            assert_eq!(class, &vec![0]);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(tab.content(0, 1), &u);
    assert_eq!(tab.content(0, 2), &u.recip());

    let s = &tab.basis[0];
    assert_eq!(e_diag(s, 1, &p).unwrap(), w0);

    // W_1 has the single factor (y - u^-1)/(y - u)
    let res = node_residues(&RPartition::empty(1), &p);
    assert_eq!(res.len(), 1);
    assert_eq!(res[0].content, u);

    let m = SeminormalModule::<f64>::build(2, &l, &p, 53).unwrap();
    let d = p.delta().clone();
    let tss = &d * (&w0 - one()) / (&u * &u - one());
    let close = |a: f64, b: &BigRational| (a - num_traits::ToPrimitive::to_f64(b).unwrap()).abs() < 1e-9;
    assert!(close(*m.t(1).get(0, 0), &tss));
    assert!(close(*m.e(1).get(0, 0), &w0));
    assert!(close(*m.x(1).get(0, 0), &u));
    assert!(close(*m.x(2).get(0, 0), &u.recip()));
}

#[test]
fn e_diag_rejects_non_turns() {
    let p = generic_specialization(1, 2, 0).unwrap();
    let l = RPartition::new(vec![vec![2]]).unwrap();
    let s = &enumerate_updown(2, &l).unwrap()[0];
    assert!(matches!(e_diag(s, 1, &p), Err(Error::NotEdiagCase(1))));
    let e = RPartition::empty(1);
    let t = &enumerate_updown(2, &e).unwrap()[0];
    assert!(matches!(ab_coeffs(t, 1, &p), Err(Error::NotAbCase(1))));
}

#[test]
fn relations_hold_r1() {
    let p = generic_specialization(1, 4, 0).unwrap();
    for n in 0..=4 {
        for (_, l) in shapes(1, n) {
            let rep = verify_with_retry(n, &l, &p, 512).unwrap();
            assert!(rep.all_pass(), "n={n} {l}: {:?}", rep.failures());
            assert!(rep.max_log2_width().is_none_or(|w| w < -256.0));
        }
    }
}

#[test]
fn relations_hold_r3() {
    let p = generic_specialization(3, 3, 0).unwrap();
    for n in 0..=3 {
        for (_, l) in shapes(3, n) {
            let rep = verify_with_retry(n, &l, &p, 512).unwrap();
            assert!(rep.all_pass(), "n={n} {l}: {:?}", rep.failures());
        }
    }
}

#[test]
fn e_vanishes_off_turns() {
    let p = generic_specialization(3, 3, 0).unwrap();
    for m in build_all::<BallReal>(3, &p, 128).unwrap() {
        for k in 1..3 {
            for s in 0..m.dim() {
                if !m.basis()[s].is_turn(k) {
                    for t in 0..m.dim() {
                        assert!(num_traits::Zero::is_zero(m.e(k).get(t, s)));
                    }
                }
            }
        }
    }
}

#[test]
fn power_formulas_hold() {
    for (r, n) in [(1usize, 3usize), (3, 3)] {
        let p = generic_specialization(r, n, 0).unwrap();
        for m in build_all::<BallReal>(n, &p, 512).unwrap() {
            let rep = verify_power_formulas(&m, 3, 256);
            assert!(rep.all_pass(), "r={r} {}: {:?}", rep.lambda, rep.failures());
        }
    }
}

#[test]
fn f64_backend_r1() {
    let p = generic_specialization(1, 3, 0).unwrap();
    for m in build_all::<f64>(3, &p, 53).unwrap() {
        let rep = verify_relations(&m, &p, F64_TOL_BITS);
        assert!(rep.all_pass(), "{}: {:?}", rep.lambda, rep.failures());
    }
}

#[test]
fn identity_suite_r3() {
    let p = generic_specialization(3, 4, 0).unwrap();
    for n in 2..=4 {
        for rep in identity_suite_all(n, &p).unwrap() {
            assert!(rep.all_pass(), "n={n} {}: {:?}", rep.lambda, rep.failures());
        }
    }
}

#[test]
fn omega_table_r3() {
    let p = generic_specialization(3, 3, 0).unwrap();
    let order = 12;
    let tab = omega_k_table(&p, 3, order).unwrap();
    for row in tab.rows_for(1) {
        for a in 0..=order {
            assert_eq!(row.values[a], p.omega(a as i64));
        }
    }
    for row in &tab.rows {
        assert_eq!(row.values[0], p.omega(0));
    }
    // ω_{k+1}^(1) = ω_k^(1) + δρ^-1 (x - x^-1) at x = c_s(k)
    for row in tab.rows_for(2).chain(tab.rows_for(3)) {
        let k = row.k - 1;
        let prev = tab
            .rows_for(k)
            .find(|r| r.prefix.steps() == &row.prefix.steps()[..k - 1])
            .expect("prefix present");
        let x = row.prefix.content(k, &p);
        let want = &prev.values[1] + p.delta() / p.rho() * (&x - x.recip());
        assert_eq!(row.values[1], want);
    }
}

#[test]
fn series_forms_agree() {
    let p = generic_specialization(3, 3, 0).unwrap();
    let order = 12;
    for m in 0..3 {
        for (_, l) in shapes(3, m) {
            let prod = product_series(&l, &p, order);
            let res = residue_series(&l, &p, order);
            let f = w_rational(&l, &p);
            let ex = expand_series(&f, "y", ExpansionPoint::Infinity, order).unwrap();
            for a in 0..=order {
                assert_eq!(prod.coeff(a), res.coeff(a), "{l} a={a}");
                assert_eq!(ex.coeff(a).constant_value().unwrap(), res.coeff(a), "{l} a={a}");
            }
        }
    }
    let seed = recursion_series::<BigRational>(&[], &p, order);
    let closed = p.wtilde_closed(Sign::Plus, order);
    assert_eq!(seed.coeffs(), closed.coeffs());
}

#[test]
fn product_of_consecutive_e_is_one() {
    let p = generic_specialization(3, 4, 0).unwrap();
    let mut seen = 0;
    for (_, l) in shapes(3, 4) {
        for s in enumerate_updown(4, &l).unwrap() {
            for k in 1..3 {
                if s.is_turn(k) && s.is_turn(k + 1) {
                    let e = e_diag(&s, k, &p).unwrap() * e_diag(&s, k + 1, &p).unwrap();
                    assert!(e.is_one());
                    seen += 1;
                }
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn br2_census_and_det() {
    for r in [1usize, 3, 5] {
        let p = generic_specialization(r, 2, 0).unwrap();
        let c = Br2Census::build(&p).unwrap();
        assert_eq!(c.sum_dim_sq(), 3 * r * r);
        for m in &c.modules {
            assert!(m.verify(&p).iter().all(|x| x.pass), "{:?}", m.kind);
        }
        let big = c.modules.last().unwrap();
        for a in -3..=3 {
            assert_eq!(big.omega(a), p.omega(a), "r={r} a={a}");
        }
    }
}

#[test]
fn br2_smaller_big_modules() {
    let p = generic_specialization(5, 2, 1).unwrap();
    for idx in [vec![1], vec![2, 4], vec![1, 3, 5], vec![1, 2, 3, 4]] {
        for plus in [true, false] {
            let m = Br2Module::build(Br2Kind::Big { indices: idx.clone(), plus }, &p).unwrap();
            let bad: Vec<_> = m.verify(&p).into_iter().filter(|c| !c.pass).collect();
            assert!(bad.is_empty(), "{idx:?} {plus}: {bad:?}");
            let dr = &m.rho / p.delta();
            assert!(uniquesolution_residual(&m.v, &m.gamma, &dr).iter().all(|x| x.is_zero()));
        }
    }
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn det_closed_form_matches_elimination(
        raw in prop::collection::vec((-40i64..40, 1i64..9), 1..=5)
    ) {
        let mut v: Vec<BigRational> = Vec::new();
        for (a, b) in raw {
            let x = rational(a, b);
            if v.contains(&x) || v.iter().chain(std::iter::once(&x)).any(|y| (&x * y).is_one()) {
                continue;
            }
            v.push(x);
        }
        prop_assume!(!v.is_empty());
        prop_assert_eq!(det_ad(&v).unwrap(), det_ad_brute(&v).unwrap());
    }

    #[test]
    fn gamma_solves_linear_system(
        raw in prop::collection::vec((2i64..60, 1i64..7), 1..=5),
        qn in 2i64..9,
        plus in any::<bool>()
    ) {
        let mut v: Vec<BigRational> = Vec::new();
        for (a, b) in raw {
            let x = rational(a, b);
            if v.contains(&x) || v.iter().chain(std::iter::once(&x)).any(|y| (&x * y).is_one()) {
                continue;
            }
            v.push(x);
        }
        prop_assume!(!v.is_empty());
        let q = rational(qn, 1);
        let alpha = match (v.len() % 2 == 1, plus) {
            (true, true) => one(),
            (true, false) => -one(),
            (false, true) => q.recip(),
            (false, false) => -q.clone(),
        };
        let rho = (alpha * v.iter().fold(one(), |a, x| a * x)).recip();
        let dr = &rho / (&q - q.recip());
        let g = gammas(&v, &dr);
        prop_assert!(uniquesolution_residual(&v, &g, &dr).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn identities_hold_for_other_seeds(seed in 0u64..40) {
        let p = generic_specialization(1, 3, seed).unwrap();
        for rep in identity_suite_all(3, &p).unwrap() {
            prop_assert!(rep.all_pass());
        }
    }
}
