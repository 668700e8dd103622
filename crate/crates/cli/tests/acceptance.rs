//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test -p cycbmw-cli --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use bmw_cli::commands::{alpha_for, expected_cosets, expected_rank, random_v};
use bmw_cli::{run, Cli, RunConfig};
use clap::Parser;
use cycbmw::cellular::{classify_with, gram_cross_check_ball, gram_half, gram_half_with, rank_certify};
use cycbmw::params::generic_specialization;
use cycbmw::seminormal::{det_ad, det_ad_brute, gammas, identity_suite_all, uniquesolution_residual};
use cycbmw::tableaux::{coset_count, enumerate_cosets};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::Value;

fn cli(args: &str) -> Value {
    let argv = std::iter::once("bmw").chain(args.split_whitespace());
    let cfg = RunConfig::from_cli(Cli::try_parse_from(argv).expect("valid flags")).expect("valid config");
    run(&cfg).expect("command runs").to_json()
}

fn passed(v: &Value) -> bool {
    v["pass"].as_bool() == Some(true)
}

struct Outcome {
    id: &'static str,
    name: &'static str,
    pass: bool,
    elapsed: Duration,
    budget: Duration,
    note: String,
}

fn criterion(id: &'static str, name: &'static str, budget_s: u64, body: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, note) = body();
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_s);
    let o = Outcome { id, name, pass: ok && elapsed <= budget, elapsed, budget, note };
    println!(
        "{} {:>3}  {:<58} {:>8.2}s / {:>4}s  {}",
        if o.pass { "PASS" } else { "FAIL" },
        o.id,
        o.name,
        o.elapsed.as_secs_f64(),
        o.budget.as_secs(),
        o.note
    );
    o
}

fn br2_count() -> (bool, String) {
    let v = cli("br2 --r 3");
    let sum = v["sum_dim_sq"].as_u64();
    (passed(&v) && sum == Some(27), format!("sum dim^2 = {sum:?}"))
}

fn dimension_identity() -> (bool, String) {
    let cases = [(1, 2..=6), (3, 2..=4), (5, 2..=3)];
    let mut ok = true;
    let mut seen = 0;
    for (r, ns) in cases {
        for n in ns {
            let v = cli(&format!("tabs --count --r {r} --n {n}"));
            let got = v["sum_sq"].as_u64().map(u128::from);
            ok &= passed(&v) && got == Some(expected_rank(r, n));
            seen += 1;
        }
    }
    (ok, format!("{seen} (r, n) pairs"))
}

fn coset_counts() -> (bool, String) {
    let mut ok = true;
    let mut seen = 0;
    for n in 0..=8 {
        for f in 0..=n / 2 {
            let want = expected_cosets(f, n);
            ok &= enumerate_cosets(f, n).map(|c| c.len() as u128) == Ok(want) && coset_count(f, n) == want;
            seen += 1;
        }
    }
    (ok, format!("{seen} (f, n) pairs"))
}

fn admissibility() -> (bool, String) {
    let mut ok = true;
    for r in [1usize, 3, 5] {
        let p = generic_specialization(r, 2, 0).unwrap();
        let ri = r as i64;
        let rep = p.check_admissible(-2 * ri..=2 * ri, 3 * ri);
        ok &= rep.all_pass() && rep.first.len() == (4 * r + 1) && !rep.second.is_empty();
        ok &= passed(&cli(&format!("params --r {r}")));
    }
    (ok, "r in {1, 3, 5}".into())
}

fn generating_functions() -> (bool, String) {
    let mut ok = true;
    for r in [1usize, 3, 5] {
        let v = cli(&format!("params --r {r}"));
        ok &= v["wtilde"].as_array().is_some_and(|a| a.iter().all(|w| w["pass"] == true && w["order"] == 4 * r));
        ok &= v["product_identity"]["pass"] == true && v["product_identity"]["order"] == 8;
    }
    (ok, "w~ to order 4r, product to order 8".into())
}

fn relations() -> (bool, String) {
    let mut ok = true;
    let mut widest = f64::NEG_INFINITY;
    let mut modules = 0;
    for (r, nmax) in [(1, 4), (3, 3)] {
        for n in 0..=nmax {
            let v = cli(&format!("rep --r {r} --n {n} --precision 512"));
            ok &= passed(&v);
            for m in v["modules"].as_array().unwrap() {
                modules += 1;
                ok &= m["precision_bits"] == 512;
                if let Some(w) = m["max_log2_width"].as_f64() {
                    widest = widest.max(w);
                    ok &= w < -256.0;
                }
            }
        }
    }
    (ok, format!("{modules} modules, widest residual 2^{widest:.0}"))
}

fn identity_suites() -> (bool, String) {
    let mut ok = true;
    let mut checks = 0;
    for n in 0..=4 {
        let p = generic_specialization(3, n, 0).unwrap();
        for rep in identity_suite_all(n, &p).unwrap() {
            ok &= rep.all_pass();
            checks += rep.checks.len();
        }
    }
    ok &= passed(&cli("identities --r 3 --n 4"));
    (ok, format!("{checks} exact checks"))
}

fn omega_consistency() -> (bool, String) {
    let mut ok = true;
    for n in 1..=3 {
        let v = cli(&format!("omega --r 3 --n {n}"));
        ok &= passed(&v) && v["order"] == 12;
    }
    (ok, "order 12".into())
}

fn rank(r: usize, n: usize, want: usize) -> (bool, String) {
    let p = generic_specialization(r, n, 0).unwrap();
    let rep = rank_certify(n, &p, 512).unwrap();
    (rep.certified && rep.d == want, format!("D = {}, {} at {} bits", rep.d, rep.status, rep.precision_bits))
}

fn rank_mandatory() -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for (r, n, d) in [(1, 2, 3), (1, 3, 15), (3, 2, 27)] {
        let (o, s) = rank(r, n, d);
        ok &= o;
        notes.push(s);
    }
    (ok, notes.join("; "))
}

fn gram_values() -> (bool, String) {
    let p = generic_specialization(3, 4, 0).unwrap();
    let mut ok = true;
    for l in -2..=2 {
        let w = p.omega(l);
        ok &= gram_half(2, l, &p).unwrap().value == cycbmw::scalars::fraction_string(&w);
        ok &= gram_half(4, l, &p).unwrap().value == cycbmw::scalars::fraction_string(&(&w * &w));
        ok &= gram_cross_check_ball(2, l, &p, 512).unwrap();
    }
    let (z, degenerate) = gram_half_with(4, 1, 3, |_| BigRational::zero()).unwrap();
    ok &= z.is_zero() && degenerate;
    ok &= classify_with(4, 3, true).unwrap().iter().all(|l| l.f != 2);
    ok &= !gram_half(2, 0, &p).unwrap().degenerate;
    (ok, "n in {2, 4}, l in -2..=2".into())
}

fn det_and_gamma() -> (bool, String) {
    let mut rng = StdRng::seed_from_u64(2024);
    let q = BigRational::from_integer(3.into());
    let delta = &q - q.recip();
    let mut ok = true;
    let mut draws = 0;
    for _ in 0..4 {
        for d in 1..=5 {
            let v = random_v(&mut rng, d);
            ok &= det_ad(&v).unwrap() == det_ad_brute(&v).unwrap();
            for plus in [true, false] {
                let rho = (alpha_for(d, plus, &q) * v.iter().fold(BigRational::one(), |a, x| a * x)).recip();
                let dr = &rho / &delta;
                ok &= uniquesolution_residual(&v, &gammas(&v, &dr), &dr).iter().all(Zero::is_zero);
            }
            draws += 1;
        }
    }
    (ok, format!("{draws} random v"))
}

#[test]
fn acceptance() {
    let outcomes = vec![
        criterion("1", "B_{r,2} Wedderburn count, r = 3", 5, br2_count),
        criterion("2", "dimension identity sum |T^ud|^2 = r^n (2n-1)!!", 30, dimension_identity),
        criterion("3", "coset counts |D_{f,n}|, n <= 8", 5, coset_counts),
        criterion("4", "admissibility, b in [-2r, 2r], a <= 3r", 10, admissibility),
        criterion("5", "generating functions and product identity", 10, generating_functions),
        criterion("6", "seminormal relations, (1, <=4) and (3, <=3)", 300, relations),
        criterion("7", "exact identity suites, r = 3, n <= 4", 120, identity_suites),
        criterion("8", "omega recursion vs residue form, r = 3, n <= 3", 60, omega_consistency),
        criterion("9", "rank certification D = 3, 15, 27", 600, rank_mandatory),
        criterion("9x", "rank certification D = 405 (extended)", 600, || rank(3, 3, 405)),
        criterion("10", "Gram values and zero case", 60, gram_values),
        criterion("11", "det A_d closed form and gamma residual, d <= 5", 30, det_and_gamma),
    ];
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    println!("{} of {} criteria passed", outcomes.len() - failed.len(), outcomes.len());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
