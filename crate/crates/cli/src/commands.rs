use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;

use cycbmw::cellular::{classify, gram_cross_check_ball, gram_half, rank_certify, CellDatum};
use cycbmw::params::Sign;
use cycbmw::scalars::fraction_string;
use cycbmw::seminormal::{
    det_ad, det_ad_brute, gammas, identity_suite_all, omega_k_table, product_series, recursion_series, residue_series,
    uniquesolution_residual, verify_with_retry, Br2Census, Br2Kind,
};
use cycbmw::tableaux::{enumerate_cosets, enumerate_updown, shapes, updown_counts};
use cycbmw::Error;

use crate::config::{Command, RunConfig};
use crate::report::{Report, Table};
use crate::CliError;

/// Largest `Δ(n/2, ∅)` the gram command cross-checks by matrix products.
const GRAM_CROSS_CHECK_MAX_DIM: u128 = 200;

pub fn run_command(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut rep = match &cfg.command {
        Command::Params => params(cfg),
        Command::Tabs { count } => tabs(cfg, *count),
        Command::Rep => rep(cfg),
        Command::Identities => identities(cfg),
        Command::Omega { order } => omega(cfg, order.unwrap_or(4 * cfg.r)),
        Command::Br2 => br2(cfg),
        Command::Basis => basis(cfg),
        Command::Rank { timing } => rank(cfg, *timing),
        Command::Gram => gram(cfg),
        Command::Classify => classify_cmd(cfg),
    }?;
    rep.set("r", cfg.r);
    rep.set("n", cfg.n);
    rep.set("params", &cfg.source);
    Ok(rep)
}

fn frac(x: &BigRational) -> String {
    fraction_string(x)
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn double_factorial_odd(n: usize) -> u128 {
    (1..=n as u128).map(|i| 2 * i - 1).product()
}

/// `r^n (2n-1)!!`.
pub fn expected_rank(r: usize, n: usize) -> u128 {
    (r as u128).pow(n as u32) * double_factorial_odd(n)
}

/// `n! / ((n-2f)! f! 2^f)`.
pub fn expected_cosets(f: usize, n: usize) -> u128 {
    factorial(n) / (factorial(n - 2 * f) * factorial(f) * (1u128 << f))
}

fn params(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = &cfg.params;
    let r = cfg.r as i64;
    let mut rep = Report::new("params", Table::new(&["a", "omega"]));
    let lo = -2 * r;
    let hi = 3 * r;
    let omegas = p.omega_range(lo..=hi);
    for (a, w) in (lo..=hi).zip(&omegas) {
        rep.table.push(vec![a.to_string(), frac(w)]);
    }
    rep.set("q", frac(p.q()));
    rep.set("u", p.u().iter().map(frac).collect::<Vec<_>>());
    rep.set("alpha", p.alpha());
    rep.set("delta", frac(p.delta()));
    rep.set("rho", frac(p.rho()));
    rep.set("omega_range", [lo, hi]);
    rep.set("omega", omegas.iter().map(frac).collect::<Vec<_>>());

    let adm = p.check_admissible(-2 * r..=2 * r, 3 * r);
    rep.set("admissibility", json!({ "b_range": [-2 * r, 2 * r], "a_max": 3 * r, "pass": adm.all_pass() }));
    rep.check("admissibility", adm.all_pass(), json!(adm.first_failure().map(|(fam, i)| json!({"family": fam, "index": i}))));

    let order = 4 * cfg.r;
    let mut wt = Vec::new();
    for (name, sign) in [("plus", Sign::Plus), ("minus", Sign::Minus)] {
        let closed = p.wtilde_closed(sign, order);
        let direct = p.omega_series(sign, order);
        let bad = (0..=order).find(|&a| closed.coeff(a) != direct.coeff(a));
        rep.check(&format!("wtilde-{name}"), bad.is_none(), json!({ "first_mismatch": bad }));
        wt.push(json!({ "sign": name, "order": order, "pass": bad.is_none() }));
    }
    rep.set("wtilde", wt);

    let (lhs, rhs) = p.product_identity(8);
    let bad = (0..=8).find(|&a| lhs.coeff(a) != rhs.coeff(a));
    rep.set("product_identity", json!({ "order": 8, "pass": bad.is_none() }));
    rep.check("product-identity", bad.is_none(), json!({ "first_mismatch": bad }));
    Ok(rep)
}

fn tabs(cfg: &RunConfig, count: bool) -> Result<Report, CliError> {
    let (r, n) = (cfg.r, cfg.n);
    let header: &[&str] = if count { &["r", "n", "f", "lambda", "count"] } else { &["f", "lambda", "index", "steps"] };
    let mut rep = Report::new("tabs", Table::new(header));
    let counts = updown_counts(r, n);
    let mut shapes_out = Vec::new();
    let mut total: u128 = 0;
    for (f, lambda) in shapes(r, n) {
        let c = counts.get(&lambda).copied().unwrap_or(0);
        total += c * c;
        if count {
            rep.table.push(vec![r.to_string(), n.to_string(), f.to_string(), lambda.label(), c.to_string()]);
            shapes_out.push(json!({ "f": f, "lambda": lambda.label(), "count": c }));
        } else {
            let walks = enumerate_updown(n, &lambda)?;
            rep.check("enumeration-size", walks.len() as u128 == c, json!({ "lambda": lambda.label(), "walks": walks.len(), "branching": c }));
            for (i, w) in walks.iter().enumerate() {
                let steps: Vec<String> = w.steps().iter().map(|s| s.to_string()).collect();
                rep.table.push(vec![f.to_string(), lambda.label(), i.to_string(), steps.join(" ")]);
            }
            shapes_out.push(json!({ "f": f, "lambda": lambda.label(), "count": c, "tableaux": walks }));
        }
    }
    let want = expected_rank(r, n);
    rep.set("shapes", shapes_out);
    rep.set("sum_sq", total);
    rep.set("expected_sum_sq", want);
    rep.check("dimension-identity", total == want, json!({ "sum_sq": total, "expected": want }));

    let mut cosets = Vec::new();
    for f in 0..=n / 2 {
        let got = enumerate_cosets(f, n)?.len() as u128;
        let want = expected_cosets(f, n);
        rep.check("coset-count", got == want, json!({ "f": f, "got": got, "expected": want }));
        cosets.push(json!({ "f": f, "count": got, "expected": want }));
    }
    rep.set("cosets", cosets);
    Ok(rep)
}

fn rep(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut rep = Report::new("rep", Table::new(&["f", "lambda", "relation", "instances", "pass", "max_log2_width"]));
    let mut modules = Vec::new();
    for (f, lambda) in shapes(cfg.r, cfg.n) {
        let rr = verify_with_retry(cfg.n, &lambda, &cfg.params, cfg.precision)?;
        let summary = rr.summary();
        for s in &summary {
            rep.table.push(vec![
                f.to_string(),
                lambda.label(),
                s.relation.clone(),
                s.instances.to_string(),
                s.pass.to_string(),
                s.max_log2_width.map_or(String::new(), |w| w.to_string()),
            ]);
        }
        for c in rr.failures() {
            rep.check("relation", false, json!({ "f": f, "lambda": lambda.label(), "check": c }));
        }
        modules.push(json!({
            "f": f,
            "lambda": lambda.label(),
            "dim": rr.dim,
            "precision_bits": rr.precision_bits,
            "tolerance_bits": rr.tolerance_bits,
            "pass": rr.all_pass(),
            "max_log2_width": rr.max_log2_width(),
            "relations": summary,
        }));
    }
    rep.set("modules", modules);
    Ok(rep)
}

fn identities(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut rep = Report::new("identities", Table::new(&["lambda", "identity", "instances", "pass"]));
    let mut out = Vec::new();
    for ir in identity_suite_all(cfg.n, &cfg.params)? {
        let summary = ir.summary();
        for s in &summary {
            rep.table.push(vec![ir.lambda.clone(), s.identity.to_string(), s.instances.to_string(), s.pass.to_string()]);
        }
        for c in ir.failures() {
            rep.check("identity", false, json!({ "lambda": ir.lambda, "check": c }));
        }
        out.push(json!({ "lambda": ir.lambda, "pass": ir.all_pass(), "identities": summary }));
    }
    rep.set("modules", out);
    Ok(rep)
}

fn omega(cfg: &RunConfig, order: usize) -> Result<Report, CliError> {
    let p = &cfg.params;
    let mut rep = Report::new("omega", Table::new(&["k", "prefix", "a", "value"]));
    rep.set("order", order);
    let table = match omega_k_table(p, cfg.n.max(1), order) {
        Ok(t) => t,
        Err(e @ Error::OmegaMismatch { .. }) => {
            rep.check("recursion-vs-residue", false, json!(e.to_string()));
            return Ok(rep);
        }
        Err(e) => return Err(e.into()),
    };
    for row in &table.rows {
        for (a, v) in row.exact.iter().enumerate() {
            rep.table.push(vec![row.k.to_string(), row.prefix.to_string(), a.to_string(), v.clone()]);
        }
    }
    for row in table.rows_for(1) {
        let bad = (0..=order).find(|&a| row.values[a] != p.omega(a as i64));
        rep.check("first-row-is-omega", bad.is_none(), json!({ "first_mismatch": bad }));
    }
    let mut forms = Vec::new();
    for m in 0..cfg.n.max(1) {
        for (_, l) in shapes(cfg.r, m) {
            let prod = product_series(&l, p, order);
            let res = residue_series(&l, p, order);
            let bad = (0..=order).find(|&a| prod.coeff(a) != res.coeff(a));
            rep.check("product-vs-residue", bad.is_none(), json!({ "lambda": l.label(), "first_mismatch": bad }));
            forms.push(json!({ "lambda": l.label(), "pass": bad.is_none() }));
        }
    }
    let seed = recursion_series::<BigRational>(&[], p, order);
    let closed = p.wtilde_closed(Sign::Plus, order);
    let seed_ok = seed.coeffs() == closed.coeffs();
    rep.check("empty-prefix-is-wtilde", seed_ok, json!(null));
    rep.set("series_forms", forms);
    rep.set("empty_prefix_matches_wtilde", seed_ok);
    let rows: Vec<_> =
        table.rows.iter().map(|row| json!({ "k": row.k, "prefix": row.prefix, "omega": row.exact })).collect();
    rep.set("table", rows);
    Ok(rep)
}

fn kind_label(k: &Br2Kind) -> String {
    let sign = |plus: &bool| if *plus { '+' } else { '-' };
    match k {
        Br2Kind::OneDim { plus, i } => format!("one-dim({}, u{i})", sign(plus)),
        Br2Kind::TwoDim { i, j } => format!("two-dim(u{i}, u{j})"),
        Br2Kind::Big { indices, plus } => {
            let v: Vec<String> = indices.iter().map(|i| format!("u{i}")).collect();
            format!("big({}, {})", v.join(" "), sign(plus))
        }
    }
}

/// `d` distinct nonzero rationals with `v_i v_j ≠ 1` for all `i, j`.
pub fn random_v(rng: &mut StdRng, d: usize) -> Vec<BigRational> {
    let mut v: Vec<BigRational> = Vec::with_capacity(d);
    while v.len() < d {
        let num: i64 = rng.gen_range(-40..=40);
        let den: i64 = rng.gen_range(1..=9);
        if num == 0 {
            continue;
        }
        let x = BigRational::new(num.into(), den.into());
        if v.contains(&x) || v.iter().chain(std::iter::once(&x)).any(|y| (&x * y).is_one()) {
            continue;
        }
        v.push(x);
    }
    v
}

/// `α` for `d` parameters: `±1` for odd `d`, `q^-1` or `-q` for even `d`.
pub fn alpha_for(d: usize, plus: bool, q: &BigRational) -> BigRational {
    match (d % 2 == 1, plus) {
        (true, true) => BigRational::one(),
        (true, false) => -BigRational::one(),
        (false, true) => q.recip(),
        (false, false) => -q.clone(),
    }
}

fn br2(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = &cfg.params;
    let r = cfg.r;
    let mut rep = Report::new("br2", Table::new(&["module", "dim", "relations", "pass"]));
    let census = Br2Census::build(p)?;
    let mut mods = Vec::new();
    for m in &census.modules {
        let checks = m.verify(p);
        let ok = checks.iter().all(|c| c.pass);
        let label = kind_label(&m.kind);
        for c in checks.iter().filter(|c| !c.pass) {
            rep.check("br2-relation", false, json!({ "module": label, "check": c }));
        }
        rep.table.push(vec![label.clone(), m.dim().to_string(), checks.len().to_string(), ok.to_string()]);
        mods.push(json!({ "module": label, "dim": m.dim(), "relations": checks.len(), "pass": ok }));
    }
    let sum = census.sum_dim_sq();
    let want = 2 * r + 4 * (r * (r - 1) / 2) + r * r;
    rep.set("modules", mods);
    rep.set("sum_dim_sq", sum);
    rep.set("expected", want);
    rep.check("wedderburn-count", sum == want && want == 3 * r * r, json!({ "sum_dim_sq": sum, "expected": want }));

    let big = census.modules.last().expect("census is non-empty");
    let big_omega_ok = (-(r as i64)..=r as i64).all(|a| big.omega(a) == p.omega(a));
    rep.check("big-module-omega", big_omega_ok, json!(null));

    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut dets = Vec::new();
    for d in 1..=5 {
        let v = random_v(&mut rng, d);
        let closed = det_ad(&v)?;
        let brute = det_ad_brute(&v)?;
        let det_ok = closed == brute;
        rep.check("det-closed-form", det_ok, json!({ "v": v.iter().map(frac).collect::<Vec<_>>() }));
        let mut gamma_ok = true;
        for plus in [true, false] {
            let alpha = alpha_for(d, plus, p.q());
            let rho = (alpha * v.iter().fold(BigRational::one(), |a, x| a * x)).recip();
            let dr = &rho / p.delta();
            let g = gammas(&v, &dr);
            let zero = uniquesolution_residual(&v, &g, &dr).iter().all(Zero::is_zero);
            gamma_ok &= zero;
            rep.check("gamma-residual", zero, json!({ "d": d, "plus": plus }));
        }
        dets.push(json!({
            "d": d,
            "v": v.iter().map(frac).collect::<Vec<_>>(),
            "det": frac(&closed),
            "det_matches": det_ok,
            "gamma_residual_zero": gamma_ok,
        }));
    }
    rep.set("det", dets);
    Ok(rep)
}

fn basis(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut rep = Report::new("basis", Table::new(&["f", "lambda", "std", "r_pow_f", "cosets", "delta"]));
    let datum = CellDatum::new(cfg.r, cfg.n)?;
    for c in &datum.cells {
        rep.table.push(vec![
            c.f.to_string(),
            c.lambda.label(),
            c.std.to_string(),
            c.r_pow_f.to_string(),
            c.cosets.to_string(),
            c.delta.to_string(),
        ]);
    }
    let total = datum.total();
    let want = expected_rank(cfg.r, cfg.n);
    rep.set("cells", &datum.cells);
    rep.set("total", total);
    rep.set("expected", want);
    rep.check("basis-size", total == want, json!({ "total": total, "expected": want }));
    Ok(rep)
}

fn rank(cfg: &RunConfig, timing: bool) -> Result<Report, CliError> {
    let mut rep = Report::new("rank", Table::new(&["D", "target_dim", "certified", "precision_bits", "pivots"]));
    let mut rr = rank_certify(cfg.n, &cfg.params, cfg.precision)?;
    if !timing {
        rr.elapsed_ms = None;
    }
    rep.table.push(vec![
        rr.d.to_string(),
        rr.target_dim.to_string(),
        rr.certified.to_string(),
        rr.precision_bits.to_string(),
        rr.pivots.to_string(),
    ]);
    rep.check("full-rank", rr.certified, json!({ "status": rr.status, "pivots": rr.pivots, "D": rr.d }));
    rep.set("rank", &rr);
    Ok(rep)
}

fn gram(cfg: &RunConfig) -> Result<Report, CliError> {
    let (r, n) = (cfg.r, cfg.n);
    if n % 2 == 1 {
        return Err(CliError::Usage(format!("gram needs even n, got {n}")));
    }
    let p = &cfg.params;
    let mut rep = Report::new("gram", Table::new(&["n", "l", "value", "degenerate", "cross_check"]));
    let f = n / 2;
    let dim = (r as u128).pow(f as u32) * double_factorial_odd(f);
    let cross = dim <= GRAM_CROSS_CHECK_MAX_DIM;
    let mut values = Vec::new();
    let l_max = r as i64 - 1;
    for l in -l_max..=l_max {
        let g = gram_half(n, l, p)?;
        let want = num_traits::pow(p.omega(l), f);
        rep.check("gram-value", g.value == frac(&want), json!({ "l": l, "value": g.value }));
        let cc = if cross { Some(gram_cross_check_ball(n, l, p, cfg.precision)?) } else { None };
        if let Some(ok) = cc {
            rep.check("gram-cross-check", ok, json!({ "l": l }));
        }
        rep.table.push(vec![
            n.to_string(),
            l.to_string(),
            g.value.clone(),
            g.degenerate.to_string(),
            cc.map_or(String::new(), |b| b.to_string()),
        ]);
        values.push(json!({ "l": l, "value": g.value, "degenerate": g.degenerate, "cross_check": cc }));
    }
    rep.set("values", values);
    Ok(rep)
}

fn classify_cmd(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut rep = Report::new("classify", Table::new(&["f", "lambda", "dim"]));
    let labels = classify(cfg.n, &cfg.params)?;
    let counts = updown_counts(cfg.r, cfg.n);
    let all = shapes(cfg.r, cfg.n);
    let mut sum: u128 = 0;
    let mut out = Vec::new();
    for l in &labels {
        let (_, lambda) = all.iter().find(|(f, la)| *f == l.f && la.label() == l.lambda).expect("label comes from shapes");
        let dim = counts.get(lambda).copied().unwrap_or(0);
        sum += dim * dim;
        rep.table.push(vec![l.f.to_string(), l.lambda.clone(), dim.to_string()]);
        out.push(json!({ "f": l.f, "lambda": l.lambda, "dim": dim }));
    }
    let dropped = all.len() - labels.len();
    let want = expected_rank(cfg.r, cfg.n);
    rep.set("labels", out);
    rep.set("count", labels.len());
    rep.set("dropped", dropped);
    rep.set("sum_dim_sq", sum);
    if dropped == 0 {
        rep.check("semisimple-count", sum == want, json!({ "sum_dim_sq": sum, "expected": want }));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_counts() {
        assert_eq!(expected_rank(1, 4), 105);
        assert_eq!(expected_rank(3, 2), 27);
        assert_eq!(expected_cosets(0, 5), 1);
        assert_eq!(expected_cosets(1, 4), 6);
        assert_eq!(expected_cosets(4, 8), 105);
    }

    #[test]
    fn random_v_avoids_reciprocal_pairs() {
        let mut rng = StdRng::seed_from_u64(7);
        for d in 1..=5 {
            let v = random_v(&mut rng, d);
            assert_eq!(v.len(), d);
            for x in &v {
                assert!(!x.is_zero());
                assert!(v.iter().all(|y| !(x * y).is_one()));
            }
        }
    }

    #[test]
    fn kind_labels() {
        assert_eq!(kind_label(&Br2Kind::OneDim { plus: false, i: 2 }), "one-dim(-, u2)");
        assert_eq!(kind_label(&Br2Kind::Big { indices: vec![1, 3], plus: true }), "big(u1 u3, +)");
    }
}
