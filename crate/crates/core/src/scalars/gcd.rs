//! Multivariate polynomial gcd over Q by recursive primitive pseudo-remainder
//! sequences. Inputs must have non-negative exponents.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;

/// Scale so the lex-leading coefficient is 1.
fn monic(p: &LaurentPoly) -> LaurentPoly {
    match p.leading() {
        Some((_, c)) if !c.is_one() => p.scale(&c.recip()),
        _ => p.clone(),
    }
}

/// Highest-index variable occurring in either polynomial.
fn main_var(a: &LaurentPoly, b: &LaurentPoly) -> Option<usize> {
    let n = a.vars().len();
    (0..n).rev().find(|&i| a.terms().chain(b.terms()).any(|(e, _)| e[i] != 0))
}

/// Coefficients in `v`, lowest degree first.
fn split(p: &LaurentPoly, v: usize) -> Vec<LaurentPoly> {
    let d = p.max_exponent(v).unwrap_or(0).max(0) as usize;
    (0..=d).map(|k| p.coeff_of(v, k as i32)).collect()
}

fn join(cs: &[LaurentPoly], v: usize, vars: &Arc<Vec<String>>) -> LaurentPoly {
    let mut acc = LaurentPoly::zero_in(vars.clone());
    for (k, c) in cs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut sh = vec![0; vars.len()];
        sh[v] = k as i32;
        acc = &acc + &c.with_vars(vars).shift(&sh);
    }
    acc
}

fn trim(cs: &mut Vec<LaurentPoly>) {
    while cs.len() > 1 && cs.last().is_some_and(|c| c.is_zero()) {
        cs.pop();
    }
}

fn content(cs: &[LaurentPoly]) -> LaurentPoly {
    let mut g = LaurentPoly::zero_in(cs[0].vars().clone());
    for c in cs {
        if c.is_zero() {
            continue;
        }
        g = poly_gcd(&g, c);
        if g.constant_value().is_some() {
            break;
        }
    }
    g
}

fn divide_all(cs: &[LaurentPoly], d: &LaurentPoly) -> Vec<LaurentPoly> {
    cs.iter()
        .map(|c| c.exact_div(d).expect("content divides every coefficient"))
        .collect()
}

fn primitive(cs: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let g = content(cs);
    let mut out = divide_all(cs, &g);
    let lc = out.last().unwrap().clone();
    if let Some((_, c)) = lc.leading() {
        let inv = c.recip();
        out = out.iter().map(|p| p.scale(&inv)).collect();
    }
    out
}

/// Pseudo-remainder of `a` by `b` as coefficient vectors in the main variable.
fn prem(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let n = b.len() - 1;
    let lb = b[n].clone();
    let mut r: Vec<LaurentPoly> = a.to_vec();
    trim(&mut r);
    while r.len() > n && !(r.len() == 1 && r[0].is_zero()) {
        let m = r.len() - 1;
        let lr = r[m].clone();
        let shift = m - n;
        let mut next: Vec<LaurentPoly> = r.iter().map(|c| c * &lb).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = &next[i + shift] - &(bc * &lr);
        }
        debug_assert!(next[m].is_zero());
        next.pop();
        if next.is_empty() {
            next.push(LaurentPoly::zero_in(lb.vars().clone()));
        }
        r = next;
        trim(&mut r);
    }
    r
}

/// Greatest common divisor, normalized to a monic lex-leading term.
///
/// `gcd(0, 0) = 0`. Both arguments must have non-negative exponents.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let (a, b) = LaurentPoly::unify(a, b);
    if a.is_zero() {
        return monic(&b);
    }
    if b.is_zero() {
        return monic(&a);
    }
    let vars = a.vars().clone();
    let Some(v) = main_var(&a, &b) else {
        return LaurentPoly::one().with_vars(&vars);
    };
    let ca = split(&a, v);
    let cb = split(&b, v);
    let cont_a = content(&ca);
    let cont_b = content(&cb);
    let g_cont = poly_gcd(&cont_a, &cont_b);

    let (mut p, mut q) = (primitive(&ca), primitive(&cb));
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        if q.len() == 1 {
            if q[0].is_zero() {
                break;
            }
            // q is a nonzero element of the coefficient ring: primitive part is 1.
            p = vec![LaurentPoly::one().with_vars(&vars)];
            break;
        }
        let r = prem(&p, &q);
        p = q;
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
        q = primitive(&r);
    }
    let g = join(&p, v, &vars);
    monic(&(&g * &g_cont))
}

/// Lowest common multiple of the coefficient denominators, as a rational.
pub(crate) fn denominator_lcm(p: &LaurentPoly) -> BigRational {
    let (l, _) = p.content_parts();
    BigRational::from_integer(l)
}

/// gcd of coefficient numerators after clearing denominators.
pub(crate) fn integer_content(p: &LaurentPoly) -> BigRational {
    let (_, g) = p.content_parts();
    if g.is_zero() {
        BigRational::one()
    } else {
        BigRational::from_integer(g)
    }
}
