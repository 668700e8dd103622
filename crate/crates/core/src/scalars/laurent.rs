use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Multivariate Laurent polynomial with rational coefficients.
///
/// Exponent vectors may be negative. Terms are kept in a `BTreeMap`, so the
/// lexicographically largest exponent vector (first variable most
/// significant) is the leading term.
#[derive(Clone)]
pub struct LaurentPoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Vec<i32>, BigRational>,
}

fn empty_vars() -> Arc<Vec<String>> {
    Arc::new(Vec::new())
}

impl LaurentPoly {
    pub fn zero_in(vars: Arc<Vec<String>>) -> Self {
        LaurentPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        LaurentPoly { vars: empty_vars(), terms }
    }

    /// The single variable `name`.
    pub fn var(name: &str) -> Self {
        Self::monomial(Arc::new(vec![name.to_string()]), vec![1], BigRational::one())
    }

    pub fn monomial(vars: Arc<Vec<String>>, exps: Vec<i32>, c: BigRational) -> Self {
        assert_eq!(vars.len(), exps.len(), "exponent arity mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { vars, terms }
    }

    /// Build from explicit terms; zero coefficients are dropped and repeated
    /// exponents are summed.
    pub fn from_terms(vars: Arc<Vec<String>>, it: impl IntoIterator<Item = (Vec<i32>, BigRational)>) -> Self {
        let mut p = LaurentPoly::zero_in(vars);
        for (e, c) in it {
            assert_eq!(e.len(), p.vars.len(), "exponent arity mismatch");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<i32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial has no non-constant terms.
    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Re-express over a superset of variables.
    pub fn with_vars(&self, vars: &Arc<Vec<String>>) -> Self {
        if Arc::ptr_eq(&self.vars, vars) || *self.vars == **vars {
            return LaurentPoly { vars: vars.clone(), terms: self.terms.clone() };
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("variable missing from target list"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0; vars.len()];
                for (i, &x) in e.iter().enumerate() {
                    ne[map[i]] = x;
                }
                (ne, c.clone())
            })
            .collect();
        LaurentPoly { vars: vars.clone(), terms }
    }

    /// Bring two polynomials onto a common variable list: the left list is
    /// kept and missing variables of the right are appended.
    pub fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if Arc::ptr_eq(&a.vars, &b.vars) || *a.vars == *b.vars {
            return (a.clone(), LaurentPoly { vars: a.vars.clone(), terms: b.terms.clone() });
        }
        let vars = merged_vars(&a.vars, &b.vars);
        (a.with_vars(&vars), b.with_vars(&vars))
    }

    /// Drop variables that no longer occur.
    pub fn compact(&self) -> Self {
        let n = self.vars.len();
        let used: Vec<usize> = (0..n).filter(|&i| self.terms.keys().any(|e| e[i] != 0)).collect();
        if used.len() == n {
            return self.clone();
        }
        let vars = Arc::new(used.iter().map(|&i| self.vars[i].clone()).collect::<Vec<_>>());
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (used.iter().map(|&i| e[i]).collect(), c.clone()))
            .collect();
        LaurentPoly { vars, terms }
    }

    pub fn leading(&self) -> Option<(&Vec<i32>, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Per-variable minimum exponent (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut m: Option<Vec<i32>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| (*a).min(*b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.vars.len()])
    }

    pub fn max_exponent(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn min_exponent(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[var]).min()
    }

    /// Multiply by the monomial with exponent vector `shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero_in(self.vars.clone());
        }
        let terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    /// Negate the exponent of one variable (substitute `x -> 1/x`).
    pub fn invert_var(&self, var: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e[var] = -e[var];
                (e, c.clone())
            })
            .collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    /// Coefficient of `var^d`, as a polynomial in the same variables (with
    /// that variable's exponent set to zero).
    pub fn coeff_of(&self, var: usize, d: i32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] == d)
            .map(|(e, c)| {
                let mut e = e.clone();
                e[var] = 0;
                (e, c.clone())
            })
            .collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    /// lcm of coefficient denominators and gcd of numerators.
    pub fn content_parts(&self) -> (BigInt, BigInt) {
        let mut l = BigInt::one();
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
            g = g.gcd(c.numer());
        }
        (l, g)
    }

    /// Evaluate every variable at a rational point; `None` on 0^negative.
    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k == 0 {
                    continue;
                }
                if x.is_zero() && k < 0 {
                    return None;
                }
                let p = num_traits::pow(x.clone(), k.unsigned_abs() as usize);
                t = if k > 0 { t * p } else { t / p };
            }
            acc += t;
        }
        Some(acc)
    }

    /// Exact division of polynomials with non-negative exponents, `None` if
    /// `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (a, d) = LaurentPoly::unify(self, d);
        if d.is_zero() {
            return None;
        }
        let (de, dc) = d.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut rem = a;
        let mut quo = LaurentPoly::zero_in(rem.vars.clone());
        while let Some((re, rc)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Vec<i32> = re.iter().zip(&de).map(|(x, y)| x - y).collect();
            if qe.iter().any(|&x| x < 0) {
                return None;
            }
            let qc = rc / &dc;
            let step = LaurentPoly::monomial(rem.vars.clone(), qe.clone(), qc.clone());
            rem = &rem - &(&step * &d);
            quo.add_term(qe, qc);
        }
        Some(quo)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = LaurentPoly::constant(BigRational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

pub(crate) fn merged_vars(a: &Arc<Vec<String>>, b: &Arc<Vec<String>>) -> Arc<Vec<String>> {
    let mut v = (**a).clone();
    for name in b.iter() {
        if !v.contains(name) {
            v.push(name.clone());
        }
    }
    Arc::new(v)
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = LaurentPoly::unify(self, other);
        a.terms == b.terms
    }
}

impl Eq for LaurentPoly {}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (mut a, b) = LaurentPoly::unify(self, rhs);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (mut a, b) = LaurentPoly::unify(self, rhs);
        for (e, c) in b.terms {
            a.add_term(e, -c);
        }
        a
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    // exponents add under multiplication
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (a, b) = LaurentPoly::unify(self, rhs);
        let mut out = LaurentPoly::zero_in(a.vars.clone());
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero_in(empty_vars())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::constant(BigRational::one())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], k) })
                .collect();
            let coeff = if abs.is_integer() { abs.numer().to_string() } else { format!("{}/{}", abs.numer(), abs.denom()) };
            if mono.is_empty() {
                write!(f, "{coeff}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}
