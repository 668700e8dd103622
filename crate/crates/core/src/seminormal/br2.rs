use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::verify::RelationCheck;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::params::GroundParams;
use crate::scalars::Field;

/// Which irreducible `B_{r,2}`-module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Br2Kind {
    /// `T = ε`, `ε = q` (`plus`) or `-q^-1`, on `u_i`.
    OneDim { plus: bool, i: usize },
    /// The `E = 0` module on `(u_i, u_j)`, `i ≠ j`.
    TwoDim { i: usize, j: usize },
    /// `E ≠ 0` module on `v = (u_{i_1}, …, u_{i_d})`; `plus` selects
    /// `α = 1` (odd `d`) or `α = q^-1` (even `d`).
    Big { indices: Vec<usize>, plus: bool },
}

/// An explicit `B_{r,2}`-module over the rationals.
#[derive(Clone, Debug)]
pub struct Br2Module {
    pub kind: Br2Kind,
    pub t: Matrix<BigRational>,
    pub e: Matrix<BigRational>,
    pub x1: Matrix<BigRational>,
    pub x2: Matrix<BigRational>,
    /// `ρ` the module is built for.
    pub rho: BigRational,
    pub v: Vec<BigRational>,
    pub gamma: Vec<BigRational>,
}

fn one() -> BigRational {
    BigRational::one()
}

fn diag_inv(m: &Matrix<BigRational>) -> Matrix<BigRational> {
    Matrix::diagonal((0..m.rows()).map(|i| m.get(i, i).recip()).collect())
}

/// `γ_i` for the `E ≠ 0` module on `v`.
pub fn gammas(v: &[BigRational], dinv_rho: &BigRational) -> Vec<BigRational> {
    let d = v.len();
    (0..d)
        .map(|i| {
            let vi = &v[i];
            let gd = if d % 2 == 1 { one() } else { -vi.clone() };
            let others = (0..d).filter(|&j| j != i).fold(one(), |acc, j| acc * &v[j]);
            let mut g = gd + dinv_rho * (vi * vi - one()) * others;
            for j in (0..d).filter(|&j| j != i) {
                g = g * (vi * &v[j] - one()) / (vi - &v[j]);
            }
            g
        })
        .collect()
}

/// Residuals of `Σ_k γ_k/(v_j v_k - 1) - δ^-1ρ - 1/(v_j² - 1)`.
pub fn uniquesolution_residual(v: &[BigRational], gamma: &[BigRational], dinv_rho: &BigRational) -> Vec<BigRational> {
    v.iter()
        .map(|vj| {
            let s = v.iter().zip(gamma).fold(BigRational::zero(), |acc, (vk, g)| acc + g / (vj * vk - one()));
            s - dinv_rho - one() / (vj * vj - one())
        })
        .collect()
}

/// The matrix `A_d` with entries `1/(v_i v_j - 1)`.
pub fn a_matrix(v: &[BigRational]) -> Result<Matrix<BigRational>> {
    for a in v {
        for b in v {
            if (a * b).is_one() {
                return Err(Error::Singular(format!("v_i v_j = 1 for {a}, {b}")));
            }
        }
    }
    Ok(Matrix::from_fn(v.len(), v.len(), |i, j| (&v[i] * &v[j] - one()).recip()))
}

/// `det A_d = Π_{k<j} (v_k - v_j)² / Π_{k,j} (v_k v_j - 1)`.
pub fn det_ad(v: &[BigRational]) -> Result<BigRational> {
    let mut num = one();
    let mut den = one();
    for (k, a) in v.iter().enumerate() {
        for (j, b) in v.iter().enumerate() {
            let p = a * b - one();
            if p.is_zero() {
                return Err(Error::Singular(format!("v_i v_j = 1 for {a}, {b}")));
            }
            den *= p;
            if k < j {
                num = num * (a - b) * (a - b);
            }
        }
    }
    Ok(num / den)
}

/// Brute-force determinant of [`a_matrix`].
pub fn det_ad_brute(v: &[BigRational]) -> Result<BigRational> {
    Ok(a_matrix(v)?.det())
}

impl Br2Module {
    pub fn build(kind: Br2Kind, p: &GroundParams<BigRational>) -> Result<Self> {
        let r = p.r();
        let check = |i: usize| {
            if i == 0 || i > r {
                Err(Error::OutOfRange(format!("u index {i} outside 1..={r}")))
            } else {
                Ok(())
            }
        };
        let q = p.q().clone();
        let delta = p.delta().clone();
        match &kind {
            Br2Kind::OneDim { plus, i } => {
                check(*i)?;
                let eps = if *plus { q } else { -q.recip() };
                let ui = p.u_at(*i).clone();
                let m = |x: BigRational| Matrix::from_rows(vec![vec![x]]);
                Ok(Br2Module {
                    t: m(eps.clone()),
                    e: m(BigRational::zero()),
                    x1: m(ui.clone()),
                    x2: m(&eps * &eps * &ui),
                    rho: p.rho().clone(),
                    v: vec![ui],
                    gamma: vec![],
                    kind,
                })
            }
            Br2Kind::TwoDim { i, j } => {
                check(*i)?;
                check(*j)?;
                if i == j {
                    return Err(Error::RepeatedValue(format!("u_{i} used twice")));
                }
                let (ui, uj) = (p.u_at(*i).clone(), p.u_at(*j).clone());
                let qi = q.recip();
                let c = &uj / (&uj - &ui);
                let t = Matrix::from_rows(vec![
                    vec![&c * &delta, &c * (&q - &ui * &qi / &uj)],
                    vec![&c * (&qi - &q * &ui / &uj), -(&c * &delta * &ui / &uj)],
                ]);
                Ok(Br2Module {
                    t,
                    e: Matrix::zeros(2, 2),
                    x1: Matrix::diagonal(vec![ui.clone(), uj.clone()]),
                    x2: Matrix::diagonal(vec![uj.clone(), ui.clone()]),
                    rho: p.rho().clone(),
                    v: vec![ui, uj],
                    gamma: vec![],
                    kind,
                })
            }
            Br2Kind::Big { indices, plus } => {
                for &i in indices {
                    check(i)?;
                }
                let d = indices.len();
                if d == 0 {
                    return Err(Error::OutOfRange("empty v-subset".into()));
                }
                for (a, &i) in indices.iter().enumerate() {
                    if indices[..a].contains(&i) {
                        return Err(Error::RepeatedValue(format!("u_{i} used twice")));
                    }
                }
                let v: Vec<BigRational> = indices.iter().map(|&i| p.u_at(i).clone()).collect();
                let alpha = match (d % 2 == 1, plus) {
                    (true, true) => one(),
                    (true, false) => -one(),
                    (false, true) => q.recip(),
                    (false, false) => -q.clone(),
                };
                let rho = (alpha * v.iter().fold(one(), |acc, x| acc * x)).recip();
                let dr = &rho / &delta;
                let gamma = gammas(&v, &dr);
                let e = Matrix::from_fn(d, d, |_, i| gamma[i].clone());
                let t = Matrix::from_fn(d, d, |j, i| {
                    let kron = if i == j { one() } else { BigRational::zero() };
                    &delta * (&gamma[i] - kron) / (&v[i] * &v[j] - one())
                });
                Ok(Br2Module {
                    t,
                    e,
                    x1: Matrix::diagonal(v.clone()),
                    x2: Matrix::diagonal(v.iter().map(|x| x.recip()).collect()),
                    rho,
                    v,
                    gamma,
                    kind,
                })
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    /// `ω_a` on this module: `Σ v_j^a γ_j` when `E ≠ 0`, else zero.
    pub fn omega(&self, a: i64) -> BigRational {
        self.v.iter().zip(&self.gamma).fold(BigRational::zero(), |acc, (v, g)| acc + v.powi(a) * g)
    }

    /// Exact check of every relation of `B_{r,2}`, with `δ` and `u` from `p`
    /// and `ρ`, `ω_a` belonging to the module.
    pub fn verify(&self, p: &GroundParams<BigRational>) -> Vec<RelationCheck> {
        let dim = self.dim();
        let id = Matrix::identity(dim);
        let delta = p.delta().clone();
        let rho = self.rho.clone();
        let (t, e, x1, x2) = (&self.t, &self.e, &self.x1, &self.x2);
        let (x1i, x2i) = (diag_inv(x1), diag_inv(x2));
        let mut out = Vec::new();
        let mut push = |relation: &str, instance: String, m: Matrix<BigRational>| {
            out.push(RelationCheck { relation: relation.into(), instance, pass: m.is_zero_exact(), exact: true, log2_width: None });
        };
        push("a", "X_1".into(), x1.mul(&x1i).sub(&id));
        push("a", "X_2".into(), x2.mul(&x2i).sub(&id));
        push("b", "k=1".into(), t.mul(t).sub(&t.scale(&delta)).add(&e.scale(&(&delta * &rho))).sub(&id));
        push("d", "k=1".into(), e.mul(e).sub(&e.scale(&self.omega(0))));
        push("e", "1,2".into(), x1.mul(x2).sub(&x2.mul(x1)));
        push("f1", "i=1".into(), t.mul(x1).sub(&x2.mul(t)).sub(&x2.mul(&e.sub(&id)).scale(&delta)));
        push("f2", "i=1".into(), x1.mul(t).sub(&t.mul(x2)).sub(&e.sub(&id).mul(x2).scale(&delta)));
        let m = (p.r() as i64).max(3);
        for a in -m..=m {
            let xa = if a >= 0 { x1.pow(a as u32) } else { x1i.pow((-a) as u32) };
            push("g", format!("a={a}"), e.mul(&xa).mul(e).sub(&e.scale(&self.omega(a))));
        }
        push("h1", "E T".into(), e.mul(t).sub(&e.scale(&rho)));
        push("h1", "T E".into(), t.mul(e).sub(&e.scale(&rho)));
        let x12 = x1.mul(x2);
        push("j", "E X_1 X_2".into(), e.mul(&x12).sub(e));
        push("j", "X_1 X_2 E".into(), x12.mul(e).sub(e));
        let cyc = p.u().iter().fold(id.clone(), |acc, u| acc.mul(&x1.sub(&id.scale(u))));
        push("k", "X_1".into(), cyc);
        push("x2", "X_2 = T X_1 T".into(), t.mul(x1).mul(t).sub(x2));
        out
    }
}

/// The irreducible `B_{r,2}`-modules at generic parameters.
#[derive(Clone, Debug)]
pub struct Br2Census {
    pub modules: Vec<Br2Module>,
}

impl Br2Census {
    /// `2r` one-dimensional, `C(r,2)` two-dimensional, and the `E ≠ 0` module on all of `u`.
    pub fn build(p: &GroundParams<BigRational>) -> Result<Self> {
        let r = p.r();
        let mut kinds = Vec::new();
        for i in 1..=r {
            kinds.push(Br2Kind::OneDim { plus: true, i });
            kinds.push(Br2Kind::OneDim { plus: false, i });
        }
        for i in 1..=r {
            for j in i + 1..=r {
                kinds.push(Br2Kind::TwoDim { i, j });
            }
        }
        kinds.push(Br2Kind::Big { indices: (1..=r).collect(), plus: p.alpha() > 0 });
        let modules = kinds.into_iter().map(|k| Br2Module::build(k, p)).collect::<Result<_>>()?;
        Ok(Br2Census { modules })
    }

    pub fn sum_dim_sq(&self) -> usize {
        self.modules.iter().map(|m| m.dim() * m.dim()).sum()
    }
}
