use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::data::{ResidueTable, Slot};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::params::GroundParams;
use crate::scalars::{BallReal, Scalar};
use crate::tableaux::{shapes, RPartition, UpDownTableau};

/// A numeric type that exact rationals (and their square roots) map into.
pub trait Embed: Scalar {
    fn embed(q: &BigRational, prec: u32) -> Self;

    /// Square root of a non-negative rational.
    fn sqrt_of(q: &BigRational, prec: u32) -> Result<Self>;
}

impl Embed for BallReal {
    fn embed(q: &BigRational, prec: u32) -> Self {
        BallReal::from_rational(q, prec)
    }

    fn sqrt_of(q: &BigRational, prec: u32) -> Result<Self> {
        BallReal::from_rational(q, prec).sqrt()
    }
}

impl Embed for f64 {
    fn embed(q: &BigRational, _prec: u32) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn sqrt_of(q: &BigRational, _prec: u32) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::NegativeRadicand);
        }
        Ok(q.to_f64().unwrap_or(f64::NAN).sqrt())
    }
}

/// The seminormal representation `Δ(f, λ)`: generator matrices in the basis
/// of up-down tableaux. Column `s` of a matrix is the image of `v_s`.
#[derive(Clone, Debug)]
pub struct SeminormalModule<S: Scalar> {
    table: ResidueTable<BigRational>,
    prec: u32,
    t: Vec<Matrix<S>>,
    e: Vec<Matrix<S>>,
    x: Vec<Matrix<S>>,
    x_inv: Vec<Matrix<S>>,
    delta: S,
    rho: S,
}

impl<S: Embed> SeminormalModule<S> {
    /// Assembles the matrices from exact data, taking positive square roots.
    pub fn from_table(table: ResidueTable<BigRational>, p: &GroundParams<BigRational>, prec: u32) -> Result<Self> {
        let n = table.n;
        let dim = table.dim();
        let em = |q: &BigRational| S::embed(q, prec);
        let delta_q = p.delta().clone();
        let mut t = Vec::with_capacity(n.saturating_sub(1));
        let mut e = Vec::with_capacity(n.saturating_sub(1));
        for k in 1..n {
            let mut roots: Vec<Option<S>> = vec![None; dim];
            #[allow(clippy::needless_range_loop)]
            for s in 0..dim {
                match table.slot(k, s) {
                    Slot::Turn { e: ess, .. } => {
                        if !ess.is_positive() {
                            return Err(Error::BeRealViolated(format!(
                                "E_ss({k}) = {} is not positive for s = {}",
                                ess,
                                table.basis[s]
                            )));
                        }
                        roots[s] = Some(S::sqrt_of(ess, prec)?);
                    }
                    Slot::Pass { bsq, partner, .. } => {
                        if bsq.is_negative() {
                            return Err(Error::BeRealViolated(format!("b_s({k})^2 = {bsq} is negative for s = {}", table.basis[s])));
                        }
                        if partner.is_none() && !bsq.is_zero() {
                            return Err(Error::BeRealViolated(format!("b_s({k})^2 = {bsq} should vanish for s = {}", table.basis[s])));
                        }
                    }
                }
            }
            let mut tm = Matrix::<S>::zeros(dim, dim);
            let mut emx = Matrix::<S>::zeros(dim, dim);
            for s in 0..dim {
                match table.slot(k, s) {
                    Slot::Turn { e: ess, class } => {
                        let cs = table.content(s, k);
                        for &u in class {
                            let cu = table.content(u, k);
                            let denom = cs * cu - BigRational::from_integer(1.into());
                            if u == s {
                                emx.set(s, s, em(ess));
                                let tss = &delta_q * (ess - BigRational::from_integer(1.into())) / &denom;
                                tm.set(s, s, em(&tss));
                            } else {
                                let ru = roots[u].clone().expect("class members are turns");
                                let esu = roots[s].clone().expect("turn") * ru;
                                tm.set(u, s, em(&(&delta_q / &denom)) * esu.clone());
                                emx.set(u, s, esu);
                            }
                        }
                    }
                    Slot::Pass { a, bsq, partner } => {
                        tm.set(s, s, em(a));
                        if let Some(u) = partner {
                            tm.set(*u, s, S::sqrt_of(bsq, prec)?);
                        }
                    }
                }
            }
            t.push(tm);
            e.push(emx);
        }
        let x = (1..=n).map(|i| Matrix::diagonal((0..dim).map(|s| em(table.content(s, i))).collect())).collect();
        let x_inv = (1..=n).map(|i| Matrix::diagonal((0..dim).map(|s| em(&table.content(s, i).recip())).collect())).collect();
        Ok(SeminormalModule { table, prec, t, e, x, x_inv, delta: em(p.delta()), rho: em(p.rho()) })
    }

    pub fn build(n: usize, lambda: &RPartition, p: &GroundParams<BigRational>, prec: u32) -> Result<Self> {
        Self::from_table(ResidueTable::build(n, lambda, p)?, p, prec)
    }

    pub fn table(&self) -> &ResidueTable<BigRational> {
        &self.table
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn f(&self) -> usize {
        self.table.f
    }

    pub fn lambda(&self) -> &RPartition {
        &self.table.lambda
    }

    pub fn n(&self) -> usize {
        self.table.n
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn basis(&self) -> &[UpDownTableau] {
        &self.table.basis
    }

    pub fn delta(&self) -> &S {
        &self.delta
    }

    pub fn rho(&self) -> &S {
        &self.rho
    }

    /// `T_k`, `1 ≤ k < n`.
    pub fn t(&self, k: usize) -> &Matrix<S> {
        &self.t[k - 1]
    }

    /// `T_k^{-1} = T_k - δ + δ E_k`.
    pub fn t_inv(&self, k: usize) -> Matrix<S> {
        let id = Matrix::identity(self.dim());
        self.t(k).sub(&id.scale(&self.delta)).add(&self.e(k).scale(&self.delta))
    }

    pub fn e(&self, k: usize) -> &Matrix<S> {
        &self.e[k - 1]
    }

    /// `X_i`, `1 ≤ i ≤ n`.
    pub fn x(&self, i: usize) -> &Matrix<S> {
        &self.x[i - 1]
    }

    pub fn x_inv(&self, i: usize) -> &Matrix<S> {
        &self.x_inv[i - 1]
    }

    /// `X_i^a` for any integer `a`.
    pub fn x_pow(&self, i: usize, a: i64) -> Matrix<S> {
        if a >= 0 {
            self.x(i).pow(a as u32)
        } else {
            self.x_inv(i).pow((-a) as u32)
        }
    }
}

/// Ball-valued module at a given precision.
pub fn build_module(n: usize, lambda: &RPartition, p: &GroundParams<BigRational>, prec: u32) -> Result<SeminormalModule<BallReal>> {
    SeminormalModule::build(n, lambda, p, prec)
}

/// Every `Δ(f, λ)` for `B_{r,n}`, in the order of [`shapes`].
pub fn build_all<S: Embed>(n: usize, p: &GroundParams<BigRational>, prec: u32) -> Result<Vec<SeminormalModule<S>>> {
    shapes(p.r(), n).par_iter().map(|(_, l)| SeminormalModule::build(n, l, p, prec)).collect()
}
