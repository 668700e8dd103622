use num_rational::BigRational;
use rayon::prelude::*;

use super::words::{GenWord, Token};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::params::GroundParams;
use crate::seminormal::{build_all, Embed, SeminormalModule};

/// `⊕_{(f,λ)} Δ(f, λ)`: every seminormal module of `B_{r,n}`, in a fixed order.
#[derive(Clone, Debug)]
pub struct FaithfulRep<S: Embed> {
    pub n: usize,
    pub r: usize,
    pub blocks: Vec<SeminormalModule<S>>,
    u: Vec<S>,
}

impl<S: Embed> FaithfulRep<S> {
    pub fn build(n: usize, p: &GroundParams<BigRational>, prec: u32) -> Result<Self> {
        let blocks = build_all::<S>(n, p, prec)?;
        let u = p.u().iter().map(|x| S::embed(x, prec)).collect();
        Ok(FaithfulRep { n, r: p.r(), blocks, u })
    }

    /// `D = Σ dim²`.
    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim() * b.dim()).sum()
    }

    /// The image of `w` in every block.
    pub fn eval_blocks(&self, w: &GenWord) -> Result<Vec<Matrix<S>>> {
        w.validate(self.n, self.r)?;
        Ok(self.blocks.iter().map(|m| eval_in(m, &self.u, w)).collect())
    }

    /// The image of `w`, blocks flattened row by row and concatenated.
    pub fn eval_word(&self, w: &GenWord) -> Result<Vec<S>> {
        Ok(self.eval_blocks(w)?.into_iter().flat_map(|m| m.into_entries()).collect())
    }

    /// [`FaithfulRep::eval_word`] over many words, in parallel.
    pub fn eval_words(&self, ws: &[GenWord]) -> Result<Vec<Vec<S>>> {
        ws.par_iter().map(|w| self.eval_word(w)).collect()
    }
}

fn token_matrix<S: Embed>(m: &SeminormalModule<S>, u: &[S], t: &Token) -> Matrix<S> {
    match t {
        Token::T(i) => m.t(*i).clone(),
        Token::TInv(i) => m.t_inv(*i),
        Token::E(i) => m.e(*i).clone(),
        Token::X(j, a) => m.x_pow(*j, *a),
        Token::XMinusU(i, s) => m.x(*i).sub(&Matrix::identity(m.dim()).scale(&u[s - 1])),
        Token::Sum(ws) => {
            ws.iter().fold(Matrix::zeros(m.dim(), m.dim()), |acc, w| acc.add(&eval_in(m, u, w)))
        }
    }
}

pub(crate) fn eval_in<S: Embed>(m: &SeminormalModule<S>, u: &[S], w: &GenWord) -> Matrix<S> {
    let mut acc = Matrix::identity(m.dim());
    for t in w.tokens() {
        acc = acc.mul(&token_matrix(m, u, t));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::generic_specialization;
    use crate::scalars::BallReal;

    #[test]
    fn e1_on_r1_n2() {
        let p = generic_specialization(1, 2, 0).unwrap();
        let rep = FaithfulRep::<BallReal>::build(2, &p, 128).unwrap();
        assert_eq!(rep.total_dim(), 3);
        let blocks = rep.eval_blocks(&GenWord(vec![Token::E(1)])).unwrap();
        for (m, b) in rep.blocks.iter().zip(&blocks) {
            if m.f() == 1 {
                assert!(b.get(0, 0).contains(&p.omega(0)));
            } else {
                assert!(num_traits::Zero::is_zero(b.get(0, 0)));
            }
        }
        let xx = rep.eval_blocks(&GenWord(vec![Token::X(1, 1), Token::X(2, 1)])).unwrap();
        let empty = rep.blocks.iter().position(|m| m.f() == 1).unwrap();
        assert!(xx[empty].get(0, 0).contains(&BigRational::from_integer(1.into())));
        assert!(rep.eval_word(&GenWord(vec![Token::T(2)])).is_err());
    }
}
