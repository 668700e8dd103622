//! Exact and certified-numeric workbench for cyclotomic Birman-Murakami-Wenzl
//! algebras `B_{r,n}` with `r` odd.
//!
//! The crate is layered bottom-up:
//!
//! * [`scalars`]: rationals, Laurent polynomials, rational functions,
//!   truncated series and ball reals.
//! * [`params`]: admissible ground data `(q, u, rho, omega)`.
//! * [`tableaux`]: multipartitions, up-down tableaux, cosets and kappa vectors.
//! * [`seminormal`]: seminormal matrices and every relation/identity check.
//! * [`cellular`]: cellular basis words, rank certification, Gram values.
//!
//! All algebra is generic over [`scalars::Field`]; the aliases below fix the
//! common instantiations.

pub mod cellular;
pub mod error;
pub mod matrix;
pub mod params;
pub mod scalars;
pub mod seminormal;
pub mod tableaux;

pub use error::{Error, Result};


/// Ground data over the rationals.
pub type ExactParams = params::GroundParams<num_rational::BigRational>;
/// Ground data over `Q(q, u_1, ..., u_r)`.
pub type SymbolicParams = params::GroundParams<scalars::RatFunc>;
/// Seminormal modules with certified ball entries.
pub type BallModule = seminormal::SeminormalModule<scalars::BallReal>;
/// Seminormal modules in plain double precision.
pub type F64Module = seminormal::SeminormalModule<f64>;
pub type ExactMatrix = matrix::Matrix<num_rational::BigRational>;
