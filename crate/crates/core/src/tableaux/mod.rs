//! Multipartitions, up-down tableaux, standard tableaux, coset
//! representatives and `κ` vectors.

mod cosets;
mod partition;
pub mod perm;
mod standard;
mod updown;

pub use cosets::{coset_count, enumerate_cosets, enumerate_kappa, s_block, CosetRep};
pub use partition::{Node, RPartition};
pub use standard::{row_stabilizer, std_tableaux, StdTableau};
pub use updown::{enumerate_updown, shapes, updown_counts, Step, UpDownTableau};

/// `r^n (2n-1)!!`.
pub fn brauer_rank(r: usize, n: usize) -> u128 {
    let mut d: u128 = 1;
    let mut k = 1u128;
    while k < 2 * n as u128 {
        d *= k;
        k += 2;
    }
    (r as u128).pow(n as u32) * d
}
