//! Cellular basis machinery: index sets, words in the generators, their
//! images in the direct sum of seminormal modules, certified rank, Gram
//! values on the top cell and the label census.

mod datum;
mod eval;
mod gram;
mod rank;
mod words;

pub use datum::{index_set, CellDatum, CellInfo};
pub use eval::FaithfulRep;
pub use gram::{
    classify, classify_with, gram_cross_check, gram_cross_check_ball, gram_half, gram_half_with, x_alternate, GramValue, Label,
};
pub use rank::{all_cell_words, certified_lu, rank_certify, LuOutcome, RankReport};
pub use words::{cell_word, e_f, m_word, x_kappa, CellIndex, GenWord, Token};
