//! Seminormal representations: the rational functions `W_k(y, s)`, the
//! coefficients `E_ss(k)`, `a_s(k)`, `b_s(k)²`, the assembled generator
//! matrices, and exact or certified checks of the defining relations.

mod br2;
mod data;
mod identities;
mod module;
mod omega;
mod verify;

pub use br2::{a_matrix, det_ad, det_ad_brute, gammas, uniquesolution_residual, Br2Census, Br2Kind, Br2Module};
pub use data::{
    ab_coeffs, e_diag, e_diag_by_limit, e_diag_closed, node_residues, w_rational, w_rational_for, NodeResidue,
    ResidueTable, Slot,
};
pub use identities::{identity_suite, identity_suite_all, IdentityCheck, IdentityReport, IdentitySummary, IDENTITIES};
pub use module::{build_all, build_module, Embed, SeminormalModule};
pub use omega::{omega_k_table, product_series, recursion_series, residue_series, OmegaKTable, OmegaRow};
pub use verify::{
    unwrap_range, verify_power_formulas, verify_relations, verify_with_retry, RelationCheck, RelationReport,
    RelationSummary, MAX_PRECISION,
};
