//! Characters and Fourier analysis for functions on `P(r, d)`.
//!
//! A character `chi_beta` only depends on the coset `beta + P(r, d)^perp`, and
//! the coset is identified by the functional `y_j = <beta, m_j>` over the basis
//! monomials. Its base-3 index is the coset id used by [`Spectrum`].

mod analysis;
mod character;
mod cosets;
mod sparse;
mod transform;

pub use analysis::{
    character_mean, conjugate_symmetry_gap, dictator, influence, influences, max_influence_degree,
    nearest_dictator, orthonormality_gap, parseval_check, point_coset, NearestDictator,
    ParsevalReport,
};
pub use character::{character, character_table, omega_pow};
pub use cosets::{
    coset_reps, distance_to_dual, distance_to_dual_sampled, small_support_functions, CosetRep,
    CosetTable, DualDistance, COSET_SCAN_BUDGET,
};
pub use sparse::{SparseEvaluator, SparseSpectrum};
pub use transform::{fourier_transform, inverse_transform, GroupFn, Spectrum};
