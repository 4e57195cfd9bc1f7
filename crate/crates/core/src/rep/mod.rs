//! Finite-dimensional right modules as quiver representations.

mod canonical;
mod decompose;
mod json;
mod module;
mod ops;

pub use canonical::{
    canonical_reps, dual_regular, injective, map_from_projective, projective, radical_power_quotient,
    regular, simple, CanonicalReps,
};
pub use decompose::{
    decompose, decompose_parts, is_cogenerator, is_generator, iso_between, missing_projective,
    DecompositionReport, SPLIT_BUDGET,
};
pub use json::ModuleFile;
pub use module::{combine, Rep, RepMap};
pub use ops::{
    biproduct, cokernel, diagonal_map, direct_sum, factor_through, hom_basis, hom_dim, image,
    is_projective, kernel, lift_through, map_factorization, map_from_sum, map_to_sum,
    projective_cover, projective_cover_or_zero, projective_sum, quotient_rep, radical_and_top,
    subrep, top_dims, Biproduct, Factorization, ProjectiveCover, RadicalTop,
};
