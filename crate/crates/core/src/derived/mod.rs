//! Bounded complexes, the projective tower giving upper level bounds, and
//! extension certificates giving lower bounds. Every certificate can be
//! written to JSON and replayed by [`verify_certificate`].

mod complex;
mod ghost;
mod json;
mod tower;
mod verify;

pub use complex::{complex_parts, ComplexParts, DegreeParts, RepComplex};
pub use ghost::{ghost_certificate, GhostCertificate, ShortExact};
pub use json::{
    verify_certificate, CertificateFile, ComplexFile, ExtensionFile, GhostCertificateFile, LevelCertificateFile,
    MapData, StepFile, VerifiedClaim,
};
pub use tower::{
    tower_step, is_projective_type, level_upper_certificate, parts_bound, TowerStep, LevelCertificate,
};
pub use verify::{verify_ghost, verify_level};
