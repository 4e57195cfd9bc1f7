//! Projective resolutions, projective and global dimension, Ext, and
//! resolutions by a generator.

mod mresolution;
mod pd;
mod resolution;

pub use mresolution::{m_resolution, m_resolution_seeded, MResolution, DEFAULT_SEED};
pub use pd::{PdKind, PdValue};
pub use resolution::{
    ext_dim, ext_dim_from, global_dimension, min_proj_resolution, projective_dimension, simple_pds, Resolution,
    DEFAULT_CUTOFF,
};
