//! Exact computational homological algebra for finite-dimensional quiver algebras.
//!
//! The crate builds algebras from quivers with homogeneous relations, works in
//! their module categories as quiver representations, computes minimal
//! projective resolutions, Ext and global dimension, turns endomorphism rings
//! into structure-constant algebras with their own module theory, and emits
//! machine-checkable certificates bounding the level of a complex with respect
//! to the projectives in the bounded derived category.
//!
//! ```
//! use repdimlab::prelude::*;
//!
//! let field = PrimeField::new(DEFAULT_PRIME).unwrap();
//! let alg = Algebra::beilinson(2, field).unwrap();
//! assert_eq!(alg.dim(), 15);
//! assert_eq!(global_dimension(&alg, 8).unwrap(), PdValue::exact(2));
//! ```

pub mod derived;
pub mod endo;
mod error;
pub mod harness;
pub mod homalg;
pub mod linalg;
pub mod quiver;
pub mod rep;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::derived::{
        ghost_certificate, level_upper_certificate, GhostCertificate, LevelCertificate,
        RepComplex,
    };
    pub use crate::endo::{end_algebra, fd_global_dimension, hom_functor_module, FdModule};
    pub use crate::homalg::{
        ext_dim, global_dimension, m_resolution, min_proj_resolution, PdValue, Resolution,
    };
    pub use crate::linalg::{
        Field, FieldSpec, Matrix, PrimeField, Rationals, DEFAULT_PRIME, SECONDARY_PRIME,
    };
    pub use crate::quiver::{Algebra, FdAlgebra, Presentation};
    pub use crate::rep::{Rep, RepMap};
    pub use crate::{Error, Result};
}
