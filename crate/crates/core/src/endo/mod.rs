//! Endomorphism algebras and modules over structure-constant algebras.

mod end;
mod fdmodule;
mod idempotents;
mod json;
mod radical;

pub use end::{end_algebra, end_algebra_from_basis, EndAlgebra};
pub use fdmodule::{
    fd_global_dimension, fd_projectives_and_simples, hom_functor_module, quotient_module, FdModule,
    FdProjective, FdTheory,
};
pub use idempotents::{is_primitive, primitive_idempotents, primitive_idempotents_with, IDEMPOTENT_BUDGET};
pub use json::FdAlgebraFile;
pub use radical::{is_division_semisimple, is_local, jacobson_radical, quotient_algebra, RadicalData};
