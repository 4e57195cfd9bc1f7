//! Exact dense linear algebra over the rationals and prime fields.

mod field;
mod matrix;
pub mod poly;
mod subspace;

pub use field::{
    is_prime, rational_mod_p, Field, FieldKind, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME,
    SECONDARY_PRIME,
};
pub use matrix::{Matrix, Rref};
pub use poly::{Factorization, Poly};
pub use subspace::{Quotient, Subspace};
