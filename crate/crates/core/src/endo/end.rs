use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace};
use crate::quiver::{sparse, FdAlgebra};
use crate::rep::{hom_basis, Rep, RepMap};

/// `End(m)` as a structure-constant algebra, with product `a·b = a ∘ b`.
///
/// Under this convention `Hom(m, x)` is a right module by precomposition.
#[derive(Clone, Debug)]
pub struct EndAlgebra<K: Field> {
    pub module: Rep<K>,
    pub algebra: FdAlgebra<K>,
    pub basis: Vec<RepMap<K>>,
    coords: Subspace<K>,
}

impl<K: Field> EndAlgebra<K> {
    /// Coordinates of an endomorphism in the chosen basis.
    pub fn coords_of(&self, f: &RepMap<K>) -> Vec<K::Elem> {
        let fld = self.module.field();
        self.coords
            .coords(&Matrix::column_vector(fld, f.flatten()))
            .column(0)
    }

    pub fn map_of(&self, coords: &[K::Elem]) -> RepMap<K> {
        crate::rep::combine(&self.module, &self.module, coords, &self.basis)
    }
}

pub fn end_algebra<K: Field>(m: &Rep<K>) -> Result<EndAlgebra<K>> {
    let basis = hom_basis(m, m);
    end_algebra_from_basis(m, &basis)
}

/// As [`end_algebra`] with a precomputed basis of `End(m)`.
pub fn end_algebra_from_basis<K: Field>(m: &Rep<K>, basis: &[RepMap<K>]) -> Result<EndAlgebra<K>> {
    if m.is_zero() {
        return Err(Error::InvalidInput("the zero module has the zero endomorphism ring".into()));
    }
    let f = m.field();
    let flat_len = basis.first().map_or(0, |b| b.flatten().len());
    let cols: Vec<Vec<K::Elem>> = basis.iter().map(|b| b.flatten()).collect();
    let coords = Subspace::from_basis(Matrix::from_columns(f, flat_len, &cols));
    let d = basis.len();
    let mut products = Vec::with_capacity(d * d);
    for a in basis {
        let composites: Vec<Vec<K::Elem>> = basis.iter().map(|b| b.then(a).flatten()).collect();
        let c = coords.coords(&Matrix::from_columns(f, flat_len, &composites));
        for j in 0..d {
            products.push(sparse(f, &c.column(j)));
        }
    }
    let id = RepMap::identity(m).flatten();
    let unit = coords.coords(&Matrix::column_vector(f, id)).column(0);
    let labels = (0..d).map(|i| format!("f{i}")).collect();
    let algebra = FdAlgebra::new_unchecked(f.clone(), labels, products, unit, Vec::new())?;
    debug_assert!(algebra.check_unit().is_ok());
    Ok(EndAlgebra {
        module: m.clone(),
        algebra,
        basis: basis.to_vec(),
        coords,
    })
}
