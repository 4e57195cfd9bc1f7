use super::field::Field;
use super::matrix::Matrix;

/// A subspace of `K^n` with a fixed basis (the columns of `basis`) and a
/// precomputed coordinate map.
#[derive(Clone, Debug)]
pub struct Subspace<K: Field> {
    basis: Matrix<K>,
    pivot_rows: Vec<usize>,
    inv: Matrix<K>,
}

impl<K: Field> Subspace<K> {
    /// The span of the columns of `gens`, with basis the independent pivot columns.
    pub fn span(gens: &Matrix<K>) -> Self {
        Self::from_basis(gens.column_space())
    }

    /// `basis` must have linearly independent columns.
    pub fn from_basis(basis: Matrix<K>) -> Self {
        let f = basis.field().clone();
        let pivot_rows = basis.transpose().rref().pivots;
        debug_assert_eq!(pivot_rows.len(), basis.cols(), "dependent basis columns");
        let inv = if basis.cols() == 0 {
            Matrix::zeros(&f, 0, 0)
        } else {
            basis
                .select_rows(&pivot_rows)
                .inverse()
                .expect("independent columns give an invertible minor")
        };
        Subspace {
            basis,
            pivot_rows,
            inv,
        }
    }

    pub fn zero(field: &K, ambient: usize) -> Self {
        Self::from_basis(Matrix::zeros(field, ambient, 0))
    }

    pub fn full(field: &K, ambient: usize) -> Self {
        Self::from_basis(Matrix::identity(field, ambient))
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix<K> {
        &self.basis
    }

    /// Coordinates of the columns of `v`, assumed to lie in the subspace.
    pub fn coords(&self, v: &Matrix<K>) -> Matrix<K> {
        self.inv.mul(&v.select_rows(&self.pivot_rows))
    }

    pub fn contains(&self, v: &Matrix<K>) -> bool {
        self.basis.mul(&self.coords(v)) == *v
    }

    /// Coordinates when every column of `v` lies in the subspace, otherwise `None`.
    pub fn try_coords(&self, v: &Matrix<K>) -> Option<Matrix<K>> {
        let c = self.coords(v);
        (self.basis.mul(&c) == *v).then_some(c)
    }
}

/// A quotient `K^n / U` with a complement spanned by standard basis vectors.
#[derive(Clone, Debug)]
pub struct Quotient<K: Field> {
    complement: Matrix<K>,
    projection: Matrix<K>,
}

impl<K: Field> Quotient<K> {
    pub fn new(sub: &Subspace<K>) -> Self {
        let f = sub.basis().field().clone();
        let n = sub.ambient();
        let k = sub.dim();
        let ext = Matrix::hstack(&f, n, &[sub.basis(), &Matrix::identity(&f, n)]);
        let pivots = ext.rref().pivots;
        let comp_idx: Vec<usize> = pivots.iter().filter(|&&p| p >= k).map(|&p| p - k).collect();
        let complement = Matrix::identity(&f, n).select_cols(&comp_idx);
        let full = Matrix::hstack(&f, n, &[sub.basis(), &complement]);
        let inv = full.inverse().expect("basis extended by a complement");
        let projection = inv.block(k, 0, n - k, n);
        Quotient {
            complement,
            projection,
        }
    }

    pub fn dim(&self) -> usize {
        self.complement.cols()
    }

    /// Vectors of the ambient space lifting the quotient basis.
    pub fn complement(&self) -> &Matrix<K> {
        &self.complement
    }

    /// The linear map `K^n → K^n / U` in quotient coordinates.
    pub fn projection(&self) -> &Matrix<K> {
        &self.projection
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rationals;

    #[test]
    fn coordinates_and_quotients() {
        let q = Rationals;
        let gens = Matrix::from_i64(&q, &[&[1, 2, 0], &[1, 2, 1], &[0, 0, 1]]);
        let s = Subspace::span(&gens);
        assert_eq!(s.dim(), 2);
        let v = Matrix::from_i64(&q, &[&[3], &[5], &[2]]);
        assert!(s.contains(&v));
        assert!(!s.contains(&Matrix::from_i64(&q, &[&[1], &[0], &[0]])));
        let quo = Quotient::new(&s);
        assert_eq!(quo.dim(), 1);
        assert!(quo.projection().mul(s.basis()).is_zero());
        assert!(quo.projection().mul(quo.complement()).is_identity());
    }
}
