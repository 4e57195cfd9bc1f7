use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Quotient, Subspace};
use crate::quiver::{sparse, FdAlgebra};

/// A basis of the Jacobson radical and the least `k` with `rad^k = 0`.
#[derive(Clone, Debug)]
pub struct RadicalData<K: Field> {
    pub basis: Vec<Vec<K::Elem>>,
    pub nilpotency_index: usize,
}

impl<K: Field> RadicalData<K> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn subspace(&self, a: &FdAlgebra<K>) -> Subspace<K> {
        Subspace::from_basis(Matrix::from_columns(a.field(), a.dim(), &self.basis))
    }
}

pub(crate) fn check_characteristic<K: Field>(a: &FdAlgebra<K>) -> Result<()> {
    let p = a.field().characteristic();
    if p != 0 && p <= a.dim() as u64 {
        return Err(Error::FieldPrecondition(format!(
            "trace-form radical needs characteristic 0 or a prime above {}; rerun with a larger prime (e.g. --field fp:1000003)",
            a.dim()
        )));
    }
    Ok(())
}

/// Kernel of the trace form `(x, y) ↦ tr L_{xy}`, as columns.
fn trace_form_kernel<K: Field>(a: &FdAlgebra<K>) -> Matrix<K> {
    let f = a.field();
    let d = a.dim();
    let traces: Vec<K::Elem> = (0..d).map(|k| a.left_mul_matrix(&a.basis_vector(k)).trace()).collect();
    let mut gram = Matrix::zeros(f, d, d);
    for i in 0..d {
        for j in 0..d {
            let mut t = f.zero();
            for (k, c) in a.product(i, j) {
                t = f.add(&t, &f.mul(c, &traces[*k]));
            }
            gram.set(j, i, t);
        }
    }
    gram.kernel_basis()
}

/// Columns spanning `{x·y : x ∈ span(xs), y ∈ span(ys)}`.
fn product_span<K: Field>(a: &FdAlgebra<K>, xs: &Matrix<K>, ys: &Matrix<K>) -> Matrix<K> {
    let mut cols = Vec::new();
    for i in 0..xs.cols() {
        let x = xs.column(i);
        for j in 0..ys.cols() {
            cols.push(a.mul(&x, &ys.column(j)));
        }
    }
    Matrix::from_columns(a.field(), a.dim(), &cols).column_space()
}

/// The Jacobson radical via the trace form, verified to be a nilpotent
/// two-sided ideal with semisimple quotient.
pub fn jacobson_radical<K: Field>(a: &FdAlgebra<K>) -> Result<RadicalData<K>> {
    check_characteristic(a)?;
    let ker = trace_form_kernel(a);
    let sub = Subspace::from_basis(ker.column_space());
    let basis: Vec<Vec<K::Elem>> = (0..sub.dim()).map(|j| sub.basis().column(j)).collect();
    let f = a.field();
    for r in &basis {
        for k in 0..a.dim() {
            let b = a.basis_vector(k);
            for p in [a.mul(r, &b), a.mul(&b, r)] {
                if !sub.contains(&Matrix::column_vector(f, p)) {
                    return Err(Error::Inconclusive("trace-form kernel is not an ideal".into()));
                }
            }
        }
    }
    let mut index = 1;
    let mut power = sub.basis().clone();
    while power.cols() > 0 {
        power = product_span(a, &power, sub.basis());
        index += 1;
        if index > a.dim() + 1 {
            return Err(Error::Inconclusive("trace-form kernel is not nilpotent".into()));
        }
    }
    let rad = RadicalData {
        basis,
        nilpotency_index: index,
    };
    let (q, _, _) = quotient_algebra(a, &rad.subspace(a))?;
    if trace_form_kernel(&q).cols() != 0 {
        return Err(Error::Inconclusive("quotient by the radical is not semisimple".into()));
    }
    Ok(rad)
}

/// `A / I` for a two-sided ideal, with the projection `A → A/I` and a lift
/// `A/I → A` onto a complement spanned by standard basis vectors.
pub fn quotient_algebra<K: Field>(
    a: &FdAlgebra<K>,
    ideal: &Subspace<K>,
) -> Result<(FdAlgebra<K>, Matrix<K>, Matrix<K>)> {
    let f = a.field();
    let q = Quotient::new(ideal);
    let proj = q.projection().clone();
    let lift = q.complement().clone();
    let n = q.dim();
    let lifts: Vec<Vec<K::Elem>> = (0..n).map(|j| lift.column(j)).collect();
    let mut products = Vec::with_capacity(n * n);
    for x in &lifts {
        for y in &lifts {
            products.push(sparse(f, &proj.mul_vec(&a.mul(x, y))));
        }
    }
    let unit = proj.mul_vec(a.unit());
    let labels = (0..n).map(|i| format!("q{i}")).collect();
    let qa = FdAlgebra::new_unchecked(f.clone(), labels, products, unit, Vec::new())?;
    Ok((qa, proj, lift))
}

/// Whether a semisimple algebra is a division algebra.
///
/// Over `F_p` a finite division algebra is a field, so the test is
/// commutativity plus a one-dimensional fixed space of `x ↦ x^p`. Over the
/// rationals only the split case (dimension one) is decided.
pub fn is_division_semisimple<K: Field>(q: &FdAlgebra<K>) -> Result<bool> {
    if q.dim() == 1 {
        return Ok(true);
    }
    if q.dim() == 0 {
        return Ok(false);
    }
    let p = q.field().characteristic();
    if p == 0 {
        return Err(Error::Inconclusive(
            "deciding division algebras over the rationals beyond the split case is not supported; use a prime field".into(),
        ));
    }
    if !q.is_commutative() {
        return Ok(false);
    }
    let f = q.field();
    let cols: Vec<Vec<K::Elem>> = (0..q.dim())
        .map(|i| {
            let b = q.basis_vector(i);
            let mut acc = q.unit().to_vec();
            let mut base = b.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = q.mul(&acc, &base);
                }
                base = q.mul(&base, &base);
                e >>= 1;
            }
            q.sub(&acc, &b)
        })
        .collect();
    let frob_minus_id = Matrix::from_columns(f, q.dim(), &cols);
    Ok(q.dim() - frob_minus_id.rank() == 1)
}

/// Whether the algebra is local: its quotient by the radical is a division algebra.
pub fn is_local<K: Field>(a: &FdAlgebra<K>) -> Result<bool> {
    let rad = jacobson_radical(a)?;
    let (q, _, _) = quotient_algebra(a, &rad.subspace(a))?;
    is_division_semisimple(&q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};
    use crate::quiver::Algebra;

    #[test]
    fn radicals_of_small_algebras() {
        let f = PrimeField::new(1_000_003).unwrap();
        let r = jacobson_radical(&FdAlgebra::product_of_fields(f, 2)).unwrap();
        assert_eq!((r.dim(), r.nilpotency_index), (0, 1));
        let r = jacobson_radical(&FdAlgebra::upper_triangular(f, 2)).unwrap();
        assert_eq!((r.dim(), r.nilpotency_index), (1, 2));
        let b1 = Algebra::beilinson(1, Rationals).unwrap();
        let r = jacobson_radical(b1.structure_constants()).unwrap();
        assert_eq!((r.dim(), r.nilpotency_index), (2, 2));
        let b2 = Algebra::beilinson(2, f).unwrap();
        let r = jacobson_radical(b2.structure_constants()).unwrap();
        assert_eq!((r.dim(), r.nilpotency_index), (12, 3));
        assert!(jacobson_radical(&FdAlgebra::upper_triangular(PrimeField::new(3).unwrap(), 2)).is_err());
    }

    #[test]
    fn locality() {
        let f = PrimeField::new(1_000_003).unwrap();
        assert!(!is_local(&FdAlgebra::matrix_algebra(f, 2)).unwrap());
        assert!(!is_local(&FdAlgebra::product_of_fields(f, 2)).unwrap());
        let ext = Algebra::exterior(2, f).unwrap();
        assert!(is_local(ext.structure_constants()).unwrap());
    }
}
