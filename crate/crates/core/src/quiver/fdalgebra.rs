use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};

/// A finite-dimensional algebra given by structure constants on a basis.
///
/// Products are stored sparsely: `product(i, j)` lists the nonzero
/// coordinates of `b_i · b_j`.
#[derive(Clone, Debug)]
pub struct FdAlgebra<K: Field> {
    field: K,
    labels: Vec<String>,
    products: Vec<Vec<(usize, K::Elem)>>,
    unit: Vec<K::Elem>,
    idempotents: Vec<Vec<K::Elem>>,
}

impl<K: Field> FdAlgebra<K> {
    /// Builds and checks associativity, the unit, and the listed idempotents.
    pub fn new(
        field: K,
        labels: Vec<String>,
        products: Vec<Vec<(usize, K::Elem)>>,
        unit: Vec<K::Elem>,
        idempotents: Vec<Vec<K::Elem>>,
    ) -> Result<Self> {
        let a = Self::new_unchecked(field, labels, products, unit, idempotents)?;
        a.check_associative()?;
        a.check_unit()?;
        a.check_idempotents()?;
        Ok(a)
    }

    /// Shape checks only.
    pub fn new_unchecked(
        field: K,
        labels: Vec<String>,
        products: Vec<Vec<(usize, K::Elem)>>,
        unit: Vec<K::Elem>,
        idempotents: Vec<Vec<K::Elem>>,
    ) -> Result<Self> {
        let d = labels.len();
        if products.len() != d * d || unit.len() != d || idempotents.iter().any(|e| e.len() != d) {
            return Err(Error::DimensionMismatch(format!(
                "structure constants for dimension {d} have the wrong shape"
            )));
        }
        if products.iter().flatten().any(|(k, _)| *k >= d) {
            return Err(Error::DimensionMismatch("product coordinate out of range".into()));
        }
        Ok(FdAlgebra {
            field,
            labels,
            products,
            unit,
            idempotents,
        })
    }

    /// Builds an algebra from dense structure constants `sc[i][j][k]`.
    pub fn from_dense(
        field: K,
        labels: Vec<String>,
        sc: &[Vec<Vec<K::Elem>>],
        unit: Vec<K::Elem>,
        idempotents: Vec<Vec<K::Elem>>,
    ) -> Result<Self> {
        let d = labels.len();
        let mut products = Vec::with_capacity(d * d);
        if sc.len() != d {
            return Err(Error::DimensionMismatch("structure constant table".into()));
        }
        for row in sc {
            if row.len() != d {
                return Err(Error::DimensionMismatch("structure constant table".into()));
            }
            for v in row {
                if v.len() != d {
                    return Err(Error::DimensionMismatch("structure constant table".into()));
                }
                products.push(sparse(&field, v));
            }
        }
        Self::new(field, labels, products, unit, idempotents)
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[K::Elem] {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Vec<K::Elem>] {
        &self.idempotents
    }

    pub fn with_idempotents(mut self, idempotents: Vec<Vec<K::Elem>>) -> Result<Self> {
        self.idempotents = idempotents;
        self.check_idempotents()?;
        Ok(self)
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, K::Elem)] {
        &self.products[i * self.dim() + j]
    }

    pub fn dense_product(&self, i: usize, j: usize) -> Vec<K::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        for (k, c) in self.product(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    pub fn zero(&self) -> Vec<K::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<K::Elem> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, x: &[K::Elem], y: &[K::Elem]) -> Vec<K::Elem> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, s) in self.product(i, j) {
                    out[*k] = f.add(&out[*k], &f.mul(&c, s));
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[K::Elem], y: &[K::Elem]) -> Vec<K::Elem> {
        x.iter().zip(y).map(|(a, b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[K::Elem], y: &[K::Elem]) -> Vec<K::Elem> {
        x.iter().zip(y).map(|(a, b)| self.field.sub(a, b)).collect()
    }

    pub fn scale(&self, c: &K::Elem, x: &[K::Elem]) -> Vec<K::Elem> {
        x.iter().map(|a| self.field.mul(c, a)).collect()
    }

    pub fn is_zero(&self, x: &[K::Elem]) -> bool {
        x.iter().all(|a| self.field.is_zero(a))
    }

    /// Matrix of `y ↦ x·y`; column `j` holds `x·b_j`.
    pub fn left_mul_matrix(&self, x: &[K::Elem]) -> Matrix<K> {
        let cols: Vec<Vec<K::Elem>> = (0..self.dim()).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(&self.field, self.dim(), &cols)
    }

    /// Matrix of `y ↦ y·x`; column `j` holds `b_j·x`.
    pub fn right_mul_matrix(&self, x: &[K::Elem]) -> Matrix<K> {
        let cols: Vec<Vec<K::Elem>> = (0..self.dim()).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_columns(&self.field, self.dim(), &cols)
    }

    pub fn check_associative(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = self.dense_product(i, j);
                for k in 0..d {
                    let left = self.mul(&ij, &self.basis_vector(k));
                    let right = self.mul(&self.basis_vector(i), &self.dense_product(j, k));
                    if left != right {
                        return Err(Error::InvalidInput(format!(
                            "multiplication is not associative on basis triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim() {
            let b = self.basis_vector(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::InvalidInput(format!(
                    "the unit does not fix basis element {i}"
                )));
            }
        }
        Ok(())
    }

    pub fn check_idempotents(&self) -> Result<()> {
        if self.idempotents.is_empty() {
            return Ok(());
        }
        let mut sum = self.zero();
        for (i, e) in self.idempotents.iter().enumerate() {
            sum = self.add(&sum, e);
            for (j, g) in self.idempotents.iter().enumerate() {
                let p = self.mul(e, g);
                let ok = if i == j { p == *e } else { self.is_zero(&p) };
                if !ok {
                    return Err(Error::InvalidInput(format!(
                        "idempotents {i} and {j} are not orthogonal idempotents"
                    )));
                }
            }
        }
        if sum != self.unit {
            return Err(Error::InvalidInput("idempotents do not sum to the unit".into()));
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (i + 1..d).all(|j| self.dense_product(i, j) == self.dense_product(j, i)))
    }

    pub fn pow(&self, x: &[K::Elem], e: u64) -> Vec<K::Elem> {
        let mut acc = self.unit.clone();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// The algebra of `n × n` matrices with matrix-unit basis `E_ij` (index `i·n + j`).
    pub fn matrix_algebra(field: K, n: usize) -> Self {
        let d = n * n;
        let labels = (0..n).flat_map(|i| (0..n).map(move |j| format!("E{i}{j}"))).collect();
        let mut products = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                let (i, j) = (a / n, a % n);
                let (k, l) = (b / n, b % n);
                products.push(if j == k { vec![(i * n + l, field.one())] } else { Vec::new() });
            }
        }
        let mut unit = vec![field.zero(); d];
        let mut idempotents = Vec::new();
        for i in 0..n {
            unit[i * n + i] = field.one();
            let mut e = vec![field.zero(); d];
            e[i * n + i] = field.one();
            idempotents.push(e);
        }
        Self::new_unchecked(field, labels, products, unit, idempotents).expect("well-formed")
    }

    /// Upper triangular `n × n` matrices, basis `E_ij` with `i ≤ j` in row order.
    pub fn upper_triangular(field: K, n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let pos = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
        let d = pairs.len();
        let mut products = Vec::with_capacity(d * d);
        for &(i, j) in &pairs {
            for &(k, l) in &pairs {
                products.push(if j == k { vec![(pos(i, l), field.one())] } else { Vec::new() });
            }
        }
        let mut unit = vec![field.zero(); d];
        let mut idempotents = Vec::new();
        for i in 0..n {
            unit[pos(i, i)] = field.one();
            let mut e = vec![field.zero(); d];
            e[pos(i, i)] = field.one();
            idempotents.push(e);
        }
        let labels = pairs.iter().map(|(i, j)| format!("E{i}{j}")).collect();
        Self::new_unchecked(field, labels, products, unit, idempotents).expect("well-formed")
    }

    /// The product `k^n` of copies of the field.
    pub fn product_of_fields(field: K, n: usize) -> Self {
        let mut products = vec![Vec::new(); n * n];
        let mut idempotents = Vec::new();
        for i in 0..n {
            products[i * n + i] = vec![(i, field.one())];
            let mut e = vec![field.zero(); n];
            e[i] = field.one();
            idempotents.push(e);
        }
        let unit = vec![field.one(); n];
        let labels = (0..n).map(|i| format!("e{i}")).collect();
        Self::new_unchecked(field, labels, products, unit, idempotents).expect("well-formed")
    }
}

pub(crate) fn sparse<K: Field>(field: &K, v: &[K::Elem]) -> Vec<(usize, K::Elem)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !field.is_zero(c))
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;

    #[test]
    fn small_algebras_pass_axioms() {
        let f = PrimeField::new(7).unwrap();
        for a in [
            FdAlgebra::matrix_algebra(f, 2),
            FdAlgebra::upper_triangular(f, 3),
            FdAlgebra::product_of_fields(f, 3),
        ] {
            a.check_associative().unwrap();
            a.check_unit().unwrap();
            a.check_idempotents().unwrap();
        }
        assert_eq!(FdAlgebra::upper_triangular(f, 2).dim(), 3);
        assert!(!FdAlgebra::matrix_algebra(f, 2).is_commutative());
        assert!(FdAlgebra::product_of_fields(f, 2).is_commutative());
    }
}
