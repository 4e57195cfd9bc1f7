use std::fmt;

use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

/// A dense row-major matrix over a field context.
///
/// Entries are always stored reduced (the field's canonical form), so equality
/// of matrices is equality of entries.
#[derive(Clone)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

/// Output of Gauss–Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref<K: Field> {
    pub reduced: Matrix<K>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<K: Field> PartialEq for Matrix<K> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<K: Field> fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|e| self.field.format(e)).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl<K: Field> Matrix<K> {
    pub fn new(field: K, rows: usize, cols: usize, data: Vec<K::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: &K, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &K, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: &K, rows: Vec<Vec<K::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(field.clone(), r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix from small integers; convenient in tests and examples.
    pub fn from_i64(field: &K, rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|row| row.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, data).expect("rectangular input")
    }

    /// Builds a `rows x columns.len()` matrix from column vectors.
    pub fn from_columns(field: &K, rows: usize, columns: &[Vec<K::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, e) in col.iter().enumerate() {
                m.data[i * m.cols + j] = e.clone();
            }
        }
        m
    }

    pub fn column_vector(field: &K, v: Vec<K::Elem>) -> Self {
        let n = v.len();
        Matrix {
            field: field.clone(),
            rows: n,
            cols: 1,
            data: v,
        }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[K::Elem] {
        &self.data
    }

    pub fn into_data(self) -> Vec<K::Elem> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &K::Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: K::Elem) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[K::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<K::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        self.field.is_one(e)
                    } else {
                        self.field.is_zero(e)
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matrix product of {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if f.is_zero(a) {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    if !f.is_zero(b) {
                        *o = f.add(o, &f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| {
                        if f.is_zero(a) || f.is_zero(b) {
                            acc
                        } else {
                            f.add(&acc, &f.mul(a, b))
                        }
                    })
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape mismatch");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.from_i64(-1))
    }

    /// `[A | B | ...]`; all parts must share the row count (given explicitly for the empty case).
    pub fn hstack(field: &K, rows: usize, parts: &[&Self]) -> Self {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..p.cols {
                    out.data[i * cols + off + j] = p.get(i, j).clone();
                }
            }
            off += p.cols;
        }
        out
    }

    pub fn vstack(field: &K, cols: usize, parts: &[&Self]) -> Self {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            data.extend(p.data.iter().cloned());
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn block_diag(field: &K, parts: &[&Self]) -> Self {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            out.set_block(r0, c0, p);
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut out = Self::zeros(&self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        out
    }

    pub fn select_rows(&self, sel: &[usize]) -> Self {
        let mut data = Vec::with_capacity(sel.len() * self.cols);
        for &i in sel {
            data.extend(self.row(i).iter().cloned());
        }
        Matrix {
            field: self.field.clone(),
            rows: sel.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, sel: &[usize]) -> Self {
        let mut out = Self::zeros(&self.field, self.rows, sel.len());
        for i in 0..self.rows {
            for (jj, &j) in sel.iter().enumerate() {
                out.data[i * sel.len() + jj] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Gauss–Jordan elimination in place; returns the pivot columns.
    fn eliminate(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        let mut nz: Vec<usize> = Vec::with_capacity(cols);
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(&self.data[i * cols + c])) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(&self.data[r * cols + c]).expect("nonzero pivot");
            nz.clear();
            for j in c..cols {
                let e = &mut self.data[r * cols + j];
                if !f.is_zero(e) {
                    *e = f.mul(e, &inv);
                    nz.push(j);
                }
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let clear = |row: &mut [K::Elem]| {
                let factor = row[c].clone();
                if f.is_zero(&factor) {
                    return;
                }
                for &j in &nz {
                    row[j] = f.mul_sub(&row[j], &factor, &pivot_row[j]);
                }
            };
            for row in before.chunks_mut(cols) {
                clear(row);
            }
            for row in after.chunks_mut(cols) {
                clear(row);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form, rank and pivot columns.
    pub fn rref(&self) -> Rref<K> {
        let mut reduced = self.clone();
        let pivots = reduced.eliminate();
        Rref {
            reduced,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().len()
    }

    /// Columns form a basis of the right null space.
    pub fn kernel_basis(&self) -> Self {
        let Rref { reduced, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let f = &self.field;
        let mut out = Self::zeros(f, self.cols, free.len());
        for (k, &j) in free.iter().enumerate() {
            out.set(j, k, f.one());
            for (i, &p) in pivots.iter().enumerate() {
                let e = reduced.get(i, j);
                if !f.is_zero(e) {
                    out.set(p, k, f.neg(e));
                }
            }
        }
        out
    }

    /// Some `x` with `self · x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Self) -> Result<Option<Self>> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} equations but right-hand side has {} rows",
                self.rows, b.rows
            )));
        }
        let aug = Self::hstack(&self.field, self.rows, &[self, b]);
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zeros(&self.field, self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, reduced.get(i, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Self::identity(&self.field, self.rows)).ok()??;
        (self.rank() == self.rows).then_some(x)
    }

    /// The pivot columns of `self`, which form a basis of its column space.
    pub fn column_space(&self) -> Self {
        let pivots = self.rref().pivots;
        self.select_cols(&pivots)
    }

    pub fn trace(&self) -> K::Elem {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Self::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly<K>) -> Self {
        assert_eq!(self.rows, self.cols);
        let f = &self.field;
        let n = self.rows;
        let mut acc = Self::zeros(f, n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let d = acc.get(i, i).clone();
                acc.set(i, i, f.add(&d, c));
            }
        }
        acc
    }

    /// The minimal polynomial, found as the first linear dependence among powers.
    pub fn minimal_polynomial(&self) -> Poly<K> {
        assert_eq!(self.rows, self.cols);
        let f = &self.field;
        let n = self.rows;
        if n == 0 {
            return Poly::one(f);
        }
        // Incrementally reduce flattened powers against an echelon basis, tracking
        // each reduced vector as a combination of the powers.
        let mut echelon: Vec<(usize, Vec<K::Elem>, Vec<K::Elem>)> = Vec::new();
        let mut power = Self::identity(f, n);
        for k in 0..=n {
            let mut v = power.data.clone();
            let mut combo = vec![f.zero(); k + 1];
            combo[k] = f.one();
            for (piv, row, rc) in &echelon {
                let c = v[*piv].clone();
                if f.is_zero(&c) {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(row) {
                    *x = f.mul_sub(x, &c, y);
                }
                for (x, y) in combo.iter_mut().zip(rc) {
                    *x = f.mul_sub(x, &c, y);
                }
            }
            match v.iter().position(|e| !f.is_zero(e)) {
                None => return Poly::from_coeffs(f, combo).monic(f),
                Some(piv) => {
                    let inv = f.inv(&v[piv]).unwrap();
                    for x in v.iter_mut() {
                        *x = f.mul(x, &inv);
                    }
                    for x in combo.iter_mut() {
                        *x = f.mul(x, &inv);
                    }
                    echelon.push((piv, v, combo));
                }
            }
            power = power.mul(self);
        }
        unreachable!("Cayley–Hamilton bounds the minimal polynomial degree by n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};

    #[test]
    fn rref_examples() {
        let q = Rationals;
        let id = Matrix::<Rationals>::identity(&q, 2);
        let r = id.rref();
        assert_eq!((r.rank, r.pivots.clone()), (2, vec![0, 1]));

        let m = Matrix::from_i64(&q, &[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!((r.rank, r.pivots), (1, vec![0]));
        assert_eq!(r.reduced, Matrix::from_i64(&q, &[&[1, 2], &[0, 0]]));

        let f7 = PrimeField::new(7).unwrap();
        let z = Matrix::zeros(&f7, 3, 4);
        let r = z.rref();
        assert_eq!((r.rank, r.pivots.len()), (0, 0));

        let empty = Matrix::zeros(&q, 0, 0);
        assert_eq!(empty.rref().rank, 0);
    }

    #[test]
    fn kernel_examples() {
        let q = Rationals;
        let k = Matrix::<Rationals>::identity(&q, 2).kernel_basis();
        assert_eq!(k.shape(), (2, 0));

        let m = Matrix::from_i64(&q, &[&[1, 2], &[2, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k, Matrix::from_i64(&q, &[&[-2], &[1]]));
        assert!(m.mul(&k).is_zero());

        let z = Matrix::zeros(&q, 2, 3);
        assert_eq!(z.kernel_basis(), Matrix::identity(&q, 3));
    }

    #[test]
    fn solve_examples() {
        let q = Rationals;
        let b = Matrix::from_i64(&q, &[&[3, -1], &[5, 7]]);
        let x = Matrix::identity(&q, 2).solve(&b).unwrap().unwrap();
        assert_eq!(x, b);

        let a = Matrix::from_i64(&q, &[&[1, 2], &[2, 4]]);
        assert!(a.solve(&Matrix::from_i64(&q, &[&[1], &[3]])).unwrap().is_none());
        let rhs = Matrix::from_i64(&q, &[&[1], &[2]]);
        let x = a.solve(&rhs).unwrap().unwrap();
        assert_eq!(a.mul(&x), rhs);

        assert!(matches!(
            a.solve(&Matrix::zeros(&q, 3, 1)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn inverse_and_minimal_polynomial() {
        let f = PrimeField::new(101).unwrap();
        let m = Matrix::from_i64(&f, &[&[2, 1], &[0, 2]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        // (x - 2)^2
        let mp = m.minimal_polynomial();
        assert_eq!(mp.coeffs(), &[4, 97, 1]);
        assert!(m.eval_poly(&mp).is_zero());
        let d = Matrix::from_i64(&f, &[&[3, 0], &[0, 3]]);
        assert_eq!(d.minimal_polynomial().degree(), Some(1));
        assert!(Matrix::from_i64(&f, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn stacking() {
        let q = Rationals;
        let a = Matrix::from_i64(&q, &[&[1, 2]]);
        let b = Matrix::from_i64(&q, &[&[3]]);
        assert_eq!(Matrix::hstack(&q, 1, &[&a, &b]), Matrix::from_i64(&q, &[&[1, 2, 3]]));
        let d = Matrix::block_diag(&q, &[&a, &b]);
        assert_eq!(d, Matrix::from_i64(&q, &[&[1, 2, 0], &[0, 0, 3]]));
        assert_eq!(d.block(1, 2, 1, 1), b);
    }
}
