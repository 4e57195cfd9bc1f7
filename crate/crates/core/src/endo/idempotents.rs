use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::radical::{is_division_semisimple, jacobson_radical, quotient_algebra, RadicalData};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Poly, Subspace};
use crate::quiver::FdAlgebra;

/// Attempts per idempotent when splitting a corner algebra.
pub const IDEMPOTENT_BUDGET: usize = 20;

/// Columns spanning the corner `e A e`.
fn corner<K: Field>(a: &FdAlgebra<K>, e: &[K::Elem]) -> Subspace<K> {
    let cols: Vec<Vec<K::Elem>> = (0..a.dim())
        .map(|k| a.mul(&a.mul(e, &a.basis_vector(k)), e))
        .collect();
    Subspace::span(&Matrix::from_columns(a.field(), a.dim(), &cols))
}

/// The corner `e A e` as an algebra with unit `e`.
fn corner_algebra<K: Field>(a: &FdAlgebra<K>, sub: &Subspace<K>, e: &[K::Elem]) -> Result<FdAlgebra<K>> {
    let f = a.field();
    let n = sub.dim();
    let basis: Vec<Vec<K::Elem>> = (0..n).map(|j| sub.basis().column(j)).collect();
    let mut products = Vec::with_capacity(n * n);
    for x in &basis {
        for y in &basis {
            let c = sub.coords(&Matrix::column_vector(f, a.mul(x, y))).column(0);
            products.push(crate::quiver::sparse(f, &c));
        }
    }
    let unit = sub.coords(&Matrix::column_vector(f, e.to_vec())).column(0);
    let labels = (0..n).map(|i| format!("c{i}")).collect();
    FdAlgebra::new_unchecked(f.clone(), labels, products, unit, Vec::new())
}

/// Evaluates `p(x)` inside a corner whose unit is `e`.
fn eval_in<K: Field>(a: &FdAlgebra<K>, p: &Poly<K>, x: &[K::Elem], e: &[K::Elem]) -> Vec<K::Elem> {
    let mut acc = a.zero();
    for c in p.coeffs().iter().rev() {
        acc = a.add(&a.mul(&acc, x), &a.scale(c, e));
    }
    acc
}

/// Splits the idempotent `e` of a semisimple algebra into two orthogonal
/// idempotents, or returns `None` when `e A e` is a division algebra.
fn split_semisimple<K: Field>(
    q: &FdAlgebra<K>,
    e: &[K::Elem],
    rng: &mut ChaCha8Rng,
) -> Result<Option<(Vec<K::Elem>, Vec<K::Elem>)>> {
    let f = q.field();
    let sub = corner(q, e);
    let c = corner_algebra(q, &sub, e)?;
    if is_division_semisimple(&c)? {
        return Ok(None);
    }
    for _ in 0..IDEMPOTENT_BUDGET {
        let coeffs: Vec<K::Elem> = (0..sub.dim()).map(|_| f.random(rng)).collect();
        let x = sub.basis().mul_vec(&coeffs);
        let cx = sub.coords(&Matrix::column_vector(f, x.clone())).column(0);
        let mu = c.left_mul_matrix(&cx).minimal_polynomial();
        let fac = f.factor(&mu, rng);
        if fac.factors.len() < 2 {
            continue;
        }
        let (g0, e0) = &fac.factors[0];
        let g = g0.pow(f, *e0);
        let h = mu.div_exact(f, &g);
        let (d, _u, v) = g.xgcd(f, &h);
        if !d.is_one(f) {
            continue;
        }
        // v h ≡ 1 mod g and v h ≡ 0 mod h: an idempotent supported on the g-part
        let e1 = eval_in(q, &v.mul(f, &h), &x, e);
        let e2 = q.sub(e, &e1);
        if q.is_zero(&e1) || q.is_zero(&e2) || q.mul(&e1, &e1) != e1 {
            continue;
        }
        return Ok(Some((e1, e2)));
    }
    Err(Error::Inconclusive(format!(
        "could not split a corner of dimension {} in {IDEMPOTENT_BUDGET} attempts",
        sub.dim()
    )))
}

/// Primitive orthogonal idempotents of a semisimple algebra summing to 1.
fn semisimple_idempotents<K: Field>(q: &FdAlgebra<K>, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<K::Elem>>> {
    if q.dim() == 0 {
        return Ok(Vec::new());
    }
    let mut todo = vec![q.unit().to_vec()];
    let mut done = Vec::new();
    while let Some(e) = todo.pop() {
        match split_semisimple(q, &e, rng)? {
            Some((a, b)) => {
                todo.push(b);
                todo.push(a);
            }
            None => done.push(e),
        }
    }
    Ok(done)
}

/// Lifts `y` (idempotent modulo a nilpotent ideal) by `y ← 3y² − 2y³`.
fn lift_idempotent<K: Field>(a: &FdAlgebra<K>, mut y: Vec<K::Elem>) -> Result<Vec<K::Elem>> {
    let f = a.field();
    let three = f.from_i64(3);
    let two = f.from_i64(2);
    for _ in 0..64 {
        let y2 = a.mul(&y, &y);
        if y2 == y {
            return Ok(y);
        }
        let y3 = a.mul(&y2, &y);
        y = a.sub(&a.scale(&three, &y2), &a.scale(&two, &y3));
    }
    Err(Error::Inconclusive("idempotent lifting did not converge".into()))
}

/// A complete set of primitive orthogonal idempotents summing to 1.
pub fn primitive_idempotents<K: Field>(a: &FdAlgebra<K>, seed: u64) -> Result<Vec<Vec<K::Elem>>> {
    let rad = jacobson_radical(a)?;
    primitive_idempotents_with(a, &rad, seed)
}

pub fn primitive_idempotents_with<K: Field>(
    a: &FdAlgebra<K>,
    rad: &RadicalData<K>,
    seed: u64,
) -> Result<Vec<Vec<K::Elem>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (q, _proj, lift) = quotient_algebra(a, &rad.subspace(a))?;
    let eps = semisimple_idempotents(&q, &mut rng)?;
    let mut lifted: Vec<Vec<K::Elem>> = Vec::with_capacity(eps.len());
    for (k, eq) in eps.iter().enumerate() {
        let rest = lifted.iter().fold(a.unit().to_vec(), |acc, e| a.sub(&acc, e));
        if k + 1 == eps.len() {
            lifted.push(rest);
            break;
        }
        let y0 = lift.mul_vec(eq);
        let y = a.mul(&a.mul(&rest, &y0), &rest);
        lifted.push(lift_idempotent(a, y)?);
    }
    let check = a.clone().with_idempotents(lifted.clone());
    if let Err(e) = check {
        return Err(Error::Inconclusive(format!("lifted idempotents failed verification: {e}")));
    }
    Ok(lifted)
}

/// Whether `e A e` modulo its radical is a division algebra.
pub fn is_primitive<K: Field>(a: &FdAlgebra<K>, e: &[K::Elem]) -> Result<bool> {
    let sub = corner(a, e);
    let c = corner_algebra(a, &sub, e)?;
    super::radical::is_local(&c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;
    use crate::quiver::Algebra;

    fn fp() -> PrimeField {
        PrimeField::new(1_000_003).unwrap()
    }

    #[test]
    fn idempotent_counts() {
        let m2 = FdAlgebra::matrix_algebra(fp(), 2);
        let es = primitive_idempotents(&m2, 4).unwrap();
        assert_eq!(es.len(), 2);
        for e in &es {
            assert_eq!(m2.left_mul_matrix(e).rank(), 2);
            assert!(is_primitive(&m2, e).unwrap());
        }
        let b1 = Algebra::beilinson(1, fp()).unwrap();
        let es = primitive_idempotents(b1.structure_constants(), 5).unwrap();
        assert_eq!(es.len(), 2);
        let b2 = Algebra::beilinson(2, fp()).unwrap();
        let es = primitive_idempotents(b2.structure_constants(), 6).unwrap();
        assert_eq!(es.len(), 3);
        let ut = FdAlgebra::upper_triangular(fp(), 3);
        assert_eq!(primitive_idempotents(&ut, 7).unwrap().len(), 3);
    }
}
