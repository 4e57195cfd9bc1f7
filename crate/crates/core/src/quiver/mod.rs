//! Quivers with relations, normal-form bases and structure constants.
//!
//! Paths compose left to right: `p·q` traverses `p` first. A right module is
//! a representation assigning to an arrow `s → t` a linear map `V_s → V_t`.

mod basis;
mod fdalgebra;
mod json;
mod presentation;

use std::sync::{Arc, OnceLock};

pub use basis::{algebra_basis, BasisElement, Component, PathBasis};
pub use fdalgebra::FdAlgebra;
pub(crate) use fdalgebra::sparse;
pub use json::{canonical_hash, AlgebraFile};
pub use presentation::{
    beilinson_arrow, build_beilinson, build_exterior, build_semisimple, Arrow, Path, Presentation,
    Quiver, Relation,
};

use crate::error::Result;
use crate::linalg::Field;

struct Inner<K: Field> {
    presentation: Presentation<K>,
    basis: PathBasis<K>,
    structure: OnceLock<FdAlgebra<K>>,
    hash: OnceLock<String>,
}

/// A presented algebra together with its normal-form basis. Cloning is cheap.
#[derive(Clone)]
pub struct Algebra<K: Field>(Arc<Inner<K>>);

impl<K: Field> std::fmt::Debug for Algebra<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra")
            .field("vertices", &self.vertex_count())
            .field("arrows", &self.arrow_count())
            .field("dim", &self.dim())
            .finish()
    }
}

impl<K: Field> PartialEq for Algebra<K> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.hash() == other.hash()
    }
}

impl<K: Field> Algebra<K> {
    pub fn new(presentation: Presentation<K>) -> Result<Self> {
        let basis = algebra_basis(&presentation)?;
        Ok(Algebra(Arc::new(Inner {
            presentation,
            basis,
            structure: OnceLock::new(),
            hash: OnceLock::new(),
        })))
    }

    pub fn beilinson(n: usize, field: K) -> Result<Self> {
        Self::new(build_beilinson(n, field)?)
    }

    pub fn exterior(n: usize, field: K) -> Result<Self> {
        Self::new(build_exterior(n, field)?)
    }

    pub fn semisimple(vertices: usize, field: K) -> Result<Self> {
        Self::new(build_semisimple(vertices, field)?)
    }

    pub fn presentation(&self) -> &Presentation<K> {
        &self.0.presentation
    }

    pub fn basis(&self) -> &PathBasis<K> {
        &self.0.basis
    }

    pub fn field(&self) -> &K {
        self.0.presentation.field()
    }

    pub fn quiver(&self) -> &Quiver {
        self.0.presentation.quiver()
    }

    pub fn dim(&self) -> usize {
        self.0.basis.total_dim()
    }

    pub fn vertex_count(&self) -> usize {
        self.0.presentation.vertex_count()
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver().arrows().len()
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        self.quiver().arrow(i)
    }

    pub fn loewy_length(&self) -> usize {
        self.0.basis.loewy_length()
    }

    /// `b_i · b_j` in sparse global coordinates.
    pub fn multiply(&self, i: usize, j: usize) -> Vec<(usize, K::Elem)> {
        let (a, b) = (self.basis().element(i), self.basis().element(j));
        if a.target != b.source {
            return Vec::new();
        }
        let mut arrows = a.path.clone();
        arrows.extend_from_slice(&b.path);
        self.basis().reduce(&Path {
            source: a.source,
            target: b.target,
            arrows,
        })
    }

    /// `b_i · arrow`, zero unless `b_i` ends where the arrow starts.
    pub fn times_arrow(&self, i: usize, arrow: usize) -> Vec<(usize, K::Elem)> {
        let e = self.basis().element(i);
        let a = self.arrow(arrow);
        if e.target != a.source {
            return Vec::new();
        }
        let mut arrows = e.path.clone();
        arrows.push(arrow);
        self.basis().reduce(&Path {
            source: e.source,
            target: a.target,
            arrows,
        })
    }

    /// `arrow · b_i`, zero unless `b_i` starts where the arrow ends.
    pub fn arrow_times(&self, arrow: usize, i: usize) -> Vec<(usize, K::Elem)> {
        let e = self.basis().element(i);
        let a = self.arrow(arrow);
        if e.source != a.target {
            return Vec::new();
        }
        let mut arrows = vec![arrow];
        arrows.extend_from_slice(&e.path);
        self.basis().reduce(&Path {
            source: a.source,
            target: e.target,
            arrows,
        })
    }

    pub fn basis_label(&self, i: usize) -> String {
        let e = self.basis().element(i);
        Path {
            source: e.source,
            target: e.target,
            arrows: e.path.clone(),
        }
        .label(self.quiver())
    }

    /// Global index of the idempotent `e_v`.
    pub fn idempotent_index(&self, v: usize) -> usize {
        self.basis()
            .index_of(&Path::trivial(v))
            .expect("vertex idempotents are normal")
    }

    /// The algebra as structure constants; computed once.
    pub fn structure_constants(&self) -> &FdAlgebra<K> {
        self.0.structure.get_or_init(|| structure_constants(self))
    }

    /// Hex digest of the canonical JSON serialization.
    pub fn hash(&self) -> &str {
        self.0.hash.get_or_init(|| canonical_hash(self.presentation()))
    }
}

/// Multiplication table of the normal-form basis, with the vertex
/// idempotents as the distinguished complete set.
pub fn structure_constants<K: Field>(alg: &Algebra<K>) -> FdAlgebra<K> {
    let d = alg.dim();
    let f = alg.field();
    let mut products = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            products.push(alg.multiply(i, j));
        }
    }
    let mut unit = vec![f.zero(); d];
    let mut idempotents = Vec::new();
    for v in 0..alg.vertex_count() {
        let k = alg.idempotent_index(v);
        unit[k] = f.one();
        let mut e = vec![f.zero(); d];
        e[k] = f.one();
        idempotents.push(e);
    }
    let labels = (0..d).map(|i| alg.basis_label(i)).collect();
    FdAlgebra::new_unchecked(f.clone(), labels, products, unit, idempotents)
        .expect("normal-form products are well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn beilinson_dim_oracle(n: u64) -> u64 {
        (0..=n).map(|d| (n + 1 - d) * binom(d + n, n)).sum()
    }

    #[test]
    fn beilinson_dimensions() {
        for n in 1..=3 {
            let a = Algebra::beilinson(n, Rationals).unwrap();
            assert_eq!(a.dim() as u64, beilinson_dim_oracle(n as u64));
            for i in 0..=n {
                for j in 0..=n {
                    let expect = if i <= j { binom((j - i + n) as u64, n as u64) } else { 0 };
                    assert_eq!(a.basis().corner_dim(i, j) as u64, expect, "n={n} ({i},{j})");
                }
            }
            assert_eq!(a.loewy_length(), n + 1);
        }
        assert_eq!(Algebra::beilinson(1, Rationals).unwrap().dim(), 4);
        assert_eq!(Algebra::beilinson(2, Rationals).unwrap().dim(), 15);
    }

    #[test]
    fn exterior_dimensions() {
        for (n, d) in [(1, 2), (2, 4), (3, 8)] {
            let a = Algebra::exterior(n, PrimeField::new(101).unwrap()).unwrap();
            assert_eq!(a.dim(), d);
            assert_eq!(a.loewy_length(), n + 1);
        }
    }

    #[test]
    fn products_and_relations() {
        let a = Algebra::beilinson(1, Rationals).unwrap();
        let labels: Vec<String> = (0..a.dim()).map(|i| a.basis_label(i)).collect();
        assert_eq!(labels, ["e0", "e1", "x0_0", "x1_0"]);
        let one = Rationals.one();
        assert_eq!(a.multiply(0, 2), vec![(2, one.clone())]);
        assert_eq!(a.multiply(2, 1), vec![(2, one)]);
        assert!(a.multiply(1, 2).is_empty());

        let a = Algebra::beilinson(2, Rationals).unwrap();
        let b = a.basis();
        let x01 = Path::from_arrows(a.quiver(), vec![beilinson_arrow(2, 0, 0), beilinson_arrow(2, 1, 1)]).unwrap();
        let x10 = Path::from_arrows(a.quiver(), vec![beilinson_arrow(2, 0, 1), beilinson_arrow(2, 1, 0)]).unwrap();
        assert_eq!(b.reduce(&x01), b.reduce(&x10));
        for alg in [a, Algebra::exterior(3, Rationals).unwrap()] {
            for r in alg.presentation().relations() {
                let mut acc = vec![Rationals.zero(); alg.dim()];
                for (c, p) in &r.terms {
                    for (k, v) in alg.basis().reduce(p) {
                        acc[k] = &acc[k] + c * v;
                    }
                }
                assert!(acc.iter().all(|v| Rationals.is_zero(v)));
            }
            let sc = alg.structure_constants();
            sc.check_associative().unwrap();
            sc.check_unit().unwrap();
            sc.check_idempotents().unwrap();
        }
    }
}
