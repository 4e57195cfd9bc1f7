use std::sync::Arc;

use super::end::EndAlgebra;
use super::idempotents::primitive_idempotents_with;
use super::radical::{jacobson_radical, RadicalData};
use crate::error::{Error, Result};
use crate::homalg::PdValue;
use crate::linalg::{Field, Matrix, Subspace};
use crate::quiver::FdAlgebra;
use crate::rep::{hom_basis, Rep};

/// A finite-dimensional right module over a structure-constant algebra.
/// `action[k]` is the matrix of `v ↦ v·b_k` on column vectors.
#[derive(Clone, Debug)]
pub struct FdModule<K: Field> {
    algebra: Arc<FdAlgebra<K>>,
    dim: usize,
    action: Vec<Matrix<K>>,
}

impl<K: Field> FdModule<K> {
    /// Checks that the unit acts as the identity and `ρ(b_i b_j) = ρ(b_j) ρ(b_i)`.
    pub fn new(algebra: Arc<FdAlgebra<K>>, dim: usize, action: Vec<Matrix<K>>) -> Result<Self> {
        if action.len() != algebra.dim() || action.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::DimensionMismatch("one square action matrix per basis element".into()));
        }
        let m = Self::new_unchecked(algebra, dim, action);
        if !m.action_of(m.algebra.unit()).is_identity() {
            return Err(Error::InvalidInput("the unit does not act as the identity".into()));
        }
        let d = m.algebra.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = m.action_of(&m.algebra.dense_product(i, j));
                let rhs = m.action[j].mul(&m.action[i]);
                if lhs != rhs {
                    return Err(Error::InvalidInput(format!(
                        "action is incompatible with the product of basis elements {i} and {j}"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(algebra: Arc<FdAlgebra<K>>, dim: usize, action: Vec<Matrix<K>>) -> Self {
        FdModule { algebra, dim, action }
    }

    pub fn regular(algebra: Arc<FdAlgebra<K>>) -> Self {
        let action = (0..algebra.dim())
            .map(|k| algebra.right_mul_matrix(&algebra.basis_vector(k)))
            .collect();
        let d = algebra.dim();
        Self::new_unchecked(algebra, d, action)
    }

    pub fn zero(algebra: Arc<FdAlgebra<K>>) -> Self {
        let f = algebra.field().clone();
        let action = (0..algebra.dim()).map(|_| Matrix::zeros(&f, 0, 0)).collect();
        Self::new_unchecked(algebra, 0, action)
    }

    pub fn algebra(&self) -> &Arc<FdAlgebra<K>> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, k: usize) -> &Matrix<K> {
        &self.action[k]
    }

    pub fn field(&self) -> &K {
        self.algebra.field()
    }

    /// Matrix of `v ↦ v·a` for an algebra element in coordinates.
    pub fn action_of(&self, a: &[K::Elem]) -> Matrix<K> {
        let f = self.field();
        let mut m = Matrix::zeros(f, self.dim, self.dim);
        for (k, c) in a.iter().enumerate() {
            if !f.is_zero(c) {
                m = m.add(&self.action[k].scale(c));
            }
        }
        m
    }

    /// The submodule generated by the columns of `gens`.
    pub fn generated(&self, gens: &Matrix<K>) -> Subspace<K> {
        let f = self.field();
        let mut basis = gens.column_space();
        loop {
            let mut parts = vec![basis.clone()];
            for m in &self.action {
                parts.push(m.mul(&basis));
            }
            let refs: Vec<&Matrix<K>> = parts.iter().collect();
            let next = Matrix::hstack(f, self.dim, &refs).column_space();
            if next.cols() == basis.cols() {
                return Subspace::from_basis(basis);
            }
            basis = next;
        }
    }

    /// The submodule on an invariant subspace.
    pub fn submodule(&self, sub: &Subspace<K>) -> FdModule<K> {
        let action = self.action.iter().map(|m| sub.coords(&m.mul(sub.basis()))).collect();
        Self::new_unchecked(self.algebra.clone(), sub.dim(), action)
    }

    /// `V·rad`, spanned by the action of the radical basis.
    pub fn radical_span(&self, rad: &RadicalData<K>) -> Subspace<K> {
        let f = self.field();
        let parts: Vec<Matrix<K>> = rad.basis.iter().map(|r| self.action_of(r)).collect();
        let refs: Vec<&Matrix<K>> = parts.iter().collect();
        Subspace::span(&Matrix::hstack(f, self.dim, &refs))
    }

    pub fn direct_sum(algebra: &Arc<FdAlgebra<K>>, parts: &[FdModule<K>]) -> FdModule<K> {
        let f = algebra.field();
        let dim = parts.iter().map(|p| p.dim).sum();
        let action = (0..algebra.dim())
            .map(|k| {
                let blocks: Vec<&Matrix<K>> = parts.iter().map(|p| &p.action[k]).collect();
                Matrix::block_diag(f, &blocks)
            })
            .collect();
        Self::new_unchecked(algebra.clone(), dim, action)
    }
}

/// An indecomposable projective `eA` with its simple top.
#[derive(Clone, Debug)]
pub struct FdProjective<K: Field> {
    pub idempotent: Vec<K::Elem>,
    /// Columns: the basis of `eA` inside `A`.
    pub basis: Matrix<K>,
    pub module: FdModule<K>,
    pub simple: FdModule<K>,
    /// Number of primitive idempotents in this isomorphism class.
    pub multiplicity: usize,
}

/// Radical, idempotents and projective/simple modules of an algebra.
#[derive(Clone, Debug)]
pub struct FdTheory<K: Field> {
    pub algebra: Arc<FdAlgebra<K>>,
    pub radical: RadicalData<K>,
    pub idempotents: Vec<Vec<K::Elem>>,
    pub projectives: Vec<FdProjective<K>>,
}

/// Columns spanning `x A y`.
fn two_sided_span<K: Field>(a: &FdAlgebra<K>, x: &[K::Elem], y: &[K::Elem]) -> Matrix<K> {
    let cols: Vec<Vec<K::Elem>> = (0..a.dim()).map(|k| a.mul(&a.mul(x, &a.basis_vector(k)), y)).collect();
    Matrix::from_columns(a.field(), a.dim(), &cols).column_space()
}

impl<K: Field> FdTheory<K> {
    pub fn new(algebra: FdAlgebra<K>, seed: u64) -> Result<Self> {
        let algebra = Arc::new(algebra);
        let a = &*algebra;
        let radical = jacobson_radical(a)?;
        let idempotents = primitive_idempotents_with(a, &radical, seed)?;
        let rad_sub = radical.subspace(a);
        let f = a.field();

        // group idempotents with isomorphic projectives
        let mut reps: Vec<(usize, usize)> = Vec::new();
        'outer: for (i, e) in idempotents.iter().enumerate() {
            for (j, count) in reps.iter_mut() {
                let g = &idempotents[*j];
                let xs = two_sided_span(a, e, g);
                let ys = two_sided_span(a, g, e);
                let linked = (0..xs.cols()).any(|p| {
                    (0..ys.cols()).any(|q| {
                        let prod = a.mul(&xs.column(p), &ys.column(q));
                        !rad_sub.contains(&Matrix::column_vector(f, prod))
                    })
                });
                if linked {
                    *count += 1;
                    continue 'outer;
                }
            }
            reps.push((i, 1));
        }

        let regular = FdModule::regular(algebra.clone());
        let projectives = reps
            .into_iter()
            .map(|(i, multiplicity)| {
                let e = idempotents[i].clone();
                let basis = two_sided_span(a, &e, a.unit());
                let module = regular.submodule(&Subspace::from_basis(basis.clone()));
                let top = quotient_module(&module, &module.radical_span(&radical));
                FdProjective {
                    idempotent: e,
                    basis,
                    module,
                    simple: top,
                    multiplicity,
                }
            })
            .collect();
        Ok(FdTheory {
            algebra,
            radical,
            idempotents,
            projectives,
        })
    }

    /// Minimal projective cover: greedily adds `e_i`-homogeneous generators
    /// until they generate modulo `V·rad`. Returns the cover's summand
    /// classes and the epimorphism matrix.
    pub fn projective_cover(&self, v: &FdModule<K>) -> (Vec<usize>, FdModule<K>, Matrix<K>) {
        let f = self.algebra.field();
        let rad = v.radical_span(&self.radical);
        let mut span = rad.basis().clone();
        let mut current = rad.dim();
        let mut classes = Vec::new();
        let mut images: Vec<Matrix<K>> = Vec::new();
        for (ci, p) in self.projectives.iter().enumerate() {
            if current == v.dim() {
                break;
            }
            let cand = v.action_of(&p.idempotent);
            for j in 0..cand.cols() {
                if current == v.dim() {
                    break;
                }
                let w = cand.block(0, j, v.dim(), 1);
                let trial = Matrix::hstack(f, v.dim(), &[&span, &w]);
                let sub = v.generated(&trial);
                if sub.dim() > current {
                    current = sub.dim();
                    span = sub.basis().clone();
                    classes.push(ci);
                    // image of the basis of e_iA under e_i ↦ w
                    let wv = w.column(0);
                    let cols: Vec<Vec<K::Elem>> = (0..p.basis.cols())
                        .map(|c| v.action_of(&p.basis.column(c)).mul_vec(&wv))
                        .collect();
                    images.push(Matrix::from_columns(f, v.dim(), &cols));
                }
            }
        }
        let parts: Vec<FdModule<K>> = classes.iter().map(|&c| self.projectives[c].module.clone()).collect();
        let cover = FdModule::direct_sum(&self.algebra, &parts);
        let refs: Vec<&Matrix<K>> = images.iter().collect();
        let epi = Matrix::hstack(f, v.dim(), &refs);
        (classes, cover, epi)
    }

    /// Minimal projective resolution: projective class multiplicities per
    /// degree, and the projective dimension with cutoff semantics.
    pub fn resolve(&self, v: &FdModule<K>, cutoff: usize) -> (Vec<Vec<usize>>, PdValue) {
        let mut betti = Vec::new();
        let mut cur = v.clone();
        if cur.dim() == 0 {
            return (betti, PdValue::exact(0));
        }
        for i in 0..cutoff {
            let (classes, cover, epi) = self.projective_cover(&cur);
            let mut counts = vec![0; self.projectives.len()];
            for c in classes {
                counts[c] += 1;
            }
            betti.push(counts);
            let ker = Subspace::from_basis(epi.kernel_basis());
            if ker.dim() == 0 {
                return (betti, PdValue::exact(i));
            }
            cur = cover.submodule(&ker);
        }
        (betti, PdValue::at_least(cutoff))
    }

    pub fn projective_dimension(&self, v: &FdModule<K>, cutoff: usize) -> PdValue {
        self.resolve(v, cutoff).1
    }

    /// Maximum projective dimension of the simples.
    pub fn global_dimension(&self, cutoff: usize) -> PdValue {
        self.projectives
            .iter()
            .map(|p| self.projective_dimension(&p.simple, cutoff))
            .fold(PdValue::exact(0), PdValue::max)
    }
}

/// `V / U` on the complement of `U` spanned by standard basis vectors.
pub fn quotient_module<K: Field>(v: &FdModule<K>, u: &Subspace<K>) -> FdModule<K> {
    let q = crate::linalg::Quotient::new(u);
    let action = (0..v.algebra.dim())
        .map(|k| q.projection().mul(&v.action(k).mul(q.complement())))
        .collect();
    FdModule::new_unchecked(v.algebra.clone(), q.dim(), action)
}

/// Global dimension of a finite-dimensional algebra, with cutoff semantics.
pub fn fd_global_dimension<K: Field>(a: &FdAlgebra<K>, cutoff: usize) -> Result<PdValue> {
    Ok(FdTheory::new(a.clone(), 0)?.global_dimension(cutoff))
}

/// Projective and simple modules, one pair per isomorphism class.
pub fn fd_projectives_and_simples<K: Field>(a: &FdAlgebra<K>, seed: u64) -> Result<Vec<(FdModule<K>, FdModule<K>)>> {
    Ok(FdTheory::new(a.clone(), seed)?
        .projectives
        .into_iter()
        .map(|p| (p.module, p.simple))
        .collect())
}

/// `Hom(m, x)` as a right `End(m)`-module by precomposition.
pub fn hom_functor_module<K: Field>(end: &EndAlgebra<K>, algebra: &Arc<FdAlgebra<K>>, x: &Rep<K>) -> FdModule<K> {
    let f = x.field();
    let homs = hom_basis(&end.module, x);
    let r = homs.len();
    if r == 0 {
        return FdModule::zero(algebra.clone());
    }
    let len = homs[0].flatten().len();
    let cols: Vec<Vec<K::Elem>> = homs.iter().map(|h| h.flatten()).collect();
    let space = Subspace::from_basis(Matrix::from_columns(f, len, &cols));
    let action = end
        .basis
        .iter()
        .map(|b| {
            let imgs: Vec<Vec<K::Elem>> = homs.iter().map(|h| b.then(h).flatten()).collect();
            space.coords(&Matrix::from_columns(f, len, &imgs))
        })
        .collect();
    FdModule::new_unchecked(algebra.clone(), r, action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::end_algebra;
    use crate::linalg::PrimeField;
    use crate::quiver::Algebra;
    use crate::rep::{direct_sum, dual_regular, projective, regular};

    fn fp() -> PrimeField {
        PrimeField::new(1_000_003).unwrap()
    }

    #[test]
    fn small_global_dimensions() {
        let f = fp();
        assert_eq!(fd_global_dimension(&FdAlgebra::product_of_fields(f, 2), 8).unwrap(), PdValue::exact(0));
        assert_eq!(fd_global_dimension(&FdAlgebra::matrix_algebra(f, 2), 8).unwrap(), PdValue::exact(0));
        assert_eq!(fd_global_dimension(&FdAlgebra::upper_triangular(f, 3), 8).unwrap(), PdValue::exact(1));
        let b1 = Algebra::beilinson(1, f).unwrap();
        assert_eq!(fd_global_dimension(b1.structure_constants(), 8).unwrap(), PdValue::exact(1));
        let b2 = Algebra::beilinson(2, f).unwrap();
        assert_eq!(fd_global_dimension(b2.structure_constants(), 8).unwrap(), PdValue::exact(2));
        let ext = Algebra::exterior(1, f).unwrap();
        assert_eq!(fd_global_dimension(ext.structure_constants(), 5).unwrap(), PdValue::at_least(5));
    }

    #[test]
    fn projective_shapes() {
        let f = fp();
        let b1 = Algebra::beilinson(1, f).unwrap();
        let ps = fd_projectives_and_simples(b1.structure_constants(), 3).unwrap();
        let mut dims: Vec<usize> = ps.iter().map(|(p, _)| p.dim()).collect();
        dims.sort();
        assert_eq!(dims, [1, 3]);
        let m2 = fd_projectives_and_simples(&FdAlgebra::matrix_algebra(f, 2), 3).unwrap();
        assert_eq!(m2.len(), 1);
        assert_eq!((m2[0].0.dim(), m2[0].1.dim()), (2, 2));
    }

    #[test]
    fn endomorphism_algebras() {
        let f = fp();
        let b1 = Algebra::beilinson(1, f).unwrap();
        assert_eq!(end_algebra(&projective(&b1, 0)).unwrap().algebra.dim(), 1);
        let e = end_algebra(&regular(&b1)).unwrap();
        assert_eq!(e.algebra.dim(), 4);
        e.algebra.check_associative().unwrap();
        let m = direct_sum(&b1, &[regular(&b1), dual_regular(&b1)]);
        let e = end_algebra(&m).unwrap();
        assert_eq!(e.algebra.dim(), 12);
        let theory = FdTheory::new(e.algebra.clone(), 11).unwrap();
        assert_eq!(theory.idempotents.len(), 4);
        let alg = theory.algebra.clone();
        let hm = hom_functor_module(&e, &alg, &m);
        assert_eq!(hm.dim(), 12);
        FdModule::new(alg, hm.dim(), (0..12).map(|k| hm.action(k).clone()).collect()).unwrap();
    }
}
