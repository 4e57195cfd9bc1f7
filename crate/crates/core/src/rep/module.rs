use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::quiver::{Algebra, Path};

struct RepData<K: Field> {
    algebra: Algebra<K>,
    dims: Vec<usize>,
    maps: Vec<Matrix<K>>,
}

/// A right module given as a representation: one space per vertex and, for
/// each arrow `s → t`, a `dims[t] × dims[s]` matrix. Cloning is cheap.
#[derive(Clone)]
pub struct Rep<K: Field>(Arc<RepData<K>>);

impl<K: Field> std::fmt::Debug for Rep<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Rep").field("dims", &self.dims()).finish()
    }
}

impl<K: Field> PartialEq for Rep<K> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.algebra == other.0.algebra && self.0.dims == other.0.dims && self.0.maps == other.0.maps)
    }
}

impl<K: Field> Rep<K> {
    /// Checks matrix shapes and that every relation acts as zero.
    pub fn new(algebra: &Algebra<K>, dims: Vec<usize>, maps: Vec<Matrix<K>>) -> Result<Self> {
        if dims.len() != algebra.vertex_count() || maps.len() != algebra.arrow_count() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} vertex spaces and {} arrow maps",
                algebra.vertex_count(),
                algebra.arrow_count()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            let a = algebra.arrow(i);
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} needs a {}×{} matrix, got {}×{}",
                    a.label,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let rep = Self::new_unchecked(algebra, dims, maps);
        for (k, r) in algebra.presentation().relations().iter().enumerate() {
            let mut acc = Matrix::zeros(algebra.field(), rep.dim_at(r.target), rep.dim_at(r.source));
            for (c, p) in &r.terms {
                acc = acc.add(&rep.path_action(p).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidInput(format!("relation {k} does not act as zero")));
            }
        }
        if let Some(bound) = algebra.presentation().nilpotency_bound() {
            for v in 0..algebra.vertex_count() {
                for w in 0..algebra.vertex_count() {
                    for p in algebra.quiver().paths(v, w, bound) {
                        let path = Path { source: v, target: w, arrows: p };
                        if !rep.path_action(&path).is_zero() {
                            return Err(Error::InvalidInput(format!(
                                "a path of length {bound} acts nontrivially"
                            )));
                        }
                    }
                }
            }
        }
        Ok(rep)
    }

    pub(crate) fn new_unchecked(algebra: &Algebra<K>, dims: Vec<usize>, maps: Vec<Matrix<K>>) -> Self {
        debug_assert_eq!(maps.len(), algebra.arrow_count());
        Rep(Arc::new(RepData {
            algebra: algebra.clone(),
            dims,
            maps,
        }))
    }

    pub fn zero(algebra: &Algebra<K>) -> Self {
        let f = algebra.field();
        let maps = (0..algebra.arrow_count()).map(|_| Matrix::zeros(f, 0, 0)).collect();
        Self::new_unchecked(algebra, vec![0; algebra.vertex_count()], maps)
    }

    pub fn algebra(&self) -> &Algebra<K> {
        &self.0.algebra
    }

    pub fn field(&self) -> &K {
        self.0.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.0.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn arrow_map(&self, a: usize) -> &Matrix<K> {
        &self.0.maps[a]
    }

    pub fn arrow_maps(&self) -> &[Matrix<K>] {
        &self.0.maps
    }

    /// Offset of vertex `v` in the concatenation of all vertex spaces.
    pub fn offset(&self, v: usize) -> usize {
        self.0.dims[..v].iter().sum()
    }

    /// The linear map of a path: the product of its arrow matrices, last arrow leftmost.
    pub fn path_action(&self, path: &Path) -> Matrix<K> {
        let mut m = Matrix::identity(self.field(), self.dim_at(path.source));
        for &a in &path.arrows {
            m = self.arrow_map(a).mul(&m);
        }
        m
    }

    /// Same algebra check used before combining modules.
    pub(crate) fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.0.algebra == other.0.algebra {
            Ok(())
        } else {
            Err(Error::InvalidInput("modules over different algebras".into()))
        }
    }
}

/// A module homomorphism, one matrix per vertex (`dims_target[v] × dims_source[v]`).
#[derive(Clone, Debug, PartialEq)]
pub struct RepMap<K: Field> {
    source: Rep<K>,
    target: Rep<K>,
    components: Vec<Matrix<K>>,
}

impl<K: Field> RepMap<K> {
    /// Checks shapes and the intertwining identities.
    pub fn new(source: &Rep<K>, target: &Rep<K>, components: Vec<Matrix<K>>) -> Result<Self> {
        source.same_algebra(target)?;
        let alg = source.algebra();
        if components.len() != alg.vertex_count() {
            return Err(Error::DimensionMismatch("one matrix per vertex expected".into()));
        }
        for (v, c) in components.iter().enumerate() {
            if c.shape() != (target.dim_at(v), source.dim_at(v)) {
                return Err(Error::DimensionMismatch(format!("component at vertex {v}")));
            }
        }
        for (i, a) in alg.quiver().arrows().iter().enumerate() {
            let lhs = target.arrow_map(i).mul(&components[a.source]);
            let rhs = components[a.target].mul(source.arrow_map(i));
            if lhs != rhs {
                return Err(Error::NotAHomomorphism(format!("fails to commute with arrow {}", a.label)));
            }
        }
        Ok(Self::new_unchecked(source, target, components))
    }

    pub(crate) fn new_unchecked(source: &Rep<K>, target: &Rep<K>, components: Vec<Matrix<K>>) -> Self {
        debug_assert!(components
            .iter()
            .enumerate()
            .all(|(v, c)| c.shape() == (target.dim_at(v), source.dim_at(v))));
        RepMap {
            source: source.clone(),
            target: target.clone(),
            components,
        }
    }

    pub fn identity(x: &Rep<K>) -> Self {
        let comps = x.dims().iter().map(|&d| Matrix::identity(x.field(), d)).collect();
        Self::new_unchecked(x, x, comps)
    }

    pub fn zero(source: &Rep<K>, target: &Rep<K>) -> Self {
        let comps = (0..source.dims().len())
            .map(|v| Matrix::zeros(source.field(), target.dim_at(v), source.dim_at(v)))
            .collect();
        Self::new_unchecked(source, target, comps)
    }

    pub fn source(&self) -> &Rep<K> {
        &self.source
    }

    pub fn target(&self) -> &Rep<K> {
        &self.target
    }

    pub fn component(&self, v: usize) -> &Matrix<K> {
        &self.components[v]
    }

    pub fn components(&self) -> &[Matrix<K>] {
        &self.components
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RepMap<K>) -> RepMap<K> {
        debug_assert_eq!(self.target.dims(), other.source.dims());
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| b.mul(a))
            .collect();
        Self::new_unchecked(&self.source, &other.target, comps)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RepMap<K>) -> RepMap<K> {
        other.then(self)
    }

    pub fn add(&self, other: &RepMap<K>) -> RepMap<K> {
        let comps = self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect();
        Self::new_unchecked(&self.source, &self.target, comps)
    }

    pub fn sub(&self, other: &RepMap<K>) -> RepMap<K> {
        let comps = self.components.iter().zip(&other.components).map(|(a, b)| a.sub(b)).collect();
        Self::new_unchecked(&self.source, &self.target, comps)
    }

    pub fn scale(&self, c: &K::Elem) -> RepMap<K> {
        let comps = self.components.iter().map(|a| a.scale(c)).collect();
        Self::new_unchecked(&self.source, &self.target, comps)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(|c| c.is_identity())
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank()).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.total_dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.total_dim()
    }

    pub fn inverse(&self) -> Option<RepMap<K>> {
        let comps = self
            .components
            .iter()
            .map(|c| if c.rows() == 0 && c.cols() == 0 { Some(c.clone()) } else { c.inverse() })
            .collect::<Option<Vec<_>>>()?;
        Some(Self::new_unchecked(&self.target, &self.source, comps))
    }

    /// All entries, vertex by vertex in row-major order.
    pub fn flatten(&self) -> Vec<K::Elem> {
        self.components.iter().flat_map(|c| c.data().iter().cloned()).collect()
    }

    pub(crate) fn from_flat(source: &Rep<K>, target: &Rep<K>, flat: &[K::Elem]) -> Self {
        let f = source.field();
        let mut pos = 0;
        let comps = (0..source.dims().len())
            .map(|v| {
                let (r, c) = (target.dim_at(v), source.dim_at(v));
                let m = Matrix::new(f.clone(), r, c, flat[pos..pos + r * c].to_vec()).expect("shape");
                pos += r * c;
                m
            })
            .collect();
        Self::new_unchecked(source, target, comps)
    }

    /// The whole map as one block-diagonal matrix on the total spaces.
    pub fn total_matrix(&self) -> Matrix<K> {
        let refs: Vec<&Matrix<K>> = self.components.iter().collect();
        Matrix::block_diag(self.source.field(), &refs)
    }

    /// Applies a polynomial to an endomorphism.
    pub fn eval_poly(&self, p: &crate::linalg::Poly<K>) -> RepMap<K> {
        let comps = self.components.iter().map(|c| c.eval_poly(p)).collect();
        Self::new_unchecked(&self.source, &self.target, comps)
    }
}

/// Linear combination `Σ c_i f_i` of parallel maps.
pub fn combine<K: Field>(source: &Rep<K>, target: &Rep<K>, coeffs: &[K::Elem], maps: &[RepMap<K>]) -> RepMap<K> {
    let mut acc = RepMap::zero(source, target);
    for (c, m) in coeffs.iter().zip(maps) {
        if !source.field().is_zero(c) {
            acc = acc.add(&m.scale(c));
        }
    }
    acc
}
