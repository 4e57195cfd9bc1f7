use super::canonical::{map_from_projective, projective};
use super::module::{Rep, RepMap};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Quotient, Subspace};
use crate::quiver::Algebra;

/// Block-diagonal sum; the empty sum is the zero module.
pub fn direct_sum<K: Field>(alg: &Algebra<K>, parts: &[Rep<K>]) -> Rep<K> {
    let f = alg.field();
    let dims = (0..alg.vertex_count())
        .map(|v| parts.iter().map(|p| p.dim_at(v)).sum())
        .collect();
    let maps = (0..alg.arrow_count())
        .map(|a| {
            let blocks: Vec<&Matrix<K>> = parts.iter().map(|p| p.arrow_map(a)).collect();
            Matrix::block_diag(f, &blocks)
        })
        .collect();
    Rep::new_unchecked(alg, dims, maps)
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct Biproduct<K: Field> {
    pub sum: Rep<K>,
    pub injections: Vec<RepMap<K>>,
    pub projections: Vec<RepMap<K>>,
}

pub fn biproduct<K: Field>(alg: &Algebra<K>, parts: &[Rep<K>]) -> Biproduct<K> {
    let sum = direct_sum(alg, parts);
    let f = alg.field();
    let mut offsets = vec![0usize; alg.vertex_count()];
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    for p in parts {
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        for v in 0..alg.vertex_count() {
            let mut i = Matrix::zeros(f, sum.dim_at(v), p.dim_at(v));
            i.set_block(offsets[v], 0, &Matrix::identity(f, p.dim_at(v)));
            proj.push(i.transpose());
            inj.push(i);
            offsets[v] += p.dim_at(v);
        }
        injections.push(RepMap::new_unchecked(p, &sum, inj));
        projections.push(RepMap::new_unchecked(&sum, p, proj));
    }
    Biproduct {
        sum,
        injections,
        projections,
    }
}

/// The map `⊕ sources → target` with the given components.
pub fn map_from_sum<K: Field>(sum: &Rep<K>, maps: &[RepMap<K>], target: &Rep<K>) -> RepMap<K> {
    let f = target.field();
    let comps = (0..target.dims().len())
        .map(|v| {
            let blocks: Vec<&Matrix<K>> = maps.iter().map(|m| m.component(v)).collect();
            Matrix::hstack(f, target.dim_at(v), &blocks)
        })
        .collect();
    RepMap::new_unchecked(sum, target, comps)
}

/// The map `source → ⊕ targets` with the given components.
pub fn map_to_sum<K: Field>(source: &Rep<K>, maps: &[RepMap<K>], sum: &Rep<K>) -> RepMap<K> {
    let f = source.field();
    let comps = (0..source.dims().len())
        .map(|v| {
            let blocks: Vec<&Matrix<K>> = maps.iter().map(|m| m.component(v)).collect();
            Matrix::vstack(f, source.dim_at(v), &blocks)
        })
        .collect();
    RepMap::new_unchecked(source, sum, comps)
}

/// Block-diagonal map between two direct sums.
pub fn diagonal_map<K: Field>(source: &Rep<K>, maps: &[RepMap<K>], target: &Rep<K>) -> RepMap<K> {
    let f = source.field();
    let comps = (0..source.dims().len())
        .map(|v| {
            let blocks: Vec<&Matrix<K>> = maps.iter().map(|m| m.component(v)).collect();
            Matrix::block_diag(f, &blocks)
        })
        .collect();
    RepMap::new_unchecked(source, target, comps)
}

/// Intertwining constraints for `Hom(x, y)` on flattened unknowns
/// (vertex by vertex, row-major).
pub(crate) fn hom_system<K: Field>(x: &Rep<K>, y: &Rep<K>) -> Matrix<K> {
    let alg = x.algebra();
    let f = x.field();
    let nv = alg.vertex_count();
    let mut offsets = Vec::with_capacity(nv);
    let mut unknowns = 0;
    for v in 0..nv {
        offsets.push(unknowns);
        unknowns += y.dim_at(v) * x.dim_at(v);
    }
    let mut rows: Vec<Vec<K::Elem>> = Vec::new();
    for (ai, a) in alg.quiver().arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (xa, ya) = (x.arrow_map(ai), y.arrow_map(ai));
        let (ys, xs, xt) = (y.dim_at(s), x.dim_at(s), x.dim_at(t));
        // (Y_a φ_s - φ_t X_a)[i, j]
        for i in 0..y.dim_at(t) {
            for j in 0..xs {
                let mut row = vec![f.zero(); unknowns];
                let mut nonzero = false;
                for k in 0..ys {
                    let c = ya.get(i, k);
                    if !f.is_zero(c) {
                        let idx = offsets[s] + k * xs + j;
                        row[idx] = f.add(&row[idx], c);
                        nonzero = true;
                    }
                }
                for k in 0..xt {
                    let c = xa.get(k, j);
                    if !f.is_zero(c) {
                        let idx = offsets[t] + i * xt + k;
                        row[idx] = f.sub(&row[idx], c);
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        Matrix::zeros(f, 0, unknowns)
    } else {
        Matrix::from_rows(f, rows).expect("rectangular")
    }
}

/// A basis of `Hom(x, y)`.
pub fn hom_basis<K: Field>(x: &Rep<K>, y: &Rep<K>) -> Vec<RepMap<K>> {
    let sys = hom_system(x, y);
    let ker = sys.kernel_basis();
    (0..ker.cols())
        .map(|j| RepMap::from_flat(x, y, &ker.column(j)))
        .collect()
}

pub fn hom_dim<K: Field>(x: &Rep<K>, y: &Rep<K>) -> usize {
    let sys = hom_system(x, y);
    sys.cols() - sys.rank()
}

/// The subrepresentation spanned at each vertex by the columns of `spans`,
/// which must be closed under the arrows. Returns it with its inclusion.
pub fn subrep<K: Field>(x: &Rep<K>, spans: &[Matrix<K>]) -> (Rep<K>, RepMap<K>) {
    let alg = x.algebra();
    let subs: Vec<Subspace<K>> = spans.iter().map(Subspace::span).collect();
    let dims = subs.iter().map(|s| s.dim()).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let img = x.arrow_map(ai).mul(subs[a.source].basis());
            debug_assert!(subs[a.target].contains(&img), "span not closed under arrows");
            subs[a.target].coords(&img)
        })
        .collect();
    let sub = Rep::new_unchecked(alg, dims, maps);
    let inc = subs.iter().map(|s| s.basis().clone()).collect();
    let inc = RepMap::new_unchecked(&sub, x, inc);
    (sub, inc)
}

/// The quotient by a subrepresentation given by spanning columns, with its projection.
pub fn quotient_rep<K: Field>(x: &Rep<K>, spans: &[Matrix<K>]) -> (Rep<K>, RepMap<K>) {
    let alg = x.algebra();
    let quos: Vec<Quotient<K>> = spans.iter().map(|m| Quotient::new(&Subspace::span(m))).collect();
    let dims = quos.iter().map(|q| q.dim()).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            quos[a.target]
                .projection()
                .mul(&x.arrow_map(ai).mul(quos[a.source].complement()))
        })
        .collect();
    let q = Rep::new_unchecked(alg, dims, maps);
    let proj = quos.iter().map(|q| q.projection().clone()).collect();
    let proj = RepMap::new_unchecked(x, &q, proj);
    (q, proj)
}

/// Kernel, image and cokernel of a map, with their structure maps.
#[derive(Clone, Debug)]
pub struct Factorization<K: Field> {
    pub kernel: Rep<K>,
    pub kernel_inclusion: RepMap<K>,
    pub image: Rep<K>,
    pub coimage_map: RepMap<K>,
    pub image_inclusion: RepMap<K>,
    pub cokernel: Rep<K>,
    pub cokernel_projection: RepMap<K>,
}

pub fn kernel<K: Field>(f: &RepMap<K>) -> (Rep<K>, RepMap<K>) {
    let spans: Vec<Matrix<K>> = f.components().iter().map(|c| c.kernel_basis()).collect();
    subrep(f.source(), &spans)
}

pub fn image<K: Field>(f: &RepMap<K>) -> (Rep<K>, RepMap<K>) {
    let spans: Vec<Matrix<K>> = f.components().iter().map(|c| c.column_space()).collect();
    subrep(f.target(), &spans)
}

pub fn cokernel<K: Field>(f: &RepMap<K>) -> (Rep<K>, RepMap<K>) {
    let spans: Vec<Matrix<K>> = f.components().to_vec();
    quotient_rep(f.target(), &spans)
}

pub fn map_factorization<K: Field>(f: &RepMap<K>) -> Factorization<K> {
    let (kernel, kernel_inclusion) = kernel(f);
    let (image, image_inclusion) = image(f);
    let coimage = f
        .components()
        .iter()
        .enumerate()
        .map(|(v, c)| {
            let basis = image_inclusion.component(v);
            Subspace::from_basis(basis.clone()).coords(c)
        })
        .collect();
    let coimage_map = RepMap::new_unchecked(f.source(), &image, coimage);
    let (cokernel, cokernel_projection) = cokernel(f);
    Factorization {
        kernel,
        kernel_inclusion,
        image,
        coimage_map,
        image_inclusion,
        cokernel,
        cokernel_projection,
    }
}

/// Solves `g ∘ f = h` for `g`, where `f: a → b`, `h: a → c`; returns `g: b → c` if one exists.
pub fn factor_through<K: Field>(f: &RepMap<K>, h: &RepMap<K>) -> Option<RepMap<K>> {
    let basis = hom_basis(f.target(), h.target());
    let cols: Vec<Vec<K::Elem>> = basis.iter().map(|g| f.then(g).flatten()).collect();
    let target = h.flatten();
    let fld = f.source().field();
    let a = Matrix::from_columns(fld, target.len(), &cols);
    let sol = a.solve(&Matrix::column_vector(fld, target)).ok()??;
    Some(super::module::combine(f.target(), h.target(), &sol.column(0), &basis))
}

/// Solves `f ∘ g = h` for `g`, where `f: b → c`, `h: a → c`; returns `g: a → b` if one exists.
pub fn lift_through<K: Field>(f: &RepMap<K>, h: &RepMap<K>) -> Option<RepMap<K>> {
    let basis = hom_basis(h.source(), f.source());
    let cols: Vec<Vec<K::Elem>> = basis.iter().map(|g| g.then(f).flatten()).collect();
    let target = h.flatten();
    let fld = f.source().field();
    let a = Matrix::from_columns(fld, target.len(), &cols);
    let sol = a.solve(&Matrix::column_vector(fld, target)).ok()??;
    Some(super::module::combine(h.source(), f.source(), &sol.column(0), &basis))
}

/// Radical `x·rad Λ` (the sum of arrow images) and top `x / rad x`.
#[derive(Clone, Debug)]
pub struct RadicalTop<K: Field> {
    pub radical: Rep<K>,
    pub inclusion: RepMap<K>,
    pub top: Rep<K>,
    pub projection: RepMap<K>,
}

pub(crate) fn radical_spans<K: Field>(x: &Rep<K>) -> Vec<Matrix<K>> {
    let alg = x.algebra();
    (0..alg.vertex_count())
        .map(|v| {
            let parts: Vec<&Matrix<K>> = alg
                .quiver()
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.target == v)
                .map(|(i, _)| x.arrow_map(i))
                .collect();
            Matrix::hstack(x.field(), x.dim_at(v), &parts)
        })
        .collect()
}

pub fn radical_and_top<K: Field>(x: &Rep<K>) -> RadicalTop<K> {
    let spans = radical_spans(x);
    let (radical, inclusion) = subrep(x, &spans);
    let (top, projection) = quotient_rep(x, &spans);
    RadicalTop {
        radical,
        inclusion,
        top,
        projection,
    }
}

/// Dimension of the top at each vertex.
pub fn top_dims<K: Field>(x: &Rep<K>) -> Vec<usize> {
    radical_spans(x)
        .iter()
        .enumerate()
        .map(|(v, m)| x.dim_at(v) - m.rank())
        .collect()
}

/// A projective cover `⊕ P_v^{m_v} → x`. Summands are ordered by vertex.
#[derive(Clone, Debug)]
pub struct ProjectiveCover<K: Field> {
    pub module: Rep<K>,
    pub epi: RepMap<K>,
    /// Vertex of each indecomposable summand, in order.
    pub vertices: Vec<usize>,
}

/// Minimal projective cover; generators are lifts of a basis of the top.
pub fn projective_cover<K: Field>(x: &Rep<K>) -> Result<ProjectiveCover<K>> {
    if x.is_zero() {
        return Err(Error::InvalidInput("the zero module has no projective cover summands".into()));
    }
    Ok(projective_cover_or_zero(x))
}

/// As [`projective_cover`], returning the zero cover for the zero module.
pub fn projective_cover_or_zero<K: Field>(x: &Rep<K>) -> ProjectiveCover<K> {
    let alg = x.algebra();
    let spans = radical_spans(x);
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    let mut vertices = Vec::new();
    for (v, span) in spans.iter().enumerate() {
        let q = Quotient::new(&Subspace::span(span));
        if q.dim() == 0 {
            continue;
        }
        let p = projective(alg, v);
        for j in 0..q.dim() {
            let u = q.complement().column(j);
            maps.push(map_from_projective(&p, v, x, &u));
            parts.push(p.clone());
            vertices.push(v);
        }
    }
    let module = direct_sum(alg, &parts);
    let epi = map_from_sum(&module, &maps, x);
    ProjectiveCover {
        module,
        epi,
        vertices,
    }
}

/// `⊕ P_v^{m_v}` for a list of vertices, with the summands in the given order.
pub fn projective_sum<K: Field>(alg: &Algebra<K>, vertices: &[usize]) -> Rep<K> {
    let parts: Vec<Rep<K>> = vertices.iter().map(|&v| projective(alg, v)).collect();
    direct_sum(alg, &parts)
}

/// Whether `x` is projective: its cover has the same dimension.
pub fn is_projective<K: Field>(x: &Rep<K>) -> bool {
    if x.is_zero() {
        return true;
    }
    let alg = x.algebra();
    let cover_dim: usize = top_dims(x)
        .iter()
        .enumerate()
        .map(|(v, &m)| m * alg.basis().starting_at(v).len())
        .sum();
    cover_dim == x.total_dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rationals;
    use crate::rep::canonical::{injective, regular, simple};

    #[test]
    fn hom_examples() {
        let a = Algebra::beilinson(1, Rationals).unwrap();
        assert_eq!(hom_basis(&projective(&a, 1), &projective(&a, 0)).len(), 2);
        assert_eq!(hom_basis(&injective(&a, 0), &projective(&a, 0)).len(), 0);
        let r = regular(&a);
        let end = hom_basis(&r, &r);
        assert_eq!(end.len(), 4);
        for g in &end {
            RepMap::new(&r, &r, g.components().to_vec()).unwrap();
        }
    }

    #[test]
    fn factorizations() {
        let a = Algebra::beilinson(1, Rationals).unwrap();
        let p0 = projective(&a, 0);
        let id = RepMap::identity(&p0);
        let fz = map_factorization(&id);
        assert!(fz.kernel.is_zero() && fz.cokernel.is_zero());
        assert_eq!(fz.image.dims(), p0.dims());
        let fz = map_factorization(&RepMap::zero(&p0, &p0));
        assert_eq!(fz.kernel.dims(), p0.dims());
        assert_eq!(fz.cokernel.dims(), p0.dims());
        let cover = projective_cover(&simple(&a, 0)).unwrap();
        assert_eq!(cover.vertices, [0]);
        let fz = map_factorization(&cover.epi);
        assert_eq!(fz.kernel.dims(), [0, 2]);
        assert!(fz.coimage_map.then(&fz.image_inclusion) == cover.epi);
    }

    #[test]
    fn covers() {
        let a = Algebra::beilinson(1, Rationals).unwrap();
        let i1 = injective(&a, 1);
        let c = projective_cover(&i1).unwrap();
        assert_eq!(c.vertices, [0, 0]);
        assert!(c.epi.is_surjective());
        RepMap::new(c.epi.source(), c.epi.target(), c.epi.components().to_vec()).unwrap();
        let p = projective(&a, 0);
        let c = projective_cover(&p).unwrap();
        assert_eq!(c.module.dims(), p.dims());
        assert!(c.epi.inverse().is_some());
        assert!(projective_cover(&Rep::zero(&a)).is_err());
        assert!(is_projective(&p) && !is_projective(&i1));

        let a2 = Algebra::beilinson(2, Rationals).unwrap();
        let rt = radical_and_top(&projective(&a2, 0));
        assert_eq!(rt.radical.dims(), [0, 3, 6]);
        assert_eq!(rt.top.dims(), [1, 0, 0]);
    }
}
