use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::canonical::{injective, projective};
use super::module::{combine, Rep, RepMap};
use super::ops::{biproduct, direct_sum, hom_basis, kernel, map_from_sum, map_to_sum};
use crate::endo::{end_algebra_from_basis, is_local};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::quiver::Algebra;

/// Random endomorphisms tried per split attempt.
pub const SPLIT_BUDGET: usize = 20;

/// An indecomposable summand of a module, with its split inclusion.
#[derive(Clone, Debug)]
struct Piece<K: Field> {
    module: Rep<K>,
    inclusion: RepMap<K>,
    projection: RepMap<K>,
}

/// A decomposition `X ≅ ⊕ R_i^{m_i}` into pairwise non-isomorphic
/// indecomposables, with explicit mutually inverse isomorphisms.
#[derive(Clone, Debug)]
pub struct DecompositionReport<K: Field> {
    /// Representatives and multiplicities.
    pub summands: Vec<(Rep<K>, usize)>,
    /// `⊕ R_i^{m_i}` with the summands repeated in order.
    pub sum: Rep<K>,
    pub to_sum: RepMap<K>,
    pub from_sum: RepMap<K>,
}

impl<K: Field> DecompositionReport<K> {
    pub fn indecomposable_count(&self) -> usize {
        self.summands.iter().map(|(_, m)| m).sum()
    }

    /// Dimension vectors with multiplicities, sorted.
    pub fn inventory(&self) -> Vec<(Vec<usize>, usize)> {
        let mut inv: Vec<(Vec<usize>, usize)> =
            self.summands.iter().map(|(r, m)| (r.dims().to_vec(), *m)).collect();
        inv.sort();
        inv
    }

    /// Whether `w` (assumed indecomposable) is isomorphic to one of the summands.
    pub fn contains_iso(&self, w: &Rep<K>) -> bool {
        self.summands.iter().any(|(r, _)| iso_between(r, w).is_some())
    }
}

fn piece_of<K: Field>(x: &Rep<K>) -> Piece<K> {
    Piece {
        module: x.clone(),
        inclusion: RepMap::identity(x),
        projection: RepMap::identity(x),
    }
}

fn random_combination<K: Field>(maps: &[RepMap<K>], rng: &mut ChaCha8Rng) -> RepMap<K> {
    let f = maps[0].source().field();
    let coeffs: Vec<K::Elem> = maps.iter().map(|_| f.random(rng)).collect();
    combine(maps[0].source(), maps[0].target(), &coeffs, maps)
}

/// One Fitting split, or `None` when the endomorphism ring is local.
fn split<K: Field>(piece: &Piece<K>, rng: &mut ChaCha8Rng) -> Result<Option<(Piece<K>, Piece<K>)>> {
    let w = &piece.module;
    let end = hom_basis(w, w);
    if end.len() <= 1 {
        return Ok(None);
    }
    let f = w.field();
    let mut unsplit_streak = 0;
    let mut checked_local = false;
    for _ in 0..SPLIT_BUDGET {
        let phi = random_combination(&end, rng);
        let mu = phi.total_matrix().minimal_polynomial();
        let fac = f.factor(&mu, rng);
        if fac.factors.len() >= 2 {
            let (g0, e0) = &fac.factors[0];
            let g = g0.pow(f, *e0);
            let h = mu.div_exact(f, &g);
            if g.gcd(f, &h).is_one(f) {
                let (ka, ia) = kernel(&phi.eval_poly(&g));
                let (kb, ib) = kernel(&phi.eval_poly(&h));
                if ka.is_zero() || kb.is_zero() || ka.total_dim() + kb.total_dim() != w.total_dim() {
                    continue;
                }
                let both = direct_sum(w.algebra(), &[ka.clone(), kb.clone()]);
                let sum = map_from_sum(&both, &[ia.clone(), ib.clone()], w);
                let inv = sum.inverse().ok_or_else(|| {
                    Error::Inconclusive("Fitting kernels failed to span the module".into())
                })?;
                let pa = (0..w.dims().len())
                    .map(|v| inv.component(v).block(0, 0, ka.dim_at(v), w.dim_at(v)))
                    .collect();
                let pb = (0..w.dims().len())
                    .map(|v| inv.component(v).block(ka.dim_at(v), 0, kb.dim_at(v), w.dim_at(v)))
                    .collect::<Vec<Matrix<K>>>();
                let pa = RepMap::new_unchecked(w, &ka, pa);
                let pb = RepMap::new_unchecked(w, &kb, pb);
                let a = Piece {
                    inclusion: ia.then(&piece.inclusion),
                    projection: piece.projection.then(&pa),
                    module: ka,
                };
                let b = Piece {
                    inclusion: ib.then(&piece.inclusion),
                    projection: piece.projection.then(&pb),
                    module: kb,
                };
                return Ok(Some((a, b)));
            }
        }
        unsplit_streak += 1;
        if unsplit_streak >= 3 && !checked_local {
            checked_local = true;
            if is_local(&end_algebra_from_basis(w, &end)?.algebra)? {
                return Ok(None);
            }
        }
    }
    if is_local(&end_algebra_from_basis(w, &end)?.algebra)? {
        return Ok(None);
    }
    Err(Error::Inconclusive(format!(
        "no splitting endomorphism found in {SPLIT_BUDGET} attempts for a module of dimension {:?}",
        w.dims()
    )))
}

/// An isomorphism `a → b` if one exists. Both must be indecomposable.
///
/// With `End(a)` local, any isomorphism `φ` gives `1 = Σ c_ij g_j f_i` over
/// basis maps, so some `g_j f_i` is invertible and that `f_i` is injective.
/// Equal dimensions then make it an isomorphism.
pub fn iso_between<K: Field>(a: &Rep<K>, b: &Rep<K>) -> Option<RepMap<K>> {
    if a.dims() != b.dims() {
        return None;
    }
    if a.is_zero() {
        return Some(RepMap::zero(a, b));
    }
    hom_basis(a, b).into_iter().find(|f| f.is_injective())
}

fn split_fully<K: Field>(start: Piece<K>, rng: &mut ChaCha8Rng) -> Result<Vec<Piece<K>>> {
    let mut todo = vec![start];
    let mut done = Vec::new();
    while let Some(p) = todo.pop() {
        if p.module.is_zero() {
            continue;
        }
        match split(&p, rng)? {
            Some((a, b)) => {
                todo.push(b);
                todo.push(a);
            }
            None => done.push(p),
        }
    }
    Ok(done)
}

/// Decomposes `x` into indecomposables.
pub fn decompose<K: Field>(x: &Rep<K>, seed: u64) -> Result<DecompositionReport<K>> {
    decompose_parts(x.algebra(), std::slice::from_ref(x), seed)
}

/// Decomposes `⊕ parts`, splitting each part separately before matching
/// isomorphism classes across parts.
pub fn decompose_parts<K: Field>(alg: &Algebra<K>, parts: &[Rep<K>], seed: u64) -> Result<DecompositionReport<K>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bp = biproduct(alg, parts);
    let x = bp.sum.clone();
    let mut pieces = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        for p in split_fully(piece_of(part), &mut rng)? {
            pieces.push(Piece {
                inclusion: p.inclusion.then(&bp.injections[i]),
                projection: bp.projections[i].then(&p.projection),
                module: p.module,
            });
        }
    }
    assemble(&x, pieces)
}

fn assemble<K: Field>(x: &Rep<K>, pieces: Vec<Piece<K>>) -> Result<DecompositionReport<K>> {
    let alg = x.algebra();
    // classes[c] = (representative, members with isomorphisms rep → member)
    let mut classes: Vec<(Rep<K>, Vec<(Piece<K>, RepMap<K>)>)> = Vec::new();
    for p in pieces {
        let found = classes
            .iter()
            .enumerate()
            .find_map(|(c, (r, _))| iso_between(r, &p.module).map(|iso| (c, iso)));
        match found {
            Some((c, iso)) => classes[c].1.push((p, iso)),
            None => {
                let iso = RepMap::identity(&p.module);
                classes.push((p.module.clone(), vec![(p, iso)]));
            }
        }
    }
    classes.sort_by(|a, b| (a.0.total_dim(), a.0.dims()).cmp(&(b.0.total_dim(), b.0.dims())));

    let mut parts = Vec::new();
    let mut into_x = Vec::new();
    let mut out_of_x = Vec::new();
    for (rep, members) in &classes {
        for (p, iso) in members {
            let inv = iso
                .inverse()
                .ok_or_else(|| Error::Inconclusive("isomorphism witness is not invertible".into()))?;
            parts.push(rep.clone());
            into_x.push(iso.then(&p.inclusion));
            out_of_x.push(p.projection.then(&inv));
        }
    }
    let sum = direct_sum(alg, &parts);
    let from_sum = map_from_sum(&sum, &into_x, x);
    let to_sum = map_to_sum(x, &out_of_x, &sum);
    if !to_sum.then(&from_sum).is_identity() || !from_sum.then(&to_sum).is_identity() {
        return Err(Error::Inconclusive("decomposition witnesses do not compose to identities".into()));
    }
    Ok(DecompositionReport {
        summands: classes.into_iter().map(|(r, m)| (r, m.len())).collect(),
        sum,
        to_sum,
        from_sum,
    })
}

/// Whether every indecomposable projective is a direct summand of `m`.
///
/// `P_v` is a summand exactly when some map `m → P_v` is onto, which happens
/// exactly when some basis map hits `e_v` outside the radical.
pub fn is_generator<K: Field>(m: &Rep<K>) -> bool {
    missing_projective(m).is_none()
}

/// The first vertex whose projective is not a summand of `m`.
pub fn missing_projective<K: Field>(m: &Rep<K>) -> Option<usize> {
    let alg = m.algebra();
    let f = m.field();
    (0..alg.vertex_count()).find(|&v| {
        let p = projective(alg, v);
        !hom_basis(m, &p)
            .iter()
            .any(|g| g.component(v).row(0).iter().any(|c| !f.is_zero(c)))
    })
}

/// Whether every indecomposable injective is a direct summand of `m`; dual to
/// [`is_generator`] via the socle element of `I_v`.
pub fn is_cogenerator<K: Field>(m: &Rep<K>) -> bool {
    let alg = m.algebra();
    let f = m.field();
    (0..alg.vertex_count()).all(|v| {
        let i = injective(alg, v);
        hom_basis(&i, m)
            .iter()
            .any(|g| g.component(v).column(0).iter().any(|c| !f.is_zero(c)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;
    use crate::rep::canonical::{dual_regular, regular, simple};

    fn fp() -> PrimeField {
        PrimeField::new(crate::linalg::DEFAULT_PRIME).unwrap()
    }

    #[test]
    fn regular_and_dual() {
        let a = Algebra::beilinson(1, fp()).unwrap();
        let d = decompose(&regular(&a), 1).unwrap();
        assert_eq!(d.inventory(), vec![(vec![0, 1], 1), (vec![1, 2], 1)]);
        let d = decompose(&dual_regular(&a), 2).unwrap();
        assert_eq!(d.inventory(), vec![(vec![1, 0], 1), (vec![2, 1], 1)]);
        let p0 = projective(&a, 0);
        let d = decompose(&direct_sum(&a, &[p0.clone(), p0.clone()]), 3).unwrap();
        assert_eq!(d.inventory(), vec![(vec![1, 2], 2)]);
        assert!(d.contains_iso(&p0));
    }

    #[test]
    fn generators() {
        let a = Algebra::beilinson(1, fp()).unwrap();
        assert!(is_generator(&regular(&a)));
        assert!(!is_generator(&simple(&a, 0)));
        let m = direct_sum(&a, &[regular(&a), dual_regular(&a)]);
        assert!(is_generator(&m) && is_cogenerator(&m));
        assert!(!is_cogenerator(&regular(&a)));
    }

    #[test]
    fn radical_of_projective_splits() {
        let a = Algebra::beilinson(1, fp()).unwrap();
        let rad = crate::rep::radical_and_top(&projective(&a, 0)).radical;
        let d = decompose(&rad, 9).unwrap();
        assert_eq!(d.inventory(), vec![(vec![0, 1], 2)]);
    }
}
