use std::collections::HashMap;

use super::module::{Rep, RepMap};
use super::ops::direct_sum;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::quiver::Algebra;

/// Indecomposable projectives, injectives and simples, one per vertex.
#[derive(Clone, Debug)]
pub struct CanonicalReps<K: Field> {
    pub projectives: Vec<Rep<K>>,
    pub injectives: Vec<Rep<K>>,
    pub simples: Vec<Rep<K>>,
}

pub fn canonical_reps<K: Field>(alg: &Algebra<K>) -> CanonicalReps<K> {
    let n = alg.vertex_count();
    CanonicalReps {
        projectives: (0..n).map(|v| projective(alg, v)).collect(),
        injectives: (0..n).map(|v| injective(alg, v)).collect(),
        simples: (0..n).map(|v| simple(alg, v)).collect(),
    }
}

/// Local positions of the basis elements, grouped by the vertex picked out by `key`.
fn grade<K: Field>(
    alg: &Algebra<K>,
    members: &[usize],
    key: impl Fn(usize) -> usize,
) -> (Vec<usize>, HashMap<usize, usize>) {
    let mut dims = vec![0; alg.vertex_count()];
    let mut local = HashMap::new();
    for &i in members {
        let v = key(i);
        local.insert(i, dims[v]);
        dims[v] += 1;
    }
    (dims, local)
}

/// `P_v = e_v Λ`: normal paths starting at `v`, arrows acting on the right.
pub fn projective<K: Field>(alg: &Algebra<K>, v: usize) -> Rep<K> {
    let f = alg.field();
    let b = alg.basis();
    let members = b.starting_at(v);
    let (dims, local) = grade(alg, &members, |i| b.element(i).target);
    let mut maps = Vec::with_capacity(alg.arrow_count());
    for (a, arrow) in alg.quiver().arrows().iter().enumerate() {
        let mut m = Matrix::zeros(f, dims[arrow.target], dims[arrow.source]);
        for &i in &members {
            if b.element(i).target != arrow.source {
                continue;
            }
            for (k, c) in alg.times_arrow(i, a) {
                m.set(local[&k], local[&i], c);
            }
        }
        maps.push(m);
    }
    Rep::new_unchecked(alg, dims, maps)
}

/// `I_v = D(Λ e_v)`: duals of paths ending at `v`; the arrow `a` acts by the
/// transpose of left multiplication by `a`.
pub fn injective<K: Field>(alg: &Algebra<K>, v: usize) -> Rep<K> {
    let f = alg.field();
    let b = alg.basis();
    let members = b.ending_at(v);
    let (dims, local) = grade(alg, &members, |i| b.element(i).source);
    let mut maps = Vec::with_capacity(alg.arrow_count());
    for (a, arrow) in alg.quiver().arrows().iter().enumerate() {
        let mut m = Matrix::zeros(f, dims[arrow.target], dims[arrow.source]);
        for &mu in &members {
            if b.element(mu).source != arrow.target {
                continue;
            }
            for (p, c) in alg.arrow_times(a, mu) {
                m.set(local[&mu], local[&p], c);
            }
        }
        maps.push(m);
    }
    Rep::new_unchecked(alg, dims, maps)
}

pub fn simple<K: Field>(alg: &Algebra<K>, v: usize) -> Rep<K> {
    let mut dims = vec![0; alg.vertex_count()];
    dims[v] = 1;
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(alg.field(), dims[a.target], dims[a.source]))
        .collect();
    Rep::new_unchecked(alg, dims, maps)
}

/// `Λ_Λ = ⊕ P_v`.
pub fn regular<K: Field>(alg: &Algebra<K>) -> Rep<K> {
    let parts: Vec<Rep<K>> = (0..alg.vertex_count()).map(|v| projective(alg, v)).collect();
    direct_sum(alg, &parts)
}

/// `DΛ = ⊕ I_v`.
pub fn dual_regular<K: Field>(alg: &Algebra<K>) -> Rep<K> {
    let parts: Vec<Rep<K>> = (0..alg.vertex_count()).map(|v| injective(alg, v)).collect();
    direct_sum(alg, &parts)
}

/// `Λ / rad^i`: the regular module with paths of length at least `i` removed.
pub fn radical_power_quotient<K: Field>(alg: &Algebra<K>, i: usize) -> Result<Rep<K>> {
    if i == 0 {
        return Err(Error::InvalidInput("radical power quotients need i >= 1".into()));
    }
    let f = alg.field();
    let b = alg.basis();
    let members: Vec<usize> = (0..b.total_dim()).filter(|&k| b.element(k).length < i).collect();
    let (dims, local) = grade(alg, &members, |k| b.element(k).target);
    let mut maps = Vec::with_capacity(alg.arrow_count());
    for (a, arrow) in alg.quiver().arrows().iter().enumerate() {
        let mut m = Matrix::zeros(f, dims[arrow.target], dims[arrow.source]);
        for &k in &members {
            if b.element(k).target != arrow.source {
                continue;
            }
            for (j, c) in alg.times_arrow(k, a) {
                if let Some(&row) = local.get(&j) {
                    m.set(row, local[&k], c);
                }
            }
        }
        maps.push(m);
    }
    Ok(Rep::new_unchecked(alg, dims, maps))
}

/// The map `P_v → x` sending `e_v` to `u ∈ x_v`.
pub fn map_from_projective<K: Field>(p: &Rep<K>, v: usize, x: &Rep<K>, u: &[K::Elem]) -> RepMap<K> {
    let alg = x.algebra();
    let b = alg.basis();
    let f = x.field();
    debug_assert_eq!(u.len(), x.dim_at(v));
    let mut comps: Vec<Matrix<K>> = (0..alg.vertex_count())
        .map(|w| Matrix::zeros(f, x.dim_at(w), p.dim_at(w)))
        .collect();
    let mut images: HashMap<Vec<usize>, Vec<K::Elem>> = HashMap::new();
    images.insert(Vec::new(), u.to_vec());
    let mut counters = vec![0usize; alg.vertex_count()];
    // basis elements are ordered by length, so prefixes are computed first
    for i in b.starting_at(v) {
        let e = b.element(i);
        let img = if e.path.is_empty() {
            u.to_vec()
        } else {
            let (last, prefix) = e.path.split_last().unwrap();
            let base = images.get(prefix).cloned().unwrap_or_else(|| {
                let mut cur = u.to_vec();
                for &a in prefix {
                    cur = x.arrow_map(a).mul_vec(&cur);
                }
                cur
            });
            x.arrow_map(*last).mul_vec(&base)
        };
        let col = counters[e.target];
        counters[e.target] += 1;
        for (r, val) in img.iter().enumerate() {
            comps[e.target].set(r, col, val.clone());
        }
        images.insert(e.path.clone(), img);
    }
    RepMap::new_unchecked(p, x, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rationals;

    #[test]
    fn canonical_dimensions() {
        let a = Algebra::beilinson(1, Rationals).unwrap();
        let c = canonical_reps(&a);
        assert_eq!(c.projectives[0].dims(), [1, 2]);
        assert_eq!(c.projectives[1].dims(), [0, 1]);
        assert_eq!(c.injectives[0].dims(), [1, 0]);
        assert_eq!(c.injectives[1].dims(), [2, 1]);
        let a2 = Algebra::beilinson(2, Rationals).unwrap();
        assert_eq!(projective(&a2, 0).dims(), [1, 3, 6]);
        assert_eq!(injective(&a2, 2).dims(), [6, 3, 1]);
        assert_eq!(regular(&a2).dims(), [1, 4, 10]);
        for m in [projective(&a2, 0), injective(&a2, 2), regular(&a2), dual_regular(&a2)] {
            Rep::new(&a2, m.dims().to_vec(), m.arrow_maps().to_vec()).unwrap();
        }
        let e = Algebra::exterior(2, Rationals).unwrap();
        let p = projective(&e, 0);
        Rep::new(&e, p.dims().to_vec(), p.arrow_maps().to_vec()).unwrap();
        let i = injective(&e, 0);
        Rep::new(&e, i.dims().to_vec(), i.arrow_maps().to_vec()).unwrap();
    }

    #[test]
    fn radical_quotients() {
        let a = Algebra::beilinson(1, Rationals).unwrap();
        assert_eq!(radical_power_quotient(&a, 1).unwrap().dims(), [1, 1]);
        assert_eq!(radical_power_quotient(&a, 2).unwrap().dims(), [1, 3]);
        assert_eq!(radical_power_quotient(&a, 5).unwrap().dims(), [1, 3]);
        let a2 = Algebra::beilinson(2, Rationals).unwrap();
        let q = radical_power_quotient(&a2, 2).unwrap();
        assert_eq!(q.dims(), [1, 4, 4]);
        assert_eq!(q.total_dim(), 9);
        assert!(radical_power_quotient(&a2, 0).is_err());
        Rep::new(&a2, q.dims().to_vec(), q.arrow_maps().to_vec()).unwrap();
    }
}
