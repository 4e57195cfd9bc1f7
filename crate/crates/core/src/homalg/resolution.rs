use rayon::prelude::*;
use serde::Serialize;

use super::pd::PdValue;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::quiver::Algebra;
use crate::rep::{
    hom_basis, hom_dim, kernel, projective_cover_or_zero, radical_and_top, simple, ModuleFile, Rep, RepMap,
};

/// Default resolution cutoff.
pub const DEFAULT_CUTOFF: usize = 32;

/// A minimal projective resolution `… → P_1 → P_0 → X → 0`, possibly truncated.
#[derive(Clone, Debug)]
pub struct Resolution<K: Field> {
    pub module: Rep<K>,
    pub terms: Vec<Rep<K>>,
    /// Vertices of the indecomposable summands of each term, in block order.
    pub term_vertices: Vec<Vec<usize>>,
    /// `differentials[i]` is `d_{i+1}: P_{i+1} → P_i`.
    pub differentials: Vec<RepMap<K>>,
    pub augmentation: RepMap<K>,
    /// `syzygies[i]` is `Ω^{i+1} X` with its inclusion into `P_i`.
    pub syzygies: Vec<(Rep<K>, RepMap<K>)>,
    pub minimal: bool,
    pub truncated_at: Option<usize>,
}

pub fn min_proj_resolution<K: Field>(x: &Rep<K>, cutoff: usize) -> Result<Resolution<K>> {
    if cutoff == 0 {
        return Err(Error::InvalidInput("cutoff must be at least 1".into()));
    }
    let mut terms = Vec::new();
    let mut term_vertices = Vec::new();
    let mut differentials = Vec::new();
    let mut syzygies: Vec<(Rep<K>, RepMap<K>)> = Vec::new();
    let mut augmentation = None;
    let mut current = x.clone();
    let mut truncated_at = None;
    if !x.is_zero() {
        for i in 0..cutoff {
            let cover = projective_cover_or_zero(&current);
            let (k, inc) = kernel(&cover.epi);
            if i == 0 {
                augmentation = Some(cover.epi.clone());
            } else {
                let prev_inc = &syzygies[i - 1].1;
                differentials.push(cover.epi.then(prev_inc));
            }
            terms.push(cover.module.clone());
            term_vertices.push(cover.vertices.clone());
            let done = k.is_zero();
            syzygies.push((k.clone(), inc));
            if done {
                break;
            }
            current = k;
            if i + 1 == cutoff {
                truncated_at = Some(cutoff);
            }
        }
    }
    let augmentation = augmentation.unwrap_or_else(|| RepMap::zero(&Rep::zero(x.algebra()), x));
    Ok(Resolution {
        module: x.clone(),
        terms,
        term_vertices,
        differentials,
        augmentation,
        syzygies,
        minimal: true,
        truncated_at,
    })
}

impl<K: Field> Resolution<K> {
    /// Projective dimension, or a lower bound when truncated.
    pub fn pd(&self) -> PdValue {
        match self.truncated_at {
            Some(c) => PdValue::at_least(c),
            None => PdValue::exact(self.terms.len().saturating_sub(1)),
        }
    }

    /// Multiplicity of each `P_v` in each term.
    pub fn betti(&self) -> Vec<Vec<usize>> {
        let nv = self.module.algebra().vertex_count();
        self.term_vertices
            .iter()
            .map(|vs| {
                let mut row = vec![0; nv];
                for &v in vs {
                    row[v] += 1;
                }
                row
            })
            .collect()
    }

    /// Total number of indecomposable summands in each term.
    pub fn betti_totals(&self) -> Vec<usize> {
        self.term_vertices.iter().map(|v| v.len()).collect()
    }

    /// `Ω^i X` (with `Ω^0 X = X`), if computed.
    pub fn syzygy(&self, i: usize) -> Option<&Rep<K>> {
        if i == 0 {
            Some(&self.module)
        } else {
            self.syzygies.get(i - 1).map(|(s, _)| s)
        }
    }

    /// Rechecks `d² = 0`, exactness by rank bookkeeping, and minimality.
    pub fn verify(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidInput(format!("resolution check failed: {m}")));
        if self.module.is_zero() {
            return Ok(());
        }
        if !self.augmentation.is_surjective() {
            return bad("augmentation is not onto");
        }
        let mut maps: Vec<&RepMap<K>> = vec![&self.augmentation];
        maps.extend(self.differentials.iter());
        for w in maps.windows(2) {
            // w[1]: P_{i+1} → P_i, w[0]: P_i → P_{i-1} (or X)
            if !w[1].then(w[0]).is_zero() {
                return bad("consecutive maps do not compose to zero");
            }
            if w[1].rank() + w[0].rank() != w[0].source().total_dim() {
                return bad("image differs from kernel");
            }
        }
        for d in &self.differentials {
            let top = radical_and_top(d.target()).projection;
            if !d.then(&top).is_zero() {
                return bad("a differential leaves the radical");
            }
        }
        if self.truncated_at.is_none() {
            let last = maps.last().unwrap();
            if !last.is_injective() {
                return bad("last map is not injective");
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term {
            vertices: Vec<usize>,
            dims: Vec<usize>,
        }
        let f = self.module.field();
        let matrix = |m: &Matrix<K>| -> Vec<Vec<String>> {
            (0..m.rows()).map(|r| m.row(r).iter().map(|c| f.format(c)).collect()).collect()
        };
        let map_json = |m: &RepMap<K>| -> Vec<Vec<Vec<String>>> { m.components().iter().map(matrix).collect() };
        serde_json::json!({
            "module": ModuleFile::from_rep(&self.module, false),
            "terms": self.terms.iter().zip(&self.term_vertices).map(|(t, v)| Term { vertices: v.clone(), dims: t.dims().to_vec() }).collect::<Vec<_>>(),
            "augmentation": map_json(&self.augmentation),
            "differentials": self.differentials.iter().map(map_json).collect::<Vec<_>>(),
            "betti": self.betti(),
            "pd": self.pd(),
            "minimal": self.minimal,
            "truncated_at": self.truncated_at,
        })
    }
}

/// Projective dimension of `x` with cutoff semantics.
pub fn projective_dimension<K: Field>(x: &Rep<K>, cutoff: usize) -> Result<PdValue> {
    Ok(min_proj_resolution(x, cutoff)?.pd())
}

/// `pd S_v` for every vertex, computed in parallel.
pub fn simple_pds<K: Field>(alg: &Algebra<K>, cutoff: usize) -> Result<Vec<PdValue>> {
    (0..alg.vertex_count())
        .into_par_iter()
        .map(|v| projective_dimension(&simple(alg, v), cutoff))
        .collect()
}

/// Maximum projective dimension of the simples.
pub fn global_dimension<K: Field>(alg: &Algebra<K>, cutoff: usize) -> Result<PdValue> {
    Ok(simple_pds(alg, cutoff)?
        .into_iter()
        .fold(PdValue::exact(0), PdValue::max))
}

/// `dim Ext^i(x, y)` from a minimal resolution of `x`.
pub fn ext_dim<K: Field>(x: &Rep<K>, y: &Rep<K>, i: usize, cutoff: usize) -> Result<usize> {
    if i > cutoff {
        return Err(Error::Truncated {
            cutoff,
            what: format!("Ext^{i} needs a cutoff of at least {i}"),
        });
    }
    let res = min_proj_resolution(x, cutoff.max(1))?;
    ext_dim_from(&res, y, i)
}

/// `dim Ext^i(X, y)` as the cohomology of `Hom(P_•, y)` at degree `i`,
/// computed as `Hom(Ω^i X, y)` modulo maps extending over `P_{i-1}`.
pub fn ext_dim_from<K: Field>(res: &Resolution<K>, y: &Rep<K>, i: usize) -> Result<usize> {
    if i == 0 {
        return Ok(hom_dim(&res.module, y));
    }
    if res.truncated_at.is_none() && i > res.terms.len().saturating_sub(1) {
        return Ok(0);
    }
    let (omega, inc) = match res.syzygies.get(i - 1) {
        Some(s) => s,
        None => {
            return Err(Error::Truncated {
                cutoff: res.truncated_at.unwrap_or(0),
                what: format!("Ext^{i} needs a larger cutoff"),
            })
        }
    };
    let total = hom_dim(omega, y);
    if total == 0 {
        return Ok(0);
    }
    let f = y.field();
    let restricted: Vec<Vec<K::Elem>> = hom_basis(inc.target(), y).iter().map(|g| inc.then(g).flatten()).collect();
    let len = omega.dims().iter().zip(y.dims()).map(|(a, b)| a * b).sum();
    let rank = Matrix::from_columns(f, len, &restricted).rank();
    Ok(total - rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};
    use crate::rep::{injective, projective};

    #[test]
    fn simple_resolutions() {
        let a = Algebra::beilinson(1, Rationals).unwrap();
        let r = min_proj_resolution(&simple(&a, 0), 8).unwrap();
        assert_eq!(r.betti(), vec![vec![1, 0], vec![0, 2]]);
        assert_eq!(r.pd(), PdValue::exact(1));
        r.verify().unwrap();

        let a2 = Algebra::beilinson(2, Rationals).unwrap();
        let r = min_proj_resolution(&simple(&a2, 0), 8).unwrap();
        assert_eq!(r.betti_totals(), vec![1, 3, 3]);
        assert_eq!(r.betti()[2], vec![0, 0, 3]);
        assert_eq!(r.pd(), PdValue::exact(2));
        r.verify().unwrap();

        let r = min_proj_resolution(&projective(&a2, 1), 8).unwrap();
        assert_eq!(r.pd(), PdValue::exact(0));
    }

    #[test]
    fn global_dimensions() {
        for n in 1..=3 {
            let a = Algebra::beilinson(n, PrimeField::new(1_000_003).unwrap()).unwrap();
            assert_eq!(global_dimension(&a, 8).unwrap(), PdValue::exact(n));
        }
        let ss = Algebra::semisimple(3, Rationals).unwrap();
        assert_eq!(global_dimension(&ss, 8).unwrap(), PdValue::exact(0));
        let ext = Algebra::exterior(2, Rationals).unwrap();
        assert_eq!(global_dimension(&ext, 4).unwrap(), PdValue::at_least(4));
    }

    #[test]
    fn ext_examples() {
        let a = Algebra::beilinson(1, Rationals).unwrap();
        assert_eq!(ext_dim(&simple(&a, 0), &simple(&a, 0), 0, 4).unwrap(), 1);
        assert_eq!(ext_dim(&simple(&a, 0), &simple(&a, 1), 1, 4).unwrap(), 2);
        assert_eq!(ext_dim(&simple(&a, 0), &simple(&a, 1), 2, 4).unwrap(), 0);
        let a2 = Algebra::beilinson(2, Rationals).unwrap();
        assert_eq!(ext_dim(&simple(&a2, 0), &simple(&a2, 2), 2, 4).unwrap(), 3);
        assert_eq!(ext_dim(&simple(&a2, 0), &simple(&a2, 1), 1, 4).unwrap(), 3);
        assert_eq!(ext_dim(&injective(&a2, 2), &projective(&a2, 0), 0, 4).unwrap(), 0);
        let ext = Algebra::exterior(1, Rationals).unwrap();
        assert!(ext_dim(&simple(&ext, 0), &simple(&ext, 0), 5, 3).is_err());
        assert_eq!(ext_dim(&simple(&ext, 0), &simple(&ext, 0), 3, 3).unwrap(), 1);
    }
}
