use super::resolution::DEFAULT_CUTOFF;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::rep::{
    decompose, direct_sum, hom_basis, iso_between, kernel, map_from_sum, missing_projective, Rep, RepMap,
};

/// Seed used by [`m_resolution`] for summand matching.
pub const DEFAULT_SEED: u64 = 0;

/// A resolution `0 → M_k → … → M_0 → X → 0` by modules in `add M` that
/// stays exact under `Hom(M, −)`.
#[derive(Clone, Debug)]
pub struct MResolution<K: Field> {
    pub generator: Rep<K>,
    /// Pairwise non-isomorphic indecomposable summands of the generator.
    pub classes: Vec<Rep<K>>,
    pub module: Rep<K>,
    pub modules: Vec<Rep<K>>,
    /// Class index of each block of each term.
    pub term_classes: Vec<Vec<usize>>,
    /// Class indices of the unminimized universal approximation at each
    /// stage (empty for a terminal stage already in `add M`).
    pub universal_classes: Vec<Vec<usize>>,
    /// `maps[i]` is `M_{i+1} → M_i`.
    pub maps: Vec<RepMap<K>>,
    pub augmentation: RepMap<K>,
    pub truncated_at: Option<usize>,
}

struct Approximation<K: Field> {
    term: Rep<K>,
    classes: Vec<usize>,
    universal: Vec<usize>,
    map: RepMap<K>,
}

struct Engine<K: Field> {
    classes: Vec<Rep<K>>,
    /// `homs[i][c]` is a basis of `Hom(M_i, M_c)`.
    homs: Vec<Vec<Vec<RepMap<K>>>>,
    seed: u64,
}

impl<K: Field> Engine<K> {
    fn new(m: &Rep<K>, seed: u64) -> Result<Self> {
        let report = decompose(m, seed)?;
        let classes: Vec<Rep<K>> = report.summands.into_iter().map(|(r, _)| r).collect();
        let homs = classes
            .iter()
            .map(|a| classes.iter().map(|b| hom_basis(a, b)).collect())
            .collect();
        Ok(Engine { classes, homs, seed })
    }

    /// Class indices of the summands of `x` if it lies in `add M`.
    fn membership(&self, x: &Rep<K>) -> Result<Option<Vec<usize>>> {
        let report = decompose(x, self.seed)?;
        let mut out = Vec::new();
        for (r, mult) in &report.summands {
            match self.classes.iter().position(|c| iso_between(c, r).is_some()) {
                Some(c) => out.extend(std::iter::repeat_n(c, *mult)),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    /// A right `add M`-approximation of `x`: the universal evaluation map,
    /// then greedily pruned from the last summand down while `Hom(M, φ)`
    /// stays onto.
    fn approximate(&self, x: &Rep<K>) -> Approximation<K> {
        let f = x.field();
        let mut blocks: Vec<(usize, RepMap<K>)> = Vec::new();
        let targets: Vec<usize> = self
            .classes
            .iter()
            .enumerate()
            .map(|(j, mj)| {
                let hb = hom_basis(mj, x);
                let n = hb.len();
                blocks.extend(hb.into_iter().map(|h| (j, h)));
                n
            })
            .collect();
        let universal: Vec<usize> = blocks.iter().map(|(c, _)| *c).collect();
        // images[i][s]: flattened maps M_i → x factoring through block s
        let images: Vec<Vec<Vec<Vec<K::Elem>>>> = (0..self.classes.len())
            .map(|i| {
                blocks
                    .iter()
                    .map(|(c, h)| self.homs[i][*c].iter().map(|g| g.then(h).flatten()).collect())
                    .collect()
            })
            .collect();
        let flat_len = |i: usize| -> usize {
            self.classes[i].dims().iter().zip(x.dims()).map(|(a, b)| a * b).sum()
        };
        let onto = |kept: &[bool]| -> bool {
            (0..self.classes.len()).all(|i| {
                let cols: Vec<Vec<K::Elem>> = images[i]
                    .iter()
                    .zip(kept)
                    .filter(|(_, k)| **k)
                    .flat_map(|(v, _)| v.iter().cloned())
                    .collect();
                Matrix::from_columns(f, flat_len(i), &cols).rank() == targets[i]
            })
        };
        let mut kept = vec![true; blocks.len()];
        for s in (0..blocks.len()).rev() {
            kept[s] = false;
            if !onto(&kept) {
                kept[s] = true;
            }
        }
        let chosen: Vec<&(usize, RepMap<K>)> =
            blocks.iter().zip(&kept).filter(|(_, k)| **k).map(|(b, _)| b).collect();
        let parts: Vec<Rep<K>> = chosen.iter().map(|(c, _)| self.classes[*c].clone()).collect();
        let term = direct_sum(x.algebra(), &parts);
        let maps: Vec<RepMap<K>> = chosen.iter().map(|(_, h)| h.clone()).collect();
        let map = map_from_sum(&term, &maps, x);
        Approximation {
            term,
            classes: chosen.iter().map(|(c, _)| *c).collect(),
            universal,
            map,
        }
    }
}

/// [`m_resolution_seeded`] with the default seed.
pub fn m_resolution<K: Field>(m: &Rep<K>, x: &Rep<K>, cutoff: usize) -> Result<MResolution<K>> {
    m_resolution_seeded(m, x, cutoff, DEFAULT_SEED)
}

pub fn m_resolution_seeded<K: Field>(m: &Rep<K>, x: &Rep<K>, cutoff: usize, seed: u64) -> Result<MResolution<K>> {
    if let Some(v) = missing_projective(m) {
        return Err(Error::NotAGenerator(v));
    }
    x.same_algebra(m)?;
    let cutoff = if cutoff == 0 { DEFAULT_CUTOFF } else { cutoff };
    let engine = Engine::new(m, seed)?;
    let mut out = MResolution {
        generator: m.clone(),
        classes: engine.classes.clone(),
        module: x.clone(),
        modules: Vec::new(),
        term_classes: Vec::new(),
        universal_classes: Vec::new(),
        maps: Vec::new(),
        augmentation: RepMap::zero(&Rep::zero(x.algebra()), x),
        truncated_at: None,
    };
    if x.is_zero() {
        return Ok(out);
    }
    if let Some(cls) = engine.membership(x)? {
        out.modules.push(x.clone());
        out.term_classes.push(cls);
        out.universal_classes.push(Vec::new());
        out.augmentation = RepMap::identity(x);
        return Ok(out);
    }
    let first = engine.approximate(x);
    out.augmentation = first.map.clone();
    let (mut current, mut inc) = kernel(&first.map);
    out.modules.push(first.term);
    out.term_classes.push(first.classes);
    out.universal_classes.push(first.universal);
    for i in 1.. {
        if current.is_zero() {
            break;
        }
        if let Some(cls) = engine.membership(&current)? {
            out.modules.push(current.clone());
            out.term_classes.push(cls);
            out.universal_classes.push(Vec::new());
            out.maps.push(inc);
            break;
        }
        if i >= cutoff {
            out.truncated_at = Some(cutoff);
            break;
        }
        let step = engine.approximate(&current);
        out.maps.push(step.map.then(&inc));
        let (k, k_inc) = kernel(&step.map);
        out.modules.push(step.term);
        out.term_classes.push(step.classes);
        out.universal_classes.push(step.universal);
        current = k;
        inc = k_inc;
    }
    Ok(out)
}

impl<K: Field> MResolution<K> {
    /// Length of the resolution, or `None` when truncated.
    pub fn length(&self) -> Option<usize> {
        match self.truncated_at {
            Some(_) => None,
            None => Some(self.modules.len().saturating_sub(1)),
        }
    }

    /// Number of summands in each universal approximation.
    pub fn universal_sizes(&self) -> Vec<usize> {
        self.universal_classes.iter().map(|c| c.len()).collect()
    }

    /// Checks exactness of the sequence and of its image under `Hom(M_j, −)`
    /// for every summand class, by dimension counts of induced maps.
    pub fn verify(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(format!("M-resolution check failed: {m}")));
        if self.module.is_zero() {
            return Ok(());
        }
        let mut chain: Vec<&RepMap<K>> = vec![&self.augmentation];
        chain.extend(self.maps.iter());
        if !self.augmentation.is_surjective() {
            return bad("augmentation is not onto".into());
        }
        for w in chain.windows(2) {
            if !w[1].then(w[0]).is_zero() {
                return bad("consecutive maps do not compose to zero".into());
            }
            if w[1].rank() + w[0].rank() != w[0].source().total_dim() {
                return bad("image differs from kernel".into());
            }
        }
        let complete = self.truncated_at.is_none();
        if complete && !chain.last().unwrap().is_injective() {
            return bad("last map is not injective".into());
        }
        for (j, mj) in self.classes.iter().enumerate() {
            let induced_rank = |d: &RepMap<K>| -> usize {
                let cols: Vec<Vec<K::Elem>> = hom_basis(mj, d.source()).iter().map(|g| g.then(d).flatten()).collect();
                let len = mj.dims().iter().zip(d.target().dims()).map(|(a, b)| a * b).sum();
                Matrix::from_columns(mj.field(), len, &cols).rank()
            };
            let ranks: Vec<usize> = chain.iter().map(|d| induced_rank(d)).collect();
            if ranks[0] != hom_basis(mj, &self.module).len() {
                return bad(format!("Hom(M_{j}, -) of the augmentation is not onto"));
            }
            for (i, m) in self.modules.iter().enumerate() {
                let dim = hom_basis(mj, m).len();
                let incoming = ranks.get(i + 1).copied().unwrap_or(0);
                if incoming + ranks[i] != dim && (complete || i + 1 < self.modules.len()) {
                    return bad(format!("Hom(M_{j}, -) is not exact at degree {i}"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::min_proj_resolution;
    use crate::linalg::PrimeField;
    use crate::quiver::Algebra;
    use crate::rep::{injective, projective, radical_power_quotient, regular, simple};

    fn fp() -> PrimeField {
        PrimeField::new(1_000_003).unwrap()
    }

    fn auslander(alg: &Algebra<PrimeField>) -> Rep<PrimeField> {
        let parts: Vec<_> = (1..=alg.loewy_length())
            .map(|i| radical_power_quotient(alg, i).unwrap())
            .collect();
        direct_sum(alg, &parts)
    }

    #[test]
    fn regular_generator_gives_projective_resolution() {
        let a = Algebra::beilinson(2, fp()).unwrap();
        let r = m_resolution(&regular(&a), &simple(&a, 0), 8).unwrap();
        r.verify().unwrap();
        let p = min_proj_resolution(&simple(&a, 0), 8).unwrap();
        assert_eq!(r.length(), Some(2));
        let dims: Vec<_> = r.modules.iter().map(|m| m.total_dim()).collect();
        let pdims: Vec<_> = p.terms.iter().map(|m| m.total_dim()).collect();
        assert_eq!(dims, pdims);
    }

    #[test]
    fn auslander_generator_lengths() {
        let a = Algebra::beilinson(1, fp()).unwrap();
        let m = auslander(&a);
        let r = m_resolution(&m, &injective(&a, 1), 8).unwrap();
        r.verify().unwrap();
        assert!(r.length().unwrap() <= 2);
        let r = m_resolution(&m, &simple(&a, 0), 8).unwrap();
        assert_eq!(r.length(), Some(0));
        let r = m_resolution(&m, &m, 8).unwrap();
        assert_eq!(r.length(), Some(0));
        for (u, t) in r.universal_sizes().iter().zip(&r.term_classes) {
            assert!(*u == 0 || *u >= t.len());
        }
    }

    #[test]
    fn rejects_non_generators() {
        let a = Algebra::beilinson(1, fp()).unwrap();
        let err = m_resolution(&projective(&a, 0), &simple(&a, 0), 4).unwrap_err();
        assert!(matches!(err, Error::NotAGenerator(1)));
    }
}
