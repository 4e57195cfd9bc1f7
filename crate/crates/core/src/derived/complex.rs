use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::quiver::Algebra;
use crate::rep::{cokernel, kernel, lift_through, map_factorization, Rep, RepMap};

/// A bounded complex of modules with homological grading: `d_i: X_i → X_{i-1}`.
#[derive(Clone, Debug)]
pub struct RepComplex<K: Field> {
    algebra: Algebra<K>,
    low: i64,
    terms: Vec<Rep<K>>,
    /// `diffs[k]` is `d_{low+k+1}: X_{low+k+1} → X_{low+k}`.
    diffs: Vec<RepMap<K>>,
}

fn same_shape<K: Field>(a: &Rep<K>, b: &Rep<K>) -> bool {
    a.dims() == b.dims() && a.arrow_maps() == b.arrow_maps()
}

impl<K: Field> RepComplex<K> {
    /// Builds a complex with lowest degree `low`, rejecting `d² ≠ 0`.
    pub fn new(algebra: &Algebra<K>, low: i64, terms: Vec<Rep<K>>, diffs: Vec<RepMap<K>>) -> Result<Self> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::DimensionMismatch(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if !same_shape(d.source(), &terms[k + 1]) || !same_shape(d.target(), &terms[k]) {
                return Err(Error::DimensionMismatch(format!(
                    "differential in degree {} does not match its terms",
                    low + k as i64 + 1
                )));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k].then(&diffs[k - 1]).is_zero() {
                return Err(Error::InvalidInput(format!(
                    "d∘d is nonzero at degree {}",
                    low + k as i64 + 1
                )));
            }
        }
        Ok(RepComplex {
            algebra: algebra.clone(),
            low,
            terms,
            diffs,
        })
    }

    pub fn zero(algebra: &Algebra<K>) -> Self {
        RepComplex {
            algebra: algebra.clone(),
            low: 0,
            terms: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// `x` placed in a single degree.
    pub fn concentrated(x: &Rep<K>, degree: i64) -> Self {
        RepComplex {
            algebra: x.algebra().clone(),
            low: degree,
            terms: vec![x.clone()],
            diffs: Vec::new(),
        }
    }

    pub fn algebra(&self) -> &Algebra<K> {
        &self.algebra
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    /// One past the highest degree.
    pub fn high(&self) -> i64 {
        self.low + self.terms.len() as i64
    }

    pub fn degrees(&self) -> std::ops::Range<i64> {
        self.low..self.high()
    }

    pub fn terms(&self) -> &[Rep<K>] {
        &self.terms
    }

    pub fn differentials(&self) -> &[RepMap<K>] {
        &self.diffs
    }

    /// The term in degree `i`, zero outside the support.
    pub fn term(&self, i: i64) -> Rep<K> {
        if self.degrees().contains(&i) {
            self.terms[(i - self.low) as usize].clone()
        } else {
            Rep::zero(&self.algebra)
        }
    }

    /// `d_i: X_i → X_{i-1}`, zero outside the support.
    pub fn diff(&self, i: i64) -> RepMap<K> {
        if i > self.low && i < self.high() {
            self.diffs[(i - self.low - 1) as usize].clone()
        } else {
            RepMap::zero(&self.term(i), &self.term(i - 1))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_zero())
    }

    /// `Σ X`: degrees move up by one and the differential changes sign.
    pub fn shift(&self) -> Self {
        let f = self.algebra.field();
        let minus = f.neg(&f.one());
        RepComplex {
            algebra: self.algebra.clone(),
            low: self.low + 1,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&minus)).collect(),
        }
    }

    /// Drops zero terms at both ends.
    pub fn trimmed(&self) -> Self {
        let first = self.terms.iter().position(|t| !t.is_zero());
        let Some(first) = first else {
            return RepComplex::zero(&self.algebra);
        };
        let last = self.terms.iter().rposition(|t| !t.is_zero()).unwrap();
        RepComplex {
            algebra: self.algebra.clone(),
            low: self.low + first as i64,
            terms: self.terms[first..=last].to_vec(),
            diffs: self.diffs[first..last].to_vec(),
        }
    }
}

/// Cycles, boundaries and homology in one degree.
#[derive(Clone, Debug)]
pub struct DegreeParts<K: Field> {
    pub degree: i64,
    pub cycles: Rep<K>,
    /// `Z_i → X_i`.
    pub cycles_inclusion: RepMap<K>,
    pub boundaries: Rep<K>,
    /// `B_i → Z_i`.
    pub boundaries_inclusion: RepMap<K>,
    /// `X_{i+1} → B_i`, the corestriction of `d_{i+1}`.
    pub boundary_cover: RepMap<K>,
    pub homology: Rep<K>,
    /// `Z_i → H_i`.
    pub homology_projection: RepMap<K>,
}

/// Per-degree cycles, boundaries and homology of a complex.
#[derive(Clone, Debug)]
pub struct ComplexParts<K: Field> {
    pub parts: Vec<DegreeParts<K>>,
}

impl<K: Field> ComplexParts<K> {
    pub fn at(&self, degree: i64) -> Option<&DegreeParts<K>> {
        self.parts.iter().find(|p| p.degree == degree)
    }
}

pub fn complex_parts<K: Field>(c: &RepComplex<K>) -> ComplexParts<K> {
    let parts = c
        .degrees()
        .map(|i| {
            let (cycles, cycles_inclusion) = kernel(&c.diff(i));
            let fac = map_factorization(&c.diff(i + 1));
            let boundaries_inclusion = lift_through(&cycles_inclusion, &fac.image_inclusion)
                .expect("boundaries lie in the cycles when d² = 0");
            let (homology, homology_projection) = cokernel(&boundaries_inclusion);
            DegreeParts {
                degree: i,
                cycles,
                cycles_inclusion,
                boundaries: fac.image,
                boundaries_inclusion,
                boundary_cover: fac.coimage_map,
                homology,
                homology_projection,
            }
        })
        .collect();
    ComplexParts { parts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::min_proj_resolution;
    use crate::linalg::Rationals;
    use crate::rep::simple;

    #[test]
    fn parts_of_small_complexes() {
        let a = Algebra::beilinson(1, Rationals).unwrap();
        let s0 = simple(&a, 0);
        let p = RepComplex::concentrated(&s0, 0);
        let parts = complex_parts(&p);
        assert_eq!(parts.parts[0].homology.dims(), &[1, 0]);
        assert!(parts.parts[0].boundaries.is_zero());

        let id = RepComplex::new(&a, 0, vec![s0.clone(), s0.clone()], vec![RepMap::identity(&s0)]).unwrap();
        assert!(complex_parts(&id).parts.iter().all(|p| p.homology.is_zero()));

        let r = min_proj_resolution(&s0, 4).unwrap();
        let c = RepComplex::new(&a, 0, r.terms.clone(), r.differentials.clone()).unwrap();
        let parts = complex_parts(&c);
        assert_eq!(parts.at(0).unwrap().homology.dims(), &[1, 0]);
        assert!(parts.at(1).unwrap().homology.is_zero());
        assert_eq!(parts.at(0).unwrap().boundaries.dims(), &[0, 2]);
        assert_eq!(c.shift().low(), 1);
    }

    #[test]
    fn rejects_nonzero_square() {
        let a = Algebra::beilinson(1, Rationals).unwrap();
        let s0 = simple(&a, 0);
        let id = RepMap::identity(&s0);
        assert!(RepComplex::new(&a, 0, vec![s0.clone(), s0.clone(), s0.clone()], vec![id.clone(), id]).is_err());
    }
}
