use super::complex::{complex_parts, ComplexParts, RepComplex};
use super::verify::verify_level;
use crate::error::{Error, Result};
use crate::homalg::projective_dimension;
use crate::linalg::Field;
use crate::rep::{biproduct, is_projective, kernel, lift_through, map_from_sum, projective_cover_or_zero, Rep, RepMap};

/// One stage of the tower: a complex `P` of projective type, a degreewise
/// epimorphism `P → X`, and `Σ` of its degreewise kernel.
#[derive(Clone, Debug)]
pub struct TowerStep<K: Field> {
    pub input: RepComplex<K>,
    pub p: RepComplex<K>,
    /// `epi[k]` is the component in degree `input.low() + k`.
    pub epi: Vec<RepMap<K>>,
    /// `kernel_inclusions[k]`: degreewise kernel into `P` in degree `input.low() + k`.
    pub kernel_inclusions: Vec<RepMap<K>>,
    /// The shifted kernel; its degree `i + 1` term is the kernel in degree `i`.
    pub syzygy: RepComplex<K>,
}

/// Whether every cycle, boundary and homology module is projective.
pub fn is_projective_type<K: Field>(c: &RepComplex<K>) -> bool {
    complex_parts(c)
        .parts
        .iter()
        .all(|p| is_projective(&p.cycles) && is_projective(&p.boundaries) && is_projective(&p.homology))
}

pub fn tower_step<K: Field>(c: &RepComplex<K>) -> Result<TowerStep<K>> {
    let alg = c.algebra();
    let parts: ComplexParts<K> = complex_parts(c);
    let degrees: Vec<i64> = c.degrees().collect();
    let n = degrees.len();
    // covers of B_i and H_i, and the horseshoe cover of Z_i
    let b_cov: Vec<_> = parts.parts.iter().map(|p| projective_cover_or_zero(&p.boundaries)).collect();
    let h_cov: Vec<_> = parts.parts.iter().map(|p| projective_cover_or_zero(&p.homology)).collect();
    let mut z_sums = Vec::with_capacity(n);
    let mut z_epis = Vec::with_capacity(n);
    for (k, p) in parts.parts.iter().enumerate() {
        let bp = biproduct(alg, &[b_cov[k].module.clone(), h_cov[k].module.clone()]);
        let from_b = b_cov[k].epi.then(&p.boundaries_inclusion);
        let from_h = lift_through(&p.homology_projection, &h_cov[k].epi)
            .ok_or_else(|| Error::Inconclusive("projective cover does not lift to the cycles".into()))?;
        z_epis.push(map_from_sum(&bp.sum, &[from_b, from_h], &p.cycles));
        z_sums.push(bp);
    }
    // P_i = P^{Z_i} ⊕ P^{B_{i-1}}
    let mut p_sums = Vec::with_capacity(n);
    let mut epi = Vec::with_capacity(n);
    for k in 0..n {
        let i = degrees[k];
        let prev_b = if k > 0 { b_cov[k - 1].clone() } else { projective_cover_or_zero(&Rep::zero(alg)) };
        let bp = biproduct(alg, &[z_sums[k].sum.clone(), prev_b.module.clone()]);
        let from_z = z_epis[k].then(&parts.parts[k].cycles_inclusion);
        let from_b = if k > 0 {
            lift_through(&parts.parts[k - 1].boundary_cover, &prev_b.epi)
                .ok_or_else(|| Error::Inconclusive("projective cover does not lift to the term".into()))?
        } else {
            RepMap::zero(&prev_b.module, &c.term(i))
        };
        epi.push(map_from_sum(&bp.sum, &[from_z, from_b], &c.term(i)));
        p_sums.push(bp);
    }
    // δ_{i+1}: P_{i+1} → P^{B_i} → P^{Z_i} → P_i
    let diffs: Vec<RepMap<K>> = (1..n)
        .map(|k| {
            p_sums[k].projections[1]
                .then(&z_sums[k - 1].injections[0])
                .then(&p_sums[k - 1].injections[0])
        })
        .collect();
    let p = RepComplex::new(alg, c.low(), p_sums.iter().map(|b| b.sum.clone()).collect(), diffs)?;
    for (k, e) in epi.iter().enumerate() {
        if !e.is_surjective() {
            return Err(Error::Inconclusive(format!("degree {} of the tower map is not onto", degrees[k])));
        }
        if k > 0 && !p.diff(degrees[k]).then(&epi[k - 1]).sub(&e.then(&c.diff(degrees[k]))).is_zero() {
            return Err(Error::Inconclusive("tower map does not commute with differentials".into()));
        }
    }
    let kernels: Vec<_> = epi.iter().map(kernel).collect();
    let mut kdiffs = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        let h = kernels[k].1.then(&p.diff(degrees[k]));
        let g = lift_through(&kernels[k - 1].1, &h)
            .ok_or_else(|| Error::Inconclusive("kernel differential does not restrict".into()))?;
        kdiffs.push(g);
    }
    let kc = RepComplex::new(alg, c.low(), kernels.iter().map(|k| k.0.clone()).collect(), kdiffs)?;
    if !is_projective_type(&p) {
        return Err(Error::Inconclusive("tower complex is not of projective type".into()));
    }
    Ok(TowerStep {
        input: c.clone(),
        p,
        epi,
        kernel_inclusions: kernels.into_iter().map(|k| k.1).collect(),
        syzygy: kc.shift().trimmed(),
    })
}

/// Largest projective dimension among boundaries and homology, or an error
/// naming the part whose resolution hit the cutoff.
pub fn parts_bound<K: Field>(c: &RepComplex<K>, cutoff: usize) -> Result<usize> {
    let mut bound = 0;
    for p in complex_parts(c).parts {
        for (name, m) in [("B", &p.boundaries), ("H", &p.homology)] {
            let pd = projective_dimension(m, cutoff)?;
            if !pd.is_exact() {
                return Err(Error::Truncated {
                    cutoff,
                    what: format!("pd of {name}_{} exceeds the cutoff", p.degree),
                });
            }
            bound = bound.max(pd.value);
        }
    }
    Ok(bound)
}

/// A certificate that a complex lies in the `level`-th thickening of the projectives.
#[derive(Clone, Debug)]
pub struct LevelCertificate<K: Field> {
    pub target: RepComplex<K>,
    pub level: usize,
    pub tower: Vec<TowerStep<K>>,
    /// The last syzygy, of projective type (the target itself when the tower is empty).
    pub last: RepComplex<K>,
    pub verified: bool,
}

pub fn level_upper_certificate<K: Field>(c: &RepComplex<K>, cutoff: usize) -> Result<LevelCertificate<K>> {
    if c.is_zero() {
        let mut cert = LevelCertificate {
            target: c.clone(),
            level: 0,
            tower: Vec::new(),
            last: c.clone(),
            verified: false,
        };
        cert.verified = verify_level(&cert).is_ok();
        return Ok(cert);
    }
    let n = parts_bound(c, cutoff)?;
    let mut tower = Vec::with_capacity(n);
    let mut current = c.clone();
    for j in 0..n {
        let step = tower_step(&current)?;
        let next = step.syzygy.clone();
        let b = parts_bound(&next, cutoff)?;
        if b + j + 1 > n {
            return Err(Error::Inconclusive(format!(
                "syzygy bound {b} at stage {} did not drop",
                j + 1
            )));
        }
        tower.push(step);
        current = next;
    }
    if !is_projective_type(&current) {
        return Err(Error::Inconclusive("final syzygy is not of projective type".into()));
    }
    let mut cert = LevelCertificate {
        target: c.clone(),
        level: n + 1,
        tower,
        last: current,
        verified: false,
    };
    verify_level(&cert)?;
    cert.verified = true;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};
    use crate::quiver::Algebra;
    use crate::rep::{projective, simple};

    #[test]
    fn levels_of_simples() {
        let a = Algebra::beilinson(1, Rationals).unwrap();
        let c = RepComplex::concentrated(&simple(&a, 0), 0);
        let step = tower_step(&c).unwrap();
        assert_eq!(step.p.term(0).dims(), &[1, 2]);
        assert_eq!(step.syzygy.term(1).dims(), &[0, 2]);
        let cert = level_upper_certificate(&c, 8).unwrap();
        assert_eq!(cert.level, 2);
        assert!(cert.verified);

        let a2 = Algebra::beilinson(2, PrimeField::new(1_000_003).unwrap()).unwrap();
        let cert = level_upper_certificate(&RepComplex::concentrated(&simple(&a2, 0), 0), 8).unwrap();
        assert_eq!((cert.level, cert.tower.len()), (3, 2));
        let cert = level_upper_certificate(&RepComplex::concentrated(&projective(&a2, 1), 0), 8).unwrap();
        assert_eq!(cert.level, 1);
        assert_eq!(level_upper_certificate(&RepComplex::zero(&a2), 8).unwrap().level, 0);
    }

    #[test]
    fn truncation_names_the_part() {
        let a = Algebra::exterior(1, Rationals).unwrap();
        let err = level_upper_certificate(&RepComplex::concentrated(&simple(&a, 0), 0), 3).unwrap_err();
        assert!(err.to_string().contains("H_0"));
    }
}
