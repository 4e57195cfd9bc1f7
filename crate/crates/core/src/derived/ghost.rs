use super::verify::verify_ghost;
use crate::error::{Error, Result};
use crate::homalg::min_proj_resolution;
use crate::linalg::{Field, Matrix, Quotient, Subspace};
use crate::rep::{hom_basis, lift_through, Rep, RepMap};

/// A short exact sequence `0 → left → middle → right → 0`.
#[derive(Clone, Debug)]
pub struct ShortExact<K: Field> {
    pub left: Rep<K>,
    pub middle: Rep<K>,
    pub right: Rep<K>,
    pub inclusion: RepMap<K>,
    pub projection: RepMap<K>,
}

/// Evidence that `module` lies outside the `n`-th thickening of the
/// projectives: an `n`-fold extension by projectives whose class in
/// `Ext^n(module, witness)` is nonzero.
#[derive(Clone, Debug)]
pub struct GhostCertificate<K: Field> {
    pub module: Rep<K>,
    pub n: usize,
    /// `Ω^n` of the module.
    pub witness: Rep<K>,
    /// `splice[i-1]` is `0 → Ω^i → P_{i-1} → Ω^{i-1} → 0`.
    pub splice: Vec<ShortExact<K>>,
    /// Images of the identity under successive connecting maps, as maps `Ω^i → Ω^i`.
    pub representatives: Vec<RepMap<K>>,
    pub ext_dim: usize,
    /// Coordinates of the spliced class in `Ext^n(module, witness)`.
    pub class_coords: Vec<K::Elem>,
    pub verified: bool,
}

pub fn ghost_certificate<K: Field>(x: &Rep<K>, n: usize) -> Result<GhostCertificate<K>> {
    if n == 0 {
        return Err(Error::InvalidInput("ghost certificates need n ≥ 1".into()));
    }
    let res = min_proj_resolution(x, n)?;
    let pd = res.pd();
    if pd.is_exact() && pd.value < n || x.is_zero() {
        return Err(Error::NoObstruction { pd: pd.value, n });
    }
    // ε_i: P_i → Ω^i and ι_i: Ω^i → P_{i-1}
    let mut epis = vec![res.augmentation.clone()];
    for i in 1..n {
        let inc = &res.syzygies[i - 1].1;
        let eps = lift_through(inc, &res.differentials[i - 1])
            .ok_or_else(|| Error::Inconclusive("differential does not factor through the syzygy".into()))?;
        epis.push(eps);
    }
    let splice: Vec<ShortExact<K>> = (1..=n)
        .map(|i| {
            let (left, inc) = res.syzygies[i - 1].clone();
            ShortExact {
                right: res.syzygy(i - 1).unwrap().clone(),
                middle: res.terms[i - 1].clone(),
                left,
                inclusion: inc,
                projection: epis[i - 1].clone(),
            }
        })
        .collect();

    // push the identity through the connecting maps, lifting along each middle term
    let mut phi = RepMap::identity(x);
    let mut representatives = Vec::with_capacity(n);
    for s in &splice {
        let psi = lift_through(&s.projection, &s.projection.then(&phi))
            .ok_or_else(|| Error::Inconclusive("comparison map does not lift".into()))?;
        phi = lift_through(&s.inclusion, &s.inclusion.then(&psi))
            .ok_or_else(|| Error::Inconclusive("comparison map does not restrict".into()))?;
        representatives.push(phi.clone());
    }

    let last = splice.last().unwrap();
    let witness = last.left.clone();
    let (ext_dim, class_coords) = ext_class(&last.inclusion, &phi);
    if class_coords.iter().all(|c| x.field().is_zero(c)) {
        return Err(Error::Inconclusive("spliced class vanished although pd ≥ n".into()));
    }
    let mut cert = GhostCertificate {
        module: x.clone(),
        n,
        witness,
        splice,
        representatives,
        ext_dim,
        class_coords,
        verified: false,
    };
    verify_ghost(&cert)?;
    cert.verified = true;
    Ok(cert)
}

/// `Ext^n` as `Hom(Ω, W)` modulo maps extending along `inc: Ω → P`, and the
/// coordinates of `[phi]` there.
fn ext_class<K: Field>(inc: &RepMap<K>, phi: &RepMap<K>) -> (usize, Vec<K::Elem>) {
    let syzygy = inc.source();
    let w = phi.target();
    let f = syzygy.field();
    let homs = hom_basis(syzygy, w);
    let len = syzygy.dims().iter().zip(w.dims()).map(|(a, b)| a * b).sum();
    let cols: Vec<Vec<K::Elem>> = homs.iter().map(|h| h.flatten()).collect();
    let space = Subspace::from_basis(Matrix::from_columns(f, len, &cols));
    let coords = |m: &RepMap<K>| space.coords(&Matrix::column_vector(f, m.flatten())).column(0);
    let extending: Vec<Vec<K::Elem>> = hom_basis(inc.target(), w).iter().map(|g| coords(&inc.then(g))).collect();
    let q = Quotient::new(&Subspace::span(&Matrix::from_columns(f, homs.len(), &extending)));
    (q.dim(), q.projection().mul_vec(&coords(phi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rationals;
    use crate::quiver::Algebra;
    use crate::rep::{projective, simple};

    #[test]
    fn ghosts_over_small_algebras() {
        let a = Algebra::beilinson(1, Rationals).unwrap();
        let g = ghost_certificate(&simple(&a, 0), 1).unwrap();
        assert!(g.verified);
        assert_eq!(g.witness.dims(), &[0, 2]);
        assert!(matches!(
            ghost_certificate(&projective(&a, 0), 1),
            Err(Error::NoObstruction { pd: 0, n: 1 })
        ));
        let a2 = Algebra::beilinson(2, Rationals).unwrap();
        let g = ghost_certificate(&simple(&a2, 0), 2).unwrap();
        assert_eq!(g.witness.dims(), &[0, 0, 3]);
        assert!(g.ext_dim >= 1);
        assert!(matches!(
            ghost_certificate(&simple(&a2, 0), 3),
            Err(Error::NoObstruction { pd: 2, n: 3 })
        ));
    }
}
