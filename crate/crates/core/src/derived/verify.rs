//! Certificate checks written against raw matrices only, so that they share
//! no code path with the constructions they audit beyond basic linear algebra.

use super::complex::RepComplex;
use super::ghost::GhostCertificate;
use super::tower::LevelCertificate;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::quiver::Algebra;
use crate::rep::{Rep, RepMap};

fn reject<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::CertificateRejected(msg.into()))
}

fn hstack<K: Field>(f: &K, rows: usize, parts: &[Matrix<K>]) -> Matrix<K> {
    let refs: Vec<&Matrix<K>> = parts.iter().collect();
    Matrix::hstack(f, rows, &refs)
}

/// Total dimension of each indecomposable projective, counted from the path basis.
fn projective_sizes<K: Field>(alg: &Algebra<K>) -> Vec<usize> {
    let mut sizes = vec![0; alg.vertex_count()];
    for e in alg.basis().elements() {
        sizes[e.source] += 1;
    }
    sizes
}

fn maps_equal<K: Field>(a: &Matrix<K>, b: &Matrix<K>) -> bool {
    a.shape() == b.shape() && a.sub(b).is_zero()
}

fn same_module<K: Field>(a: &Rep<K>, b: &Rep<K>) -> bool {
    a.dims() == b.dims()
        && a.arrow_maps()
            .iter()
            .zip(b.arrow_maps())
            .all(|(x, y)| maps_equal(x, y))
}

/// Raw intertwining check `φ_t · X_a = Y_a · φ_s` for every arrow.
fn check_module_map<K: Field>(alg: &Algebra<K>, m: &RepMap<K>, what: &str) -> Result<()> {
    let (x, y) = (m.source(), m.target());
    for v in 0..alg.vertex_count() {
        if m.component(v).shape() != (y.dim_at(v), x.dim_at(v)) {
            return reject(format!("{what}: component {v} has the wrong shape"));
        }
    }
    for (i, a) in alg.quiver().arrows().iter().enumerate() {
        let lhs = m.component(a.target).mul(x.arrow_map(i));
        let rhs = y.arrow_map(i).mul(m.component(a.source));
        if !maps_equal(&lhs, &rhs) {
            return reject(format!("{what}: fails to commute with arrow {}", a.label));
        }
    }
    Ok(())
}

fn rank_at<K: Field>(m: &RepMap<K>, v: usize) -> usize {
    m.component(v).rank()
}

/// Whether `U / W` is projective, where `U ⊇ W` are arrow-stable families of
/// subspaces of `x` given by spanning columns. The projective cover of a
/// module has dimension `Σ top_v · |P_v|`, so equality of dimensions decides.
fn subquotient_is_projective<K: Field>(x: &Rep<K>, u: &[Matrix<K>], w: &[Matrix<K>]) -> Result<bool> {
    let alg = x.algebra();
    let f = x.field();
    let sizes = projective_sizes(alg);
    let nv = alg.vertex_count();
    let mut total = 0;
    let mut cover = 0;
    for v in 0..nv {
        let ru = u[v].rank();
        let rw = w[v].rank();
        if hstack(f, x.dim_at(v), &[u[v].clone(), w[v].clone()]).rank() != ru {
            return reject("subquotient: W is not inside U");
        }
        let mut rad = vec![w[v].clone()];
        for (i, a) in alg.quiver().arrows().iter().enumerate() {
            if a.target == v {
                let img = x.arrow_map(i).mul(&u[a.source]);
                if hstack(f, x.dim_at(v), &[u[v].clone(), img.clone()]).rank() != ru {
                    return reject("subquotient: U is not arrow-stable");
                }
                rad.push(img);
            }
        }
        let top = ru - hstack(f, x.dim_at(v), &rad).rank();
        total += ru - rw;
        cover += top * sizes[v];
    }
    Ok(total == cover)
}

fn zero_cols<K: Field>(f: &K, rows: usize) -> Matrix<K> {
    Matrix::zeros(f, rows, 0)
}

/// Raw check of `d² = 0` and that every part of the complex is projective.
fn check_complex<K: Field>(c: &RepComplex<K>, projective_type: bool, what: &str) -> Result<()> {
    let alg = c.algebra();
    let f = alg.field();
    for i in c.degrees() {
        let d = c.diff(i);
        let d_up = c.diff(i + 1);
        check_module_map(alg, &d, what)?;
        for v in 0..alg.vertex_count() {
            if !d.component(v).mul(d_up.component(v)).is_zero() {
                return reject(format!("{what}: d∘d is nonzero at degree {i}"));
            }
        }
        if projective_type {
            let x = c.term(i);
            let nv = alg.vertex_count();
            let z: Vec<Matrix<K>> = (0..nv).map(|v| d.component(v).kernel_basis()).collect();
            let b: Vec<Matrix<K>> = (0..nv).map(|v| d_up.component(v).column_space()).collect();
            let none: Vec<Matrix<K>> = (0..nv).map(|v| zero_cols(f, x.dim_at(v))).collect();
            for (name, u, w) in [("Z", &z, &none), ("B", &b, &none), ("H", &z, &b)] {
                if !subquotient_is_projective(&x, u, w)? {
                    return reject(format!("{what}: {name}_{i} is not projective"));
                }
            }
        }
    }
    Ok(())
}

/// Replays every invariant of a level certificate.
pub fn verify_level<K: Field>(cert: &LevelCertificate<K>) -> Result<()> {
    let target = &cert.target;
    check_complex(target, false, "target")?;
    if target.terms().iter().all(|t| t.is_zero()) {
        return if cert.level == 0 && cert.tower.is_empty() {
            Ok(())
        } else {
            reject("zero complex must have level 0")
        };
    }
    if cert.level != cert.tower.len() + 1 {
        return reject(format!("level {} does not match a tower of {} steps", cert.level, cert.tower.len()));
    }
    let alg = target.algebra();
    let nv = alg.vertex_count();
    let mut current = target.clone();
    for (j, step) in cert.tower.iter().enumerate() {
        let what = format!("stage {j}");
        let input = &step.input;
        for i in input.degrees().chain(current.degrees()) {
            if !same_module(&input.term(i), &current.term(i)) {
                return reject(format!("{what}: input differs from the previous syzygy"));
            }
            let (a, b) = (input.diff(i), current.diff(i));
            if (0..nv).any(|v| !maps_equal(a.component(v), b.component(v))) {
                return reject(format!("{what}: input differential differs from the previous syzygy"));
            }
        }
        check_complex(&step.p, true, &format!("{what} projective complex"))?;
        let degrees: Vec<i64> = input.degrees().collect();
        if step.epi.len() != degrees.len() || step.kernel_inclusions.len() != degrees.len() {
            return reject(format!("{what}: wrong number of components"));
        }
        for (k, &i) in degrees.iter().enumerate() {
            let (e, inc) = (&step.epi[k], &step.kernel_inclusions[k]);
            let (p_i, x_i, k_i) = (step.p.term(i), input.term(i), step.syzygy.term(i + 1));
            if !same_module(e.source(), &p_i) || !same_module(e.target(), &x_i) {
                return reject(format!("{what}: epimorphism in degree {i} has the wrong ends"));
            }
            if !same_module(inc.source(), &k_i) || !same_module(inc.target(), &p_i) {
                return reject(format!("{what}: kernel inclusion in degree {i} has the wrong ends"));
            }
            check_module_map(alg, e, &what)?;
            check_module_map(alg, inc, &what)?;
            for v in 0..nv {
                if rank_at(e, v) != x_i.dim_at(v) {
                    return reject(format!("{what}: degree {i} is not onto at vertex {v}"));
                }
                if rank_at(inc, v) != k_i.dim_at(v) || k_i.dim_at(v) + x_i.dim_at(v) != p_i.dim_at(v) {
                    return reject(format!("{what}: degree {i} kernel has the wrong size at vertex {v}"));
                }
                if !e.component(v).mul(inc.component(v)).is_zero() {
                    return reject(format!("{what}: kernel is not killed in degree {i}"));
                }
                if k > 0 {
                    let lhs = step.epi[k - 1].component(v).mul(step.p.diff(i).component(v));
                    let rhs = input.diff(i).component(v).mul(e.component(v));
                    if !maps_equal(&lhs, &rhs) {
                        return reject(format!("{what}: epimorphism does not commute in degree {i}"));
                    }
                    // the shifted kernel carries −δ restricted
                    let lhs = step.kernel_inclusions[k - 1].component(v).mul(step.syzygy.diff(i + 1).component(v));
                    let rhs = step.p.diff(i).component(v).mul(inc.component(v)).neg();
                    if !maps_equal(&lhs, &rhs) {
                        return reject(format!("{what}: syzygy differential is not the restriction in degree {i}"));
                    }
                }
            }
        }
        check_complex(&step.syzygy, false, &what)?;
        current = step.syzygy.clone();
    }
    check_complex(&cert.last, true, "last syzygy")?;
    for i in cert.last.degrees().chain(current.degrees()) {
        if !same_module(&cert.last.term(i), &current.term(i)) {
            return reject("last syzygy differs from the end of the tower");
        }
    }
    Ok(())
}

/// Solves for `r: middle → left` with `r ∘ inc = id`; such an `r` exists
/// exactly when the sequence splits.
fn splits<K: Field>(alg: &Algebra<K>, inc: &RepMap<K>) -> Result<bool> {
    let f = alg.field();
    let (left, middle) = (inc.source(), inc.target());
    let nv = alg.vertex_count();
    let mut offs = vec![0usize; nv + 1];
    for v in 0..nv {
        offs[v + 1] = offs[v] + left.dim_at(v) * middle.dim_at(v);
    }
    let unknowns = offs[nv];
    // r_v stored row-major: entry (p, q) at offs[v] + p * middle_v + q
    let mut rows: Vec<Vec<K::Elem>> = Vec::new();
    let mut rhs: Vec<K::Elem> = Vec::new();
    let idx = |v: usize, p: usize, q: usize| offs[v] + p * middle.dim_at(v) + q;
    for (i, a) in alg.quiver().arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (la, ma) = (left.arrow_map(i), middle.arrow_map(i));
        // (r_t · M_a)[p][q] − (L_a · r_s)[p][q] = 0
        for p in 0..left.dim_at(t) {
            for q in 0..middle.dim_at(s) {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..middle.dim_at(t) {
                    let c = ma.get(k, q);
                    row[idx(t, p, k)] = f.add(&row[idx(t, p, k)], c);
                }
                for k in 0..left.dim_at(s) {
                    let c = la.get(p, k);
                    row[idx(s, k, q)] = f.sub(&row[idx(s, k, q)], c);
                }
                rows.push(row);
                rhs.push(f.zero());
            }
        }
    }
    for v in 0..nv {
        let iv = inc.component(v);
        for p in 0..left.dim_at(v) {
            for q in 0..left.dim_at(v) {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..middle.dim_at(v) {
                    row[idx(v, p, k)] = iv.get(k, q).clone();
                }
                rows.push(row);
                rhs.push(if p == q { f.one() } else { f.zero() });
            }
        }
    }
    if rows.is_empty() {
        return Ok(true);
    }
    let a = Matrix::from_rows(f, rows)?;
    let b = Matrix::column_vector(f, rhs);
    Ok(a.solve(&b)?.is_some())
}

/// Replays every invariant of a ghost certificate.
pub fn verify_ghost<K: Field>(cert: &GhostCertificate<K>) -> Result<()> {
    let alg = cert.module.algebra();
    let f = alg.field();
    let nv = alg.vertex_count();
    if cert.n == 0 || cert.splice.len() != cert.n {
        return reject("splice length differs from n");
    }
    for (k, s) in cert.splice.iter().enumerate() {
        let what = format!("extension {}", k + 1);
        check_module_map(alg, &s.inclusion, &what)?;
        check_module_map(alg, &s.projection, &what)?;
        if !same_module(s.inclusion.source(), &s.left)
            || !same_module(s.inclusion.target(), &s.middle)
            || !same_module(s.projection.source(), &s.middle)
            || !same_module(s.projection.target(), &s.right)
        {
            return reject(format!("{what}: maps do not match the stated modules"));
        }
        for v in 0..nv {
            let (l, m, r) = (s.left.dim_at(v), s.middle.dim_at(v), s.right.dim_at(v));
            if rank_at(&s.inclusion, v) != l || rank_at(&s.projection, v) != r || l + r != m {
                return reject(format!("{what}: not exact at vertex {v}"));
            }
            if !s.projection.component(v).mul(s.inclusion.component(v)).is_zero() {
                return reject(format!("{what}: composite is nonzero at vertex {v}"));
            }
        }
        let none: Vec<Matrix<K>> = (0..nv).map(|v| zero_cols(f, s.middle.dim_at(v))).collect();
        let all: Vec<Matrix<K>> = (0..nv).map(|v| Matrix::identity(f, s.middle.dim_at(v))).collect();
        if !subquotient_is_projective(&s.middle, &all, &none)? {
            return reject(format!("{what}: middle term is not projective"));
        }
        let expected_right = if k == 0 { &cert.module } else { &cert.splice[k - 1].left };
        if !same_module(&s.right, expected_right) {
            return reject(format!("{what}: does not splice onto the previous extension"));
        }
    }
    let last = cert.splice.last().unwrap();
    if !same_module(&last.left, &cert.witness) {
        return reject("witness differs from the last kernel");
    }
    if last.left.is_zero() || splits(alg, &last.inclusion)? {
        return reject("the spliced class is zero: the last extension splits");
    }
    if cert.class_coords.len() != cert.ext_dim || cert.class_coords.iter().all(|c| f.is_zero(c)) {
        return reject("recorded class coordinates are zero");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::{ghost_certificate, level_upper_certificate};
    use crate::linalg::Rationals;
    use crate::rep::simple;

    #[test]
    fn tampering_is_caught() {
        let a = Algebra::beilinson(1, Rationals).unwrap();
        let mut g = ghost_certificate(&simple(&a, 0), 1).unwrap();
        g.splice[0].projection = g.splice[0].projection.scale(&Rationals.zero());
        assert!(verify_ghost(&g).is_err());

        let mut c = level_upper_certificate(&RepComplex::concentrated(&simple(&a, 0), 0), 4).unwrap();
        c.level = 1;
        assert!(verify_level(&c).is_err());
        let mut c = level_upper_certificate(&RepComplex::concentrated(&simple(&a, 0), 0), 4).unwrap();
        c.tower[0].epi[0] = c.tower[0].epi[0].scale(&Rationals.zero());
        assert!(verify_level(&c).is_err());
    }
}
