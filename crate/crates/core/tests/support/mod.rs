//! Seeded random instances and the invariant suites shared by the test targets.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use repdimlab::derived::{
    tower_step, ghost_certificate, level_upper_certificate, verify_certificate, CertificateFile, RepComplex,
};
use repdimlab::homalg::{min_proj_resolution, projective_dimension};
use repdimlab::linalg::{Field, Matrix, PrimeField, Rationals, DEFAULT_PRIME};
use repdimlab::quiver::Algebra;
use repdimlab::rep::{
    cokernel, direct_sum, hom_dim, map_from_projective, map_from_sum, projective, projective_sum, radical_and_top,
    top_dims, Rep,
};

pub fn fp() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

/// The small algebras used for random modules: Beilinson 1 and 2, and the
/// exterior algebra on two generators.
pub fn small_algebra(which: usize) -> Algebra<PrimeField> {
    match which % 3 {
        0 => Algebra::beilinson(1, fp()).unwrap(),
        1 => Algebra::beilinson(2, fp()).unwrap(),
        _ => Algebra::exterior(2, fp()).unwrap(),
    }
}

/// A sum of one to three projectives modulo up to four sparse random
/// elements, then possibly replaced by its radical, its top, or its quotient
/// by the square of the radical.
pub fn random_module<K: Field>(alg: &Algebra<K>, seed: u64) -> Rep<K> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = alg.field();
    let nv = alg.vertex_count();
    let count = rng.gen_range(1..=3);
    let vertices: Vec<usize> = (0..count).map(|_| rng.gen_range(0..nv)).collect();
    let p = projective_sum(alg, &vertices);
    let mut sources = Vec::new();
    let mut maps = Vec::new();
    for _ in 0..rng.gen_range(0..=4) {
        let support: Vec<usize> = (0..nv).filter(|&v| p.dim_at(v) > 0).collect();
        let w = support[rng.gen_range(0..support.len())];
        let u: Vec<K::Elem> = (0..p.dim_at(w))
            .map(|_| if rng.gen_bool(0.5) { f.random(&mut rng) } else { f.zero() })
            .collect();
        let pw = projective(alg, w);
        maps.push(map_from_projective(&pw, w, &p, &u));
        sources.push(pw);
    }
    let x = if maps.is_empty() {
        p.clone()
    } else {
        let src = direct_sum(alg, &sources);
        cokernel(&map_from_sum(&src, &maps, &p)).0
    };
    match rng.gen_range(0..20) {
        0..=3 => radical_and_top(&x).radical,
        4..=6 => radical_and_top(&x).top,
        7..=9 => {
            let r1 = radical_and_top(&x);
            let r2 = radical_and_top(&r1.radical);
            cokernel(&r2.inclusion.then(&r1.inclusion)).0
        }
        _ => x,
    }
}

fn check(cond: bool, what: impl Into<String>) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.into()))
    }
}

fn matrix_strategy() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..=3, r * c)))
}

fn rank_nullity<K: Field>(f: &K, r: usize, c: usize, entries: &[i64]) -> Result<(), TestCaseError> {
    let data = entries.iter().map(|&e| f.from_i64(e)).collect();
    let m = Matrix::new(f.clone(), r, c, data).unwrap();
    let ker = m.kernel_basis();
    check(m.rank() + ker.cols() == c, "rank + nullity != columns")?;
    check(m.mul(&ker).is_zero(), "kernel basis is not in the kernel")?;
    check(ker.rank() == ker.cols(), "kernel basis is dependent")?;
    check(m.transpose().rank() == m.rank(), "row rank != column rank")
}

/// Runs one named suite for `cases` seeded cases.
pub fn run_suite(name: &str, cases: u32) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    let seeds = (0usize..3, any::<u64>());
    let outcome = match name {
        "rank-nullity" => runner.run(&(matrix_strategy(), any::<bool>()), |((r, c, e), over_q)| {
            if over_q {
                rank_nullity(&Rationals, r, c, &e)
            } else {
                rank_nullity(&fp(), r, c, &e)
            }
        })
        .map_err(|e| e.to_string()),
        "yoneda" => runner.run(&seeds, |(which, seed)| {
            let alg = small_algebra(which);
            let x = random_module(&alg, seed);
            for v in 0..alg.vertex_count() {
                check(hom_dim(&projective(&alg, v), &x) == x.dim_at(v), format!("Hom(P_{v}, X) != X_{v}"))?;
            }
            Ok(())
        })
        .map_err(|e| e.to_string()),
        "resolution-minimality" => runner.run(&seeds, |(which, seed)| {
            let alg = small_algebra(which);
            let x = random_module(&alg, seed);
            let res = min_proj_resolution(&x, 6).map_err(|e| TestCaseError::fail(e.to_string()))?;
            res.verify().map_err(|e| TestCaseError::fail(e.to_string()))?;
            check(res.minimal, "resolution not flagged minimal")?;
            if !x.is_zero() {
                // the first term is a projective cover: one summand per top basis vector
                let tops: usize = top_dims(&x).iter().sum();
                check(res.term_vertices[0].len() == tops, "P_0 is not a projective cover")?;
            }
            Ok(())
        })
        .map_err(|e| e.to_string()),
        "d-squared" => runner.run(&seeds, |(which, seed)| {
            let alg = small_algebra(which % 2);
            let x = random_module(&alg, seed);
            let res = min_proj_resolution(&x, 6).map_err(|e| TestCaseError::fail(e.to_string()))?;
            for w in res.differentials.windows(2) {
                check(w[1].then(&w[0]).is_zero(), "d_{i+1} d_{i+2} != 0 in a resolution")?;
            }
            if let Some(d1) = res.differentials.first() {
                check(d1.then(&res.augmentation).is_zero(), "augmentation after d_1 is nonzero")?;
            }
            // and in the first stage of the projective tower
            if !x.is_zero() {
                let step = tower_step(&RepComplex::concentrated(&x, 0)).map_err(|e| TestCaseError::fail(e.to_string()))?;
                for c in [&step.p, &step.syzygy] {
                    for i in c.low()..c.high() {
                        check(c.diff(i + 1).then(&c.diff(i)).is_zero(), "d² != 0 in a tower complex")?;
                    }
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string()),
        "certificate-reverification" => runner.run(&seeds, |(which, seed)| {
            let alg = small_algebra(which % 2);
            let x = random_module(&alg, seed);
            let pd = projective_dimension(&x, 8).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let upper = level_upper_certificate(&RepComplex::concentrated(&x, 0), 8)
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            let claim = verify_certificate(&CertificateFile::from_level(&upper).to_json())
                .map_err(|e| TestCaseError::fail(format!("level certificate rejected: {e}")))?;
            check(claim.value == upper.level, "replayed level differs")?;
            let expected = if x.is_zero() { 0 } else { pd.value + 1 };
            check(upper.level == expected, format!("level {} for pd {}", upper.level, pd))?;
            if pd.value >= 1 {
                let ghost = ghost_certificate(&x, pd.value).map_err(|e| TestCaseError::fail(e.to_string()))?;
                let claim = verify_certificate(&CertificateFile::from_ghost(&ghost).to_json())
                    .map_err(|e| TestCaseError::fail(format!("ghost certificate rejected: {e}")))?;
                check(claim.value == pd.value, "replayed ghost index differs")?;
            }
            Ok(())
        })
        .map_err(|e| e.to_string()),
        _ => Err(format!("unknown suite {name}")),
    };
    outcome
}

pub const SUITES: [&str; 5] = ["rank-nullity", "yoneda", "resolution-minimality", "d-squared", "certificate-reverification"];
