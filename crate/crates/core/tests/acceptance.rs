//! The acceptance gate: ten criteria, one pass/fail line each.
//!
//! Runs without the libtest harness so the summary is always printed; the
//! process exits nonzero when any criterion fails.

mod support;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use repdimlab::derived::{ghost_certificate, level_upper_certificate, verify_certificate, CertificateFile, RepComplex};
use repdimlab::endo::fd_global_dimension;
use repdimlab::harness::{
    auslander_parts, build_algebra, end_data, functor_check, stability_over, Battery, Check, ExperimentConfig,
    Family, ProbeReport, Status,
};
use repdimlab::homalg::{global_dimension, PdValue};
use repdimlab::linalg::{FieldSpec, PrimeField, DEFAULT_PRIME, SECONDARY_PRIME};
use repdimlab::quiver::Algebra;
use repdimlab::rep::{direct_sum, hom_dim, injective, is_generator, projective, simple};
use repdimlab::Error;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn beilinson(n: usize, p: u64) -> Algebra<PrimeField> {
    Algebra::beilinson(n, PrimeField::new(p).unwrap()).unwrap()
}

/// Commutative monomials of degree `d` in `k` variables, by enumerating
/// exponent vectors.
fn monomials(k: usize, d: usize) -> usize {
    if k == 1 {
        return 1;
    }
    (0..=d).map(|first| monomials(k - 1, d - first)).sum()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Paths from vertex `i` to vertex `j ≥ i` modulo commutativity are the
/// monomials of degree `j - i` in `n + 1` variables.
fn beilinson_dim_oracle(n: usize) -> usize {
    let mut total = 0;
    for i in 0..=n {
        for j in i..=n {
            total += monomials(n + 1, j - i);
        }
    }
    total
}

fn criterion_1() -> Outcome {
    let mut seen = Vec::new();
    for (n, expected) in [(1, 4), (2, 15), (3, 56)] {
        let dim = beilinson(n, DEFAULT_PRIME).dim();
        let oracle = beilinson_dim_oracle(n);
        let closed: usize = (0..=n).map(|d| (n + 1 - d) * binomial(d + n, n)).sum();
        ensure(dim == expected && oracle == expected && closed == expected, || {
            format!("n={n}: algebra {dim}, enumeration {oracle}, closed form {closed}, expected {expected}")
        })?;
        seen.push(dim.to_string());
    }
    Ok(format!("dims {}", seen.join(", ")))
}

fn criterion_2() -> Outcome {
    let mut seen = Vec::new();
    for n in 1..=4 {
        let alg = beilinson(n, DEFAULT_PRIME);
        let gd = global_dimension(&alg, n + 4).map_err(|e| e.to_string())?;
        ensure(gd == PdValue::exact(n), || format!("gl.dim Λ_{n} = {gd}"))?;
        // the same number from the structure constants, without the quiver
        if n <= 3 {
            let fd = fd_global_dimension(alg.structure_constants(), n + 4).map_err(|e| e.to_string())?;
            ensure(fd == gd, || format!("structure-constant gl.dim of Λ_{n} = {fd}"))?;
        }
        seen.push(format!("Λ_{n}:{gd}"));
    }
    Ok(seen.join(" "))
}

fn criterion_3() -> Outcome {
    let golden: serde_json::Value =
        serde_json::from_str(include_str!("golden/auslander.json")).map_err(|e| e.to_string())?;
    let mut seen = Vec::new();
    for n in [1usize, 2] {
        let alg = beilinson(n, DEFAULT_PRIME);
        let parts = auslander_parts(&alg).map_err(|e| e.to_string())?;
        ensure(parts.len() == n + 1, || format!("{} radical quotients for n={n}", parts.len()))?;
        let m = direct_sum(&alg, &parts);
        ensure(is_generator(&m), || format!("M does not generate for n={n}"))?;
        let data = end_data(&m, 0).map_err(|e| e.to_string())?;
        let gd = data.theory.global_dimension(32);
        ensure(gd.is_exact() && n <= gd.value && gd.value <= n + 1, || {
            format!("gl.dim End(M) = {gd} outside [{n}, {}]", n + 1)
        })?;
        let want = &golden["beilinson"][n.to_string()];
        ensure(want["gl_dim"] == gd.value && want["end_dim"] == data.end.algebra.dim(), || {
            format!("n={n}: gl.dim {gd}, dim {} differ from golden {want}", data.end.algebra.dim())
        })?;
        seen.push(format!("n={n}: gl.dim End(M)={gd}"));
    }
    Ok(seen.join("; "))
}

fn probe(n: usize, p: u64) -> Result<ProbeReport, String> {
    let mut cfg = ExperimentConfig::beilinson(n, FieldSpec::prime(p).unwrap());
    cfg.battery = Battery::Random;
    cfg.samples = 25;
    cfg.seed = 2024;
    let file = build_algebra(Family::Beilinson, n, cfg.field).map_err(|e| e.to_string())?;
    let report = repdimlab::harness::cmd_probe(&cfg, &file).map_err(|e| e.to_string())?;
    serde_json::from_value(report.result).map_err(|e| e.to_string())
}

fn criterion_4() -> Outcome {
    let mut seen = Vec::new();
    for n in [1usize, 2] {
        let report = probe(n, DEFAULT_PRIME)?;
        ensure(report.rows.len() == 5 + 25, || format!("{} rows", report.rows.len()))?;
        for row in &report.rows {
            ensure(row.generator, || format!("n={n} {} is not a generator", row.name))?;
            let gd = row.gl_dim.ok_or_else(|| format!("n={n} {}: {:?}", row.name, row.error))?;
            ensure(gd.is_at_least(n), || format!("n={n} {}: gl.dim End(M) = {gd} < {n}", row.name))?;
            ensure(row.status == Status::Pass, || format!("n={n} {}: {:?}", row.name, row.status))?;
        }
        let min = report.rows.iter().filter_map(|r| r.gl_dim).map(|g| g.value).min().unwrap();
        seen.push(format!("n={n}: 30 generators, min gl.dim {min}"));
    }
    Ok(seen.join("; "))
}

fn criterion_5() -> Outcome {
    let mut seen = Vec::new();
    for n in [1usize, 2] {
        let alg = beilinson(n, DEFAULT_PRIME);
        let mut parts: Vec<_> = (0..=n).map(|v| projective(&alg, v)).collect();
        parts.extend((0..=n).map(|v| injective(&alg, v)));
        let m = direct_sum(&alg, &parts);
        let gd = end_data(&m, 0).map_err(|e| e.to_string())?.theory.global_dimension(2 * n + 4);
        ensure(gd.is_exact() && gd.value <= 2 * n + 1, || {
            format!("gl.dim End(Λ_{n} ⊕ DΛ_{n}) = {gd} > {}", 2 * n + 1)
        })?;
        seen.push(format!("n={n}: {gd} ≤ {}", 2 * n + 1));
    }
    Ok(seen.join("; "))
}

fn criterion_6() -> Outcome {
    for n in 1..=3 {
        let alg = beilinson(n, DEFAULT_PRIME);
        for v in 0..=n {
            for w in 0..=n {
                let d = hom_dim(&injective(&alg, v), &projective(&alg, w));
                ensure(d == 0, || format!("n={n}: dim Hom(I_{v}, P_{w}) = {d}"))?;
            }
        }
    }
    Ok("all Hom(I_v, P_w) vanish for n = 1, 2, 3".into())
}

fn criterion_7() -> Outcome {
    let alg = beilinson(2, DEFAULT_PRIME);
    let s0 = simple(&alg, 0);
    for m in [1usize, 2] {
        let cert = ghost_certificate(&s0, m).map_err(|e| format!("m={m}: {e}"))?;
        let claim = verify_certificate(&CertificateFile::from_ghost(&cert).to_json()).map_err(|e| format!("m={m}: {e}"))?;
        ensure(claim.kind == "ghost" && claim.value == m, || format!("m={m}: replayed {claim:?}"))?;
    }
    match ghost_certificate(&s0, 3) {
        Err(Error::NoObstruction { pd: 2, n: 3 }) => {}
        other => return Err(format!("m=3: expected NoObstruction, got {:?}", other.map(|c| c.n))),
    }
    let upper = level_upper_certificate(&RepComplex::concentrated(&s0, 0), 8).map_err(|e| e.to_string())?;
    let claim = verify_certificate(&CertificateFile::from_level(&upper).to_json()).map_err(|e| e.to_string())?;
    ensure(upper.level == 3 && claim.value == 3, || format!("upper level {} replayed as {}", upper.level, claim.value))?;
    Ok("ghosts verified for m=1,2; m=3 no obstruction; upper level 3 verified".into())
}

fn criterion_8() -> Outcome {
    let alg = beilinson(1, DEFAULT_PRIME);
    let m = direct_sum(&alg, &auslander_parts(&alg).map_err(|e| e.to_string())?);
    let data = end_data(&m, 0).map_err(|e| e.to_string())?;
    let check = functor_check(&data, 16, 0).map_err(|e| e.to_string())?;
    let k = check.summands.len();
    ensure(check.corners.len() == k * k, || format!("{} corner entries for {k} summands", check.corners.len()))?;
    for c in &check.corners {
        // dim e_i Γ e_j = dim Hom(M_j, M_i) under composition a·b = a∘b
        ensure(c.corner_dim == c.hom_dim, || {
            format!("dim e_{}Γe_{} = {} but dim Hom(M_{}, M_{}) = {}", c.i, c.j, c.corner_dim, c.j, c.i, c.hom_dim)
        })?;
    }
    for s in check.simples.iter().chain(&check.injectives) {
        ensure(s.pd_over_end.is_exact() && Some(s.pd_over_end.value) == s.m_resolution_length, || {
            format!("{}: pd {} vs M-resolution length {:?}", s.module, s.pd_over_end, s.m_resolution_length)
        })?;
    }
    ensure(check.consistent, || "functor check flagged an inconsistency".into())?;
    Ok(format!("{k} summands, {} corners, {} pd comparisons", k * k, 2 * alg.vertex_count()))
}

fn criterion_9() -> Outcome {
    let primes = [DEFAULT_PRIME, SECONDARY_PRIME];
    let mut compared = 0;
    for n in 1..=4usize {
        let checks: &[Check] = match n {
            1 | 2 => &Check::ALL,
            3 => &[Check::Gldim, Check::Homcheck],
            _ => &[Check::Gldim],
        };
        let mut cfg = ExperimentConfig::beilinson(n, FieldSpec::default_prime());
        cfg.battery = Battery::Random;
        cfg.samples = 25;
        cfg.seed = 2024;
        let report = stability_over(&cfg, &primes, checks).map_err(|e| e.to_string())?;
        ensure(report.anomalies.is_empty(), || {
            let lines: Vec<String> = report
                .anomalies
                .iter()
                .map(|a| format!("{}{}: {} vs {}", a.check, a.path, a.values[0], a.values[1]))
                .collect();
            format!("anomaly report for n={n}:\n  {}", lines.join("\n  "))
        })?;
        ensure(primes.iter().all(|&p| p as usize > report.max_end_dim), || {
            format!("primes do not exceed dim Γ = {}", report.max_end_dim)
        })?;
        compared += checks.len();
    }
    Ok(format!("{compared} checks identical over {} and {}", primes[0], primes[1]))
}

fn criterion_10() -> Outcome {
    let cases = 128;
    for name in support::SUITES {
        support::run_suite(name, cases).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} suites × {cases} cases", support::SUITES.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("algebra dimensions", criterion_1),
        ("global dimension of Λ_n", criterion_2),
        ("Auslander generator sandwich", criterion_3),
        ("generator battery lower bound", criterion_4),
        ("generator-cogenerator upper bound", criterion_5),
        ("injective-to-projective vanishing", criterion_6),
        ("level sandwich for S_0", criterion_7),
        ("Hom(M, -) consistency", criterion_8),
        ("cross-characteristic stability", criterion_9),
        ("invariant suites", criterion_10),
    ];
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let label = format!("criterion {:>2} {name}", i + 1);
        if filter.as_deref().is_some_and(|f| !label.contains(f)) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {label} ({secs:.1}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {label} ({secs:.1}s): {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
