use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::battery::{basic_battery, random_battery, GeneratorSpec};
use super::config::{identify_family, Battery, ExperimentConfig, Family};
use super::report::{Report, Status, Stopwatch};
use super::{algebra_over, header};
use crate::endo::{end_algebra, hom_functor_module, EndAlgebra, FdTheory};
use crate::error::{Error, Result};
use crate::homalg::{global_dimension, m_resolution_seeded, PdValue};
use crate::linalg::{Field, Matrix};
use crate::quiver::{Algebra, AlgebraFile};
use crate::rep::{
    biproduct, decompose_parts, direct_sum, hom_dim, injective, is_generator, radical_power_quotient, simple, ModuleFile, Rep,
};

/// `⊕_{i=1}^{L} Λ/rad^i` with `L` the Loewy length, as a list of parts.
pub fn auslander_parts<K: Field>(alg: &Algebra<K>) -> Result<Vec<Rep<K>>> {
    (1..=alg.loewy_length().max(1))
        .map(|i| radical_power_quotient(alg, i))
        .collect()
}

/// `End(M)` together with its module theory.
pub struct EndData<K: Field> {
    pub module: Rep<K>,
    pub end: EndAlgebra<K>,
    pub theory: FdTheory<K>,
}

pub fn end_data<K: Field>(m: &Rep<K>, seed: u64) -> Result<EndData<K>> {
    let end = end_algebra(m)?;
    let theory = FdTheory::new(end.algebra.clone(), seed)?;
    Ok(EndData {
        module: m.clone(),
        end,
        theory,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerEntry {
    pub i: usize,
    pub j: usize,
    /// `dim Hom(M_j, M_i)`.
    pub hom_dim: usize,
    /// `dim e_i Γ e_j` for the basic endomorphism ring `Γ`.
    pub corner_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    /// `simple:v` or `inj:v`.
    pub module: String,
    /// Projective dimension of `Hom(M, X)` over `End(M)`.
    pub pd_over_end: PdValue,
    /// Length of the minimal `M`-resolution of `X`, if it finished.
    pub m_resolution_length: Option<usize>,
}

/// How faithfully `Hom(M, -)` transports the module category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorCheck {
    pub summands: Vec<Vec<usize>>,
    pub corners: Vec<CornerEntry>,
    pub simples: Vec<Comparison>,
    pub injectives: Vec<Comparison>,
    pub consistent: bool,
}

fn span_dim<K: Field>(f: &K, maps: &[Vec<K::Elem>]) -> usize {
    match maps.first() {
        None => 0,
        Some(first) => Matrix::from_columns(f, first.len(), maps).rank(),
    }
}

/// Compares Hom spaces between indecomposable summands with corners of the
/// basic endomorphism ring, and `pd_End(M) Hom(M, X)` with the length of
/// the `M`-resolution of `X` for every simple and indecomposable injective.
pub fn functor_check<K: Field>(data: &EndData<K>, cutoff: usize, seed: u64) -> Result<FunctorCheck> {
    let m = &data.module;
    let alg = m.algebra();
    let f = alg.field();
    let report = decompose_parts(alg, std::slice::from_ref(m), seed)?;
    let reps: Vec<Rep<K>> = report.summands.iter().map(|(r, _)| r.clone()).collect();
    let bp = biproduct(alg, &reps);
    let basic = end_algebra(&bp.sum)?;
    let idems: Vec<_> = bp
        .projections
        .iter()
        .zip(&bp.injections)
        .map(|(p, i)| p.then(i))
        .collect();

    let mut corners = Vec::new();
    for (i, ei) in idems.iter().enumerate() {
        for (j, ej) in idems.iter().enumerate() {
            let maps: Vec<Vec<K::Elem>> = basic.basis.iter().map(|g| ej.then(g).then(ei).flatten()).collect();
            corners.push(CornerEntry {
                i,
                j,
                hom_dim: hom_dim(&reps[j], &reps[i]),
                corner_dim: span_dim(f, &maps),
            });
        }
    }

    let compare = |name: String, x: Rep<K>| -> Result<Comparison> {
        let hm = hom_functor_module(&data.end, &data.theory.algebra, &x);
        Ok(Comparison {
            module: name,
            pd_over_end: data.theory.projective_dimension(&hm, cutoff),
            m_resolution_length: m_resolution_seeded(m, &x, cutoff, seed)?.length(),
        })
    };
    let nv = alg.vertex_count();
    let simples = (0..nv)
        .map(|v| compare(format!("simple:{v}"), simple(alg, v)))
        .collect::<Result<Vec<_>>>()?;
    let injectives = (0..nv)
        .map(|v| compare(format!("inj:{v}"), injective(alg, v)))
        .collect::<Result<Vec<_>>>()?;

    let consistent = corners.iter().all(|c| c.hom_dim == c.corner_dim)
        && simples
            .iter()
            .chain(&injectives)
            .all(|s| s.pd_over_end.is_exact() && Some(s.pd_over_end.value) == s.m_resolution_length);
    Ok(FunctorCheck {
        summands: reps.iter().map(|r| r.dims().to_vec()).collect(),
        corners,
        simples,
        injectives,
        consistent,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuslanderReport {
    pub family: Option<Family>,
    pub n: Option<usize>,
    pub loewy_length: usize,
    pub parts: Vec<Vec<usize>>,
    pub generator: bool,
    pub end_dim: usize,
    pub gl_dim: PdValue,
    pub lower_bound: Option<usize>,
    pub upper_bound: usize,
    pub functor: FunctorCheck,
}

pub(crate) fn auslander_over<K: Field>(cfg: &ExperimentConfig, alg: &Algebra<K>) -> Result<(AuslanderReport, Status, Vec<String>)> {
    let id = identify_family(alg);
    let parts = auslander_parts(alg)?;
    let m = direct_sum(alg, &parts);
    let generator = is_generator(&m);
    let data = end_data(&m, cfg.seed)?;
    let gl_dim = data.theory.global_dimension(cfg.cutoff);
    let functor = functor_check(&data, cfg.cutoff, cfg.seed)?;
    let upper_bound = alg.loewy_length();
    let lower_bound = match id {
        Some((Family::Beilinson, n)) => Some(n),
        _ => None,
    };

    let mut messages = Vec::new();
    let mut status = Status::Pass;
    if !generator {
        status = Status::AssertionFailed;
        messages.push("M does not generate".into());
    }
    if let Some(lb) = lower_bound {
        if !gl_dim.is_at_least(lb) {
            status = Status::AssertionFailed;
            messages.push(format!("gl.dim End(M) = {gl_dim} is below the lower bound {lb}"));
        }
    }
    if !gl_dim.is_at_most(upper_bound) {
        status = status.and(if gl_dim.is_exact() || gl_dim.value > upper_bound {
            Status::AssertionFailed
        } else {
            Status::Inconclusive
        });
        messages.push(format!("gl.dim End(M) = {gl_dim} exceeds the Loewy length {upper_bound}"));
    }
    if !functor.consistent {
        status = Status::AssertionFailed;
        messages.push("Hom(M, -) comparison failed".into());
    }
    let report = AuslanderReport {
        family: id.map(|(f, _)| f),
        n: id.map(|(_, n)| n),
        loewy_length: alg.loewy_length(),
        parts: parts.iter().map(|p| p.dims().to_vec()).collect(),
        generator,
        end_dim: data.end.algebra.dim(),
        gl_dim,
        lower_bound,
        upper_bound,
        functor,
    };
    Ok((report, status, messages))
}

pub fn cmd_auslander(cfg: &ExperimentConfig, file: &AlgebraFile) -> Result<Report> {
    let sw = Stopwatch::start();
    with_field!(file.field, fld => {
        let alg = algebra_over(file, fld)?;
        super::check_cutoff(cfg, &alg)?;
        let (body, status, messages) = auslander_over(cfg, &alg)?;
        let mut table = vec![vec!["quantity".to_string(), "value".to_string()]];
        table.push(vec!["loewy_length".into(), body.loewy_length.to_string()]);
        table.push(vec!["end_dim".into(), body.end_dim.to_string()]);
        table.push(vec!["gl_dim".into(), body.gl_dim.to_string()]);
        for s in body.functor.simples.iter().chain(&body.functor.injectives) {
            table.push(vec![
                format!("pd Hom(M,{})", s.module),
                s.pd_over_end.to_string(),
            ]);
        }
        Ok(Report {
            header: header("auslander", cfg, file.field, Some(alg.hash()), sw.ms()),
            status,
            result: serde_json::to_value(&body)?,
            messages,
            table,
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub name: String,
    pub inventory: Vec<(Vec<usize>, usize)>,
    pub generator: bool,
    pub end_dim: Option<usize>,
    pub gl_dim: Option<PdValue>,
    pub upper_bound: Option<usize>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Every part of the generator, present only for failed rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<ModuleFile>>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub n: usize,
    pub global_dimension: PdValue,
    pub battery: Battery,
    pub samples: usize,
    pub lower_bound: usize,
    pub rows: Vec<ProbeRow>,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

fn probe_row<K: Field>(g: &GeneratorSpec<K>, lower: usize, cfg: &ExperimentConfig) -> ProbeRow {
    let sw = Stopwatch::start();
    let alg = g.parts[0].algebra();
    let mut row = ProbeRow {
        name: g.name.clone(),
        inventory: Vec::new(),
        generator: false,
        end_dim: None,
        gl_dim: None,
        upper_bound: g.upper_bound,
        status: Status::Pass,
        error: None,
        counterexample: None,
        elapsed_ms: 0,
    };
    let outcome = (|| -> Result<()> {
        row.inventory = decompose_parts(alg, &g.parts, cfg.seed)?.inventory();
        let m = direct_sum(alg, &g.parts);
        row.generator = is_generator(&m);
        let data = end_data(&m, cfg.seed)?;
        row.end_dim = Some(data.end.algebra.dim());
        row.gl_dim = Some(data.theory.global_dimension(cfg.cutoff));
        Ok(())
    })();
    match outcome {
        Err(e @ (Error::Inconclusive(_) | Error::Truncated { .. })) => {
            row.status = Status::Inconclusive;
            row.error = Some(e.to_string());
        }
        Err(e) => {
            row.status = Status::AssertionFailed;
            row.error = Some(e.to_string());
        }
        Ok(()) => {
            let gd = row.gl_dim.expect("set on success");
            if !row.generator || !gd.is_at_least(lower) {
                row.status = Status::AssertionFailed;
            } else if let Some(ub) = row.upper_bound {
                if !gd.is_at_most(ub) {
                    row.status = if gd.value > ub { Status::AssertionFailed } else { Status::Inconclusive };
                }
            }
        }
    }
    if row.status == Status::AssertionFailed {
        row.counterexample = Some(g.parts.iter().map(|p| ModuleFile::from_rep(p, false)).collect());
    }
    row.elapsed_ms = sw.ms();
    row
}

pub(crate) fn probe_over<K: Field>(cfg: &ExperimentConfig, alg: &Algebra<K>) -> Result<ProbeReport> {
    let n = match identify_family(alg) {
        Some((Family::Beilinson, n)) => n,
        _ => return Err(Error::InvalidInput("the probe runs on the beilinson family only".into())),
    };
    let gd = global_dimension(alg, cfg.cutoff)?;
    let mut gens = basic_battery(alg, gd.is_exact().then_some(gd.value))?;
    if cfg.battery == Battery::Random {
        gens.extend(random_battery(alg, cfg.seed, cfg.samples));
    }
    let rows: Vec<ProbeRow> = gens.par_iter().map(|g| probe_row(g, n, cfg)).collect();
    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    Ok(ProbeReport {
        n,
        global_dimension: gd,
        battery: cfg.battery,
        samples: if cfg.battery == Battery::Random { cfg.samples } else { 0 },
        lower_bound: n,
        passed: count(Status::Pass),
        failed: count(Status::AssertionFailed),
        inconclusive: count(Status::Inconclusive),
        rows,
    })
}

impl ProbeReport {
    pub fn status(&self) -> Status {
        self.rows.iter().map(|r| r.status).fold(Status::Pass, Status::and)
    }
}

pub fn cmd_probe(cfg: &ExperimentConfig, file: &AlgebraFile) -> Result<Report> {
    let sw = Stopwatch::start();
    with_field!(file.field, fld => {
        let alg = algebra_over(file, fld)?;
        super::check_cutoff(cfg, &alg)?;
        let body = probe_over(cfg, &alg)?;
        let mut table = vec![["generator", "inventory", "end_dim", "gl_dim", "status"].map(String::from).to_vec()];
        for r in &body.rows {
            table.push(vec![
                r.name.clone(),
                r.inventory.iter().map(|(d, m)| format!("{d:?}^{m}")).collect::<Vec<_>>().join(" "),
                r.end_dim.map_or("-".into(), |d| d.to_string()),
                r.gl_dim.map_or("-".into(), |d| d.to_string()),
                r.status.to_string(),
            ]);
        }
        let messages = body
            .rows
            .iter()
            .filter_map(|r| r.error.as_ref().map(|e| format!("{}: {e}", r.name)))
            .collect();
        Ok(Report {
            header: header("probe", cfg, file.field, Some(alg.hash()), sw.ms()),
            status: body.status(),
            result: serde_json::to_value(&body)?,
            messages,
            table,
        })
    })
}
