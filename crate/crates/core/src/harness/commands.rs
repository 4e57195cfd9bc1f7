use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::{identify_family, ExperimentConfig, Family};
use super::report::{Report, Status, Stopwatch};
use super::{algebra_over, check_cutoff, header};
use crate::derived::{ghost_certificate, level_upper_certificate, verify_certificate, CertificateFile, RepComplex, VerifiedClaim};
use crate::error::{Error, Result};
use crate::homalg::{projective_dimension, simple_pds, PdValue};
use crate::linalg::{Field, FieldSpec};
use crate::quiver::{Algebra, AlgebraFile};
use crate::rep::{hom_dim, injective, projective, simple, ModuleFile, Rep};

/// The canonical algebra file for a family member.
pub fn build_algebra(family: Family, n: usize, field: FieldSpec) -> Result<AlgebraFile> {
    with_field!(field, fld => Ok(AlgebraFile::from_presentation(&family.presentation(n, fld)?)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildSummary {
    pub family: Family,
    pub n: usize,
    pub vertices: usize,
    pub arrows: usize,
    pub relations: usize,
    pub nilpotency_bound: Option<usize>,
    pub dim: usize,
}

/// Builds the family member named by the config. The file itself is the
/// first return value; the report summarizes it.
pub fn cmd_build(cfg: &ExperimentConfig) -> Result<(AlgebraFile, Report)> {
    let sw = Stopwatch::start();
    let (family, n) = match (cfg.family, cfg.n) {
        (Some(f), Some(n)) => (f, n),
        _ => return Err(Error::InvalidInput("build needs --family and --n".into())),
    };
    let file = build_algebra(family, n, cfg.field)?;
    let (dim, hash) = with_field!(cfg.field, fld => {
        let alg = algebra_over(&file, fld)?;
        (alg.dim(), alg.hash().to_string())
    });
    let body = BuildSummary {
        family,
        n,
        vertices: file.vertices,
        arrows: file.arrows.len(),
        relations: file.relations.len(),
        nilpotency_bound: file.nilpotency_bound,
        dim,
    };
    let table = vec![
        vec!["vertices".into(), body.vertices.to_string()],
        vec!["arrows".into(), body.arrows.to_string()],
        vec!["relations".into(), body.relations.to_string()],
        vec!["dim".into(), body.dim.to_string()],
    ];
    let report = Report {
        header: header("build", cfg, cfg.field, Some(&hash), sw.ms()),
        status: Status::Pass,
        result: serde_json::to_value(&body)?,
        messages: Vec::new(),
        table,
    };
    Ok((file, report))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlDimReport {
    pub family: Option<Family>,
    pub n: Option<usize>,
    pub simple_pds: Vec<PdValue>,
    pub gl_dim: PdValue,
    pub expected: Option<usize>,
}

pub(crate) fn gldim_over<K: Field>(cfg: &ExperimentConfig, alg: &Algebra<K>) -> Result<(GlDimReport, Status)> {
    let id = identify_family(alg);
    let pds = simple_pds(alg, cfg.cutoff)?;
    let gl_dim = pds.iter().copied().fold(PdValue::exact(0), PdValue::max);
    let expected = match id {
        Some((Family::Beilinson, n)) => Some(n),
        Some((Family::Semisimple, _)) => Some(0),
        _ => None,
    };
    let status = match expected {
        Some(e) if gl_dim != PdValue::exact(e) => Status::AssertionFailed,
        _ => Status::Pass,
    };
    let body = GlDimReport {
        family: id.map(|(f, _)| f),
        n: id.map(|(_, n)| n),
        simple_pds: pds,
        gl_dim,
        expected,
    };
    Ok((body, status))
}

pub fn cmd_gldim(cfg: &ExperimentConfig, file: &AlgebraFile) -> Result<Report> {
    let sw = Stopwatch::start();
    with_field!(file.field, fld => {
        let alg = algebra_over(file, fld)?;
        check_cutoff(cfg, &alg)?;
        let (body, status) = gldim_over(cfg, &alg)?;
        let mut table = vec![vec!["vertex".to_string(), "pd".to_string()]];
        for (v, pd) in body.simple_pds.iter().enumerate() {
            table.push(vec![format!("S_{v}"), pd.to_string()]);
        }
        table.push(vec!["gl.dim".into(), body.gl_dim.to_string()]);
        let mut messages = Vec::new();
        if status == Status::AssertionFailed {
            messages.push(format!("expected gl.dim {}, found {}", body.expected.unwrap_or(0), body.gl_dim));
        }
        if !body.gl_dim.is_exact() {
            messages.push(format!("resolutions truncated at cutoff {}", cfg.cutoff));
        }
        Ok(Report {
            header: header("gldim", cfg, file.field, Some(alg.hash()), sw.ms()),
            status,
            result: serde_json::to_value(&body)?,
            messages,
            table,
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomCheckReport {
    pub family: Option<Family>,
    /// `table[v][w] = dim Hom(I_v, P_w)`.
    pub table: Vec<Vec<usize>>,
    pub all_zero: bool,
    pub asserted: bool,
}

pub(crate) fn homcheck_over<K: Field>(alg: &Algebra<K>) -> (HomCheckReport, Status) {
    let nv = alg.vertex_count();
    let ps: Vec<Rep<K>> = (0..nv).map(|w| projective(alg, w)).collect();
    let table: Vec<Vec<usize>> = (0..nv)
        .map(|v| {
            let i = injective(alg, v);
            ps.iter().map(|p| hom_dim(&i, p)).collect()
        })
        .collect();
    let all_zero = table.iter().flatten().all(|&d| d == 0);
    let family = identify_family(alg).map(|(f, _)| f);
    let asserted = family == Some(Family::Beilinson);
    let status = if asserted && !all_zero {
        Status::AssertionFailed
    } else {
        Status::Pass
    };
    (
        HomCheckReport {
            family,
            table,
            all_zero,
            asserted,
        },
        status,
    )
}

pub fn cmd_homcheck(cfg: &ExperimentConfig, file: &AlgebraFile) -> Result<Report> {
    let sw = Stopwatch::start();
    with_field!(file.field, fld => {
        let alg = algebra_over(file, fld)?;
        let (body, status) = homcheck_over(&alg);
        let nv = alg.vertex_count();
        let mut table = vec![std::iter::once("Hom(I_v,P_w)".to_string())
            .chain((0..nv).map(|w| format!("P_{w}")))
            .collect::<Vec<_>>()];
        for (v, row) in body.table.iter().enumerate() {
            table.push(std::iter::once(format!("I_{v}")).chain(row.iter().map(|d| d.to_string())).collect());
        }
        Ok(Report {
            header: header("homcheck", cfg, file.field, Some(alg.hash()), sw.ms()),
            status,
            result: serde_json::to_value(&body)?,
            messages: Vec::new(),
            table,
        })
    })
}

/// Resolves `simple:v`, `proj:v`, `inj:v` or the path of a module file.
pub fn resolve_module<K: Field>(alg: &Algebra<K>, spec: &str) -> Result<Rep<K>> {
    let canonical: Option<(&str, fn(&Algebra<K>, usize) -> Rep<K>)> = [
        ("simple:", simple as fn(&Algebra<K>, usize) -> Rep<K>),
        ("proj:", projective),
        ("inj:", injective),
    ]
    .into_iter()
    .find(|(p, _)| spec.starts_with(p));
    match canonical {
        Some((prefix, build)) => {
            let v: usize = spec[prefix.len()..]
                .parse()
                .map_err(|_| Error::parse("module", format!("bad vertex in {spec:?}")))?;
            if v >= alg.vertex_count() {
                return Err(Error::InvalidInput(format!(
                    "vertex {v} out of range; the quiver has {} vertices",
                    alg.vertex_count()
                )));
            }
            Ok(build(alg, v))
        }
        None => ModuleFile::parse(&fs::read_to_string(spec)?)?.to_rep(alg),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum GhostOutcome {
    Certified {
        ext_dim: usize,
        witness: Vec<usize>,
        file: Option<String>,
    },
    NoObstruction {
        pd: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Replay {
    pub certificate: String,
    pub claim: Option<VerifiedClaim>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelReport {
    pub module: Vec<usize>,
    pub n: usize,
    pub pd: PdValue,
    pub ghost: GhostOutcome,
    pub upper_level: usize,
    pub upper_steps: usize,
    pub upper_file: Option<String>,
    pub replays: Vec<Replay>,
}

fn replay(name: &str, text: &str) -> Replay {
    match verify_certificate(text) {
        Ok(claim) => Replay {
            certificate: name.into(),
            claim: Some(claim),
            error: None,
        },
        Err(e) => Replay {
            certificate: name.into(),
            claim: None,
            error: Some(e.to_string()),
        },
    }
}

pub(crate) fn level_over<K: Field>(
    cfg: &ExperimentConfig,
    alg: &Algebra<K>,
    x: &Rep<K>,
    n: usize,
    out: Option<&Path>,
) -> Result<(LevelReport, Status, Vec<String>)> {
    let pd = projective_dimension(x, cfg.cutoff)?;
    let ghost = match ghost_certificate(x, n) {
        Ok(c) => Some(c),
        Err(Error::NoObstruction { .. }) => None,
        Err(e) => return Err(e),
    };
    let upper = level_upper_certificate(&RepComplex::concentrated(x, 0), cfg.cutoff)?;

    let mut texts = Vec::new();
    if let Some(g) = &ghost {
        texts.push(("ghost.json", CertificateFile::from_ghost(g).to_json()));
    }
    texts.push(("level.json", CertificateFile::from_level(&upper).to_json()));

    let mut transcript = vec![
        format!("algebra {}", alg.hash()),
        format!("module dims {:?}", x.dims()),
        format!("pd {pd}"),
    ];
    let mut replays = Vec::new();
    let mut paths = Vec::new();
    for (name, text) in &texts {
        // replay from disk when writing, so the check sees exactly the bytes on disk
        let r = match out {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                let path = dir.join(name);
                fs::write(&path, text)?;
                paths.push((*name, path.display().to_string()));
                replay(name, &fs::read_to_string(&path)?)
            }
            None => replay(name, text),
        };
        transcript.push(match (&r.claim, &r.error) {
            (Some(c), _) => format!("{name}: verified {} {}", c.kind, c.value),
            (_, Some(e)) => format!("{name}: REJECTED {e}"),
            _ => unreachable!(),
        });
        replays.push(r);
    }
    let path_of = |name: &str| paths.iter().find(|(n, _)| *n == name).map(|(_, p)| p.clone());

    let mut status = Status::Pass;
    let mut messages = Vec::new();
    if replays.iter().any(|r| r.error.is_some()) {
        status = Status::AssertionFailed;
        messages.push("a certificate failed independent verification".into());
    }
    if ghost.is_some() && upper.level <= n {
        status = Status::AssertionFailed;
        messages.push(format!("upper level {} contradicts the obstruction at {n}", upper.level));
    }
    let ghost_outcome = match &ghost {
        Some(g) => GhostOutcome::Certified {
            ext_dim: g.ext_dim,
            witness: g.witness.dims().to_vec(),
            file: path_of("ghost.json"),
        },
        None => {
            messages.push(format!("no obstruction: pd {pd} is below {n}"));
            GhostOutcome::NoObstruction { pd: pd.value }
        }
    };
    transcript.push(format!("status {status}"));
    if let Some(dir) = out {
        fs::write(dir.join("transcript.txt"), transcript.join("\n") + "\n")?;
    }
    let report = LevelReport {
        module: x.dims().to_vec(),
        n,
        pd,
        ghost: ghost_outcome,
        upper_level: upper.level,
        upper_steps: upper.tower.len(),
        upper_file: path_of("level.json"),
        replays,
    };
    Ok((report, status, messages))
}

/// Emits and replays the lower (`n`) and upper level certificates for a module.
pub fn cmd_level(cfg: &ExperimentConfig, file: &AlgebraFile, module: &str, n: usize, out: Option<&Path>) -> Result<Report> {
    let sw = Stopwatch::start();
    if n == 0 {
        return Err(Error::InvalidInput("the obstruction index n must be at least 1".into()));
    }
    with_field!(file.field, fld => {
        let alg = algebra_over(file, fld)?;
        let x = resolve_module(&alg, module)?;
        let (body, status, messages) = level_over(cfg, &alg, &x, n, out)?;
        let ghost = match &body.ghost {
            GhostOutcome::Certified { .. } => format!("certified not in <P>_{n}"),
            GhostOutcome::NoObstruction { pd } => format!("no obstruction (pd {pd})"),
        };
        let table = vec![
            vec!["pd".into(), body.pd.to_string()],
            vec!["lower".into(), ghost],
            vec!["upper_level".into(), body.upper_level.to_string()],
        ];
        Ok(Report {
            header: header("level", cfg, file.field, Some(alg.hash()), sw.ms()),
            status,
            result: serde_json::to_value(&body)?,
            messages,
            table,
        })
    })
}

/// Replays a certificate file. A rejected certificate is an assertion failure.
pub fn cmd_verify(cfg: &ExperimentConfig, text: &str) -> Result<Report> {
    let sw = Stopwatch::start();
    let file = CertificateFile::parse(text)?;
    let field = file.algebra().field;
    let (status, result, messages) = match verify_certificate(text) {
        Ok(claim) => (Status::Pass, serde_json::to_value(&claim)?, Vec::new()),
        Err(Error::CertificateRejected(why)) => (Status::AssertionFailed, serde_json::Value::Null, vec![why]),
        Err(e) => return Err(e),
    };
    let table = match &result {
        serde_json::Value::Object(m) => m.iter().map(|(k, v)| vec![k.clone(), v.to_string()]).collect(),
        _ => Vec::new(),
    };
    Ok(Report {
        header: header("verify", cfg, field, None, sw.ms()),
        status,
        result,
        messages,
        table,
    })
}
