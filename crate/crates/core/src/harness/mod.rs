//! Experiment orchestration behind the `repdimlab` command line.
//!
//! Every command takes an [`ExperimentConfig`] and an algebra file, runs
//! deterministically for a given seed, and returns a [`Report`] whose status
//! maps to an exit code.

use crate::error::Result;
use crate::linalg::{Field, FieldSpec};
use crate::quiver::{Algebra, AlgebraFile};

/// Runs `$body` with `$f` bound to the concrete field named by a [`FieldSpec`].
macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {{
        let spec: $crate::linalg::FieldSpec = $spec;
        spec.validate()?;
        match spec.kind {
            $crate::linalg::FieldKind::Rationals => {
                let $f = $crate::linalg::Rationals;
                $body
            }
            $crate::linalg::FieldKind::PrimeField => {
                let $f = $crate::linalg::PrimeField::new(spec.characteristic)?;
                $body
            }
        }
    }};
}

mod battery;
mod commands;
mod config;
mod probe;
mod report;
mod stability;

pub use battery::{basic_battery, random_battery, random_quotient, GeneratorSpec};
pub use commands::{
    build_algebra, cmd_build, cmd_gldim, cmd_homcheck, cmd_level, cmd_verify, resolve_module, BuildSummary,
    GhostOutcome, GlDimReport, HomCheckReport, LevelReport, Replay,
};
pub use config::{identify_family, Battery, ExperimentConfig, Family, DEFAULT_SAMPLES, SEED_ENV};
pub use probe::{
    auslander_parts, cmd_auslander, cmd_probe, end_data, functor_check, AuslanderReport, Comparison, CornerEntry,
    EndData, FunctorCheck, ProbeReport, ProbeRow,
};
pub use report::{error_exit_code, strip_timing, Report, ReportHeader, Status, TOOL_VERSION};
pub use stability::{cmd_stability, stability_over, Anomaly, Check, StabilityReport};

pub(crate) fn algebra_over<K: Field>(file: &AlgebraFile, field: K) -> Result<Algebra<K>> {
    Algebra::new(file.to_presentation(field)?)
}

/// Rejects cutoffs too small to see the whole resolution of a recognized family member.
pub(crate) fn check_cutoff<K: Field>(cfg: &ExperimentConfig, alg: &Algebra<K>) -> Result<()> {
    let mut probe = cfg.clone();
    if let Some((family, n)) = identify_family(alg) {
        probe.family = Some(family);
        probe.n = Some(n);
    }
    probe.validate()
}

pub(crate) fn header(
    command: &str,
    cfg: &ExperimentConfig,
    field: FieldSpec,
    algebra_hash: Option<&str>,
    elapsed_ms: u64,
) -> ReportHeader {
    ReportHeader {
        command: command.into(),
        tool_version: TOOL_VERSION.into(),
        config_hash: cfg.hash(),
        seed: cfg.seed,
        field: field.to_string(),
        algebra_hash: algebra_hash.map(str::to_string),
        elapsed_ms,
    }
}
