use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use repdimlab::harness::{
    build_algebra, cmd_auslander, cmd_build, cmd_gldim, cmd_homcheck, cmd_level, cmd_probe, cmd_stability, cmd_verify,
    error_exit_code, Battery, Check, ExperimentConfig, Family, Report, DEFAULT_SAMPLES, SEED_ENV,
};
use repdimlab::homalg::DEFAULT_CUTOFF;
use repdimlab::linalg::{FieldSpec, DEFAULT_PRIME, SECONDARY_PRIME};
use repdimlab::quiver::AlgebraFile;
use repdimlab::{Error, Result};

/// Exit code for malformed command lines and unreadable input.
const INPUT_ERROR: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "repdimlab", version, about = "Experiments on representation dimension and derived levels of quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the canonical algebra file of a family member.
    Build(Common),
    /// Projective dimensions of the simples and the global dimension.
    Gldim(Common),
    /// Global dimension of End(⊕ Λ/rad^i) and the Hom(M, -) comparison.
    Auslander(Common),
    /// Global dimension of End(M) for a battery of generators M.
    Probe(Common),
    /// dim Hom(I_v, P_w) for all vertex pairs.
    Homcheck(Common),
    /// Lower and upper level certificates for a module, replayed from disk.
    Level(LevelArgs),
    /// Replay a certificate file.
    Verify(VerifyArgs),
    /// Compare gldim, auslander, probe and homcheck numbers across primes.
    Stability(StabilityArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args, Debug)]
struct Common {
    /// Algebra file; overrides --family and --n.
    #[arg(long)]
    algebra: Option<PathBuf>,
    /// `beilinson`, `exterior` or `semisimple`.
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    /// Beilinson index, exterior generators or semisimple vertices.
    #[arg(long)]
    n: Option<usize>,
    /// `q` or `fp:<prime>`.
    #[arg(long, value_parser = parse_field, default_value_t = FieldSpec::default_prime())]
    field: FieldSpec,
    /// Longest resolution computed before reporting a lower bound.
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    cutoff: usize,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    seed: u64,
    /// `basic`, or `random` to adjoin seeded random quotients.
    #[arg(long, value_parser = parse_battery, default_value = "basic")]
    battery: Battery,
    /// Random generators adjoined by the random battery.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Output file (a directory for `level`).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct LevelArgs {
    #[command(flatten)]
    common: Common,
    /// `simple:v`, `proj:v`, `inj:v` or a module file.
    #[arg(long)]
    module: String,
    /// Obstruction index; defaults to --n.
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    certificate: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct StabilityArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_delimiter = ',', default_values_t = [DEFAULT_PRIME, SECONDARY_PRIME])]
    primes: Vec<u64>,
    #[arg(long, value_delimiter = ',', value_parser = parse_check, default_values_t = Check::ALL)]
    checks: Vec<Check>,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_field(s: &str) -> std::result::Result<FieldSpec, String> {
    FieldSpec::parse_flag(s).map_err(|e| e.to_string())
}

fn parse_battery(s: &str) -> std::result::Result<Battery, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_check(s: &str) -> std::result::Result<Check, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl Common {
    fn config(&self) -> ExperimentConfig {
        ExperimentConfig {
            family: self.family,
            n: self.n,
            field: self.field,
            cutoff: self.cutoff,
            seed: self.seed,
            battery: self.battery,
            samples: self.samples,
        }
    }

    /// The algebra file and a config whose field matches it.
    fn algebra(&self) -> Result<(ExperimentConfig, AlgebraFile)> {
        let mut cfg = self.config();
        let file = match &self.algebra {
            Some(path) => {
                let text = fs::read_to_string(path)?;
                AlgebraFile::parse(&text).map_err(|e| locate(e, path))?
            }
            None => match (self.family, self.n) {
                (Some(f), Some(n)) => build_algebra(f, n, self.field)?,
                _ => return Err(Error::InvalidInput("give --algebra or both --family and --n".into())),
            },
        };
        if self.algebra.is_some() {
            cfg.family = None;
            cfg.n = None;
        }
        cfg.field = file.field;
        Ok((cfg, file))
    }
}

fn locate(e: Error, path: &Path) -> Error {
    match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        e => e,
    }
}

fn emit(report: &Report, format: Format, out: Option<&Path>) -> Result<()> {
    let text = match format {
        Format::Json => report.to_json(),
        Format::Tsv => report.to_tsv(),
    };
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    for m in &report.messages {
        eprintln!("{}: {m}", report.header.command);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Report> {
    match cli.command {
        Command::Build(c) => {
            let (file, report) = cmd_build(&c.config())?;
            match &c.out {
                Some(path) => {
                    fs::write(path, file.to_json())?;
                    emit(&report, c.format, None)?;
                }
                None => print!("{}", file.to_json()),
            }
            Ok(report)
        }
        Command::Gldim(c) => finish(&c, cmd_gldim),
        Command::Auslander(c) => finish(&c, cmd_auslander),
        Command::Probe(c) => finish(&c, cmd_probe),
        Command::Homcheck(c) => finish(&c, cmd_homcheck),
        Command::Level(l) => {
            let (cfg, file) = l.common.algebra()?;
            let m = l
                .m
                .or(l.common.n)
                .ok_or_else(|| Error::InvalidInput("level needs --m or --n".into()))?;
            let report = cmd_level(&cfg, &file, &l.module, m, l.common.out.as_deref())?;
            emit(&report, l.common.format, None)?;
            Ok(report)
        }
        Command::Verify(v) => {
            let text = fs::read_to_string(&v.certificate)?;
            let report = cmd_verify(&ExperimentConfig::default(), &text).map_err(|e| locate(e, &v.certificate))?;
            emit(&report, v.format, None)?;
            Ok(report)
        }
        Command::Stability(s) => {
            let report = cmd_stability(&s.common.config(), &s.primes, &s.checks)?;
            emit(&report, s.common.format, s.common.out.as_deref())?;
            Ok(report)
        }
    }
}

fn finish(c: &Common, cmd: impl FnOnce(&ExperimentConfig, &AlgebraFile) -> Result<Report>) -> Result<Report> {
    let (cfg, file) = c.algebra()?;
    let report = cmd(&cfg, &file)?;
    emit(&report, c.format, c.out.as_deref())?;
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(report) => ExitCode::from(report.status.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}
