//! Command-line driver: sieve sweeps, bound tables and verification suites.
//!
//! Every command is deterministic for a fixed configuration and seed; grid
//! cells may run in parallel but rows are emitted in grid order.

mod config;
mod output;

pub use config::{parse_moduli, ConfigFile, UsageError};
pub use output::{fmt_g, BoundsRow, ModuliRow, BOUNDS_HEADER, MODULI_HEADER, SIEVE_HEADER};

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::bounds::{
    prime_bound_n, rhs_bound, theorem2_rhs, theorem3_rhs, verify_x, BoundParams, ModuliSet, Theorem, DEFAULT_EPSILON,
};
use crate::error::Error;
use crate::qfield::make_field;
use crate::sieve::{build_fractions_with, power_iteration, FamilyGram, FamilyKind, SieveReport};
use crate::verify::{run_suite, Suite};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_MAX_ITER: usize = 10_000;
pub const DEFAULT_DELTA: f64 = 0.5;
pub const DEFAULT_Z_SAMPLES: usize = 16;

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "iqsieve", version, about = "Large-sieve experiments over imaginary quadratic fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a property suite: ring, character, residue, approx, poisson, fourier or all.
    Verify {
        suite: Option<String>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Sharp sieve constant over the Q × N grid, one row per cell.
    Sieve(Opts),
    /// Right-hand sides of the bounds over the Q × N grid.
    Bounds(Opts),
    /// The nested general-moduli bound and the sieve constant for the set in --s-file.
    Theorem2(Opts),
    /// The X-based general-moduli bound and the sieve constant for the set in --s-file.
    Theorem3(Opts),
}

#[derive(Args, Debug, Default)]
struct Opts {
    /// Squarefree d < 0 defining Q(√d).
    #[arg(long, allow_hyphen_values = true)]
    d: Option<i64>,
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// Exponent for the power family and bound.
    #[arg(long)]
    k: Option<u32>,
    /// Comma-separated Q values.
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<u64>>,
    /// Comma-separated N values.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<u64>>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Relative stopping tolerance of the power iteration.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long)]
    z_samples: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Keep only base moduli with Q/2 < N(q) ≤ Q.
    #[arg(long)]
    dyadic: bool,
    /// Moduli file: one `a b` pair per line in the basis (1, ω).
    #[arg(long)]
    s_file: Option<PathBuf>,
    #[arg(long, value_enum)]
    theorem: Option<TheoremArg>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value file supplying defaults for any flag.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FamilyArg {
    All,
    Power,
    Square,
    Prime,
    Custom,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum TheoremArg {
    Huxley,
    Power,
    Square,
    Prime,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Fully resolved settings for one command.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub d: i64,
    pub family: Option<String>,
    pub k: Option<u32>,
    pub q_list: Vec<u64>,
    pub n_list: Vec<u64>,
    pub epsilon: f64,
    pub delta: f64,
    pub tol: f64,
    pub seed: u64,
    pub max_iter: usize,
    pub z_samples: usize,
    pub format: Format,
    pub dyadic: bool,
    pub s_file: Option<PathBuf>,
    pub theorem: Option<String>,
    pub out: Option<PathBuf>,
}

fn parse_enum<T: ValueEnum>(key: &str, s: &str) -> Result<T, UsageError> {
    T::from_str(s, true).map_err(|_| UsageError(format!("config key '{key}': invalid value '{s}'")))
}

fn enum_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().expect("named variant").get_name().to_string()
}

impl Opts {
    /// Merges the config file (if any) under the flags.
    fn resolve(self) -> Result<ExperimentConfig, UsageError> {
        let cfg = match &self.config {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| UsageError(format!("cannot read config {}: {e}", p.display())))?;
                ConfigFile::parse(&text)?
            }
            None => ConfigFile::default(),
        };
        let family = match self.family {
            Some(f) => Some(enum_name(&f)),
            None => cfg
                .get::<String>("family")?
                .map(|s| parse_enum::<FamilyArg>("family", &s).map(|f| enum_name(&f)))
                .transpose()?,
        };
        let theorem = match self.theorem {
            Some(t) => Some(enum_name(&t)),
            None => cfg
                .get::<String>("theorem")?
                .map(|s| parse_enum::<TheoremArg>("theorem", &s).map(|t| enum_name(&t)))
                .transpose()?,
        };
        let format = match self.format {
            Some(f) => f,
            None => cfg
                .get::<String>("format")?
                .map(|s| parse_enum::<Format>("format", &s))
                .transpose()?
                .unwrap_or_default(),
        };
        Ok(ExperimentConfig {
            d: self.d.or(cfg.get("d")?).unwrap_or(-1),
            family,
            k: self.k.or(cfg.get("k")?),
            q_list: self.q.or(cfg.get_list("q")?).unwrap_or_default(),
            n_list: self.n.or(cfg.get_list("n")?).unwrap_or_default(),
            epsilon: self.epsilon.or(cfg.get("epsilon")?).unwrap_or(DEFAULT_EPSILON),
            delta: self.delta.or(cfg.get("delta")?).unwrap_or(DEFAULT_DELTA),
            tol: self.tol.or(cfg.get("tol")?).unwrap_or(DEFAULT_TOL),
            seed: self.seed.or(cfg.get("seed")?).unwrap_or(DEFAULT_SEED),
            max_iter: self.max_iter.or(cfg.get("max-iter")?).unwrap_or(DEFAULT_MAX_ITER),
            z_samples: self.z_samples.or(cfg.get("z-samples")?).unwrap_or(DEFAULT_Z_SAMPLES),
            format,
            dyadic: self.dyadic || cfg.get_bool("dyadic")?.unwrap_or(false),
            s_file: self.s_file.or(cfg.get("s-file")?),
            theorem,
            out: self.out.or(cfg.get("out")?),
        })
    }
}

/// Either a usage problem (exit 2) or a failed computation (exit 1).
#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidField { .. }
            | Error::NotClassNumberOne(_)
            | Error::Precondition(_)
            | Error::DimensionMismatch { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

fn require_nonempty(name: &str, v: &[u64]) -> Result<(), Failure> {
    if v.is_empty() {
        return Err(Failure::Usage(format!("--{name} needs at least one value")));
    }
    Ok(())
}

fn load_moduli(cfg: &ExperimentConfig) -> Result<Vec<crate::qfield::OKElt>, Failure> {
    let path = cfg.s_file.as_ref().ok_or_else(|| Failure::Usage("--s-file is required".into()))?;
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let s = parse_moduli(&text)?;
    if s.iter().any(|x| x.is_zero()) {
        return Err(Failure::Usage(format!("{}: moduli must be nonzero", path.display())));
    }
    Ok(s)
}

fn family_kind(cfg: &ExperimentConfig) -> Result<FamilyKind, Failure> {
    Ok(match cfg.family.as_deref().unwrap_or("all") {
        "all" => FamilyKind::All,
        "power" => FamilyKind::Power(cfg.k.ok_or_else(|| Failure::Usage("--family power needs --k".into()))?),
        "square" => FamilyKind::Square,
        "prime" => FamilyKind::Prime,
        "custom" => FamilyKind::Custom(load_moduli(cfg)?),
        other => return Err(Failure::Usage(format!("unknown family '{other}'"))),
    })
}

fn theorem_for(cfg: &ExperimentConfig, kind: &FamilyKind) -> Result<Theorem, Failure> {
    let name = match &cfg.theorem {
        Some(t) => t.as_str(),
        None => match kind {
            FamilyKind::Power(_) => "power",
            FamilyKind::Square => "square",
            FamilyKind::Prime => "prime",
            FamilyKind::All | FamilyKind::Custom(_) => "huxley",
        },
    };
    Ok(match name {
        "huxley" => Theorem::Huxley13,
        "power" => Theorem::Power(cfg.k.or(Some(kind.exponent())).unwrap_or(1)),
        "square" => Theorem::Square,
        "prime" => Theorem::Prime { delta: cfg.delta },
        other => return Err(Failure::Usage(format!("unknown theorem '{other}'"))),
    })
}

fn sieve(cfg: &ExperimentConfig) -> Result<String, Failure> {
    require_nonempty("q", &cfg.q_list)?;
    require_nonempty("n", &cfg.n_list)?;
    let field = make_field(cfg.d)?;
    let kind = family_kind(cfg)?;
    let theorem = theorem_for(cfg, &kind)?;
    let cells: Vec<(u64, u64)> = cfg.q_list.iter().flat_map(|&q| cfg.n_list.iter().map(move |&n| (q, n))).collect();
    // check every bound before spending time on eigenvalues
    for &(q, n) in &cells {
        rhs_bound(&BoundParams::new(theorem, q, n, cfg.epsilon))?;
    }
    let rows = cells
        .par_iter()
        .map(|&(q, n)| -> Result<SieveReport, Error> {
            let family = build_fractions_with(&field, kind.clone(), q, cfg.dyadic)?;
            let gram = FamilyGram::new(&family, n)?;
            let est = power_iteration(&gram, cfg.tol, cfg.seed, cfg.max_iter)?;
            let rhs = rhs_bound(&BoundParams::new(theorem, q, n, cfg.epsilon))?;
            Ok(SieveReport {
                d: cfg.d,
                family: kind.name().to_string(),
                k: kind.exponent(),
                q,
                n,
                f: family.len(),
                m: gram.columns().len(),
                lambda_max: est.value,
                rhs,
                ratio: est.value / rhs,
                iterations: est.iterations,
                converged: est.converged,
                seed: cfg.seed,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(match cfg.format {
        Format::Csv => output::csv(SIEVE_HEADER, &rows, output::sieve_row),
        Format::Json => output::json(&rows),
    })
}

fn bounds(cfg: &ExperimentConfig) -> Result<String, Failure> {
    require_nonempty("q", &cfg.q_list)?;
    let name = cfg.theorem.as_deref().ok_or_else(|| Failure::Usage("bounds needs --theorem".into()))?;
    let theorem = match name {
        "huxley" => Theorem::Huxley13,
        "power" => Theorem::Power(cfg.k.ok_or_else(|| Failure::Usage("--theorem power needs --k".into()))?),
        "square" => Theorem::Square,
        _ => Theorem::Prime { delta: cfg.delta },
    };
    let mut rows = Vec::new();
    for &q in &cfg.q_list {
        let ns = match (theorem, cfg.n_list.is_empty()) {
            (Theorem::Prime { delta }, true) => vec![prime_bound_n(q, delta)],
            (_, true) => return Err(Failure::Usage("--n needs at least one value".into())),
            _ => cfg.n_list.clone(),
        };
        for n in ns {
            let rhs = rhs_bound(&BoundParams::new(theorem, q, n, cfg.epsilon))?;
            rows.push(BoundsRow {
                theorem: theorem.name().to_string(),
                k: match theorem {
                    Theorem::Power(k) => k,
                    Theorem::Square => 2,
                    _ => 1,
                },
                q,
                n,
                epsilon: cfg.epsilon,
                delta: if matches!(theorem, Theorem::Prime { .. }) { cfg.delta } else { 0.0 },
                rhs,
            });
        }
    }
    Ok(match cfg.format {
        Format::Csv => output::csv(BOUNDS_HEADER, &rows, output::bounds_row),
        Format::Json => output::json(&rows),
    })
}

fn general_moduli(cfg: &ExperimentConfig, which: u8) -> Result<String, Failure> {
    require_nonempty("n", &cfg.n_list)?;
    let field = make_field(cfg.d)?;
    let elements = load_moduli(cfg)?;
    let max_norm =
        elements.iter().map(|x| num_traits::ToPrimitive::to_u64(&field.norm(x)).unwrap_or(u64::MAX)).max().unwrap_or(1);
    let q = match cfg.q_list.as_slice() {
        [] => max_norm,
        [q] => *q,
        _ => return Err(Failure::Usage(format!("theorem{which} takes a single --q"))),
    };
    let set = ModuliSet::new(&field, q, elements.clone())?;
    let family = build_fractions_with(&field, FamilyKind::Custom(elements), q, false)?;
    let rows = cfg
        .n_list
        .par_iter()
        .map(|&n| -> Result<ModuliRow, Error> {
            let rhs =
                if which == 2 { theorem2_rhs(&set, n, cfg.z_samples)? } else { theorem3_rhs(&set, n, cfg.epsilon)? };
            let x = verify_x(&set, n)?;
            let gram = FamilyGram::new(&family, n)?;
            let est = power_iteration(&gram, cfg.tol, cfg.seed, cfg.max_iter)?;
            Ok(ModuliRow {
                theorem: format!("theorem{which}"),
                d: cfg.d,
                s: set.len(),
                q,
                n,
                f: family.len(),
                m: gram.columns().len(),
                lambda_max: est.value,
                rhs,
                ratio: est.value / rhs,
                x,
                iterations: est.iterations,
                seed: cfg.seed,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(match cfg.format {
        Format::Csv => output::csv(MODULI_HEADER, &rows, output::moduli_row),
        Format::Json => output::json(&rows),
    })
}

/// Returns the report and whether every suite passed.
fn verify(suite: Option<&str>, cfg: &ExperimentConfig) -> Result<(String, bool), Failure> {
    let suites: Vec<Suite> = match suite.unwrap_or("all") {
        "all" => Suite::ALL.to_vec(),
        s => vec![Suite::parse(s).ok_or_else(|| {
            Failure::Usage(format!("unknown suite '{s}' (ring, character, residue, approx, poisson, fourier, all)"))
        })?],
    };
    let field = make_field(cfg.d)?;
    let mut reports = Vec::new();
    for s in suites {
        reports.push(run_suite(s, &field, cfg.seed)?);
    }
    let ok = reports.iter().all(|r| r.passed());
    let text = match cfg.format {
        Format::Csv => {
            let mut t = String::from("suite,d,checks,failures,max_error,status\n");
            for r in &reports {
                t.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.suite.name(),
                    r.d,
                    r.checks,
                    r.failures.len(),
                    fmt_g(r.max_error, 12),
                    if r.passed() { "pass" } else { "fail" }
                ));
            }
            t
        }
        Format::Json => {
            let v: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "suite": r.suite.name(),
                        "d": r.d,
                        "checks": r.checks,
                        "failures": r.failures,
                        "max_error": r.max_error,
                        "passed": r.passed(),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
    };
    Ok((text, ok))
}

fn thread_pool() -> Result<Option<rayon::ThreadPool>, Failure> {
    match std::env::var("IQSIEVE_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| Failure::Usage(format!("IQSIEVE_THREADS must be a positive integer, got '{v}'")))?;
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map(Some)
                .map_err(|e| Failure::Runtime(format!("cannot build thread pool: {e}")))
        }
    }
}

fn dispatch(command: Command) -> Result<(String, bool, Option<PathBuf>), Failure> {
    let (text, ok, out) = match command {
        Command::Verify { suite, opts } => {
            let cfg = opts.resolve()?;
            let (t, ok) = verify(suite.as_deref(), &cfg)?;
            (t, ok, cfg.out)
        }
        Command::Sieve(opts) => {
            let cfg = opts.resolve()?;
            (sieve(&cfg)?, true, cfg.out)
        }
        Command::Bounds(opts) => {
            let cfg = opts.resolve()?;
            (bounds(&cfg)?, true, cfg.out)
        }
        Command::Theorem2(opts) => {
            let cfg = opts.resolve()?;
            (general_moduli(&cfg, 2)?, true, cfg.out)
        }
        Command::Theorem3(opts) => {
            let cfg = opts.resolve()?;
            (general_moduli(&cfg, 3)?, true, cfg.out)
        }
    };
    Ok((text, ok, out))
}

/// Runs the command line `argv` (program name first). Reports go to `out` or
/// the `--out` file, diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = thread_pool().and_then(|pool| match pool {
        Some(p) => p.install(|| dispatch(cli.command)),
        None => dispatch(cli.command),
    });
    match result {
        Ok((text, ok, path)) => {
            let written = match path {
                Some(p) => std::fs::write(&p, &text).map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return EXIT_FAILURE;
            }
            if ok {
                EXIT_OK
            } else {
                let _ = writeln!(err, "verification failed");
                EXIT_FAILURE
            }
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "usage error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_FAILURE
        }
    }
}
