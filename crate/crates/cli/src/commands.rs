use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wald_core::bounds::certify;
use wald_core::cache::DimCache;
use wald_core::catalog;
use wald_core::engine::{Engine, Mode, ModePolicy};
use wald_core::geometry::Config;
use wald_core::verify::{classify_small, Outcome};

use crate::checks;
use crate::config_file::{parse_config, ConfigFile};
use crate::report::{
    emit_report, Certificate, ConfigSummary, Format, Inputs, Report, Results, SeqRow, Timing,
};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "wald",
    version,
    about = "Initial degrees of symbolic powers and Waldschmidt constants of planar point sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit the report as JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,

    /// Emit the report as CSV.
    #[arg(long, global = true)]
    pub csv: bool,

    /// Fix the mode for every m (default: certified for m <= 6, heuristic above).
    #[arg(long, global = true, value_parser = parse_mode)]
    pub mode: Option<Mode>,

    /// JSON-lines file of computed dimensions, reused across runs.
    #[arg(long, global = true, env = "WALD_CACHE")]
    pub cache: Option<PathBuf>,

    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Report wall-clock time alongside the results.
    #[arg(long, global = true)]
    pub timing: bool,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
        .map_err(|_| "expected `certified` or `heuristic`".to_string())
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Target {
    /// A catalog entry, e.g. H6_10 or LINE(5).
    #[arg(long)]
    pub catalog: Option<String>,

    /// A JSON config file, or inline JSON.
    #[arg(long)]
    pub config: Option<String>,
}

impl Target {
    fn load(&self) -> Result<Config, CliError> {
        match (&self.catalog, &self.config) {
            (Some(name), _) => Ok(catalog::build(name)?),
            (None, Some(source)) => parse_config(source),
            (None, None) => Err(CliError::Usage(
                "one of --catalog or --config is required".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    /// Waldschmidt values and periods of the catalog.
    #[value(name = "2")]
    Values,
    /// Runs of 2-differences only on conics.
    #[value(name = "B")]
    TwoRuns,
    /// The nine-point configuration and the five-halves threshold.
    #[value(name = "A")]
    NinePoints,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// α(I^(m)) for one m.
    Alpha {
        #[command(flatten)]
        target: Target,
        #[arg(long = "m", alias = "max-m", default_value_t = 1)]
        m: u32,
    },
    /// α(I^(m)) for m = 1..=M.
    Sequence {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 6)]
        max_m: u32,
        /// Also print the first differences on one line.
        #[arg(long)]
        diffs: bool,
    },
    /// Bracket and status of the Waldschmidt constant from m = 1..=M.
    Waldschmidt {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 10)]
        max_m: u32,
    },
    /// Line, near-pencil, conic, or matching catalog pattern.
    Classify {
        #[command(flatten)]
        target: Target,
    },
    /// List catalog entries or write one as a config file.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Reproduce the classification results on the catalog.
    VerifyPaper {
        #[arg(long, value_enum, default_value = "all")]
        theorem: Theorem,
        /// Window of the two-run scan; the value table uses per-entry horizons.
        #[arg(long, default_value_t = 10)]
        max_m: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Emit { name: String },
}

fn policy(cli: &Cli) -> ModePolicy {
    cli.mode.map(ModePolicy::Fixed).unwrap_or_default()
}

fn describe(p: ModePolicy) -> String {
    match p {
        ModePolicy::Fixed(mode) => mode.to_string(),
        ModePolicy::CertifiedUpTo(b) => format!("certified for m <= {b}, heuristic above"),
    }
}

fn engine(cli: &Cli) -> Result<Engine, CliError> {
    let cache = match &cli.cache {
        Some(path) => DimCache::open(path)?,
        None => DimCache::in_memory(),
    };
    Ok(Engine::from_env()?.with_cache(cache))
}

fn summaries<'a>(configs: impl IntoIterator<Item = &'a Config>) -> Vec<ConfigSummary> {
    configs.into_iter().map(ConfigSummary::of).collect()
}

/// Parses `argv` (program name first) and runs it. The exit code is 0, or 1
/// when a checked assertion fails.
pub fn run_command<I, T>(argv: I) -> Result<(Report, i32), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&argv).map_err(|e| CliError::Usage(e.to_string()))?;
    let echo = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    execute(&cli, echo)
}

fn execute(cli: &Cli, command: Vec<String>) -> Result<(Report, i32), CliError> {
    let start = Instant::now();
    let run = || dispatch(cli, command);
    let (mut report, code) = match cli.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?
            .install(run)?,
        None => run()?,
    };
    if cli.timing {
        report.timing = Some(Timing {
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }
    Ok((report, code))
}

fn dispatch(cli: &Cli, command: Vec<String>) -> Result<(Report, i32), CliError> {
    let policy = policy(cli);
    let inputs = |configs: Vec<ConfigSummary>, max_m: Option<u32>, primes: Vec<u64>| Inputs {
        configs,
        max_m,
        mode: describe(policy),
        primes,
    };
    let report = |inputs, results, certificates| Report {
        command: command.clone(),
        inputs,
        results,
        certificates,
        timing: None,
    };

    match &cli.command {
        Command::Alpha { target, m } => {
            let z = target.load()?;
            let engine = engine(cli)?;
            let e = engine.initial_degree(&z, *m, policy.mode_for(*m))?;
            let results = Results::Alpha {
                config: z.label().to_string(),
                m: e.m,
                alpha: e.alpha,
                certainty: e.certainty,
            };
            let cert = Certificate::of(z.label(), &e);
            let primes = engine.primes().base().to_vec();
            Ok((
                report(
                    inputs(summaries([&z]), Some(*m), primes),
                    results,
                    vec![cert],
                ),
                0,
            ))
        }
        Command::Sequence {
            target,
            max_m,
            diffs,
        } => {
            let z = target.load()?;
            let engine = engine(cli)?;
            let seq = engine.initial_sequence(&z, *max_m, policy)?;
            let violations = seq.invariant_violations();
            let code = i32::from(!violations.is_empty());
            let results = Results::Sequence {
                rows: SeqRow::rows(&seq),
                diffs: diffs.then(|| seq.first_differences()),
                violations,
            };
            let primes = engine.primes().base().to_vec();
            Ok((
                report(
                    inputs(summaries([&z]), Some(*max_m), primes),
                    results,
                    Certificate::all(&seq),
                ),
                code,
            ))
        }
        Command::Waldschmidt { target, max_m } => {
            let z = target.load()?;
            let engine = engine(cli)?;
            let (seq, bounds) = certify(&engine, &z, *max_m, policy)?;
            let violations = checks::inequality_violations(&seq.values());
            let code = i32::from(!violations.is_empty());
            let results = Results::Waldschmidt {
                rows: SeqRow::rows(&seq),
                bounds: Box::new(bounds),
                violations,
            };
            let primes = engine.primes().base().to_vec();
            Ok((
                report(
                    inputs(summaries([&z]), Some(*max_m), primes),
                    results,
                    Certificate::all(&seq),
                ),
                code,
            ))
        }
        Command::Classify { target } => {
            let z = target.load()?;
            let verdict = classify_small(&z);
            let results = Results::Classify {
                config: z.label().to_string(),
                verdict,
            };
            Ok((
                report(inputs(summaries([&z]), None, vec![]), results, vec![]),
                0,
            ))
        }
        Command::Catalog {
            action: CatalogAction::List,
        } => Ok((
            report(
                inputs(vec![], None, vec![]),
                Results::CatalogList {
                    names: catalog::list(),
                },
                vec![],
            ),
            0,
        )),
        Command::Catalog {
            action: CatalogAction::Emit { name },
        } => {
            let z = catalog::build(name)?;
            let results = Results::CatalogEmit {
                config: ConfigFile::from_config(&z),
            };
            Ok((
                report(inputs(summaries([&z]), None, vec![]), results, vec![]),
                0,
            ))
        }
        Command::VerifyPaper { theorem, max_m } => {
            let engine = engine(cli)?;
            let wants = |t: Theorem| *theorem == t || *theorem == Theorem::All;
            let mut rows = Vec::new();
            let mut configs: Vec<Config> = Vec::new();
            let mut certificates = Vec::new();
            if wants(Theorem::Values) {
                let records = checks::value_records(&engine, policy)?;
                rows.extend(checks::value_rows(&records));
                for r in &records {
                    certificates.extend(Certificate::all(&r.seq));
                    configs.push(r.config.clone());
                }
            }
            if wants(Theorem::TwoRuns) {
                rows.extend(checks::two_run_rows(&checks::two_run_reports(
                    &engine, *max_m, policy,
                )?));
            }
            if wants(Theorem::NinePoints) {
                rows.extend(checks::nine_point_rows(&engine, policy)?);
            }
            if configs.is_empty() {
                for name in checks::subjects() {
                    configs.push(catalog::build(&name)?);
                }
            }
            let code = i32::from(rows.iter().any(|r| r.outcome == Outcome::Fail));
            let primes = engine.primes().base().to_vec();
            let inputs = inputs(summaries(&configs), Some(*max_m), primes);
            Ok((report(inputs, Results::Checks { rows }, certificates), code))
        }
    }
}

/// Entry point of the `wald` binary.
pub fn main_with<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        // help and version exit 0, usage errors 2
        Err(e) => e.exit(),
    };
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Table
    };
    let echo = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match execute(&cli, echo) {
        Ok((report, code)) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(&emit_report(&report, format))
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("wald: {e}");
            ExitCode::from(2)
        }
    }
}
