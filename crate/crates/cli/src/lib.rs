//! The `dfsopt` command line.
//!
//! Exit codes: 0 on success (warnings allowed), 1 for usage and configuration
//! errors, 2 for data errors and infeasible problems. Diagnostics go to the
//! error stream; results go to `--out` or standard output.

pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand};

use dfsopt_core::accuracy::{describe, RSquaredMethod};
use dfsopt_core::backtest::{backtest_range, BacktestError};
use dfsopt_core::io::{emit_accuracy, emit_backtest, emit_lineups, emit_scatter_data, parse_slate_csv, ColumnMap, OutputFormat};
use dfsopt_core::{
    generate_portfolio, optimize_lineup, Diagnostic, Exposure, LineupError, ObjectiveSource, Portfolio,
    PortfolioConfig, RosterRules, Slate, Stacking,
};

use config::{parse_slots, FileConfig};

#[derive(Debug, Parser)]
#[command(name = "dfsopt", version, about = "Exact lineup optimizer and projection evaluator for daily fantasy baseball")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Best single lineup for a slate
    Optimize {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        lineup: LineupFlags,
    },
    /// Several diversified lineups, best first
    Portfolio {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        lineup: LineupFlags,
        /// Number of lineups (at most 150)
        #[arg(long)]
        n: Option<u32>,
        /// Most players any two lineups may share
        #[arg(long)]
        max_overlap: Option<u32>,
        /// Per-player lineup cap: a count (25), share (0.25) or percent (25%)
        #[arg(long)]
        max_exposure: Option<String>,
    },
    /// Projection accuracy report
    Evaluate {
        #[command(flatten)]
        common: Common,
        /// R² definition: determination or pearson
        #[arg(long)]
        r2: Option<String>,
    },
    /// Projection-optimal versus hindsight-optimal lineups over many days
    Backtest {
        #[command(flatten)]
        common: Common,
        /// Directory of slate CSVs named YYYY-MM-DD.csv
        #[arg(long)]
        dir: PathBuf,
    },
    /// Projection, actual and squared difference per player, worst first
    Scatter {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Slate CSV
    #[arg(long)]
    slate: Option<PathBuf>,
    /// Flat TOML file with defaults for any flag
    #[arg(long)]
    config: Option<PathBuf>,
    /// Salary cap
    #[arg(long)]
    cap: Option<i64>,
    /// Let pitchers fill UTIL
    #[arg(long)]
    util_pitcher: bool,
    /// Slot table, e.g. P=P,C/1B=C/1B,2B=2B,3B=3B,SS=SS,OF=OF*3,UTIL=C/1B/2B/3B/SS/OF
    #[arg(long)]
    slots: Option<String>,
    /// Output format: json or csv
    #[arg(long)]
    format: Option<String>,
    /// Output file; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// Slate date; defaults to the slate file name when it is YYYY-MM-DD
    #[arg(long)]
    date: Option<String>,
    /// Rename foreign CSV headers, e.g. "Proj=projection,Salary=salary"
    #[arg(long)]
    map: Option<String>,
}

#[derive(Debug, Args)]
struct LineupFlags {
    /// Require SIZE hitters from each of COUNT teams, e.g. 4x1
    #[arg(long)]
    stack: Option<String>,
    /// Player id every lineup must include (repeatable)
    #[arg(long)]
    lock: Vec<String>,
    /// Player id no lineup may include (repeatable)
    #[arg(long)]
    exclude: Vec<String>,
    /// Value to maximize: projection, ceiling or actual
    #[arg(long)]
    objective: Option<String>,
}

/// How a run failed, which decides the exit code.
enum Failure {
    Usage(String),
    Data(Vec<Diagnostic>),
}

impl Failure {
    fn data(msg: impl Into<String>) -> Self {
        Failure::Data(vec![Diagnostic::error(msg)])
    }
}

impl From<LineupError> for Failure {
    fn from(e: LineupError) -> Self {
        match e {
            LineupError::Config(_) => Failure::Usage(e.to_string()),
            other => Failure::data(other.to_string()),
        }
    }
}

/// Settings shared by every subcommand after merging flags, config file and
/// defaults.
struct Resolved {
    rules: RosterRules,
    format: OutputFormat,
    out: Option<PathBuf>,
    date: Option<NaiveDate>,
    map: Option<ColumnMap>,
    file: FileConfig,
}

fn resolve(common: &Common) -> Result<Resolved, Failure> {
    let file = match &common.config {
        Some(p) => FileConfig::load(p).map_err(Failure::Usage)?,
        None => FileConfig::default(),
    };
    let slots = common.slots.clone().or(file.slots.clone());
    let cap = common.cap.or(file.salary_cap);
    let mut rules = match slots {
        Some(s) => {
            let slots = parse_slots(&s).map_err(Failure::Usage)?;
            RosterRules::new(slots, cap.unwrap_or(35_000)).map_err(|e| Failure::Usage(e.to_string()))?
        }
        None => RosterRules::mlb_classic(),
    };
    if let Some(cap) = cap {
        rules = rules.with_salary_cap(cap).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let util_pitcher = if common.util_pitcher { Some(true) } else { file.util_pitcher };
    if let Some(allow) = util_pitcher {
        rules = rules.with_util_pitcher(allow);
    }
    let format = match common.format.clone().or(file.format.clone()) {
        Some(f) => f.parse().map_err(Failure::Usage)?,
        None => OutputFormat::Json,
    };
    let date = match common.date.clone().or(file.date.clone()) {
        Some(d) => Some(parse_date(&d).map_err(Failure::Usage)?),
        None => None,
    };
    let map = match common.map.clone().or(file.map.clone()) {
        Some(m) => Some(m.parse().map_err(Failure::Usage)?),
        None => None,
    };
    Ok(Resolved {
        rules,
        format,
        out: common.out.clone().or(file.out.clone()),
        date,
        map,
        file,
    })
}

fn parse_date(s: &str) -> Result<NaiveDate, String> {
    NaiveDate::parse_from_str(s, "%Y-%m-%d").map_err(|_| format!("invalid date {s:?} (expected YYYY-MM-DD)"))
}

fn date_from_stem(path: &Path) -> Option<NaiveDate> {
    path.file_stem().and_then(|s| s.to_str()).and_then(|s| parse_date(s).ok())
}

fn load_slate(path: &Path, date: Option<NaiveDate>, map: Option<&ColumnMap>) -> Result<Slate, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::data(format!("cannot read {}: {e}", path.display())))?;
    let date = date.or_else(|| date_from_stem(path)).unwrap_or_default();
    parse_slate_csv(&bytes, date, map).map_err(|ds| {
        Failure::Data(
            ds.into_iter()
                .map(|d| match d.subject {
                    Some(_) => d,
                    None => d.about(path.display().to_string()),
                })
                .collect(),
        )
    })
}

fn slate_arg(common: &Common, r: &Resolved) -> Result<Slate, Failure> {
    let path = common
        .slate
        .as_ref()
        .ok_or_else(|| Failure::Usage("--slate is required".into()))?;
    load_slate(path, r.date, r.map.as_ref())
}

fn portfolio_config(flags: &LineupFlags, file: &FileConfig) -> Result<PortfolioConfig, Failure> {
    let mut cfg = PortfolioConfig::default();
    if let Some(s) = flags.stack.clone().or(file.stack.clone()) {
        let Stacking { size, count } = s.parse().map_err(Failure::Usage)?;
        cfg = cfg.with_stacking(size, count);
    }
    if let Some(o) = flags.objective.clone().or(file.objective.clone()) {
        cfg = cfg.with_objective(o.parse::<ObjectiveSource>().map_err(Failure::Usage)?);
    }
    let locks = if flags.lock.is_empty() { &file.locks } else { &flags.lock };
    let excludes = if flags.exclude.is_empty() { &file.excludes } else { &flags.exclude };
    cfg.locks = locks.iter().cloned().collect();
    cfg.excludes = excludes.iter().cloned().collect();
    Ok(cfg)
}

struct Output {
    bytes: Vec<u8>,
    warnings: Vec<Diagnostic>,
}

fn run(command: Command) -> Result<(Output, Option<PathBuf>), Failure> {
    match command {
        Command::Optimize { common, lineup } => {
            let r = resolve(&common)?;
            let slate = slate_arg(&common, &r)?;
            let cfg = portfolio_config(&lineup, &r.file)?;
            let best = optimize_lineup(&slate, &r.rules, &cfg)?;
            let exposure = best.player_ids().map(|id| (id.to_string(), 1)).collect();
            let p = Portfolio {
                lineups: vec![best],
                config: cfg,
                exposure,
                diagnostics: Vec::new(),
            };
            let bytes = emit_lineups(&p, &r.rules, r.format);
            Ok((Output { bytes, warnings: Vec::new() }, r.out))
        }
        Command::Portfolio {
            common,
            lineup,
            n,
            max_overlap,
            max_exposure,
        } => {
            let r = resolve(&common)?;
            let slate = slate_arg(&common, &r)?;
            let mut cfg = portfolio_config(&lineup, &r.file)?.with_lineups(n.or(r.file.n_lineups).unwrap_or(1));
            cfg.max_overlap = max_overlap.or(r.file.max_overlap);
            let exposure = max_exposure.or_else(|| r.file.max_exposure.as_ref().map(|e| e.as_text()));
            if let Some(e) = exposure {
                cfg = cfg.with_max_exposure(e.parse::<Exposure>().map_err(Failure::Usage)?);
            }
            let p = generate_portfolio(&slate, &r.rules, &cfg)?;
            let bytes = emit_lineups(&p, &r.rules, r.format);
            Ok((Output { bytes, warnings: p.diagnostics }, r.out))
        }
        Command::Evaluate { common, r2 } => {
            let r = resolve(&common)?;
            let method: RSquaredMethod = match r2.or(r.file.r2.clone()) {
                Some(m) => m.parse().map_err(Failure::Usage)?,
                None => RSquaredMethod::Determination,
            };
            let slate = slate_arg(&common, &r)?;
            let report = describe(&slate, method).map_err(|e| Failure::data(e.to_string()))?;
            let mut warnings = Vec::new();
            if report.n_dropped > 0 {
                warnings.push(Diagnostic::warning(format!("{} rows without an actual were dropped", report.n_dropped)));
            }
            if report.r_squared.is_none() {
                warnings.push(Diagnostic::warning("undefined R²: needs at least two rows and actuals that vary"));
            }
            let bytes = emit_accuracy(&report, r.format);
            Ok((Output { bytes, warnings }, r.out))
        }
        Command::Backtest { common, dir } => {
            let r = resolve(&common)?;
            let (slates, mut warnings) = load_dir(&dir, r.map.as_ref())?;
            let report = backtest_range(&slates, &r.rules).map_err(|e| match e {
                BacktestError::NoSlates => Failure::data(format!("no slate CSVs in {}", dir.display())),
                other => Failure::data(other.to_string()),
            })?;
            warnings.extend(report.diagnostics.iter().cloned());
            let bytes = emit_backtest(&report, r.format);
            Ok((Output { bytes, warnings }, r.out))
        }
        Command::Scatter { common } => {
            let r = resolve(&common)?;
            let slate = slate_arg(&common, &r)?;
            let bytes = emit_scatter_data(&slate).map_err(|e| Failure::data(e.to_string()))?;
            Ok((Output { bytes, warnings: Vec::new() }, r.out))
        }
    }
}

/// Every `YYYY-MM-DD.csv` in `dir`, in name order. Files that fail to parse
/// become warnings so one bad day does not sink the rest.
fn load_dir(dir: &Path, map: Option<&ColumnMap>) -> Result<(Vec<Slate>, Vec<Diagnostic>), Failure> {
    let entries = std::fs::read_dir(dir).map_err(|e| Failure::data(format!("cannot read {}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .collect();
    paths.sort();
    let mut slates = Vec::new();
    let mut warnings = Vec::new();
    for path in paths {
        let shown = path.display().to_string();
        let Some(date) = date_from_stem(&path) else {
            warnings.push(Diagnostic::warning("skipped: file name is not YYYY-MM-DD.csv").about(shown));
            continue;
        };
        match load_slate(&path, Some(date), map) {
            Ok(s) => slates.push(s),
            Err(Failure::Data(ds)) => {
                warnings.push(Diagnostic::warning(format!("skipped: {} problem(s)", ds.len())).about(shown));
                warnings.extend(ds.into_iter().map(|d| Diagnostic { severity: dfsopt_core::Severity::Warning, ..d }));
            }
            Err(usage) => return Err(usage),
        }
    }
    Ok((slates, warnings))
}

/// Runs one invocation against the given streams and returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match run(cli.command) {
        Ok((out, path)) => {
            for w in &out.warnings {
                let _ = writeln!(stderr, "{w}");
            }
            let written = match &path {
                Some(p) => std::fs::write(p, &out.bytes).map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => stdout.write_all(&out.bytes).map_err(|e| format!("cannot write output: {e}")),
            };
            match written {
                Ok(()) => 0,
                Err(msg) => {
                    let _ = writeln!(stderr, "{}", Diagnostic::error(msg));
                    2
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Failure::Data(ds)) => {
            for d in ds {
                let _ = writeln!(stderr, "{d}");
            }
            2
        }
    }
}

/// Runs one invocation on the process's standard streams.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
