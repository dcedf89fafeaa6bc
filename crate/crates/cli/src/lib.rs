//! Command-line front end for the `popalloc` simulator.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid configuration,
//! 3 over-capacity or bad input data.

pub mod config_file;
pub mod format;
pub mod input;
pub mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use popalloc::sim::{allocate_snapshot, DEFAULT_TOTAL_USERS};
use popalloc::{
    capacity_limits, equal_share_allocate, quality_shift, rank_sessions, replay,
    satisfaction_report, sweep, Execution, ScenarioKind, SweepSpec, SystemConfig,
};
use thiserror::Error;

use crate::config_file::FileConfig;

#[derive(Debug, Parser)]
#[command(
    name = "popalloc",
    version,
    about = "Popularity-based bandwidth allocation simulator"
)]
struct Cli {
    /// `key = value` config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    capacity_kbps: Option<f64>,
    #[arg(long, global = true)]
    beta_max_kbps: Option<f64>,
    #[arg(long, global = true)]
    beta_min_kbps: Option<f64>,
    #[arg(long, global = true)]
    layer_granularity_kbps: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    trials: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScenarioArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Allocate bandwidth for one snapshot of sessions.
    Allocate {
        #[arg(long)]
        snapshot: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep over session counts with randomly generated audiences.
    Sweep {
        #[arg(long, value_enum)]
        scenario: ScenarioArg,
        #[arg(long)]
        m_from: usize,
        #[arg(long)]
        m_to: usize,
        /// Users in the system.
        #[arg(long, default_value_t = DEFAULT_TOTAL_USERS)]
        users: u64,
        /// Per-trial records; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-M means; appended after the per-trial table when omitted.
        #[arg(long)]
        agg_out: Option<PathBuf>,
        /// Run trials on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Replay a session/viewer event trace.
    Replay {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print how many sessions fit at full and at minimum quality.
    Limits {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Data(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Config(_) => 2,
            CliError::Data(_) => 3,
        }
    }
}

impl From<popalloc::Error> for CliError {
    fn from(e: popalloc::Error) -> Self {
        match e {
            popalloc::Error::InvalidConfig(_) => CliError::Config(e.to_string()),
            popalloc::Error::InvalidSpec(_) => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let first = text.lines().next().unwrap_or("usage error");
                    let _ = writeln!(stderr, "{first}");
                    1
                }
            };
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn resolve_config(cli: &Cli) -> Result<FileConfig, CliError> {
    let mut cfg = FileConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        cfg = config_file::parse(&text, cfg).map_err(CliError::Config)?;
    }
    let sys = &mut cfg.system;
    if let Some(v) = cli.capacity_kbps {
        sys.capacity_kbps = v;
    }
    if let Some(v) = cli.beta_max_kbps {
        sys.beta_max_kbps = v;
    }
    if let Some(v) = cli.beta_min_kbps {
        sys.beta_min_kbps = v;
    }
    if let Some(v) = cli.layer_granularity_kbps {
        sys.layer_granularity_kbps = v;
    }
    if let Some(v) = cli.seed {
        cfg.seed = v;
    }
    if let Some(v) = cli.trials {
        cfg.trials = v;
    }
    cfg.system.validate()?;
    if cfg.trials == 0 {
        return Err(CliError::Config("trials must be positive".into()));
    }
    Ok(cfg)
}

fn open_input(path: &Path) -> Result<File, CliError> {
    File::open(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

/// Buffers into `path` when given, otherwise into `fallback`.
fn with_sink(
    path: Option<&Path>,
    fallback: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let file =
                File::create(p).map_err(|e| CliError::Data(format!("{}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let mut buf = Vec::new();
            body(&mut buf)?;
            fallback.write_all(&buf)?;
        }
    }
    Ok(())
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cfg = resolve_config(&cli)?;
    let system = cfg.system;
    match cli.command {
        Command::Limits { out } => {
            let b = capacity_limits(&system);
            with_sink(out.as_deref(), stdout, |w| {
                writeln!(w, "n_hq,{}", b.n_hq)?;
                writeln!(w, "n_lq,{}", b.n_lq)
            })
        }
        Command::Allocate { snapshot, out } => {
            let snaps = input::read_snapshot(open_input(&snapshot)?).map_err(CliError::Data)?;
            allocate_cmd(&system, &snaps, out.as_deref(), stdout)
        }
        Command::Sweep {
            scenario,
            m_from,
            m_to,
            users,
            out,
            agg_out,
            sequential,
        } => {
            if m_from == 0 || m_from > m_to {
                return Err(CliError::Usage(format!(
                    "--m-from must be between 1 and --m-to (got {m_from}..{m_to})"
                )));
            }
            let spec = SweepSpec {
                kind: match scenario {
                    ScenarioArg::One => ScenarioKind::Scenario1,
                    ScenarioArg::Two => ScenarioKind::Scenario2,
                },
                m_from,
                m_to,
                trials: cfg.trials,
                seed: cfg.seed,
                total_users: users,
            };
            let exec = if sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let records = sweep(&system, &spec, exec)?;
            let rows = output::aggregate(&records);
            match agg_out {
                Some(path) => {
                    with_sink(out.as_deref(), stdout, |w| output::write_sweep(w, &records))?;
                    with_sink(Some(&path), stdout, |w| output::write_aggregate(w, &rows))
                }
                None => with_sink(out.as_deref(), stdout, |w| {
                    output::write_sweep(w, &records)?;
                    writeln!(w)?;
                    output::write_aggregate(w, &rows)
                }),
            }
        }
        Command::Replay { trace, out } => {
            let trace = input::read_trace(open_input(&trace)?).map_err(CliError::Data)?;
            let steps = replay(&system, &trace)?;
            with_sink(out.as_deref(), stdout, |w| output::write_replay(w, &steps))
        }
    }
}

fn allocate_cmd(
    system: &SystemConfig,
    snaps: &[popalloc::SessionSnapshot],
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    if snaps.is_empty() {
        return Err(popalloc::Error::NoSessions.into());
    }
    let ranked = rank_sessions(snaps)?;
    let (alloc, layers) = allocate_snapshot(system, snaps)?;
    let report = satisfaction_report(system, &alloc, &ranked)?;
    let shift = quality_shift(system, &alloc, &ranked)?;
    let beta_equal = equal_share_allocate(system, ranked.session_count())?;
    with_sink(out, stdout, |w| {
        output::write_allocation(w, &alloc, beta_equal, &layers, &report, &shift)
    })
}
