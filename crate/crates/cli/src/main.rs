mod commands;
mod config;
mod error;
mod plot;
mod table;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ebound::sweep::Execution;

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::plot::{PlotKind, PlotSpec};
use crate::table::NumTable;

/// Coupling bounds and mode solvers for free electrons near photonic structures.
#[derive(Parser)]
#[command(name = "ebound", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the computation described by a TOML config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output file; overrides output.path. Stdout when neither is set.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Worker threads; 0 or 1 runs sequentially.
        #[arg(long, env = "EBOUND_WORKERS")]
        workers: Option<usize>,
        /// Relative quadrature tolerance; overrides quadrature.relative_tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Draw an SVG from a CSV written by `run`.
    Plot {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, value_enum)]
        kind: PlotKind,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        log_x: bool,
        #[arg(long)]
        log_y: bool,
        #[arg(long)]
        log_z: bool,
        /// Defaults to the CSV path with an .svg extension.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn run(config: &Path, out: Option<PathBuf>, format: Option<Format>, workers: Option<usize>, tolerance: Option<f64>) -> Result<(), CliError> {
    let text = std::fs::read_to_string(config).map_err(|e| CliError::Config(format!("{}: {e}", config.display())))?;
    let mut cfg = RunConfig::parse(&text)?;
    if let Some(o) = out {
        cfg.output.path = Some(o);
    }
    if let Some(f) = format {
        cfg.output.format = f;
    }
    if let Some(t) = tolerance {
        cfg.quadrature.relative_tolerance = t;
    }
    let spec = cfg.quadrature.spec()?;
    let exec = Execution::from_workers(workers.or(cfg.parallelism));
    let base = config.parent().unwrap_or(Path::new("."));
    let job = commands::prepare(&cfg, base)?;
    let result = commands::execute(&job, &spec, exec)?;
    let body = match cfg.output.format {
        Format::Csv => result.table.to_csv(&cfg.to_toml())?,
        Format::Json => result.table.to_json(cfg.to_json()),
        Format::Svg => {
            let plot = cfg
                .output
                .plot
                .clone()
                .or(result.plot)
                .ok_or_else(|| CliError::Config("this command has no default plot; set output.plot".into()))?;
            plot::render(&result.table.numeric(), &plot)?
        }
    };
    write_output(cfg.output.path.as_deref(), &body)?;
    for line in &result.summary {
        if cfg.output.path.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
    Ok(())
}

fn plot_csv(csv: &Path, spec: &PlotSpec, out: Option<PathBuf>) -> Result<(), CliError> {
    let f = std::fs::File::open(csv).map_err(|e| CliError::Config(format!("{}: {e}", csv.display())))?;
    let table = NumTable::from_csv(f)?;
    let svg = plot::render(&table, spec)?;
    let out = out.unwrap_or_else(|| csv.with_extension("svg"));
    write_output(Some(&out), &svg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Run {
            config,
            out,
            format,
            workers,
            tolerance,
        } => run(&config, out, format, workers, tolerance),
        Cmd::Plot {
            csv,
            kind,
            x,
            y,
            z,
            log_x,
            log_y,
            log_z,
            out,
        } => {
            let spec = PlotSpec {
                kind,
                x,
                y,
                z,
                log_x,
                log_y,
                log_z,
            };
            plot_csv(&csv, &spec, out)
        }
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ebound: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
