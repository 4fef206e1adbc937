//! Command-line front end.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};
use crate::report::write_json;
use crate::runner;

#[derive(Debug, Parser)]
#[command(
    name = "jpda",
    version,
    about = "Joint-probability MMD domain adaptation experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit each algorithm once; writes report.json and accuracy.csv.
    Run(Options),
    /// Grid over mu, lambda and seeds; writes report.json and sweep.csv.
    Sweep(Options),
    /// Per-iteration discrepancy and accuracy; writes report.json and trace.csv.
    Trace(Options),
    /// 2-D PCA of the projected samples; writes report.json and embedding.csv.
    Embed2d(Options),
    /// Writes a synthetic pair as source.csv and target.csv.
    Datagen(Options),
}

#[derive(Debug, Args, Default)]
pub struct Options {
    /// Flat `key = value` config file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub source: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub target: Option<String>,
    /// Comma-separated list of tca, jda, bda, jpda, jp.
    #[arg(long, allow_hyphen_values = true)]
    pub algo: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub iters: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// primal, linear, rbf, rbf:median or rbf:<sigma>.
    #[arg(long, allow_hyphen_values = true)]
    pub kernel: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub seed: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub out: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub jobs: Option<String>,
    /// office-caltech sets lambda = 1 and the linear kernel.
    #[arg(long, allow_hyphen_values = true)]
    pub preset: Option<String>,
    /// Keep the BDA balance weight from the first iteration.
    #[arg(long)]
    pub freeze_bda_mu: bool,
    /// Synthetic shift when no files are given: rotation, mean_offset, class_swap_noise.
    #[arg(long, allow_hyphen_values = true)]
    pub shift: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub magnitude: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub n_per_class: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub classes: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub dim: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub ridge: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu_grid: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_grid: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub seeds: Option<String>,
}

impl Options {
    pub fn overrides(&self) -> Vec<(String, String)> {
        let flags = [
            ("preset", &self.preset),
            ("source", &self.source),
            ("target", &self.target),
            ("shift", &self.shift),
            ("magnitude", &self.magnitude),
            ("n_per_class", &self.n_per_class),
            ("classes", &self.classes),
            ("dim", &self.dim),
            ("algorithm", &self.algo),
            ("p", &self.p),
            ("T", &self.iters),
            ("mu", &self.mu),
            ("lambda", &self.lambda),
            ("kernel", &self.kernel),
            ("ridge", &self.ridge),
            ("seed", &self.seed),
            ("mu_grid", &self.mu_grid),
            ("lambda_grid", &self.lambda_grid),
            ("seeds", &self.seeds),
            ("jobs", &self.jobs),
            ("out", &self.out),
        ];
        let mut out: Vec<(String, String)> = flags
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone())))
            .collect();
        if self.freeze_bda_mu {
            out.push(("freeze_bda_mu".into(), "true".into()));
        }
        out
    }
}

impl Command {
    pub fn options(&self) -> &Options {
        match self {
            Command::Run(o)
            | Command::Sweep(o)
            | Command::Trace(o)
            | Command::Embed2d(o)
            | Command::Datagen(o) => o,
        }
    }
}

pub fn execute(command: &Command, config: &ExperimentConfig) -> Result<()> {
    let out = &config.out;
    match command {
        Command::Run(_) => {
            let report = runner::run(config)?;
            for row in report.accuracy_rows() {
                match row.accuracy {
                    Some(a) => println!("{:<5} {:.4}", row.algorithm, a),
                    None => println!("{:<5} (no target labels)", row.algorithm),
                }
            }
            runner::write_run(&report, out)
        }
        Command::Sweep(_) => {
            let report = runner::sweep(config)?;
            runner::write_sweep(&report, out)
        }
        Command::Trace(_) => {
            let report = runner::run(config)?;
            runner::write_trace(&report, out)
        }
        Command::Embed2d(_) => {
            let (rows, report) = runner::embed2d(config)?;
            runner::write_embedding(&rows, &report, out)
        }
        Command::Datagen(_) => {
            let (s, t) = runner::datagen(config)?;
            println!("{}\n{}", s.display(), t.display());
            Ok(())
        }
    }
}

fn write_error_record(dir: &Path, err: &HarnessError) {
    if std::fs::create_dir_all(dir).is_ok() {
        let _ = write_json(&dir.join(runner::ERROR_FILE), &err.record());
    }
}

/// Runs the CLI and returns the process exit code. Failures also leave an
/// `error.json` record in the output directory.
pub fn main_with(cli: Cli) -> i32 {
    let options = cli.command.options();
    let overrides = options.overrides();
    let mut out = options
        .out
        .as_deref()
        .map_or_else(|| PathBuf::from("out"), PathBuf::from);
    let result = ExperimentConfig::load(options.config.as_deref(), &overrides).and_then(|config| {
        out = config.out.clone();
        execute(&cli.command, &config)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            write_error_record(&out, &e);
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
