//! Command-line front end: `simulate`, `compare`, `sweep`, `associate`.
//!
//! Each command writes `<command>.csv`, `<command>.json` and
//! `<command>.manifest.json` into `--out` and echoes the table in the
//! selected `--format` on stdout. Exit codes: 0 success, 2 config error,
//! 3 numeric/domain error, 4 I/O error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::association::associate;
use crate::config::parse_config;
use crate::error::{Error, Result};
use crate::output::{
    association_json, association_table, comparison_json, comparison_table, summary_json, summary_table, sweep_json,
    sweep_table, RunManifest,
};
use crate::scenario::{compare_scenarios_with, run_scenario_with, sweep_with, Mode, ScenarioConfig, SweepSpec, SWEEP_PARAMETERS};
use crate::units::parse_quantity;

#[derive(Debug, Parser)]
#[command(name = "irsim", version, about = "Conventional vs IRS-assisted micro-cell IoT link simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: RunFlags,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Run the configured scenario and summarize every metric.
    Simulate {
        /// Override the serving mode from the config.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Run conventional and IRS serving on the same geometry and seeds.
    Compare,
    /// Re-run the scenario for each value of one parameter.
    Sweep {
        /// Dotted parameter path, e.g. `irs.m` or `device.distance`.
        #[arg(long)]
        param: String,
        /// Comma-separated values; bare numbers are SI, units allowed.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<String>,
    },
    /// Association probability, its region average and the served-device count.
    Associate,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Simulate { .. } => "simulate",
            Command::Compare => "compare",
            Command::Sweep { .. } => "sweep",
            Command::Associate => "associate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Conventional,
    Irs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

#[derive(Debug, Clone, Args)]
pub struct RunFlags {
    /// Scenario file (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Replications (for `associate`: region samples).
    #[arg(long, global = true, default_value_t = 1000)]
    pub replications: usize,
    /// Output directory for artifacts.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Override the config's fading switch.
    #[arg(long, global = true, value_enum)]
    pub fading: Option<Toggle>,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

/// Rendered outputs of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifacts {
    pub command: &'static str,
    pub csv: String,
    pub json: String,
}

/// Applies flag overrides to `cfg`.
pub fn effective_config(command: &Command, cfg: &ScenarioConfig, flags: &RunFlags) -> Result<ScenarioConfig> {
    let mut cfg = match command {
        Command::Simulate { mode: Some(ModeArg::Conventional) } => cfg.with_mode(Mode::Conventional)?,
        Command::Simulate { mode: Some(ModeArg::Irs) } => cfg.with_mode(Mode::Irs)?,
        _ => cfg.clone(),
    };
    if let Some(f) = flags.fading {
        cfg.fading = f == Toggle::On;
    }
    Ok(cfg)
}

/// Runs `command` on `cfg` (after flag overrides) and renders its CSV and
/// JSON. Nothing is written to disk.
pub fn run_command(command: &Command, cfg: &ScenarioConfig, flags: &RunFlags) -> Result<Artifacts> {
    let cfg = effective_config(command, cfg, flags)?;
    let (table, json) = match command {
        Command::Simulate { .. } => {
            let s = run_scenario_with(&cfg, flags.replications, flags.seed, flags.workers)?;
            (summary_table(&s), summary_json(&s)?)
        }
        Command::Compare => {
            let r = compare_scenarios_with(&cfg, flags.replications, flags.seed, flags.workers)?;
            (comparison_table(&r), comparison_json(&r)?)
        }
        Command::Sweep { param, values } => {
            let dim = SWEEP_PARAMETERS
                .iter()
                .find(|(p, _)| p == param)
                .map(|(_, d)| *d)
                .ok_or_else(|| Error::UnknownParameter(param.clone()))?;
            let values = values
                .iter()
                .map(|v| parse_quantity(v, dim).map_err(|msg| Error::config("--values", msg)))
                .collect::<Result<Vec<f64>>>()?;
            let spec = SweepSpec { parameter: param.clone(), values, replications: flags.replications, seed: flags.seed };
            let t = sweep_with(&cfg, &spec, flags.workers)?;
            (sweep_table(&t), sweep_json(&t)?)
        }
        Command::Associate => {
            let mut results = vec![("conv", associate(&cfg.with_mode(Mode::Conventional)?, flags.replications, flags.seed)?)];
            if cfg.irs.is_some() {
                results.push(("irs", associate(&cfg.with_mode(Mode::Irs)?, flags.replications, flags.seed)?));
            }
            (association_table(&results), association_json(&results)?)
        }
    };
    let mut json = serde_json::to_string_pretty(&json).expect("JSON values serialize");
    json.push('\n');
    Ok(Artifacts { command: command.name(), csv: table.to_csv()?, json })
}

fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path.display(), e))
}

/// Writes the artifacts and manifest into `dir`, creating it if needed.
pub fn write_artifacts(dir: &Path, artifacts: &Artifacts, manifest: &RunManifest) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir.display(), e))?;
    write(&dir.join(format!("{}.csv", artifacts.command)), &artifacts.csv)?;
    write(&dir.join(format!("{}.json", artifacts.command)), &artifacts.json)?;
    let mut m = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    m.push('\n');
    write(&dir.join(format!("{}.manifest.json", artifacts.command)), &m)
}

fn execute(cli: &Cli, command_line: Vec<String>) -> Result<Artifacts> {
    let path = cli.flags.config.as_ref().ok_or_else(|| Error::config("--config", "a scenario file is required"))?;
    let cfg = parse_config(path)?;
    let artifacts = run_command(&cli.command, &cfg, &cli.flags)?;
    let manifest = RunManifest::new(
        cli.command.name(),
        command_line,
        Some(path.display().to_string()),
        &effective_config(&cli.command, &cfg, &cli.flags)?,
        cli.flags.seed,
        cli.flags.replications,
    );
    let out = cli.flags.out.clone().unwrap_or_else(|| PathBuf::from("."));
    write_artifacts(&out, &artifacts, &manifest)?;
    Ok(artifacts)
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let command_line = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, command_line) {
        Ok(a) => {
            print!("{}", if cli.flags.format == Format::Json { &a.json } else { &a.csv });
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
