mod commands;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use commands::{apply_overrides, parse_assignment, parse_grid, parse_schedule, parse_sectors, Job};
use cyon_core::{Config, Error, ErrorClass};

const MAX_SWEEP_POINTS: usize = 10_000;

#[derive(Parser, Debug)]
#[command(name = "cyon", version, about = "Flux-line dipole spectra, reductions and brackets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// JSON config file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (created if missing).
    #[arg(long)]
    out: PathBuf,
    /// Config override, `key=value`. Repeatable.
    #[arg(long = "set", value_parser = parse_assignment)]
    set: Vec<(String, String)>,
}

#[derive(Args, Debug, Clone)]
struct SpectrumArgs {
    #[arg(long, default_value = "-5..5", value_parser = parse_sectors, allow_hyphen_values = true)]
    sectors: std::ops::RangeInclusive<i64>,
    #[arg(long, default_value_t = 8)]
    levels: usize,
}

#[derive(Debug, Clone)]
struct Schedule(Vec<f64>);

#[derive(Args, Debug, Clone)]
struct ReduceArgs {
    /// Comma-separated trap ratios mu.
    #[arg(long, default_value = "0.1,0.01,0.001", value_parser = |t: &str| parse_schedule(t).map(Schedule))]
    schedule: Schedule,
    #[arg(long, default_value_t = 12)]
    band_size: usize,
}

#[derive(Args, Debug, Clone)]
struct CyonArgs {
    /// Rate of change of the line source, for the spin-rate observable.
    #[arg(long, allow_hyphen_values = true)]
    lambda_dot: Option<f64>,
}

#[derive(Subcommand, Debug, Clone)]
enum Inner {
    Spectrum(SpectrumArgs),
    Reduce(ReduceArgs),
    Dirac,
    Cyon(CyonArgs),
    Duality,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sector spectrum table.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        args: SpectrumArgs,
    },
    /// Lowest-band projection over a schedule of trap ratios.
    Reduce {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        args: ReduceArgs,
    },
    /// Constraints and Dirac brackets.
    Dirac {
        #[command(flatten)]
        common: Common,
    },
    /// Cyon spin and boundary-term split.
    Cyon {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        args: CyonArgs,
    },
    /// Dual config under the field duality.
    Duality {
        #[command(flatten)]
        common: Common,
    },
    /// Cartesian sweep of config overrides around another subcommand.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// `key=start:stop:count`. Repeatable.
        #[arg(long = "grid", value_parser = parse_grid, allow_hyphen_values = true)]
        grid: Vec<(String, Vec<f64>)>,
        #[command(subcommand)]
        inner: Inner,
    },
}

impl From<Inner> for Job {
    fn from(inner: Inner) -> Job {
        match inner {
            Inner::Spectrum(a) => Job::Spectrum {
                sectors: a.sectors,
                levels: a.levels,
            },
            Inner::Reduce(a) => Job::Reduce {
                schedule: a.schedule.0,
                band_size: a.band_size,
            },
            Inner::Dirac => Job::Dirac,
            Inner::Cyon(a) => Job::Cyon {
                lambda_dot: a.lambda_dot,
            },
            Inner::Duality => Job::Duality,
        }
    }
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    module: &'a str,
    config_path: String,
    overrides: &'a BTreeMap<String, String>,
    arguments: String,
    artifacts: Vec<String>,
    version: &'static str,
    created_unix_s: u64,
}

struct Failure {
    module: &'static str,
    error: Error,
}

fn exit_code(class: ErrorClass) -> u8 {
    match class {
        ErrorClass::Config => 2,
        ErrorClass::Numerical => 3,
        ErrorClass::ConstraintDegeneracy => 4,
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::config("--out", format!("{}: {e}", path.display()))
}

fn write_file(dir: &Path, name: &str, body: &str) -> Result<(), Error> {
    let path = dir.join(name);
    fs::write(&path, body).map_err(|e| io_error(&path, e))
}

fn load(common: &Common) -> Result<(Config, BTreeMap<String, String>), Failure> {
    let fail = |error| Failure {
        module: "params_fields",
        error,
    };
    let text = fs::read_to_string(&common.config)
        .map_err(|e| fail(Error::config("--config", format!("{}: {e}", common.config.display()))))?;
    let mut cfg = Config::from_json_str(&text).map_err(fail)?;
    let overrides: BTreeMap<String, String> = common.set.iter().cloned().collect();
    apply_overrides(&mut cfg, &overrides).map_err(fail)?;
    fs::create_dir_all(&common.out).map_err(|e| fail(io_error(&common.out, e)))?;
    Ok((cfg, overrides))
}

fn write_manifest(
    common: &Common,
    command: &str,
    module: &str,
    overrides: &BTreeMap<String, String>,
    arguments: String,
    artifacts: Vec<String>,
) -> Result<(), Error> {
    let created_unix_s = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let m = Manifest {
        command,
        module,
        config_path: common.config.display().to_string(),
        overrides,
        arguments,
        artifacts,
        version: env!("CARGO_PKG_VERSION"),
        created_unix_s,
    };
    let mut body = serde_json::to_string_pretty(&m).expect("manifest serializes");
    body.push('\n');
    write_file(&common.out, "manifest.json", &body)
}

fn run_single(common: &Common, name: &str, job: Job) -> Result<(), Failure> {
    let (cfg, overrides) = load(common)?;
    let module = job.module();
    let fail = |error| Failure { module, error };
    let files = job.run(&cfg).map_err(fail)?;
    write_file(&common.out, "config_resolved.json", &cfg.to_json_string()).map_err(fail)?;
    let mut names = vec!["config_resolved.json".to_string()];
    for (file, body) in &files {
        write_file(&common.out, file, body).map_err(fail)?;
        names.push(file.clone());
    }
    write_manifest(common, name, module, &overrides, format!("{job:?}"), names).map_err(fail)
}

fn format_value(v: f64) -> String {
    format!("{v}")
}

fn run_sweep(common: &Common, grid: Vec<(String, Vec<f64>)>, job: Job) -> Result<(), Failure> {
    let (_, overrides) = load(common)?;
    let text = fs::read_to_string(&common.config).expect("read once already");
    let fail = |error| Failure {
        module: "cli_runner",
        error,
    };
    // Sorted keys make the output independent of the order of --grid flags.
    let mut axes: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for (k, v) in grid {
        if !Config::OVERRIDE_KEYS.contains(&k.as_str()) || k == "kind" || k == "natural_units" {
            return Err(fail(Error::config(k, "not a numeric config key")));
        }
        if axes.insert(k.clone(), v).is_some() {
            return Err(fail(Error::config(k, "grid key given twice")));
        }
    }
    let cardinality = if axes.is_empty() {
        0
    } else {
        axes.values()
            .try_fold(1usize, |acc, v| acc.checked_mul(v.len()))
            .unwrap_or(usize::MAX)
    };
    if cardinality > MAX_SWEEP_POINTS {
        return Err(fail(Error::config(
            "--grid",
            format!("sweep has {cardinality} points, above the limit of {MAX_SWEEP_POINTS}"),
        )));
    }
    let keys: Vec<&String> = axes.keys().collect();
    let points: Vec<Vec<f64>> = (0..cardinality)
        .map(|mut idx| {
            let mut p = vec![0.0; keys.len()];
            for (slot, k) in keys.iter().enumerate().rev() {
                let vals = &axes[*k];
                p[slot] = vals[idx % vals.len()];
                idx /= vals.len();
            }
            p
        })
        .collect();
    let width = cardinality.max(1).to_string().len().max(4);
    let rows: Vec<String> = points
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let dir_name = format!("point_{i:0width$}");
            let mut ov = overrides.clone();
            for (k, v) in keys.iter().zip(p) {
                ov.insert((*k).clone(), format_value(*v));
            }
            let outcome = Config::from_json_str(&text)
                .and_then(|mut cfg| apply_overrides(&mut cfg, &ov).map(|_| cfg))
                .and_then(|cfg| {
                    let files = job.run(&cfg)?;
                    let dir = common.out.join(&dir_name);
                    fs::create_dir_all(&dir).map_err(|e| io_error(&dir, e))?;
                    write_file(&dir, "config_resolved.json", &cfg.to_json_string())?;
                    for (f, body) in &files {
                        write_file(&dir, f, body)?;
                    }
                    Ok(())
                });
            let values: Vec<String> = p.iter().map(|v| format_value(*v)).collect();
            let (status, artifact, message) = match outcome {
                Ok(()) => ("ok", dir_name, String::new()),
                Err(e) => ("error", String::new(), csv_escape(&format!("{}: {e}", job.module()))),
            };
            format!("{i},{},{status},{artifact},{message}", values.join(","))
        })
        .collect();
    let mut header = vec!["index".to_string()];
    header.extend(keys.iter().map(|k| k.to_string()));
    header.extend(["status", "artifact_dir", "message"].map(String::from));
    let mut index = header.join(",");
    index.push('\n');
    for r in rows {
        index += &r;
        index.push('\n');
    }
    let args = format!("{job:?} grid={axes:?}");
    write_manifest(common, "sweep", job.module(), &overrides, args, vec!["index.csv".into()])
        .map_err(fail)?;
    // Written last: its presence marks a finished sweep.
    write_file(&common.out, "index.csv", &index).map_err(fail)
}

fn csv_escape(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum { common, args } => run_single(&common, "spectrum", Inner::Spectrum(args).into()),
        Command::Reduce { common, args } => run_single(&common, "reduce", Inner::Reduce(args).into()),
        Command::Dirac { common } => run_single(&common, "dirac", Job::Dirac),
        Command::Cyon { common, args } => run_single(&common, "cyon", Inner::Cyon(args).into()),
        Command::Duality { common } => run_single(&common, "duality", Job::Duality),
        Command::Sweep { common, grid, inner } => run_sweep(&common, grid, inner.into()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}: {}", f.module, f.error);
            ExitCode::from(exit_code(f.error.class()))
        }
    }
}
