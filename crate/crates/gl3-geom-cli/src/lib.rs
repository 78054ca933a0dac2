//! Command-line front end of `gl3-geom`: argument parsing, configuration
//! files, deterministic JSON reports and the acceptance suite.
//!
//! [`run`] is the whole program as a function from arguments to exit code,
//! stdout and stderr, so that it can be tested without spawning processes.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod suite;

use std::ffi::OsString;
use std::fs;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use crate::cli::{Cli, Command, OrbitAction, RootdataAction, SuiteArgs, VerifyAction, WeightAction};
use crate::commands::Body;
use crate::config::{Config, Source};
use crate::error::{CliError, CliResult, EXIT_PARSE, EXIT_VERIFICATION};
use crate::report::{computed, Report};

/// Everything a run produces.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    /// Process exit code: 0, 1 (domain), 2 (parse) or 3 (verification).
    pub exit_code: i32,
    /// JSON report, newline-terminated.
    pub stdout: String,
    /// Diagnostics and wall time.
    pub stderr: String,
}

/// Loads the configuration: defaults, then the `--config` file, then flags.
pub fn load_config(cli: &Cli) -> CliResult<Config> {
    let mut config = Config::default();
    if let Some(path) = &cli.config {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
        config.apply_file(&text)?;
    }
    if let Some(seed) = cli.seed {
        config.set("seed", &seed.to_string(), Source::Flag)?;
    }
    config.validate()?;
    Ok(config)
}

fn suite(args: &SuiteArgs, config: &Config) -> CliResult<Body> {
    let mut config = config.clone();
    if let Some(t) = args.tol {
        config.set("tol", &t.to_string(), Source::Flag)?;
        config.validate()?;
    }
    let only = match &args.only {
        Some(text) => suite::parse_only(text).map_err(CliError::Parse)?,
        None => Vec::new(),
    };
    let mut log = Vec::new();
    let run = suite::run_suite(&config, &only, &mut |line| log.push(line.to_string()));
    let mut provenance = std::collections::BTreeMap::new();
    for key in config::KEYS {
        provenance.insert(key.to_string(), config.provenance(key));
    }
    provenance.insert("criteria".into(), computed("per-criterion methods and tolerances listed in each entry", config.precision));
    Ok(Body {
        inputs: json!({ "config": report::to_value(&config), "only": only }),
        outputs: run.to_json_value(&config),
        provenance,
        verified: run.all_passed(),
        log,
    })
}

fn dispatch(cli: &Cli, config: &Config) -> CliResult<Body> {
    match &cli.command {
        Command::Rootdata { action: RootdataAction::Dump } => commands::rootdata_dump(),
        Command::Verify { action: VerifyAction::Lemmas { which, samples } } => {
            commands::verify_identities(*which, *samples, config.seed)
        }
        Command::Weight { action: WeightAction::Hull { t, h, method } } => commands::weight_hull(t, h, *method),
        Command::Weight { action: WeightAction::Cm0 { n } } => commands::weight_cm0(n),
        Command::Orbit { action: OrbitAction::Classify { matrix, file } } => {
            commands::orbit_classify(matrix.as_deref(), file.as_deref())
        }
        Command::Woi(args) => commands::woi(args, config),
        Command::Zeta(args) => commands::zeta(args, config),
        Command::Coeff(args) => commands::coeff(args, config),
        Command::Locint(args) => commands::locint(args),
        Command::Suite(args) => suite(args, config),
    }
}

fn error_json(e: &CliError) -> serde_json::Value {
    match e {
        CliError::Domain(gl3_geom::Error::ToleranceNotMet { estimate, error, requested }) => json!({
            "kind": "ToleranceNotMet",
            "message": e.to_string(),
            "estimate": estimate,
            "error_estimate": error,
            "requested": requested,
        }),
        CliError::Domain(_) => json!({ "kind": "domain", "message": e.to_string() }),
        CliError::Parse(_) => json!({ "kind": "parse", "message": e.to_string() }),
        CliError::Io { .. } => json!({ "kind": "io", "message": e.to_string() }),
    }
}

/// Runs the program on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    RunOutput { exit_code: 0, stdout: text, stderr: String::new() }
                }
                _ => RunOutput { exit_code: EXIT_PARSE, stdout: String::new(), stderr: text },
            };
        }
    };
    let mut report = Report::new(echo);
    let start = Instant::now();
    let outcome = load_config(&cli).and_then(|config| dispatch(&cli, &config));
    let secs = start.elapsed().as_secs_f64();
    let mut stderr = String::new();
    let exit_code = match outcome {
        Ok(body) => {
            for line in &body.log {
                stderr.push_str(line);
                stderr.push('\n');
            }
            report.inputs = body.inputs;
            report.outputs = body.outputs;
            report.provenance = body.provenance;
            if body.verified {
                0
            } else {
                stderr.push_str("verification failed\n");
                EXIT_VERIFICATION
            }
        }
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            report.outputs = json!({ "error": error_json(&e) });
            e.exit_code()
        }
    };
    stderr.push_str(&format!("wall time: {secs:.3} s\n"));
    if cli.timing {
        report.wall_time_seconds = Some(secs);
    }
    let mut stdout = report.to_json(cli.json_indent);
    stdout.push('\n');
    RunOutput { exit_code, stdout, stderr }
}
