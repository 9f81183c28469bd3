//! Argument and config-file parsing, command dispatch and report emission
//! for the `modlie` binary.

mod random;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use modlie::ffield::FieldParams;
use modlie::grading::GradingCase;
use modlie::liealg::Family;
use modlie::scenario::{Checks, Scenario, ScenarioSpec};
use modlie::thinlie::{CheckResult, ReportParams};

pub use random::random_identity_checks;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// `--help` or `--version`; not an error, but it ends the run early.
    #[error("{0}")]
    Help(String),
    #[error(transparent)]
    Run(#[from] modlie::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Help(_) => EXIT_PASS,
            CliError::Run(_) => EXIT_FAIL,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseArg {
    Preswitch,
    BigField,
    PrimeField,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Verify,
    Switch,
    Analyze,
    Oracle,
}

#[derive(Debug, Parser)]
#[command(
    name = "modlie",
    version,
    about = "Exact checks on graded Hamiltonian and Albert-Zassenhaus algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Algebra axioms, derivation laws and gradedness.
    Verify(RunArgs),
    /// Switched basis and product tables.
    Switch(RunArgs),
    /// Loop expansion and diamond report.
    Analyze(RunArgs),
    /// Brute-force cross-checks.
    Oracle(RunArgs),
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct RunArgs {
    /// TOML file with any of these options; flags take precedence.
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    case: Option<CaseArg>,
    /// graded-hamiltonian (gh) or albert-zassenhaus (az).
    #[arg(long)]
    family: Option<String>,
    #[arg(long = "p")]
    p: Option<u32>,
    /// Height n2 of y.
    #[arg(long = "n")]
    n: Option<u32>,
    #[arg(long = "s")]
    s: Option<u32>,
    /// Height n1 of x; defaults to s + 1.
    #[arg(long)]
    n1: Option<u32>,
    /// `p^m:c0,...,cm`, or `auto`.
    #[arg(long)]
    field: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<String>,
    #[arg(long)]
    max_degree: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Accept pi = 0 in the prime-field case.
    #[arg(long)]
    #[serde(default)]
    allow_negative_control: bool,
    /// Seed of the randomized identity checks.
    #[arg(long)]
    seed: Option<u64>,
}

impl RunArgs {
    /// Fills options missing here from `file`.
    fn merge(self, file: RunArgs) -> RunArgs {
        RunArgs {
            config: self.config,
            case: self.case.or(file.case),
            family: self.family.or(file.family),
            p: self.p.or(file.p),
            n: self.n.or(file.n),
            s: self.s.or(file.s),
            n1: self.n1.or(file.n1),
            field: self.field.or(file.field),
            pi: self.pi.or(file.pi),
            sigma: self.sigma.or(file.sigma),
            max_degree: self.max_degree.or(file.max_degree),
            format: self.format.or(file.format),
            allow_negative_control: self.allow_negative_control || file.allow_negative_control,
            seed: self.seed.or(file.seed),
        }
    }
}

/// Validated configuration of one run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub scenario: ScenarioSpec,
    pub max_degree: Option<u64>,
    pub format: Format,
    pub seed: u64,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses the argument vector (program name first) and the config file it
/// names, if any.
pub fn parse_config<I, T>(args: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CliError::Help(e.to_string()),
        _ => usage(e.to_string()),
    })?;
    let (command, args) = match cli.command {
        Command::Verify(a) => (CommandKind::Verify, a),
        Command::Switch(a) => (CommandKind::Switch, a),
        Command::Analyze(a) => (CommandKind::Analyze, a),
        Command::Oracle(a) => (CommandKind::Oracle, a),
    };
    let args = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            args.merge(parse_config_file(&text)?)
        }
        None => args,
    };
    build_config(command, args)
}

fn parse_config_file(text: &str) -> Result<RunArgs, CliError> {
    toml::from_str(text).map_err(|e| usage(format!("config file: {e}")))
}

/// Validates a TOML config file on its own.
pub fn check_config_file(text: &str) -> Result<(), CliError> {
    parse_config_file(text).map(|_| ())
}

fn build_config(command: CommandKind, args: RunArgs) -> Result<RunConfig, CliError> {
    let p = args.p.ok_or_else(|| usage("missing --p"))?;
    let n = args.n.ok_or_else(|| usage("missing --n"))?;
    let family = args
        .family
        .as_deref()
        .map(str::parse::<Family>)
        .transpose()
        .map_err(|e| usage(e.to_string()))?;
    let case = match args.case {
        None | Some(CaseArg::Preswitch) => match family {
            Some(Family::GradedHamiltonian) => Some(GradingCase::PreSwitchGH),
            _ if args.case.is_some() => Some(GradingCase::PreSwitchAZ),
            _ => None,
        },
        Some(CaseArg::BigField) => Some(GradingCase::BigField),
        Some(CaseArg::PrimeField) => Some(GradingCase::PrimeField),
    };
    let field = match args.field.as_deref() {
        None | Some("auto") => None,
        Some(text) => Some(text.parse::<FieldParams>().map_err(|e| usage(e.to_string()))?),
    };
    if args.max_degree == Some(0) {
        return Err(usage("--max-degree must be positive"));
    }
    let scenario = ScenarioSpec {
        case,
        family,
        p,
        n,
        s: args.s,
        n1: args.n1,
        field,
        pi: args.pi,
        sigma: args.sigma,
        allow_negative_control: args.allow_negative_control,
    };
    // surface inconsistent requests as usage errors before any work
    scenario.build().map_err(|e| usage(e.to_string()))?;
    Ok(RunConfig {
        command,
        scenario,
        max_degree: args.max_degree,
        format: args.format.unwrap_or(Format::Text),
        seed: args.seed.unwrap_or(DEFAULT_SEED),
    })
}

/// Exit status and rendered output of a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct SuiteReport<'a> {
    command: CommandKind,
    params: &'a ReportParams,
    algebra: String,
    dim: usize,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<String>>,
    checks: &'a Checks,
}

fn passed(checks: &Checks) -> bool {
    checks.values().all(|c| c.pass || c.informational)
}

fn render_checks(checks: &BTreeMap<String, CheckResult>) -> String {
    let mut out = String::new();
    for (name, c) in checks {
        let status = match (c.pass, c.informational) {
            (true, _) => "pass",
            (false, true) => "info",
            (false, false) => "FAIL",
        };
        out.push_str(&format!("{name}: {status}"));
        if let Some(ce) = &c.counterexample {
            out.push_str(&format!(" ({ce})"));
        }
        out.push('\n');
    }
    out
}

fn suite_outcome(cfg: &RunConfig, sc: &Scenario, checks: &Checks, basis: Option<String>) -> Outcome {
    let params = sc.report_params(cfg.max_degree.unwrap_or(3 * sc.spec.modulus()));
    let exit = if passed(checks) { EXIT_PASS } else { EXIT_FAIL };
    let stdout = match cfg.format {
        Format::Json => {
            let report = SuiteReport {
                command: cfg.command,
                params: &params,
                algebra: sc.alg.name(),
                dim: sc.alg.dim(),
                seed: cfg.seed,
                basis: basis.map(|b| b.lines().map(str::to_string).collect()),
                checks,
            };
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
        Format::Text => {
            let mut out = format!("{} dim {}\n", sc.alg.name(), sc.alg.dim());
            if let Some(b) = basis {
                out.push_str(&b);
            }
            out + &render_checks(checks)
        }
    };
    Outcome {
        exit,
        stdout,
        stderr: String::new(),
    }
}

/// Runs the configured command.
pub fn run_command(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let sc = cfg.scenario.build().map_err(|e| usage(e.to_string()))?;
    match cfg.command {
        CommandKind::Verify => Ok(suite_outcome(cfg, &sc, &sc.verify()?, None)),
        CommandKind::Switch => {
            let (basis, checks) = sc.switch()?;
            Ok(suite_outcome(cfg, &sc, &checks, Some(basis.to_text())))
        }
        CommandKind::Oracle => {
            let mut checks = sc.oracle()?;
            checks.extend(random_identity_checks(&sc, cfg.seed, 64)?);
            Ok(suite_outcome(cfg, &sc, &checks, None))
        }
        CommandKind::Analyze => {
            let report = sc.analyze(cfg.max_degree)?;
            let exit = if report.passed() { EXIT_PASS } else { EXIT_FAIL };
            let stdout = match cfg.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.timeline(),
            };
            let stderr = report
                .failed_checks()
                .iter()
                .map(|name| {
                    let ce = report.checks[*name].counterexample.as_deref().unwrap_or("");
                    format!("check {name} failed: {ce}\n")
                })
                .collect();
            Ok(Outcome { exit, stdout, stderr })
        }
    }
}

/// Parses, runs and renders; never panics on bad input.
pub fn main_with_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_config(args).and_then(|cfg| run_command(&cfg));
    result.unwrap_or_else(|e| match e {
        CliError::Help(text) => Outcome {
            exit: EXIT_PASS,
            stdout: text,
            stderr: String::new(),
        },
        e => Outcome {
            exit: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &str) -> Result<RunConfig, CliError> {
        parse_config(std::iter::once("modlie").chain(args.split_whitespace()))
    }

    #[test]
    fn big_field_defaults() {
        let cfg = parse("analyze --case big-field --p 3 --n 2 --s 1").unwrap();
        let sc = cfg.scenario.build().unwrap();
        let params = sc.report_params(3 * sc.spec.modulus());
        assert_eq!(params.field, "3^3:2,2,0,1");
        assert_eq!(params.pi, "t");
        assert_eq!(params.sigma, "1");
        assert_eq!(params.modulus, 72);
        assert_eq!(cfg.seed, DEFAULT_SEED);
        assert_eq!(cfg.format, Format::Text);
    }

    #[test]
    fn prime_field_nu_echo() {
        let cfg = parse("analyze --case prime-field --p 5 --n 1 --s 1 --pi 2").unwrap();
        let sc = cfg.scenario.build().unwrap();
        assert_eq!(sc.report_params(300).nu.as_deref(), Some("2"));
    }

    #[test]
    fn usage_errors() {
        for bad in [
            "analyze --n 2",
            "analyze --p 4 --n 1",
            "analyze --case big-field --family gh --p 3 --n 2",
            "analyze --case prime-field --p 5 --n 1 --pi 0",
            "analyze --case big-field --p 3 --n 2 --pi 1",
            "analyze --p 3 --n 1 --field 3^2:1,0",
            "frobnicate --p 3 --n 1",
        ] {
            let err = parse(bad).unwrap_err();
            assert_eq!(err.exit_code(), EXIT_USAGE, "{bad}");
        }
    }

    #[test]
    fn config_file_fills_missing_flags() {
        let file = parse_config_file("p = 5\nn = 1\ncase = \"prime-field\"\npi = \"3\"\nformat = \"json\"\n").unwrap();
        let args = RunArgs {
            pi: Some("2".into()),
            ..Default::default()
        }
        .merge(file);
        let cfg = build_config(CommandKind::Analyze, args).unwrap();
        assert_eq!(cfg.scenario.pi.as_deref(), Some("2"));
        assert_eq!(cfg.scenario.p, 5);
        assert_eq!(cfg.format, Format::Json);
        assert!(parse_config_file("p = 5\nbogus = 1\n").is_err());
    }

    #[test]
    fn verify_small_hamiltonian() {
        let out = main_with_args([
            "modlie", "verify", "--family", "gh", "--p", "3", "--n", "1", "--n1", "1",
        ]);
        assert_eq!(out.exit, EXIT_PASS, "{}{}", out.stdout, out.stderr);
        assert!(out.stdout.starts_with("H(2;(1,1))^(2) dim 7\n"));
    }

    #[test]
    fn help_is_not_a_usage_error() {
        let out = main_with_args(["modlie", "analyze", "--help"]);
        assert_eq!(out.exit, EXIT_PASS);
        assert!(out.stdout.contains("--max-degree"));
        assert_eq!(main_with_args(["modlie"]).exit, EXIT_USAGE);
    }
}
