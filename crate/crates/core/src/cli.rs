//! Command-line front end: `crb-sweep`, `check-symmetry`,
//! `optimal-threshold`, `eps-beta-sweep` and `simulate`.
//!
//! Exit codes: 0 success, 1 output could not be written, 2 parse or usage
//! error, 3 numerical failure, 4 saturation policy triggered.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error as ThisError;

use crate::bounds::{symmetry_condition, BoundCurve, ChannelModel, ExtValue};
use crate::config::{RunConfig, ValueSpec};
use crate::error::Error;
use crate::grid::Grid;
use crate::montecarlo::{run_experiment, SimReport};
use crate::noise::NoiseModel;
use crate::table::sig9;
use crate::threshold_search::{eps_beta_sweep, find_optimal_eps, sweep_to_csv, SearchSpec};

#[derive(Debug, Parser)]
#[command(
    name = "binquant",
    version,
    about = "Cramér–Rao bounds, optimal thresholds and Monte Carlo checks for one-bit location estimation"
)]
pub struct Cli {
    /// Upper limit on worker threads [count, ≥ 1]; results do not depend on it
    #[arg(long, global = true, value_name = "COUNT")]
    pub threads: Option<NonZeroUsize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate B(ε) and CRB = B(ε)/N over a grid of threshold offsets
    CrbSweep(CrbSweepArgs),
    /// Test whether ε = 0 is a local minimum of the bound
    CheckSymmetry(SymmetryArgs),
    /// Search the offset that minimizes the bound
    OptimalThreshold(OptimalArgs),
    /// Optimal offset over noise std (ε*/σ) for GGD noise across shape parameters
    EpsBetaSweep(BetaSweepArgs),
    /// Run a seeded Monte Carlo experiment described by a config file
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Args, Serialize)]
pub struct OutputArgs {
    /// Output format [default depends on the command]
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

fn parse_model(s: &str) -> Result<NoiseModel, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_channel(s: &str) -> Result<ChannelModel, String> {
    let q: f64 = s.parse().map_err(|_| format!("q: `{s}` is not a number"))?;
    ChannelModel::new(q).map_err(|e| e.to_string())
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_values(s: &str) -> Result<ValueSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_bracket(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("bracket: expected lo:hi, got `{s}`"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("bracket: `{t}` is not a number"))
    };
    let (lo, hi) = (num(lo)?, num(hi)?);
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err("bracket: requires finite lo < hi".into());
    }
    Ok((lo, hi))
}

#[derive(Debug, Args, Serialize)]
pub struct CrbSweepArgs {
    /// Noise model, e.g. `hybrid:alpha=1,sigma=1` or `ggd:beta=4,delta=1`
    #[arg(long, value_parser = parse_model)]
    pub model: NoiseModel,
    /// BSC flip probability [probability in 0 ≤ q < 0.5]
    #[arg(long, value_parser = parse_channel, default_value = "0")]
    pub q: ChannelModel,
    /// Samples per block N [count, ≥ 1]
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    /// Threshold offsets ε = τ₀ − x as `lo:hi:points` [units of the noise variable]
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub eps: Grid,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct SymmetryArgs {
    /// Noise model, e.g. `gaussian:delta=1`
    #[arg(long, value_parser = parse_model)]
    pub model: NoiseModel,
    /// BSC flip probability [probability in 0 ≤ q < 0.5]
    #[arg(long, value_parser = parse_channel, default_value = "0")]
    pub q: ChannelModel,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct OptimalArgs {
    /// Noise model, e.g. `hybrid:alpha=1,sigma=1`
    #[arg(long, value_parser = parse_model)]
    pub model: NoiseModel,
    /// BSC flip probability [probability in 0 ≤ q < 0.5]
    #[arg(long, value_parser = parse_channel, default_value = "0")]
    pub q: ChannelModel,
    /// Search bracket for ε as `lo:hi` [units of the noise variable; default 0:6·scale]
    #[arg(long, value_parser = parse_bracket, value_name = "LO:HI", allow_hyphen_values = true)]
    pub bracket: Option<(f64, f64)>,
    /// Coarse scan points [count, ≥ 3]
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
    /// Golden-section refinement width [units of ε]
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct BetaSweepArgs {
    /// Shape parameters β as a list `2,3,4` or grid `lo:hi:points` [dimensionless, ≥ 2]
    #[arg(long, value_parser = parse_values)]
    pub beta: ValueSpec,
    /// GGD scale δ [units of the noise variable, > 0]
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    /// BSC flip probability [probability in 0 ≤ q < 0.5]
    #[arg(long, value_parser = parse_channel, default_value = "0")]
    pub q: ChannelModel,
    /// Coarse scan points per β [count, ≥ 3]
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
    /// Golden-section refinement width [units of ε]
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    /// Experiment file of `key=value` lines (model, q, true_x, eps, n, runs, seed, stream, saturation)
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Override the master seed from the config [integer]
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(Error::Parse { .. }) | CliError::Read { .. } => 2,
            CliError::Lib(Error::SaturationExceeded { .. }) => 4,
            CliError::Lib(_) => 3,
            CliError::Write(_) => 1,
        }
    }
}

fn ext(v: ExtValue) -> String {
    match v {
        ExtValue::Finite(x) => sig9(x),
        ExtValue::PositiveInfinity => "+inf".into(),
        ExtValue::Undefined => "undefined".into(),
    }
}

fn columns(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut s = String::new();
    let line = |s: &mut String, cells: &[String]| {
        let cells: Vec<String> = cells.iter().map(|c| format!("{c:>16}")).collect();
        let _ = writeln!(s, "{}", cells.join(" ").trim_end());
    };
    line(&mut s, &header.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    for row in rows {
        line(&mut s, &row);
    }
    s
}

fn to_json(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
    s.push('\n');
    s
}

fn crb_sweep(a: &CrbSweepArgs) -> Result<String, CliError> {
    let curve = BoundCurve::compute(&a.model, &a.q, a.n, &a.eps)?;
    Ok(match a.out.format.unwrap_or(Format::Csv) {
        Format::Csv => curve.to_csv(),
        Format::Json => to_json(json!({ "config": a, "curve": curve })),
        Format::Text => columns(
            &["epsilon", "b", "crb"],
            curve
                .rows
                .iter()
                .map(|r| vec![sig9(r.epsilon), sig9(r.b_value), sig9(r.crb)]),
        ),
    })
}

fn check_symmetry(a: &SymmetryArgs) -> Result<String, CliError> {
    let v = symmetry_condition(&a.model, &a.q);
    Ok(match a.out.format.unwrap_or(Format::Text) {
        Format::Json => to_json(json!({ "config": a, "verdict": v })),
        Format::Csv => crate::table::write_csv(
            &["model", "q", "lhs", "rhs", "condition_holds", "second_deriv_at_0", "classification"],
            std::iter::once(vec![
                a.model.to_string(),
                format!("{:?}", a.q.q()),
                ext(v.lhs),
                sig9(v.rhs),
                v.condition_holds.map(|b| b.to_string()).unwrap_or_else(|| "undefined".into()),
                ext(v.second_deriv_at_0),
                serde_json::to_value(v.classification)
                    .ok()
                    .and_then(|j| j.as_str().map(str::to_owned))
                    .unwrap_or_default(),
            ]),
        ),
        Format::Text => {
            let holds = match v.condition_holds {
                Some(true) => "holds",
                Some(false) => "fails",
                None => "undefined (f not twice differentiable at 0)",
            };
            let class = serde_json::to_value(v.classification).expect("enum serializes");
            let mut s = String::new();
            let _ = writeln!(s, "model: {}", a.model);
            let _ = writeln!(s, "q: {:?}", a.q.q());
            let _ = writeln!(s, "-f''(0)/(1-2q)^2 = {}", ext(v.lhs));
            let _ = writeln!(s, "4 f(0)^3 = {}", sig9(v.rhs));
            let _ = writeln!(s, "condition: {holds}");
            let _ = writeln!(s, "d2B/deps2 at 0 = {}", ext(v.second_deriv_at_0));
            let _ = writeln!(s, "classification: {}", class.as_str().unwrap_or_default());
            s
        }
    })
}

fn optimal_threshold(a: &OptimalArgs) -> Result<String, CliError> {
    let base = SearchSpec::for_model(&a.model);
    let (lo, hi) = a.bracket.unwrap_or((base.eps_lo, base.eps_hi));
    let spec = SearchSpec::new(lo, hi, a.points, a.tol)?;
    let r = find_optimal_eps(&a.model, &a.q, &spec)?;
    Ok(match a.out.format.unwrap_or(Format::Json) {
        Format::Json => to_json(json!({ "config": a, "search": spec, "optimum": r })),
        Format::Csv => crate::table::write_csv(
            &["eps_star", "b_at_star", "is_symmetric", "bracket_warning"],
            std::iter::once(vec![
                sig9(r.eps_star),
                sig9(r.b_at_star),
                r.is_symmetric.to_string(),
                r.bracket_warning.to_string(),
            ]),
        ),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "model: {}", a.model);
            let _ = writeln!(s, "q: {:?}", a.q.q());
            let _ = writeln!(s, "bracket: [{lo:?}, {hi:?}]");
            let _ = writeln!(s, "eps_star = {}", sig9(r.eps_star));
            let _ = writeln!(s, "b_at_star = {}", sig9(r.b_at_star));
            let minima: Vec<String> = r.all_minima.iter().map(|&m| sig9(m)).collect();
            let _ = writeln!(s, "minima: {}", minima.join(", "));
            let _ = writeln!(s, "symmetric: {}", r.is_symmetric);
            if r.bracket_warning {
                let _ = writeln!(s, "warning: minimum on the bracket edge, widen --bracket");
            }
            s
        }
    })
}

fn beta_sweep(a: &BetaSweepArgs) -> Result<String, CliError> {
    let betas = a.beta.values();
    let base = SearchSpec::for_model(&NoiseModel::ggd(2.0, a.delta)?);
    let spec = SearchSpec::new(base.eps_lo, base.eps_hi, a.points, a.tol)?;
    let points = eps_beta_sweep(&betas, a.delta, &a.q, &spec)?;
    Ok(match a.out.format.unwrap_or(Format::Csv) {
        Format::Csv => sweep_to_csv(&points),
        Format::Json => to_json(json!({ "config": a, "points": points })),
        Format::Text => columns(
            &["beta", "eps_star_over_sigma"],
            points
                .iter()
                .map(|p| vec![format!("{:.6}", p.beta), format!("{:.6}", p.eps_star_over_sigma)]),
        ),
    })
}

fn simulate(a: &SimulateArgs) -> Result<String, CliError> {
    let text = std::fs::read_to_string(&a.config).map_err(|source| CliError::Read {
        path: a.config.clone(),
        source,
    })?;
    let mut config: RunConfig = text.parse()?;
    if let Some(seed) = a.seed {
        config.seed = seed;
    }
    let report: SimReport = run_experiment(&config.to_spec()?)?;
    Ok(match a.out.format.unwrap_or(Format::Csv) {
        Format::Csv => report.to_csv(),
        Format::Json => to_json(json!({ "config": config, "report": report })),
        Format::Text => columns(
            &["epsilon", "mse", "runs_used", "saturated_runs", "crb"],
            report.rows.iter().map(|r| {
                vec![
                    sig9(r.epsilon),
                    r.mse.map(sig9).unwrap_or_else(|| "-".into()),
                    r.runs_used.to_string(),
                    r.saturated_runs.to_string(),
                    sig9(r.crb),
                ]
            }),
        ),
    })
}

impl Command {
    fn output(&self) -> &OutputArgs {
        match self {
            Command::CrbSweep(a) => &a.out,
            Command::CheckSymmetry(a) => &a.out,
            Command::OptimalThreshold(a) => &a.out,
            Command::EpsBetaSweep(a) => &a.out,
            Command::Simulate(a) => &a.out,
        }
    }

    fn execute(&self) -> Result<String, CliError> {
        match self {
            Command::CrbSweep(a) => crb_sweep(a),
            Command::CheckSymmetry(a) => check_symmetry(a),
            Command::OptimalThreshold(a) => optimal_threshold(a),
            Command::EpsBetaSweep(a) => beta_sweep(a),
            Command::Simulate(a) => simulate(a),
        }
    }
}

/// Runs a parsed command and returns the rendered output.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match cli.threads {
        None => cli.command.execute(),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.get())
            .build()
            .map_err(|e| CliError::Write(std::io::Error::other(e)))?
            .install(|| cli.command.execute()),
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return 2;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    let result = execute(&cli).and_then(|text| match &cli.command.output().output {
        Some(path) => std::fs::write(path, text).map_err(CliError::Write),
        None => stdout.write_all(text.as_bytes()).map_err(CliError::Write),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("binquant").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn crb_sweep_rows() {
        let (code, out, _) = call(&["crb-sweep", "--model", "hybrid:alpha=1,sigma=1", "--n", "500", "--eps", "-2:2:81"]);
        assert_eq!(code, 0);
        let rows = BoundCurve::rows_from_csv(&out).unwrap();
        assert_eq!(rows.len(), 81);
        assert_eq!(rows[40].epsilon, 0.0);
        assert!((rows[40].crb - 0.006_148_22).abs() < 5e-9);

        let (_, out, _) = call(&["crb-sweep", "--model", "laplacian:delta=1", "--eps", "0:0:1"]);
        assert_eq!(out, "epsilon,b,crb\n0,1.00000000,1.00000000\n");

        let (_, out, _) = call(&["crb-sweep", "--model", "gaussian:delta=1", "--q", "0.1", "--eps", "0:0:1"]);
        let rows = BoundCurve::rows_from_csv(&out).unwrap();
        assert!((rows[0].b_value - 1.227_184_6).abs() < 1e-7);
    }

    #[test]
    fn exit_codes() {
        let (code, _, err) = call(&["crb-sweep", "--model", "hybrid:alpha=1,sgma=1", "--eps", "0:1:3"]);
        assert_eq!(code, 2);
        assert!(err.contains("sgma"), "{err}");
        assert_eq!(call(&["crb-sweep", "--model", "gaussian:delta=1", "--eps", "0:1:3", "--bogus"]).0, 2);
        assert_eq!(call(&["crb-sweep", "--model", "gaussian:delta=1", "--q", "0.5", "--eps", "0:1:3"]).0, 2);
        assert_eq!(call(&["crb-sweep", "--model", "gaussian:delta=1", "--eps", "0:60:3"]).0, 3);
        assert_eq!(call(&["crb-sweep", "--help"]).0, 0);
    }

    #[test]
    fn symmetry_text_shows_both_sides() {
        let (code, out, _) = call(&["check-symmetry", "--model", "gaussian:delta=1"]);
        assert_eq!(code, 0);
        assert!(out.contains("-f''(0)/(1-2q)^2 = 1.12837917"), "{out}");
        assert!(out.contains("4 f(0)^3 = 0.718348489"), "{out}");
        assert!(out.contains("classification: local_min"));

        let (_, out, _) = call(&["check-symmetry", "--model", "hybrid:alpha=1,sigma=1", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"]["classification"], "local_max");
        assert_eq!(v["config"]["model"], "hybrid:alpha=1.0,sigma=1.0");
    }

    #[test]
    fn optimal_threshold_json() {
        let (code, out, _) = call(&["optimal-threshold", "--model", "ggd:beta=4,delta=1"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let eps = v["optimum"]["eps_star"].as_f64().unwrap();
        assert!((eps - 0.713_790).abs() < 1e-5, "{eps}");
    }
}
