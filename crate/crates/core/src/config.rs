//! Flat `key=value` experiment files for the `simulate` command.
//!
//! ```text
//! # GGD noise, reduced run count
//! model = ggd:beta=4,delta=1
//! n = 500
//! runs = 20000
//! eps = -1.5:1.5:31
//! seed = 7
//! ```
//!
//! Blank lines and `#` comments are ignored. Keys: `model`, `q`, `true_x`,
//! `eps` (grid `lo:hi:points` or a comma list), `n`, `runs`, `seed`,
//! `stream`, `saturation`. `model`, `eps`, `n` and `runs` are required.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bounds::ChannelModel;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::montecarlo::{ExperimentSpec, SaturationPolicy};
use crate::noise::{NoiseModel, Seed};

/// Values given either as a uniform grid or as an explicit list.
#[derive(Debug, Clone, PartialEq)]
pub enum ValueSpec {
    Grid(Grid),
    List(Vec<f64>),
}

impl ValueSpec {
    pub fn values(&self) -> Vec<f64> {
        match self {
            ValueSpec::Grid(g) => g.values(),
            ValueSpec::List(v) => v.clone(),
        }
    }
}

impl fmt::Display for ValueSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueSpec::Grid(g) => write!(f, "{g}"),
            ValueSpec::List(v) => {
                let parts: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

impl FromStr for ValueSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains(':') {
            return s.parse().map(ValueSpec::Grid);
        }
        let values = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                match t.parse::<f64>() {
                    Ok(v) if v.is_finite() => Ok(v),
                    _ => Err(Error::parse("list", format!("`{t}` is not a finite number"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ValueSpec::List(values))
    }
}

impl Serialize for ValueSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parsed contents of a `simulate` config file.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub model: NoiseModel,
    pub q: f64,
    pub true_x: f64,
    pub eps: ValueSpec,
    pub n: usize,
    pub runs: usize,
    pub seed: u64,
    pub stream: u64,
    pub saturation: SaturationPolicy,
}

const KEYS: [&str; 9] = ["model", "q", "true_x", "eps", "n", "runs", "seed", "stream", "saturation"];

fn number<T: FromStr>(key: &str, raw: &str) -> Result<T> {
    raw.parse()
        .map_err(|_| Error::parse(key, format!("`{raw}` is not a valid value")))
}

impl RunConfig {
    /// Canonical text: every key once, fixed order, defaults written out.
    pub fn to_text(&self) -> String {
        format!(
            "model={}\nq={:?}\ntrue_x={:?}\neps={}\nn={}\nruns={}\nseed={}\nstream={}\nsaturation={}\n",
            self.model, self.q, self.true_x, self.eps, self.n, self.runs, self.seed, self.stream, self.saturation
        )
    }

    pub fn to_spec(&self) -> Result<ExperimentSpec> {
        let spec = ExperimentSpec {
            model: self.model,
            channel: ChannelModel::new(self.q)?,
            true_x: self.true_x,
            eps_grid: self.eps.values(),
            n_samples: self.n,
            n_runs: self.runs,
            seed: Seed::new(self.seed, self.stream),
            saturation_policy: self.saturation,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl FromStr for RunConfig {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut raw: [Option<String>; 9] = Default::default();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(line, "expected key=value"))?;
            let key = key.trim();
            let slot = KEYS
                .iter()
                .position(|k| *k == key)
                .ok_or_else(|| Error::parse(key, "unknown key"))?;
            if raw[slot].is_some() {
                return Err(Error::parse(key, "given more than once"));
            }
            raw[slot] = Some(value.trim().to_string());
        }
        let get = |i: usize| raw[i].as_deref();
        let required = |i: usize| get(i).ok_or_else(|| Error::parse(KEYS[i], "missing required key"));

        let q: f64 = get(1).map(|v| number("q", v)).transpose()?.unwrap_or(0.0);
        if ChannelModel::new(q).is_err() {
            return Err(Error::parse("q", "flip probability must lie in [0, 0.5)"));
        }
        let true_x: f64 = get(2).map(|v| number("true_x", v)).transpose()?.unwrap_or(0.0);
        if !true_x.is_finite() {
            return Err(Error::parse("true_x", "must be finite"));
        }
        let eps: ValueSpec = required(3)?.parse().map_err(|e| match e {
            Error::Parse { msg, .. } => Error::parse("eps", msg),
            other => other,
        })?;
        let n: usize = number("n", required(4)?)?;
        let runs: usize = number("runs", required(5)?)?;
        if n == 0 {
            return Err(Error::parse("n", "must be at least 1"));
        }
        if runs == 0 {
            return Err(Error::parse("runs", "must be at least 1"));
        }
        Ok(RunConfig {
            model: required(0)?.parse()?,
            q,
            true_x,
            eps,
            n,
            runs,
            seed: get(6).map(|v| number("seed", v)).transpose()?.unwrap_or(0),
            stream: get(7).map(|v| number("stream", v)).transpose()?.unwrap_or(0),
            saturation: get(8).map(str::parse).transpose()?.unwrap_or_default(),
        })
    }
}
