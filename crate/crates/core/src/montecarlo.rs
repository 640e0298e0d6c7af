//! Seeded end-to-end simulation of the quantize → (BSC) → estimate chain.
//!
//! Run `r` at every grid offset draws from stream `seed.stream_id + r`, so
//! all offsets share the same noise realizations and the schedule of the
//! worker threads never changes a result. Per-run estimates are stored in
//! run order and folded sequentially.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{b_bsc, ChannelModel};
use crate::error::{Error, Result};
use crate::estimation::{estimate_x_from_counts, BitCounts, EstimateResult};
use crate::noise::{NoiseModel, Seed, RNG_ALGORITHM};
use crate::table;

/// What to do with blocks whose estimate saturates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SaturationPolicy {
    /// Leave saturated runs out of the MSE and report how many there were.
    ExcludeAndCount,
    /// As above, but fail when the saturated fraction exceeds the threshold.
    ErrorIfOver(f64),
}

impl Default for SaturationPolicy {
    fn default() -> Self {
        SaturationPolicy::ErrorIfOver(0.01)
    }
}

impl fmt::Display for SaturationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SaturationPolicy::ExcludeAndCount => write!(f, "exclude_and_count"),
            SaturationPolicy::ErrorIfOver(t) => write!(f, "error_if_over:{t:?}"),
        }
    }
}

impl FromStr for SaturationPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "exclude_and_count" {
            return Ok(SaturationPolicy::ExcludeAndCount);
        }
        if let Some(t) = s.strip_prefix("error_if_over:") {
            let t: f64 = t
                .trim()
                .parse()
                .map_err(|_| Error::parse("saturation", format!("threshold `{t}` is not a number")))?;
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::parse("saturation", "threshold must lie in [0, 1]"));
            }
            return Ok(SaturationPolicy::ErrorIfOver(t));
        }
        Err(Error::parse(
            "saturation",
            format!("expected exclude_and_count or error_if_over:<fraction>, got `{s}`"),
        ))
    }
}

impl Serialize for SaturationPolicy {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Full description of one simulation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentSpec {
    pub model: NoiseModel,
    pub channel: ChannelModel,
    pub true_x: f64,
    /// Offsets ε; each block uses τ₀ = true_x + ε.
    pub eps_grid: Vec<f64>,
    pub n_samples: usize,
    pub n_runs: usize,
    pub seed: Seed,
    pub saturation_policy: SaturationPolicy,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_samples == 0 {
            return Err(Error::InvalidParameter {
                name: "n_samples",
                value: 0.0,
                reason: "must be at least 1",
            });
        }
        if self.n_runs == 0 {
            return Err(Error::InvalidParameter {
                name: "n_runs",
                value: 0.0,
                reason: "must be at least 1",
            });
        }
        if self.eps_grid.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(&bad) = self.eps_grid.iter().find(|e| !e.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "eps_grid",
                value: bad,
                reason: "offsets must be finite",
            });
        }
        if !self.true_x.is_finite() {
            return Err(Error::InvalidParameter {
                name: "true_x",
                value: self.true_x,
                reason: "must be finite",
            });
        }
        Ok(())
    }
}

/// One block of `n` measurements: Yₖ = x + Vₖ, quantized against τ₀, then
/// flipped independently with probability q.
pub fn run_block(m: &NoiseModel, ch: &ChannelModel, true_x: f64, tau0: f64, n: usize, seed: Seed) -> EstimateResult {
    let mut rng = seed.rng();
    let q = ch.q();
    let mut minus = 0u64;
    for _ in 0..n {
        let y = true_x + m.draw(&mut rng);
        let mut is_minus = y <= tau0;
        if q > 0.0 && rng.random::<f64>() < q {
            is_minus = !is_minus;
        }
        minus += is_minus as u64;
    }
    estimate_x_from_counts(
        m,
        ch,
        tau0,
        BitCounts {
            minus,
            total: n as u64,
        },
    )
}

/// Estimates of all runs at one offset, in run order.
pub fn run_point(spec: &ExperimentSpec, eps: f64) -> Vec<EstimateResult> {
    let tau0 = spec.true_x + eps;
    (0..spec.n_runs as u64)
        .into_par_iter()
        .map(|r| {
            run_block(
                &spec.model,
                &spec.channel,
                spec.true_x,
                tau0,
                spec.n_samples,
                spec.seed.substream(r),
            )
        })
        .collect()
}

/// Squared-error summary of a set of runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointStats {
    pub mse: Option<f64>,
    /// Standard error of the MSE estimate.
    pub std_error: Option<f64>,
    pub runs_used: usize,
    pub saturated_runs: usize,
}

pub fn point_stats(results: &[EstimateResult], true_x: f64) -> PointStats {
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut used = 0usize;
    for x in results.iter().filter_map(|r| r.x_hat.finite()) {
        let e2 = (x - true_x) * (x - true_x);
        sum += e2;
        sum_sq += e2 * e2;
        used += 1;
    }
    let (mse, std_error) = if used == 0 {
        (None, None)
    } else {
        let mean = sum / used as f64;
        let var = if used > 1 {
            (sum_sq - used as f64 * mean * mean).max(0.0) / (used - 1) as f64
        } else {
            0.0
        };
        (Some(mean), Some((var / used as f64).sqrt()))
    };
    PointStats {
        mse,
        std_error,
        runs_used: used,
        saturated_runs: results.len() - used,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimRow {
    pub epsilon: f64,
    /// Absent when every run saturated.
    pub mse: Option<f64>,
    pub runs_used: usize,
    pub saturated_runs: usize,
    pub crb: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimMetadata {
    pub spec: ExperimentSpec,
    pub rng_algorithm: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub metadata: SimMetadata,
    pub rows: Vec<SimRow>,
}

impl SimReport {
    /// CSV with header `epsilon,mse,runs_used,saturated_runs,crb`.
    pub fn to_csv(&self) -> String {
        table::write_csv(
            &["epsilon", "mse", "runs_used", "saturated_runs", "crb"],
            self.rows.iter().map(|r| {
                vec![
                    table::sig9(r.epsilon),
                    r.mse.map(table::sig9).unwrap_or_default(),
                    r.runs_used.to_string(),
                    r.saturated_runs.to_string(),
                    table::sig9(r.crb),
                ]
            }),
        )
    }

    pub fn rows_from_csv(text: &str) -> Result<Vec<SimRow>> {
        table::read_csv(text)
    }
}

fn check_saturation(policy: SaturationPolicy, eps: f64, stats: &PointStats, runs: usize) -> Result<()> {
    if let SaturationPolicy::ErrorIfOver(threshold) = policy {
        if stats.saturated_runs as f64 / runs as f64 > threshold {
            return Err(Error::SaturationExceeded {
                epsilon: eps,
                saturated: stats.saturated_runs,
                runs,
                threshold,
            });
        }
    }
    Ok(())
}

/// Runs every offset of the grid on the global rayon pool.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<SimReport> {
    spec.validate()?;
    let mut rows = Vec::with_capacity(spec.eps_grid.len());
    for &eps in &spec.eps_grid {
        let crb = b_bsc(&spec.model, &spec.channel, eps)? / spec.n_samples as f64;
        let stats = point_stats(&run_point(spec, eps), spec.true_x);
        check_saturation(spec.saturation_policy, eps, &stats, spec.n_runs)?;
        rows.push(SimRow {
            epsilon: eps,
            mse: stats.mse,
            runs_used: stats.runs_used,
            saturated_runs: stats.saturated_runs,
            crb,
        });
    }
    Ok(SimReport {
        metadata: SimMetadata {
            spec: spec.clone(),
            rng_algorithm: RNG_ALGORITHM.to_string(),
        },
        rows,
    })
}

/// [`run_experiment`] on a dedicated pool of `threads` workers.
pub fn run_experiment_with_threads(spec: &ExperimentSpec, threads: usize) -> Result<SimReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|_| Error::InvalidParameter {
            name: "threads",
            value: threads as f64,
            reason: "could not start a worker pool of this size",
        })?;
    pool.install(|| run_experiment(spec))
}

/// Ratio MSE/CRB at one offset and whether it sits in [0.9, 1.1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EfficiencyReport {
    pub epsilon: f64,
    pub mse: f64,
    pub crb: f64,
    pub ratio: f64,
    pub ratio_std_error: f64,
    pub saturated_runs: usize,
    pub within_band: bool,
}

pub const EFFICIENCY_BAND: (f64, f64) = (0.9, 1.1);

/// Compares the simulated MSE with the bound at `eps`.
///
/// Fails when 1 % or more of the runs saturate, or when the Monte Carlo
/// standard error of the ratio exceeds half the band width.
///
/// Only `eps` is simulated; the grid in `spec` is ignored.
pub fn efficiency_check(spec: &ExperimentSpec, eps: f64) -> Result<EfficiencyReport> {
    ExperimentSpec {
        eps_grid: vec![eps],
        ..spec.clone()
    }
    .validate()?;
    let crb = b_bsc(&spec.model, &spec.channel, eps)? / spec.n_samples as f64;
    let stats = point_stats(&run_point(spec, eps), spec.true_x);
    check_saturation(SaturationPolicy::ErrorIfOver(0.01), eps, &stats, spec.n_runs)?;
    if stats.saturated_runs * 100 >= spec.n_runs {
        return Err(Error::SaturationExceeded {
            epsilon: eps,
            saturated: stats.saturated_runs,
            runs: spec.n_runs,
            threshold: 0.01,
        });
    }
    let mse = stats.mse.expect("fewer than 1% of runs saturated");
    let ratio = mse / crb;
    let ratio_std_error = stats.std_error.unwrap_or(f64::INFINITY) / crb;
    let limit = 0.5 * (EFFICIENCY_BAND.1 - EFFICIENCY_BAND.0);
    if !(ratio_std_error <= limit) {
        return Err(Error::InsufficientRuns {
            std_error: ratio_std_error,
            limit,
        });
    }
    Ok(EfficiencyReport {
        epsilon: eps,
        mse,
        crb,
        ratio,
        ratio_std_error,
        saturated_runs: stats.saturated_runs,
        within_band: (EFFICIENCY_BAND.0..=EFFICIENCY_BAND.1).contains(&ratio),
    })
}
