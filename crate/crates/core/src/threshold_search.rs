//! Global minimization of B(ε) or B′(ε) over a threshold-offset bracket.
//!
//! A coarse grid isolates the best basin; golden-section search then
//! refines inside the two neighbouring cells. B is even in ε, so the
//! default bracket covers ε ≥ 0 only and minima are mirrored afterwards.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{b_bsc, ChannelModel};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::noise::NoiseModel;
use crate::special_fn;
use crate::table;

/// Search bracket and resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchSpec {
    pub eps_lo: f64,
    pub eps_hi: f64,
    pub grid_points: usize,
    pub refine_tol: f64,
}

impl SearchSpec {
    pub fn new(eps_lo: f64, eps_hi: f64, grid_points: usize, refine_tol: f64) -> Result<Self> {
        if !(eps_lo < eps_hi) || !eps_lo.is_finite() || !eps_hi.is_finite() {
            return Err(Error::InvalidParameter {
                name: "eps_hi",
                value: eps_hi,
                reason: "bracket requires finite eps_lo < eps_hi",
            });
        }
        if grid_points < 3 {
            return Err(Error::InvalidParameter {
                name: "grid_points",
                value: grid_points as f64,
                reason: "coarse scan needs at least 3 points",
            });
        }
        if !(refine_tol > 0.0) {
            return Err(Error::InvalidParameter {
                name: "refine_tol",
                value: refine_tol,
                reason: "must be positive",
            });
        }
        Ok(Self {
            eps_lo,
            eps_hi,
            grid_points,
            refine_tol,
        })
    }

    /// [0, 6·scale] with 2001 scan points and 1e-8 refinement.
    pub fn for_model(m: &NoiseModel) -> Self {
        Self {
            eps_lo: 0.0,
            eps_hi: 6.0 * m.scale(),
            grid_points: 2001,
            refine_tol: 1e-8,
        }
    }

    /// Same resolution on a different bracket.
    pub fn with_bracket(&self, eps_lo: f64, eps_hi: f64) -> Result<Self> {
        Self::new(eps_lo, eps_hi, self.grid_points, self.refine_tol)
    }
}

/// Result of [`find_optimal_eps`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimumReport {
    /// Nonnegative representative of the minimizer.
    pub eps_star: f64,
    pub b_at_star: f64,
    pub is_symmetric: bool,
    /// Every minimizer: `[0]`, or `[-eps_star, eps_star]`.
    pub all_minima: Vec<f64>,
    /// Signed minimizer inside the searched bracket.
    pub argmin: f64,
    /// Set when the minimum sits on the bracket end farthest from zero.
    pub bracket_warning: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenResult {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a minimum of `f` on [lo, hi] until the bracket is narrower than `tol`.
pub fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> GoldenResult {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iterations = 0;
    while hi - lo > tol {
        iterations += 1;
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let (x, fx) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    GoldenResult { x, fx, iterations }
}

/// Global minimizer of B′(ε) on the bracket in `spec`.
pub fn find_optimal_eps(m: &NoiseModel, ch: &ChannelModel, spec: &SearchSpec) -> Result<OptimumReport> {
    // Offsets whose bound overflows are simply not candidates.
    let objective = |eps: f64| b_bsc(m, ch, eps).unwrap_or(f64::INFINITY);
    let nodes = Grid::new(spec.eps_lo, spec.eps_hi, spec.grid_points)?.values();
    let values: Vec<f64> = nodes.iter().map(|&e| objective(e)).collect();

    // Scan by increasing |ε| and only accept strict improvements, so ties
    // (e.g. along a plateau edge) resolve toward the smaller offset.
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&a, &b| nodes[a].abs().total_cmp(&nodes[b].abs()));
    let mut best = order[0];
    for &i in &order[1..] {
        if values[i] < values[best] {
            best = i;
        }
    }
    if !values[best].is_finite() {
        return Err(Error::Overflow("find_optimal_eps: bound overflows on the whole bracket"));
    }

    let left = nodes[best.saturating_sub(1)];
    let right = nodes[(best + 1).min(nodes.len() - 1)];
    let refined = golden_section(objective, left, right, spec.refine_tol);
    let (mut argmin, b_at_star) = if refined.fx <= values[best] {
        (refined.x, refined.fx)
    } else {
        (nodes[best], values[best])
    };
    if argmin.abs() <= spec.refine_tol {
        argmin = 0.0;
    }

    let far_end = if spec.eps_hi.abs() >= spec.eps_lo.abs() {
        nodes.len() - 1
    } else {
        0
    };
    let eps_star = argmin.abs();
    let is_symmetric = eps_star == 0.0;
    Ok(OptimumReport {
        eps_star,
        b_at_star,
        is_symmetric,
        all_minima: if is_symmetric {
            vec![0.0]
        } else {
            vec![-eps_star, eps_star]
        },
        argmin,
        bracket_warning: best == far_end && nodes[far_end] != 0.0,
    })
}

/// One point of the ε*(β) curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct SweepPoint {
    pub beta: f64,
    pub eps_star_over_sigma: f64,
}

/// |ε*|/σ for GGD noise across shape parameters, σ being the noise standard deviation.
///
/// β values are evaluated in parallel; the output order always follows `betas`.
pub fn eps_beta_sweep(
    betas: &[f64],
    delta: f64,
    ch: &ChannelModel,
    spec: &SearchSpec,
) -> Result<Vec<SweepPoint>> {
    if let Some(&bad) = betas.iter().find(|&&b| !(b >= 2.0)) {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: bad,
            reason: "the sweep covers beta >= 2",
        });
    }
    betas
        .par_iter()
        .map(|&beta| {
            let m = NoiseModel::ggd(beta, delta)?;
            let sigma = delta * (special_fn::gamma(3.0 / beta)? / special_fn::gamma(1.0 / beta)?).sqrt();
            let report = find_optimal_eps(&m, ch, spec)?;
            Ok(SweepPoint {
                beta,
                eps_star_over_sigma: report.eps_star / sigma,
            })
        })
        .collect()
}

/// CSV with header `beta,eps_star_over_sigma`, six decimals.
pub fn sweep_to_csv(points: &[SweepPoint]) -> String {
    table::write_csv(
        &["beta", "eps_star_over_sigma"],
        points
            .iter()
            .map(|p| vec![format!("{:.6}", p.beta), format!("{:.6}", p.eps_star_over_sigma)]),
    )
}

pub fn sweep_from_csv(text: &str) -> Result<Vec<SweepPoint>> {
    table::read_csv(text)
}
