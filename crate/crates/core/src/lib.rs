//! Cramér–Rao bounds for estimating a location parameter from one-bit
//! quantized measurements, optimal quantizer thresholds, and a seeded
//! Monte Carlo harness for the frequency-based maximum-likelihood estimator.
//!
//! Measurements are Yₖ = x + Vₖ with symmetric unimodal noise V, quantized
//! as −1 when Yₖ ≤ τ₀ and +1 otherwise, and optionally sent through a
//! binary symmetric channel. Everything depends on the offset ε = τ₀ − x.
//!
//! ```
//! use binquant::{b_of_eps, NoiseModel};
//!
//! let m: NoiseModel = "hybrid:alpha=1,sigma=1".parse().unwrap();
//! let crb = b_of_eps(&m, 0.0).unwrap() / 500.0;
//! assert!((crb - 0.00614822).abs() < 1e-7);
//! ```

pub mod bounds;
pub mod cli;
pub mod config;
pub mod error;
pub mod estimation;
pub mod grid;
pub mod montecarlo;
pub mod noise;
pub mod quadrature;
pub mod special_fn;
pub mod table;
pub mod threshold_search;

pub use bounds::{
    b_bsc, b_ggd_closed, b_laplacian_closed, b_of_eps, b_second_deriv_at_0, bsc_second_deriv_at_0,
    continuous_fisher_info, critical_bsc_q, critical_q_from_curvature, fisher_info_quadrature,
    relative_loss_at_0, symmetry_condition, BoundCurve, BoundRow, ChannelModel, Classification, ExtValue,
    RelativeLoss, SymmetryVerdict,
};
pub use config::{RunConfig, ValueSpec};
pub use error::{Error, NonDiffKind, Result};
pub use estimation::{
    estimate_p, estimate_x, estimate_x_bsc, estimate_x_from_counts, estimate_x_from_frequency, BinarySample,
    BitCounts, Direction, Estimate, EstimateResult,
};
pub use grid::Grid;
pub use montecarlo::{
    efficiency_check, run_block, run_experiment, run_experiment_with_threads, run_point, EfficiencyReport,
    ExperimentSpec, SaturationPolicy, SimReport, SimRow,
};
pub use noise::{Family, NoiseModel, Seed, RNG_ALGORITHM};
pub use special_fn::Accuracy;
pub use threshold_search::{eps_beta_sweep, find_optimal_eps, golden_section, OptimumReport, SearchSpec, SweepPoint};
