//! Simulated MSE against the CRB.
//!
//!     cargo run --release --example monte_carlo -- hybrid:alpha=1,sigma=1 500 -2:2:41 20000
//!     cargo run --release --example monte_carlo -- ggd:beta=4,delta=1 50 -0.3:0.3:13 20000
//!
//! Arguments: model, N, ε grid, runs (defaults as in the first line).

use binquant::{run_experiment, ChannelModel, ExperimentSpec, Grid, NoiseModel, SaturationPolicy, Seed};

fn main() -> binquant::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, default: &str| args.get(i).cloned().unwrap_or_else(|| default.to_string());

    let model: NoiseModel = arg(0, "hybrid:alpha=1,sigma=1").parse()?;
    let n: usize = arg(1, "500").parse().expect("N is a count");
    let grid: Grid = arg(2, "-2:2:41").parse()?;
    let runs: usize = arg(3, "20000").parse().expect("runs is a count");

    let spec = ExperimentSpec {
        model,
        channel: ChannelModel::perfect(),
        true_x: 0.0,
        eps_grid: grid.values(),
        n_samples: n,
        n_runs: runs,
        seed: Seed::new(2013, 0),
        saturation_policy: SaturationPolicy::ExcludeAndCount,
    };
    let report = run_experiment(&spec)?;
    print!("{}", report.to_csv());
    for row in &report.rows {
        if let Some(mse) = row.mse {
            eprintln!("eps = {:+.3}  MSE/CRB = {:.4}", row.epsilon, mse / row.crb);
        }
    }
    Ok(())
}
