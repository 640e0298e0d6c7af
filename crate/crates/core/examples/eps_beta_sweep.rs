//! Optimal offset in units of the noise standard deviation for GGD noise,
//! β from 2 to 20. The curve approaches √3 (edge of a uniform of equal variance).
//!
//!     cargo run --release --example eps_beta_sweep > eps_beta.csv

use binquant::threshold_search::sweep_to_csv;
use binquant::{eps_beta_sweep, ChannelModel, Grid, NoiseModel, SearchSpec};

fn main() -> binquant::Result<()> {
    let betas = Grid::new(2.0, 20.0, 73)?.values();
    let spec = SearchSpec::for_model(&NoiseModel::ggd(2.0, 1.0)?);
    let points = eps_beta_sweep(&betas, 1.0, &ChannelModel::perfect(), &spec)?;
    print!("{}", sweep_to_csv(&points));
    eprintln!("sqrt(3) = {:.6}", 3f64.sqrt());
    Ok(())
}
