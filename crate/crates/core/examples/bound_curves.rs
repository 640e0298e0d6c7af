//! CRB = B(ε)/N for the hybrid (N = 500) and GGD β = 4 (N = 500 and 50) models.
//!
//!     cargo run --example bound_curves

use binquant::{BoundCurve, ChannelModel, Grid, NoiseModel};

fn main() -> binquant::Result<()> {
    let perfect = ChannelModel::perfect();
    let cases: [(&str, u64, &str); 3] = [
        ("hybrid:alpha=1,sigma=1", 500, "-2:2:81"),
        ("ggd:beta=4,delta=1", 500, "-1.5:1.5:61"),
        ("ggd:beta=4,delta=1", 50, "-0.3:0.3:13"),
    ];
    for (model, n, grid) in cases {
        let m: NoiseModel = model.parse()?;
        let grid: Grid = grid.parse()?;
        let curve = BoundCurve::compute(&m, &perfect, n, &grid)?;
        let best = curve
            .rows
            .iter()
            .min_by(|a, b| a.crb.total_cmp(&b.crb))
            .expect("grid is not empty");
        println!("# {model}, N = {n}, smallest grid CRB {:.8} at eps = {:+.3}", best.crb, best.epsilon);
        print!("{}", curve.to_csv());
    }
    Ok(())
}
