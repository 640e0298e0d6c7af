//! Bound through a binary symmetric channel and the flip probability that
//! makes ε = 0 a local minimum again.
//!
//!     cargo run --example noisy_channel

use binquant::{b_bsc, bsc_second_deriv_at_0, critical_bsc_q, critical_q_from_curvature, ChannelModel, NoiseModel};

fn main() -> binquant::Result<()> {
    let g: NoiseModel = "gaussian:delta=1".parse()?;
    println!("q,b_bsc_gaussian_at_0,b_bsc_gaussian_at_1");
    for i in 0..10 {
        let ch = ChannelModel::new(0.05 * i as f64)?;
        println!("{:.2},{:.9},{:.9}", ch.q(), b_bsc(&g, &ch, 0.0)?, b_bsc(&g, &ch, 1.0)?);
    }

    for text in ["gaussian:delta=1", "cauchy:delta=1", "hybrid:alpha=1,sigma=1", "ggd:beta=4,delta=1"] {
        let m: NoiseModel = text.parse()?;
        eprintln!("{text:<24} critical q = {:?}", critical_bsc_q(&m)?);
    }

    // A density whose curvature at the peak is too weak on its own.
    let (f0, f2) = (1.0, -1.0);
    let q = critical_q_from_curvature(f0, f2).expect("f'' < 0");
    eprintln!("f(0) = {f0}, f''(0) = {f2}: symmetric threshold optimal once q > {q}");
    let m: NoiseModel = "hybrid:alpha=1,sigma=1".parse()?;
    for q in [0.0, 0.2, 0.45] {
        eprintln!("hybrid B''(0) at q = {q}: {:?}", bsc_second_deriv_at_0(&m, &ChannelModel::new(q)?));
    }
    Ok(())
}
