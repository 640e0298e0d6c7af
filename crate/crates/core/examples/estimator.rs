//! One block end to end: measure, quantize, flip, estimate.
//!
//!     cargo run --example estimator

use binquant::{estimate_x, estimate_x_bsc, BinarySample, ChannelModel, NoiseModel, Seed};
use rand::Rng;

fn main() -> binquant::Result<()> {
    let m: NoiseModel = "ggd:beta=4,delta=1".parse()?;
    let (x, tau0, n) = (0.25, 0.95, 500);

    let noise = m.sample(Seed::new(1, 0), n);
    let bits: Vec<i8> = noise.iter().map(|v| if x + v <= tau0 { -1 } else { 1 }).collect();
    let clean = BinarySample::new(bits.clone(), tau0)?;
    let r = estimate_x(&m, &clean);
    println!("p_hat = {:.4}  x_hat = {:?}  (x = {x})", r.frequency, r.x_hat);

    let ch = ChannelModel::new(0.1)?;
    let mut rng = Seed::new(1, 1).rng();
    let flipped: Vec<i8> = bits
        .iter()
        .map(|&b| if rng.random::<f64>() < ch.q() { -b } else { b })
        .collect();
    let r = estimate_x_bsc(&m, &ch, &BinarySample::new(flipped, tau0)?);
    println!("r_hat = {:.4}  x_hat = {:?}  clamped = {}", r.frequency, r.x_hat, r.clamped);

    let all_plus = BinarySample::new(vec![1; 20], tau0)?;
    println!("all +1: {:?}", estimate_x(&m, &all_plus).x_hat);
    Ok(())
}
