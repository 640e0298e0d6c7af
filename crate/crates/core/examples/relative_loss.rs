//! Cost of one-bit quantization at ε = 0 relative to unquantized measurements.
//!
//!     cargo run --example relative_loss

use binquant::{b_of_eps, continuous_fisher_info, fisher_info_quadrature, relative_loss_at_0, NoiseModel};

fn main() -> binquant::Result<()> {
    for text in ["gaussian:delta=1", "cauchy:delta=1", "laplacian:delta=1", "hybrid:alpha=1,sigma=1", "ggd:beta=4,delta=1"] {
        let m: NoiseModel = text.parse()?;
        let loss = relative_loss_at_0(&m)?;
        println!(
            "{text:<24} B(0) = {:.9}  I = {:.9} (quadrature {:.9})  loss = {:.6} = {:.4} dB",
            b_of_eps(&m, 0.0)?,
            continuous_fisher_info(&m)?,
            fisher_info_quadrature(&m)?,
            loss.ratio,
            loss.db
        );
    }
    Ok(())
}
