//! Optimal threshold offsets, with and without a noisy channel.
//!
//!     cargo run --example optimal_threshold

use binquant::{find_optimal_eps, ChannelModel, NoiseModel, SearchSpec};

fn main() -> binquant::Result<()> {
    for text in ["gaussian:delta=1", "cauchy:delta=1", "hybrid:alpha=1,sigma=1", "ggd:beta=4,delta=1"] {
        let m: NoiseModel = text.parse()?;
        for q in [0.0, 0.1] {
            let r = find_optimal_eps(&m, &ChannelModel::new(q)?, &SearchSpec::for_model(&m))?;
            println!(
                "{text:<24} q = {q:<4} eps* = {:.6}  B(eps*) = {:.6}  CRB at N=500 = {:.8}  minima {:?}",
                r.eps_star,
                r.b_at_star,
                r.b_at_star / 500.0,
                r.all_minima
            );
        }
    }
    Ok(())
}
