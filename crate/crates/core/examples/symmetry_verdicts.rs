//! Is ε = 0 a local minimum of the bound? Both sides of -f''(0) > 4 f(0)^3 per model.
//!
//!     cargo run --example symmetry_verdicts

use binquant::{symmetry_condition, ChannelModel, ExtValue, NoiseModel};

fn show(v: ExtValue) -> String {
    match v {
        ExtValue::Finite(x) => format!("{x:.7}"),
        ExtValue::PositiveInfinity => "+inf".into(),
        ExtValue::Undefined => "undefined".into(),
    }
}

fn main() -> binquant::Result<()> {
    let cases = [
        ("gaussian:delta=1", 0.0),
        ("cauchy:delta=1", 0.0),
        ("laplacian:delta=1", 0.0),
        ("hybrid:alpha=1,sigma=1", 0.0),
        ("ggd:beta=4,delta=1", 0.0),
        ("ggd:beta=4,delta=1", 0.3),
        ("ggd:beta=1.5,delta=1", 0.0),
    ];
    println!("{:<26} {:>5} {:>12} {:>12} {:>10}  classification", "model", "q", "lhs", "rhs", "B''(0)");
    for (text, q) in cases {
        let m: NoiseModel = text.parse()?;
        let v = symmetry_condition(&m, &ChannelModel::new(q)?);
        println!(
            "{text:<26} {q:>5} {:>12} {:>12.7} {:>10}  {:?}",
            show(v.lhs),
            v.rhs,
            show(v.second_deriv_at_0),
            v.classification
        );
    }
    Ok(())
}
