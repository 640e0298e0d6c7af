//! Densities of the noise families on a common grid, as CSV.
//!
//!     cargo run --example noise_models > pdfs.csv

use binquant::{Grid, NoiseModel};

fn main() -> binquant::Result<()> {
    let models: Vec<(&str, NoiseModel)> = vec![
        ("hybrid", "hybrid:alpha=1,sigma=1".parse()?),
        ("gaussian", "gaussian:delta=1".parse()?),
        ("cauchy", "cauchy:delta=1".parse()?),
        ("laplacian", "laplacian:delta=1".parse()?),
        ("ggd4", "ggd:beta=4,delta=1".parse()?),
    ];

    let header: Vec<&str> = models.iter().map(|(name, _)| *name).collect();
    println!("v,{}", header.join(","));
    for v in Grid::new(-4.0, 4.0, 401)?.values() {
        let row: Vec<String> = models.iter().map(|(_, m)| format!("{:.9e}", m.pdf(v))).collect();
        println!("{v:.4},{}", row.join(","));
    }

    for (name, m) in &models {
        let var = m
            .variance()
            .map(|v| format!("{v:.9}"))
            .unwrap_or_else(|e| e.to_string());
        eprintln!("{name:>10}: f(0) = {:.9}, variance = {var}", m.peak());
    }
    Ok(())
}
