//! Acceptance gate. Run with `cargo test --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per check.

use std::time::{Duration, Instant};

use binquant::montecarlo::{point_stats, run_point};
use binquant::*;

struct Gate {
    results: Vec<(String, bool)>,
}

impl Gate {
    fn check(&mut self, id: &str, ok: bool, detail: String) {
        println!("[{}] {id}: {detail}", if ok { "PASS" } else { "FAIL" });
        self.results.push((id.to_string(), ok));
    }

    fn within(&mut self, id: &str, got: f64, want: f64, tol: f64) {
        self.check(id, (got - want).abs() <= tol, format!("{got:.10} vs {want} ± {tol:e}"));
    }

    fn timed(&mut self, id: &str, elapsed: Duration, limit: Duration) {
        self.check(
            id,
            elapsed <= limit,
            format!("{:.3} s (limit {} s)", elapsed.as_secs_f64(), limit.as_secs_f64()),
        );
    }
}

fn hybrid() -> NoiseModel {
    NoiseModel::hybrid(1.0, 1.0).unwrap()
}

fn ggd4() -> NoiseModel {
    NoiseModel::ggd(4.0, 1.0).unwrap()
}

fn closed_form_anchors(g: &mut Gate) {
    let t = Instant::now();
    g.within("1.hybrid_crb_at_0", b_of_eps(&hybrid(), 0.0).unwrap() / 500.0, 0.006_148_22, 1e-7);
    g.within("1.ggd4_crb_at_0", b_of_eps(&ggd4(), 0.0).unwrap() / 500.0, 0.001_643_13, 1e-7);
    g.within("1.ggd4_closed_at_0.7", b_ggd_closed(4.0, 1.0, 0.7).unwrap() / 500.0, 0.001_211_20, 1e-6);
    let lap = b_laplacian_closed(1.0, 0.0);
    g.check("1.laplacian_closed_at_0", lap == 1.0, format!("{lap} == 1 exactly"));
    g.timed("1.time", t.elapsed(), Duration::from_secs(1));
}

fn relative_losses(g: &mut Gate) {
    let t = Instant::now();
    let pi = std::f64::consts::PI;
    let cases = [
        ("gaussian", NoiseModel::gaussian(1.0).unwrap(), pi / 2.0),
        ("cauchy", NoiseModel::cauchy(1.0).unwrap(), pi * pi / 8.0),
        ("laplacian", NoiseModel::laplacian(1.0).unwrap(), 1.0),
    ];
    for (name, m, ratio) in cases {
        let analytic = continuous_fisher_info(&m).unwrap();
        let quad = fisher_info_quadrature(&m).unwrap();
        let loss = RelativeLoss::from_ratio(b_of_eps(&m, 0.0).unwrap() * quad);
        g.within(&format!("2.{name}_ratio"), loss.ratio, ratio, 1e-6);
        g.within(&format!("2.{name}_db"), loss.db, 10.0 * ratio.log10(), 1e-6);
        let rel = ((quad - analytic) / analytic).abs();
        g.check(&format!("2.{name}_fisher_paths"), rel <= 1e-8, format!("relative gap {rel:e} ≤ 1e-8"));
    }
    g.timed("2.time", t.elapsed(), Duration::from_secs(1));
}

fn symmetry_classes(g: &mut Gate) {
    let t = Instant::now();
    let perfect = ChannelModel::perfect();
    let cases = [
        ("gaussian", NoiseModel::gaussian(1.0).unwrap(), Classification::LocalMin),
        ("cauchy", NoiseModel::cauchy(1.0).unwrap(), Classification::LocalMin),
        ("hybrid", hybrid(), Classification::LocalMax),
        ("ggd4", ggd4(), Classification::LocalMax),
        ("laplacian", NoiseModel::laplacian(1.0).unwrap(), Classification::Underivable),
    ];
    for (name, m, want) in cases {
        let v = symmetry_condition(&m, &perfect);
        g.check(&format!("3.{name}"), v.classification == want, format!("{:?}", v.classification));
    }
    for beta in [1.2, 1.5, 1.9] {
        let v = symmetry_condition(&NoiseModel::ggd(beta, 1.0).unwrap(), &perfect);
        let ok = v.classification == Classification::LocalMin && v.second_deriv_at_0 == ExtValue::PositiveInfinity;
        g.check(
            &format!("3.ggd{beta}"),
            ok,
            format!("{:?} with {:?}", v.classification, v.second_deriv_at_0),
        );
    }
    g.timed("3.time", t.elapsed(), Duration::from_secs(1));
}

fn optimal_thresholds(g: &mut Gate) {
    let t = Instant::now();
    let perfect = ChannelModel::perfect();
    let h = find_optimal_eps(&hybrid(), &perfect, &SearchSpec::for_model(&hybrid())).unwrap();
    g.within("4.hybrid_eps_star", h.eps_star, 0.80, 0.05);
    g.within("4.hybrid_crb_at_star", h.b_at_star / 500.0, 0.005_342, 2e-5);
    let m = ggd4();
    let r = find_optimal_eps(&m, &perfect, &SearchSpec::for_model(&m)).unwrap();
    let sigma = m.variance().unwrap().sqrt();
    g.within("4.ggd4_eps_over_sigma", r.eps_star / sigma, 1.2278, 0.01);
    g.timed("4.time", t.elapsed(), Duration::from_secs(10));
}

fn beta_sweep(g: &mut Gate) {
    let t = Instant::now();
    let betas = [2.0, 3.0, 4.0, 6.0, 10.0];
    let want = [0.0, 0.8357, 1.2278, 1.5109, 1.6566];
    let spec = SearchSpec::for_model(&NoiseModel::ggd(2.0, 1.0).unwrap());
    let pts = eps_beta_sweep(&betas, 1.0, &ChannelModel::perfect(), &spec).unwrap();
    for (p, w) in pts.iter().zip(want) {
        g.within(&format!("5.beta{}", p.beta), p.eps_star_over_sigma, w, 0.01);
        g.check(
            &format!("5.beta{}_below_sqrt3", p.beta),
            p.eps_star_over_sigma < 3f64.sqrt(),
            format!("{:.6} < {:.7}", p.eps_star_over_sigma, 3f64.sqrt()),
        );
    }
    g.timed("5.time", t.elapsed(), Duration::from_secs(60));
}

fn mc_spec(model: NoiseModel, n: usize, eps: Vec<f64>) -> ExperimentSpec {
    ExperimentSpec {
        model,
        channel: ChannelModel::perfect(),
        true_x: 0.0,
        eps_grid: eps,
        n_samples: n,
        n_runs: 20_000,
        seed: Seed::new(20_130_605, 0),
        saturation_policy: SaturationPolicy::default(),
    }
}

fn mse_by_eps(spec: &ExperimentSpec) -> Vec<f64> {
    let report = run_experiment(spec).unwrap();
    report.rows.iter().map(|r| r.mse.unwrap()).collect()
}

fn monte_carlo(g: &mut Gate) {
    let t = Instant::now();
    let within5 = |g: &mut Gate, id: &str, got: f64, want: f64| {
        let rel = (got - want).abs() / want;
        g.check(id, rel <= 0.05, format!("{got:.7} vs {want} (off {:.2}%, limit 5%)", 100.0 * rel));
    };

    let h = mse_by_eps(&mc_spec(hybrid(), 500, vec![0.0, 0.8]));
    within5(g, "6.hybrid_n500_mse0", h[0], 0.006_148);
    within5(g, "6.hybrid_n500_mse0.8", h[1], 0.005_342);
    g.check("6.hybrid_n500_order", h[0] > h[1], format!("{:.7} > {:.7}", h[0], h[1]));

    let q = mse_by_eps(&mc_spec(ggd4(), 500, vec![0.0, 0.7]));
    within5(g, "6.ggd4_n500_mse0", q[0], 0.001_643);
    g.check("6.ggd4_n500_order", q[1] < q[0], format!("{:.7} < {:.7}", q[1], q[0]));

    let s = mse_by_eps(&mc_spec(ggd4(), 50, vec![0.0, 0.15, 0.3]));
    within5(g, "6.ggd4_n50_mse0", s[0], 0.016_431);
    g.check(
        "6.ggd4_n50_concave",
        s[0] > s[1] && s[1] > s[2],
        format!("{:.6} > {:.6} > {:.6}", s[0], s[1], s[2]),
    );
    g.timed("6.time", t.elapsed(), Duration::from_secs(300));
}

fn bsc(g: &mut Gate) {
    let t = Instant::now();
    let models = [
        NoiseModel::gaussian(1.0).unwrap(),
        NoiseModel::cauchy(1.0).unwrap(),
        NoiseModel::laplacian(1.0).unwrap(),
        hybrid(),
        ggd4(),
    ];
    let grid = Grid::new(-2.0, 2.0, 41).unwrap().values();
    let mut worst: f64 = 0.0;
    let mut monotone = true;
    for m in &models {
        for &e in &grid {
            let b = b_of_eps(m, e).unwrap();
            worst = worst.max(((b_bsc(m, &ChannelModel::perfect(), e).unwrap() - b) / b).abs());
            let mut prev = b;
            for i in 1..=49 {
                let next = b_bsc(m, &ChannelModel::new(0.01 * i as f64).unwrap(), e).unwrap();
                monotone &= next > prev;
                prev = next;
            }
        }
    }
    g.check("7.q0_reduces", worst <= 1e-12, format!("max relative gap {worst:e}"));
    g.check("7.increasing_in_q", monotone, "q = 0, 0.01, …, 0.49 on 41 offsets × 5 models".into());
    let cg = critical_bsc_q(&models[0]).unwrap();
    g.check("7.critical_gaussian", cg == Some(0.0), format!("{cg:?}"));
    let c4 = critical_bsc_q(&ggd4()).unwrap();
    g.check("7.critical_ggd4", c4.is_none(), format!("{c4:?}"));
    g.timed("7.time", t.elapsed(), Duration::from_secs(1));
}

fn ks(m: &NoiseModel, mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = m.cdf(x);
            ((i + 1) as f64 / n - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

fn properties(g: &mut Gate) {
    let models = [
        NoiseModel::gaussian(1.0).unwrap(),
        NoiseModel::cauchy(1.0).unwrap(),
        NoiseModel::laplacian(1.0).unwrap(),
        hybrid(),
        ggd4(),
        NoiseModel::ggd(1.5, 1.0).unwrap(),
    ];

    let mut rt = true;
    for m in &models {
        rt &= m.to_string().parse::<NoiseModel>().unwrap() == *m;
        for k in -20..=20 {
            let v = 0.1 * k as f64 * m.scale();
            rt &= (m.quantile(m.cdf(v)).unwrap() - v).abs() <= 1e-8 * v.abs().max(m.scale());
        }
    }
    let cfg: RunConfig = "model=hybrid:alpha=1,sigma=1\neps=-2:2:41\nn=500\nruns=100\n".parse().unwrap();
    rt &= cfg.to_text().parse::<RunConfig>().unwrap() == cfg;
    g.check("8.round_trips", rt, "model text, config text, quantile∘cdf".into());

    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for m in &models {
        if matches!(m.family(), Family::Laplacian { .. }) {
            for k in 0..20 {
                let v = if k % 2 == 0 { 1.0 } else { -1.0 } * (0.137 + 0.113 * k as f64);
                let d1 = m.pdf_d1(v).unwrap();
                worst = worst.max(((m.pdf(v + h) - m.pdf(v - h)) / (2.0 * h) - d1).abs() / d1.abs());
            }
            continue;
        }
        for k in 0..20 {
            let v = if k % 2 == 0 { 1.0 } else { -1.0 } * m.scale() * (0.137 + 0.113 * k as f64);
            if matches!(m.family(), Family::HybridUniformGaussian { .. }) && (v.abs() - 0.5).abs() < 1e-3 {
                continue;
            }
            let floor = 1e-9 * m.peak();
            let d1 = m.pdf_d1(v).unwrap();
            let d2 = m.pdf_d2(v).unwrap();
            let fd1 = (m.pdf(v + h) - m.pdf(v - h)) / (2.0 * h);
            let fd2 = (m.pdf_d1(v + h).unwrap() - m.pdf_d1(v - h).unwrap()) / (2.0 * h);
            worst = worst.max((fd1 - d1).abs() / d1.abs().max(floor));
            worst = worst.max((fd2 - d2).abs() / d2.abs().max(floor));
        }
    }
    g.check("8.fd_derivatives", worst <= 1e-5, format!("worst relative gap {worst:e} ≤ 1e-5"));

    let n = 100_000;
    let crit = 1.63 / (n as f64).sqrt();
    let mut worst_d: f64 = 0.0;
    for (i, m) in models.iter().enumerate() {
        worst_d = worst_d.max(ks(m, m.sample(Seed::new(99, i as u64), n)));
    }
    g.check("8.ks_samplers", worst_d < crit, format!("max D = {worst_d:.5} < {crit:.5}"));

    let mut spec = mc_spec(hybrid(), 200, vec![-0.8, 0.0, 0.8]);
    spec.n_runs = 2_000;
    let one = run_experiment_with_threads(&spec, 1).unwrap().to_csv();
    let many = run_experiment_with_threads(&spec, 6).unwrap().to_csv();
    g.check("8.thread_determinism", one == many, "1 vs 6 workers, byte-identical CSV".into());

    let e = efficiency_check(&mc_spec(ggd4(), 500, vec![]), 0.7).unwrap();
    g.check(
        "8.efficiency_ggd4_0.7",
        e.within_band,
        format!("MSE/CRB = {:.4} ± {:.4}", e.ratio, e.ratio_std_error),
    );
    let st = point_stats(&run_point(&mc_spec(hybrid(), 500, vec![]), 0.0), 0.0);
    g.check(
        "8.no_saturation_n500",
        st.saturated_runs == 0,
        format!("{} saturated of 20000", st.saturated_runs),
    );
}

#[test]
fn acceptance() {
    let mut g = Gate { results: vec![] };
    closed_form_anchors(&mut g);
    relative_losses(&mut g);
    symmetry_classes(&mut g);
    optimal_thresholds(&mut g);
    beta_sweep(&mut g);
    monte_carlo(&mut g);
    bsc(&mut g);
    properties(&mut g);
    let failed: Vec<&str> = g.results.iter().filter(|r| !r.1).map(|r| r.0.as_str()).collect();
    println!("{} checks, {} failed", g.results.len(), failed.len());
    assert!(failed.is_empty(), "failed: {failed:?}");
}
