use binquant::*;
use proptest::prelude::*;

fn any_model() -> impl Strategy<Value = NoiseModel> {
    prop_oneof![
        (0.2f64..5.0).prop_map(|d| NoiseModel::gaussian(d).unwrap()),
        (0.2f64..5.0).prop_map(|d| NoiseModel::cauchy(d).unwrap()),
        (0.2f64..5.0).prop_map(|d| NoiseModel::laplacian(d).unwrap()),
        (0.0f64..4.0, 0.2f64..3.0).prop_map(|(a, s)| NoiseModel::hybrid(a, s).unwrap()),
        (1.1f64..12.0, 0.2f64..5.0).prop_map(|(b, d)| NoiseModel::ggd(b, d).unwrap()),
    ]
}

fn x_hat(m: &NoiseModel, ch: &ChannelModel, tau0: f64, freq: f64) -> f64 {
    estimate_x_from_frequency(m, ch, tau0, freq).x_hat.finite().unwrap()
}

proptest! {
    #[test]
    fn shift_equivariance(m in any_model(), p in 0.01f64..0.99, tau0 in -5.0f64..5.0, c in -10.0f64..10.0) {
        let ch = ChannelModel::perfect();
        let a = x_hat(&m, &ch, tau0, p);
        let b = x_hat(&m, &ch, tau0 + c, p);
        prop_assert!((b - c - a).abs() <= 1e-12 * (1.0 + a.abs() + c.abs()));
    }

    #[test]
    fn decreasing_in_frequency(m in any_model(), p in 0.01f64..0.98, dp in 1e-3f64..0.01, tau0 in -2.0f64..2.0) {
        let ch = ChannelModel::perfect();
        prop_assert!(x_hat(&m, &ch, tau0, p + dp) < x_hat(&m, &ch, tau0, p));
    }

    #[test]
    fn population_round_trip(m in any_model(), x in -3.0f64..3.0, u in -1.0f64..1.0) {
        let tau0 = x + u * m.scale();
        let p = m.cdf(tau0 - x);
        let got = x_hat(&m, &ChannelModel::perfect(), tau0, p);
        prop_assert!((got - x).abs() <= 1e-9 * (1.0 + x.abs()), "{}: {} vs {}", m, got, x);
    }

    #[test]
    fn bsc_round_trip(m in any_model(), x in -3.0f64..3.0, u in -1.0f64..1.0, q in 0.0f64..0.45) {
        let ch = ChannelModel::new(q).unwrap();
        let tau0 = x + u * m.scale();
        let r = ch.received_minus_prob(m.cdf(tau0 - x));
        let got = x_hat(&m, &ch, tau0, r);
        // Undoing the channel divides by 1 - 2q, which amplifies rounding in r.
        let slack = 1e-9 / (1.0 - 2.0 * q);
        prop_assert!((got - x).abs() <= slack * (1.0 + x.abs()), "{}: {} vs {}", m, got, x);
    }

    #[test]
    fn sample_and_counts_agree(bits in proptest::collection::vec(prop_oneof![Just(-1i8), Just(1i8)], 1..300)) {
        let s = BinarySample::new(bits.clone(), 0.0).unwrap();
        let p = estimate_p(&bits).unwrap();
        prop_assert_eq!(s.counts().frequency(), p);
        let m = NoiseModel::gaussian(1.0).unwrap();
        let r = estimate_x(&m, &s);
        prop_assert_eq!(r.saturated(), p == 0.0 || p == 1.0);
    }
}
