//! Adaptive Gauss–Kronrod (7/15-point) integration.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the odd-indexed Kronrod nodes (XGK[1], XGK[3], XGK[5], XGK[7]).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 60;

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

fn adapt(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32, worst: &mut f64) -> f64 {
    let (value, err) = gk15(f, a, b);
    if err <= tol || depth >= MAX_DEPTH || b - a <= f64::EPSILON * a.abs().max(b.abs()) {
        if err > tol {
            *worst = worst.max(err);
        }
        return value;
    }
    let mid = 0.5 * (a + b);
    adapt(f, a, mid, 0.5 * tol, depth + 1, worst) + adapt(f, mid, b, 0.5 * tol, depth + 1, worst)
}

/// ∫ₐᵇ f to absolute tolerance `tol`, split at the given interior breakpoints.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, breaks: &[f64], tol: f64) -> Result<f64> {
    let mut knots = vec![a];
    knots.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    knots.push(b);
    let share = tol / (knots.len() - 1) as f64;
    let mut worst = 0.0f64;
    let total = knots
        .windows(2)
        .map(|w| adapt(&f, w[0], w[1], share, 0, &mut worst))
        .sum::<f64>();
    if worst > 0.0 || !total.is_finite() {
        return Err(Error::Quadrature { tol, err: worst });
    }
    Ok(total)
}

/// ∫₀^∞ f: adaptive on [0, `cut`] plus the tail mapped through v = cut / t.
pub fn integrate_half_line(f: impl Fn(f64) -> f64, cut: f64, breaks: &[f64], tol: f64) -> Result<f64> {
    let body = integrate(&f, 0.0, cut, breaks, 0.5 * tol)?;
    let tail = integrate(
        |t: f64| {
            if t <= 0.0 {
                return 0.0;
            }
            let v = cut / t;
            let fv = f(v);
            if fv == 0.0 {
                0.0
            } else {
                fv * cut / (t * t)
            }
        },
        0.0,
        1.0,
        &[],
        0.5 * tol,
    )?;
    Ok(body + tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate(|x| x.powi(5) - 3.0 * x * x, -1.0, 2.0, &[], 1e-12).unwrap();
        assert_relative_eq!(v, 64.0 / 6.0 - 1.0 / 6.0 - 9.0, epsilon = 1e-13);
    }

    #[test]
    fn kinked_and_heavy_tailed() {
        let v = integrate(|x: f64| x.abs(), -1.0, 3.0, &[0.0], 1e-12).unwrap();
        assert_relative_eq!(v, 5.0, epsilon = 1e-12);
        // ∫₀^∞ dx / (1 + x²) = π/2 needs the mapped tail.
        let v = integrate_half_line(|x| 1.0 / (1.0 + x * x), 50.0, &[], 1e-11).unwrap();
        assert_relative_eq!(v, std::f64::consts::FRAC_PI_2, epsilon = 1e-10);
    }
}
