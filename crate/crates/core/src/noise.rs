//! Symmetric unimodal noise families.
//!
//! Every density here is even, strictly positive and nonincreasing on
//! v > 0. CDFs are evaluated on the lower tail (v ≤ 0) and reflected, so
//! `cdf(-v)` is accurate far into the tail where `1 - cdf(v)` would cancel.

use std::f64::consts::{FRAC_1_PI, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, NonDiffKind, Result};
use crate::quadrature;
use crate::special_fn::{self, Accuracy};

const SQRT_PI: f64 = 1.772_453_850_905_516;
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Random generator behind every sampling routine in the crate.
pub const RNG_ALGORITHM: &str =
    "ChaCha8Rng (rand_chacha 0.9): seed_from_u64(master_seed), set_stream(stream_id)";

/// Seed for one reproducible random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl Seed {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        Self {
            master_seed,
            stream_id,
        }
    }

    /// Seed for the stream `offset` places after this one under the same master seed.
    pub fn substream(&self, offset: u64) -> Self {
        Self::new(self.master_seed, self.stream_id.wrapping_add(offset))
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// Parameters of one noise family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// f(v) = exp(−v²/δ²) / (δ√π)
    Gaussian { delta: f64 },
    /// f(v) = 1 / (πδ (1 + (v/δ)²))
    Cauchy { delta: f64 },
    /// f(v) = exp(−|v|/δ) / (2δ)
    Laplacian { delta: f64 },
    /// Flat on [−α/2, α/2] with Gaussian tails of standard deviation σ.
    HybridUniformGaussian { alpha: f64, sigma: f64 },
    /// Generalized Gaussian, f(v) ∝ exp(−|v/δ|^β), β > 1.
    Ggd { beta: f64, delta: f64 },
}

/// A validated noise model with its normalization constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    family: Family,
    // density at the origin
    peak: f64,
    // GGD: Γ(1/β)
    gamma_inv_beta: f64,
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and strictly positive",
        })
    }
}

impl NoiseModel {
    pub fn new(family: Family) -> Result<Self> {
        let (peak, gamma_inv_beta) = match family {
            Family::Gaussian { delta } => (1.0 / (positive("delta", delta)? * SQRT_PI), 0.0),
            Family::Cauchy { delta } => (FRAC_1_PI / positive("delta", delta)?, 0.0),
            Family::Laplacian { delta } => (0.5 / positive("delta", delta)?, 0.0),
            Family::HybridUniformGaussian { alpha, sigma } => {
                if !(alpha >= 0.0 && alpha.is_finite()) {
                    return Err(Error::InvalidParameter {
                        name: "alpha",
                        value: alpha,
                        reason: "must be finite and nonnegative",
                    });
                }
                let sigma = positive("sigma", sigma)?;
                let c = 1.0 + alpha / (SQRT_2PI * sigma);
                (1.0 / (c * SQRT_2PI * sigma), 0.0)
            }
            Family::Ggd { beta, delta } => {
                if !(beta > 1.0 && beta.is_finite()) {
                    return Err(Error::InvalidParameter {
                        name: "beta",
                        value: beta,
                        reason: "must be finite and greater than 1 (f' undefined at 0 otherwise)",
                    });
                }
                let delta = positive("delta", delta)?;
                let g = special_fn::gamma(1.0 / beta)?;
                (beta / (2.0 * delta * g), g)
            }
        };
        Ok(Self {
            family,
            peak,
            gamma_inv_beta,
        })
    }

    pub fn gaussian(delta: f64) -> Result<Self> {
        Self::new(Family::Gaussian { delta })
    }

    pub fn cauchy(delta: f64) -> Result<Self> {
        Self::new(Family::Cauchy { delta })
    }

    pub fn laplacian(delta: f64) -> Result<Self> {
        Self::new(Family::Laplacian { delta })
    }

    pub fn hybrid(alpha: f64, sigma: f64) -> Result<Self> {
        Self::new(Family::HybridUniformGaussian { alpha, sigma })
    }

    pub fn ggd(beta: f64, delta: f64) -> Result<Self> {
        Self::new(Family::Ggd { beta, delta })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Natural length scale: δ, or α/2 + σ for the hybrid.
    pub fn scale(&self) -> f64 {
        match self.family {
            Family::Gaussian { delta }
            | Family::Cauchy { delta }
            | Family::Laplacian { delta }
            | Family::Ggd { delta, .. } => delta,
            Family::HybridUniformGaussian { alpha, sigma } => 0.5 * alpha + sigma,
        }
    }

    /// Normalization constant C = 1 + α/(√(2π)σ) of the hybrid; `None` for other families.
    pub fn hybrid_normalization(&self) -> Option<f64> {
        match self.family {
            Family::HybridUniformGaussian { alpha, sigma } => Some(1.0 + alpha / (SQRT_2PI * sigma)),
            _ => None,
        }
    }

    /// Density at the origin, f(0).
    pub fn peak(&self) -> f64 {
        self.peak
    }

    pub fn pdf(&self, v: f64) -> f64 {
        let av = v.abs();
        match self.family {
            Family::Gaussian { delta } => {
                let u = av / delta;
                self.peak * (-u * u).exp()
            }
            Family::Cauchy { delta } => {
                let u = av / delta;
                self.peak / (1.0 + u * u)
            }
            Family::Laplacian { delta } => self.peak * (-av / delta).exp(),
            Family::HybridUniformGaussian { alpha, sigma } => {
                let excess = av - 0.5 * alpha;
                if excess <= 0.0 {
                    self.peak
                } else {
                    let z = excess / sigma;
                    self.peak * (-0.5 * z * z).exp()
                }
            }
            Family::Ggd { beta, delta } => self.peak * (-(av / delta).powf(beta)).exp(),
        }
    }

    /// F(v) for v ≤ 0, computed directly on the lower tail.
    fn lower_cdf(&self, v: f64) -> f64 {
        debug_assert!(v <= 0.0);
        let av = -v;
        match self.family {
            Family::Gaussian { delta } => 0.5 * special_fn::erfc(av / delta),
            Family::Cauchy { delta } => {
                if av == 0.0 {
                    0.5
                } else {
                    (delta / av).atan() * FRAC_1_PI
                }
            }
            Family::Laplacian { delta } => 0.5 * (-av / delta).exp(),
            Family::HybridUniformGaussian { alpha, sigma } => {
                let excess = av - 0.5 * alpha;
                if excess <= 0.0 {
                    0.5 + v * self.peak
                } else {
                    // Tail mass beyond the corner is 1/(2C) = σ√(2π)·f(0)/2.
                    let z = excess / sigma;
                    self.peak * SQRT_2PI * sigma * 0.5 * special_fn::erfc(z / SQRT_2)
                }
            }
            Family::Ggd { beta, delta } => {
                let w = (av / delta).powf(beta);
                // a = 1/β < 1: series and continued fraction converge well inside the default cap.
                let q = special_fn::reg_inc_gamma_pair(1.0 / beta, w, &Accuracy::default())
                    .map(|(_, q)| q)
                    .expect("incomplete gamma converges for a < 1");
                0.5 * q
            }
        }
    }

    pub fn cdf(&self, v: f64) -> f64 {
        if v.is_nan() {
            return v;
        }
        if v <= 0.0 {
            self.lower_cdf(v)
        } else {
            1.0 - self.lower_cdf(-v)
        }
    }

    /// Survival function 1 − F(v) = F(−v).
    pub fn sf(&self, v: f64) -> f64 {
        self.cdf(-v)
    }

    /// F⁻¹(p) for 0 < p < 1.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain {
                func: "quantile",
                msg: format!("requires 0 < p < 1, got {p}"),
            });
        }
        if p == 0.5 {
            return Ok(0.0);
        }
        if p > 0.5 {
            return Ok(-self.lower_quantile(1.0 - p)?);
        }
        self.lower_quantile(p)
    }

    fn lower_quantile(&self, p: f64) -> Result<f64> {
        debug_assert!(p > 0.0 && p < 0.5);
        Ok(match self.family {
            Family::Gaussian { delta } => -delta * special_fn::inv_erfc(2.0 * p)?,
            Family::Cauchy { delta } => -delta / (PI * p).tan(),
            Family::Laplacian { delta } => delta * (2.0 * p).ln(),
            Family::HybridUniformGaussian { alpha, sigma } => {
                let tail_mass = 0.5 * self.peak * SQRT_2PI * sigma;
                if p < tail_mass {
                    let z = SQRT_2 * special_fn::inv_erfc(p / tail_mass)?;
                    -0.5 * alpha - sigma * z
                } else {
                    (p - 0.5) / self.peak
                }
            }
            Family::Ggd { beta, delta } => {
                let w = special_fn::inv_reg_upper_inc_gamma(1.0 / beta, 2.0 * p)?;
                -delta * w.powf(1.0 / beta)
            }
        })
    }

    /// f′(v).
    pub fn pdf_d1(&self, v: f64) -> Result<f64> {
        let s = v.signum();
        let av = v.abs();
        Ok(match self.family {
            Family::Gaussian { delta } => -2.0 * v / (delta * delta) * self.pdf(v),
            Family::Cauchy { delta } => {
                let u = v / delta;
                let d = 1.0 + u * u;
                -2.0 * u * self.peak / (delta * d * d)
            }
            Family::Laplacian { delta } => {
                if v == 0.0 {
                    return Err(Error::NonDifferentiable {
                        at: v,
                        kind: NonDiffKind::Kink,
                    });
                }
                -s * self.pdf(v) / delta
            }
            Family::HybridUniformGaussian { alpha, sigma } => {
                let excess = av - 0.5 * alpha;
                if excess <= 0.0 {
                    0.0
                } else {
                    -s * excess / (sigma * sigma) * self.pdf(v)
                }
            }
            Family::Ggd { beta, delta } => {
                if v == 0.0 {
                    0.0
                } else {
                    let u = av / delta;
                    -s * beta / delta * u.powf(beta - 1.0) * self.pdf(v)
                }
            }
        })
    }

    /// f″(v).
    pub fn pdf_d2(&self, v: f64) -> Result<f64> {
        let av = v.abs();
        Ok(match self.family {
            Family::Gaussian { delta } => {
                let d2 = delta * delta;
                (4.0 * v * v / (d2 * d2) - 2.0 / d2) * self.pdf(v)
            }
            Family::Cauchy { delta } => {
                let u = v / delta;
                let d = 1.0 + u * u;
                self.peak / (delta * delta) * (6.0 * u * u - 2.0) / (d * d * d)
            }
            Family::Laplacian { delta } => {
                if v == 0.0 {
                    return Err(Error::NonDifferentiable {
                        at: v,
                        kind: NonDiffKind::Kink,
                    });
                }
                self.pdf(v) / (delta * delta)
            }
            Family::HybridUniformGaussian { alpha, sigma } => {
                let excess = av - 0.5 * alpha;
                if excess == 0.0 && alpha > 0.0 {
                    return Err(Error::NonDifferentiable {
                        at: v,
                        kind: NonDiffKind::CurvatureJump,
                    });
                }
                if excess < 0.0 {
                    0.0
                } else {
                    let z = excess / sigma;
                    (z * z - 1.0) / (sigma * sigma) * self.pdf(v)
                }
            }
            Family::Ggd { beta, delta } => {
                if v == 0.0 {
                    if beta < 2.0 {
                        return Err(Error::NonDifferentiable {
                            at: v,
                            kind: NonDiffKind::InfiniteCurvature,
                        });
                    }
                    if beta == 2.0 {
                        -2.0 / (delta * delta) * self.peak
                    } else {
                        0.0
                    }
                } else {
                    let u = av / delta;
                    let ub = u.powf(beta);
                    beta * (beta * ub - (beta - 1.0)) * ub / (av * av) * self.pdf(v)
                }
            }
        })
    }

    /// Variance of the noise.
    pub fn variance(&self) -> Result<f64> {
        match self.family {
            Family::Gaussian { delta } => Ok(0.5 * delta * delta),
            Family::Cauchy { .. } => Err(Error::UndefinedMoment("Cauchy noise has no variance")),
            Family::Laplacian { delta } => Ok(2.0 * delta * delta),
            Family::Ggd { beta, delta } => {
                Ok(delta * delta * special_fn::gamma(3.0 / beta)? / self.gamma_inv_beta)
            }
            Family::HybridUniformGaussian { alpha, .. } => {
                let half = 2.0
                    * quadrature::integrate_half_line(
                        |v| v * v * self.pdf(v),
                        50.0 * self.scale(),
                        &[0.5 * alpha],
                        1e-12,
                    )?;
                Ok(half)
            }
        }
    }

    /// One draw using the family's direct sampler.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.family {
            Family::Gaussian { delta } => {
                let z: f64 = StandardNormal.sample(rng);
                z * delta / SQRT_2
            }
            Family::Cauchy { delta } => {
                // Open interval (0, 1) keeps tan finite.
                let u: f64 = rng.random::<f64>();
                let u = if u == 0.0 { 0.5 } else { u };
                delta * (PI * (u - 0.5)).tan()
            }
            Family::Laplacian { delta } => {
                let e: f64 = Exp1.sample(rng);
                if rng.random::<bool>() {
                    delta * e
                } else {
                    -delta * e
                }
            }
            Family::HybridUniformGaussian { alpha, sigma } => {
                let tail_mass = 0.5 * self.peak * SQRT_2PI * sigma;
                let u: f64 = rng.random();
                if u < tail_mass || u >= 1.0 - tail_mass {
                    let z: f64 = StandardNormal.sample(rng);
                    let mag = 0.5 * alpha + sigma * z.abs();
                    if u < tail_mass {
                        -mag
                    } else {
                        mag
                    }
                } else {
                    // u is uniform on the middle component; map it through the linear CDF.
                    (u - 0.5) / self.peak
                }
            }
            Family::Ggd { beta, delta } => {
                let g: f64 = Gamma::new(1.0 / beta, 1.0)
                    .expect("shape 1/beta is positive")
                    .sample(rng);
                let mag = delta * g.powf(1.0 / beta);
                if rng.random::<bool>() {
                    mag
                } else {
                    -mag
                }
            }
        }
    }

    /// `n` i.i.d. draws from the stream identified by `seed`.
    pub fn sample(&self, seed: Seed, n: usize) -> Vec<f64> {
        let mut rng = seed.rng();
        (0..n).map(|_| self.draw(&mut rng)).collect()
    }

    /// `n` draws by inverse transform of uniforms; cross-check for [`NoiseModel::sample`].
    pub fn sample_inverse_transform(&self, seed: Seed, n: usize) -> Vec<f64> {
        let mut rng = seed.rng();
        (0..n)
            .map(|_| loop {
                let u: f64 = rng.random();
                if u > 0.0 {
                    break self.quantile(u).expect("u lies in (0, 1)");
                }
            })
            .collect()
    }
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Gaussian { delta } => write!(f, "gaussian:delta={delta:?}"),
            Family::Cauchy { delta } => write!(f, "cauchy:delta={delta:?}"),
            Family::Laplacian { delta } => write!(f, "laplacian:delta={delta:?}"),
            Family::HybridUniformGaussian { alpha, sigma } => {
                write!(f, "hybrid:alpha={alpha:?},sigma={sigma:?}")
            }
            Family::Ggd { beta, delta } => write!(f, "ggd:beta={beta:?},delta={delta:?}"),
        }
    }
}

impl FromStr for NoiseModel {
    type Err = Error;

    /// Parses `family:key=value,...`, e.g. `ggd:beta=4.0,delta=1.0`.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (name, params) = text.split_once(':').unwrap_or((text, ""));
        let keys: &[&'static str] = match name {
            "gaussian" | "cauchy" | "laplacian" => &["delta"],
            "hybrid" => &["alpha", "sigma"],
            "ggd" => &["beta", "delta"],
            other => {
                return Err(Error::parse(
                    "model",
                    format!(
                        "unknown noise family `{other}` (expected gaussian, cauchy, laplacian, hybrid or ggd)"
                    ),
                ))
            }
        };
        let mut values: Vec<Option<f64>> = vec![None; keys.len()];
        for item in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, raw) = item
                .split_once('=')
                .ok_or_else(|| Error::parse(item, "expected key=value"))?;
            let key = key.trim();
            let slot = keys
                .iter()
                .position(|k| *k == key)
                .ok_or_else(|| Error::parse(key, format!("unknown parameter for `{name}`")))?;
            if values[slot].is_some() {
                return Err(Error::parse(key, "given more than once"));
            }
            let value: f64 = raw
                .trim()
                .parse()
                .map_err(|_| Error::parse(key, format!("`{}` is not a number", raw.trim())))?;
            values[slot] = Some(value);
        }
        let get = |i: usize| values[i].ok_or_else(|| Error::parse(keys[i], "missing parameter"));
        let model = match name {
            "gaussian" => NoiseModel::gaussian(get(0)?),
            "cauchy" => NoiseModel::cauchy(get(0)?),
            "laplacian" => NoiseModel::laplacian(get(0)?),
            "hybrid" => NoiseModel::hybrid(get(0)?, get(1)?),
            _ => NoiseModel::ggd(get(0)?, get(1)?),
        };
        model.map_err(|e| match e {
            Error::InvalidParameter { name, reason, .. } => Error::parse(name, reason),
            other => other,
        })
    }
}

impl Serialize for NoiseModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NoiseModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn all_models() -> Vec<NoiseModel> {
        vec![
            NoiseModel::gaussian(1.0).unwrap(),
            NoiseModel::cauchy(1.0).unwrap(),
            NoiseModel::laplacian(1.0).unwrap(),
            NoiseModel::hybrid(1.0, 1.0).unwrap(),
            NoiseModel::ggd(4.0, 1.0).unwrap(),
            NoiseModel::ggd(1.5, 0.7).unwrap(),
        ]
    }

    #[test]
    fn construction_guards() {
        assert!(NoiseModel::gaussian(0.0).is_err());
        assert!(NoiseModel::cauchy(-1.0).is_err());
        assert!(NoiseModel::hybrid(-0.1, 1.0).is_err());
        assert!(NoiseModel::hybrid(1.0, 0.0).is_err());
        assert!(NoiseModel::ggd(1.0, 1.0).is_err());
        assert!(NoiseModel::ggd(0.5, 1.0).is_err());
        assert!(NoiseModel::ggd(3.0, f64::NAN).is_err());
        assert!(NoiseModel::hybrid(0.0, 1.0).is_ok());
    }

    #[test]
    fn pdf_at_origin() {
        assert_relative_eq!(NoiseModel::gaussian(1.0).unwrap().pdf(0.0), 1.0 / SQRT_PI, max_relative = 1e-15);
        assert_relative_eq!(NoiseModel::cauchy(1.0).unwrap().pdf(0.0), FRAC_1_PI, max_relative = 1e-15);
        // Plateau height 1/(C√(2π)σ) from mpmath.
        assert_relative_eq!(
            NoiseModel::hybrid(1.0, 1.0).unwrap().pdf(0.0),
            0.285_174_224_834_318_7,
            max_relative = 1e-14
        );
    }

    #[test]
    fn cdf_anchors() {
        for m in all_models() {
            assert_eq!(m.cdf(0.0), 0.5, "{m}");
        }
        assert_relative_eq!(
            NoiseModel::laplacian(1.0).unwrap().cdf(1.0),
            1.0 - 0.5 * (-1.0f64).exp(),
            max_relative = 1e-15
        );
        // mpmath quadrature of the hybrid density up to 0.5
        assert_relative_eq!(
            NoiseModel::hybrid(1.0, 1.0).unwrap().cdf(0.5),
            0.642_587_112_417_159_4,
            max_relative = 1e-14
        );
    }

    #[test]
    fn quantile_anchors() {
        for m in all_models() {
            assert_eq!(m.quantile(0.5).unwrap(), 0.0);
            assert!(m.quantile(0.0).is_err());
            assert!(m.quantile(1.0).is_err());
        }
        assert_relative_eq!(NoiseModel::cauchy(1.0).unwrap().quantile(0.75).unwrap(), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn ggd_quantile_matches_bisection_on_cdf() {
        let m = NoiseModel::ggd(4.0, 1.0).unwrap();
        let (mut lo, mut hi) = (0.0, 5.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if m.cdf(mid) < 0.9 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let q = m.quantile(0.9).unwrap();
        assert_relative_eq!(q, 0.5 * (lo + hi), max_relative = 1e-10);
        assert!((m.cdf(q) - 0.9).abs() < 1e-9);
    }

    #[test]
    fn derivatives_at_origin() {
        for m in all_models() {
            if !matches!(m.family(), Family::Laplacian { .. }) {
                assert_eq!(m.pdf_d1(0.0).unwrap(), 0.0, "{m}");
            }
        }
        assert_relative_eq!(
            NoiseModel::gaussian(1.0).unwrap().pdf_d2(0.0).unwrap(),
            -2.0 / SQRT_PI,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            NoiseModel::gaussian(2.0).unwrap().pdf_d2(0.0).unwrap(),
            -2.0 / (8.0 * SQRT_PI),
            max_relative = 1e-15
        );
        assert_eq!(NoiseModel::hybrid(1.0, 1.0).unwrap().pdf_d2(0.0).unwrap(), 0.0);
        assert_eq!(NoiseModel::ggd(4.0, 1.0).unwrap().pdf_d2(0.0).unwrap(), 0.0);
    }

    #[test]
    fn non_differentiable_points() {
        let lap = NoiseModel::laplacian(1.0).unwrap();
        assert!(matches!(lap.pdf_d1(0.0), Err(Error::NonDifferentiable { kind: NonDiffKind::Kink, .. })));
        assert!(matches!(lap.pdf_d2(0.0), Err(Error::NonDifferentiable { kind: NonDiffKind::Kink, .. })));
        let hyb = NoiseModel::hybrid(1.0, 1.0).unwrap();
        assert!(hyb.pdf_d1(0.5).is_ok());
        assert!(matches!(
            hyb.pdf_d2(-0.5),
            Err(Error::NonDifferentiable { kind: NonDiffKind::CurvatureJump, .. })
        ));
        let ggd = NoiseModel::ggd(1.5, 1.0).unwrap();
        assert!(matches!(
            ggd.pdf_d2(0.0),
            Err(Error::NonDifferentiable { kind: NonDiffKind::InfiniteCurvature, .. })
        ));
    }

    #[test]
    fn variance_values() {
        assert_eq!(NoiseModel::gaussian(1.0).unwrap().variance().unwrap(), 0.5);
        assert_relative_eq!(NoiseModel::ggd(2.0, 1.0).unwrap().variance().unwrap(), 0.5, max_relative = 1e-14);
        // Γ(0.75)/Γ(0.25), matches ∫v²f by mpmath quadrature
        assert_relative_eq!(
            NoiseModel::ggd(4.0, 1.0).unwrap().variance().unwrap(),
            0.337_989_120_033_642_4,
            max_relative = 1e-12
        );
        assert_eq!(NoiseModel::laplacian(3.0).unwrap().variance().unwrap(), 18.0);
        assert!(matches!(NoiseModel::cauchy(1.0).unwrap().variance(), Err(Error::UndefinedMoment(_))));
    }

    #[test]
    fn hybrid_variance_matches_closed_form() {
        // f_U [α³/12 + 2σ(√(π/2)α²/4 + ασ + √(π/2)σ²)], evaluated with mpmath
        assert_relative_eq!(
            NoiseModel::hybrid(1.0, 1.0).unwrap().variance().unwrap(),
            1.487_645_187_361_932_3,
            max_relative = 1e-10
        );
    }

    #[test]
    fn model_text_round_trip() {
        for m in all_models() {
            let text = m.to_string();
            assert_eq!(text.parse::<NoiseModel>().unwrap(), m);
        }
        assert_eq!(NoiseModel::gaussian(1.0).unwrap().to_string(), "gaussian:delta=1.0");
        assert_eq!(
            "hybrid:sigma=1,alpha=1".parse::<NoiseModel>().unwrap().to_string(),
            "hybrid:alpha=1.0,sigma=1.0"
        );
    }

    #[test]
    fn model_text_errors_name_the_key() {
        let err = |s: &str| match s.parse::<NoiseModel>() {
            Err(Error::Parse { key, .. }) => key,
            other => panic!("expected parse error for {s}, got {other:?}"),
        };
        assert_eq!(err("gaussian:delta=abc"), "delta");
        assert_eq!(err("gaussian:scale=1"), "scale");
        assert_eq!(err("ggd:beta=4"), "delta");
        assert_eq!(err("ggd:beta=0.5,delta=1"), "beta");
        assert_eq!(err("student:nu=3"), "model");
        assert_eq!(err("laplacian:delta=1,delta=2"), "delta");
    }

    #[test]
    fn sampling_is_deterministic() {
        for m in all_models() {
            let a = m.sample(Seed::new(7, 3), 257);
            let b = m.sample(Seed::new(7, 3), 257);
            assert_eq!(a.iter().map(|x| x.to_bits()).collect::<Vec<_>>(), b.iter().map(|x| x.to_bits()).collect::<Vec<_>>());
            let c = m.sample(Seed::new(7, 4), 257);
            assert_ne!(a, c);
        }
    }
}
