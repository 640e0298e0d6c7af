//! Cramér–Rao bound for the threshold offset ε = τ₀ − x.
//!
//! `b_of_eps` always goes through the model's cdf/pdf. The Laplacian and
//! GGD closed forms are kept as separate functions so tests can compare the
//! two routes instead of one silently replacing the other.

use serde::{Deserialize, Serialize};

use crate::error::{Error, NonDiffKind, Result};
use crate::grid::Grid;
use crate::noise::{Family, NoiseModel};
use crate::quadrature;
use crate::special_fn::{self, Accuracy};
use crate::table;

/// Binary symmetric channel: each bit is flipped with probability `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChannelRepr", into = "ChannelRepr")]
pub struct ChannelModel {
    q: f64,
}

#[derive(Serialize, Deserialize)]
struct ChannelRepr {
    q: f64,
}

impl TryFrom<ChannelRepr> for ChannelModel {
    type Error = Error;
    fn try_from(r: ChannelRepr) -> Result<Self> {
        ChannelModel::new(r.q)
    }
}

impl From<ChannelModel> for ChannelRepr {
    fn from(c: ChannelModel) -> Self {
        ChannelRepr { q: c.q }
    }
}

impl ChannelModel {
    pub fn new(q: f64) -> Result<Self> {
        if (0.0..0.5).contains(&q) {
            Ok(Self { q })
        } else {
            Err(Error::InvalidParameter {
                name: "q",
                value: q,
                reason: "flip probability must lie in [0, 0.5)",
            })
        }
    }

    pub fn perfect() -> Self {
        Self { q: 0.0 }
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// q(1−q)/(1−2q)², the weight of the extra 1/f² term.
    pub fn penalty(&self) -> f64 {
        let q = self.q;
        let d = 1.0 - 2.0 * q;
        q * (1.0 - q) / (d * d)
    }

    /// Probability of receiving −1 when the quantizer emits −1 with probability `p`.
    pub fn received_minus_prob(&self, p: f64) -> f64 {
        self.q + (1.0 - 2.0 * self.q) * p
    }
}

impl Default for ChannelModel {
    fn default() -> Self {
        Self::perfect()
    }
}

/// B(ε) = F(ε)[1 − F(ε)] / f²(ε).
pub fn b_of_eps(m: &NoiseModel, eps: f64) -> Result<f64> {
    let f = m.pdf(eps);
    if !(f > 0.0) {
        return Err(Error::Overflow("b_of_eps: density underflows at this offset"));
    }
    // 1 − F(ε) is taken as F(−ε) so the far tail keeps full precision.
    let b = (m.cdf(eps) / f) * (m.cdf(-eps) / f);
    if b.is_finite() {
        Ok(b)
    } else {
        Err(Error::Overflow("b_of_eps"))
    }
}

/// Closed form for Laplacian noise: δ²[2 exp(|ε/δ|) − 1].
pub fn b_laplacian_closed(delta: f64, eps: f64) -> f64 {
    delta * delta * (2.0 * (eps / delta).abs().exp() - 1.0)
}

/// Closed form for GGD noise via the incomplete gamma function.
pub fn b_ggd_closed(beta: f64, delta: f64, eps: f64) -> Result<f64> {
    if !(beta > 1.0) || !(delta > 0.0) {
        return Err(Error::Domain {
            func: "b_ggd_closed",
            msg: format!("requires beta > 1 and delta > 0, got beta = {beta}, delta = {delta}"),
        });
    }
    let a = 1.0 / beta;
    let g = special_fn::gamma(a)?;
    let w = (eps / delta).abs().powf(beta);
    let (p, q) = special_fn::reg_inc_gamma_pair(a, w, &Accuracy::default())?;
    // 1 − P² = (1 + P)·Q; Q is taken directly from the continued fraction.
    let scale = delta * g / beta;
    let e = w.exp();
    let b = scale * scale * (1.0 + p) * (q * e) * e;
    if b.is_finite() {
        Ok(b)
    } else {
        Err(Error::Overflow("b_ggd_closed"))
    }
}

/// B′(ε) = B(ε) + q(1−q)/(1−2q)² · 1/f²(ε).
pub fn b_bsc(m: &NoiseModel, ch: &ChannelModel, eps: f64) -> Result<f64> {
    let b = b_of_eps(m, eps)?;
    if ch.q() == 0.0 {
        return Ok(b);
    }
    let inv_f = 1.0 / m.pdf(eps);
    let total = b + ch.penalty() * inv_f * inv_f;
    if total.is_finite() {
        Ok(total)
    } else {
        Err(Error::Overflow("b_bsc"))
    }
}

/// A real value that may be +∞ or undefined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtValue {
    Finite(f64),
    PositiveInfinity,
    Undefined,
}

impl ExtValue {
    pub fn finite(&self) -> Option<f64> {
        match self {
            ExtValue::Finite(v) => Some(*v),
            _ => None,
        }
    }
}

/// Nature of the stationary point of B (or B′) at ε = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    LocalMin,
    LocalMax,
    FlatOrHigherOrder,
    Underivable,
}

fn classify(second: ExtValue) -> Classification {
    match second {
        ExtValue::Finite(v) if v > 0.0 => Classification::LocalMin,
        ExtValue::Finite(v) if v < 0.0 => Classification::LocalMax,
        ExtValue::Finite(_) => Classification::FlatOrHigherOrder,
        ExtValue::PositiveInfinity => Classification::LocalMin,
        ExtValue::Undefined => Classification::Underivable,
    }
}

/// f″(0), folding the non-differentiable cases into [`ExtValue`].
fn curvature_at_origin(m: &NoiseModel) -> std::result::Result<f64, NonDiffKind> {
    match m.pdf_d2(0.0) {
        Ok(v) => Ok(v),
        Err(Error::NonDifferentiable { kind, .. }) => Err(kind),
        Err(other) => unreachable!("pdf_d2 only fails on non-differentiable points: {other}"),
    }
}

/// d²B/dε² at 0, i.e. −½ f″(0)/f³(0) − 2.
pub fn b_second_deriv_at_0(m: &NoiseModel) -> ExtValue {
    bsc_second_deriv_at_0(m, &ChannelModel::perfect())
}

/// d²B′/dε² at 0 = −f″(0) / (2 f³(0) (1−2q)²) − 2.
pub fn bsc_second_deriv_at_0(m: &NoiseModel, ch: &ChannelModel) -> ExtValue {
    let f0 = m.peak();
    let d = 1.0 - 2.0 * ch.q();
    match curvature_at_origin(m) {
        Ok(f2) => ExtValue::Finite(-0.5 * f2 / (f0 * f0 * f0 * d * d) - 2.0),
        Err(NonDiffKind::InfiniteCurvature) => ExtValue::PositiveInfinity,
        Err(_) => ExtValue::Undefined,
    }
}

/// Outcome of the local test of ε = 0 as a minimizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetryVerdict {
    pub second_deriv_at_0: ExtValue,
    /// −f″(0)/(1−2q)²
    pub lhs: ExtValue,
    /// 4 f³(0)
    pub rhs: f64,
    pub condition_holds: Option<bool>,
    pub classification: Classification,
}

/// Checks −f″(0)/(1−2q)² > 4f³(0); with q = 0 this is the perfect-channel condition.
pub fn symmetry_condition(m: &NoiseModel, ch: &ChannelModel) -> SymmetryVerdict {
    let f0 = m.peak();
    let rhs = 4.0 * f0 * f0 * f0;
    let d = 1.0 - 2.0 * ch.q();
    let second = bsc_second_deriv_at_0(m, ch);
    let lhs = match curvature_at_origin(m) {
        // `+ 0.0` turns a flat peak's −0 into +0.
        Ok(f2) => ExtValue::Finite(-f2 / (d * d) + 0.0),
        Err(NonDiffKind::InfiniteCurvature) => ExtValue::PositiveInfinity,
        Err(_) => ExtValue::Undefined,
    };
    let condition_holds = match lhs {
        ExtValue::Finite(l) => Some(l > rhs),
        ExtValue::PositiveInfinity => Some(true),
        ExtValue::Undefined => None,
    };
    SymmetryVerdict {
        second_deriv_at_0: second,
        lhs,
        rhs,
        condition_holds,
        classification: classify(second),
    }
}

/// Smallest flip probability at which ε = 0 becomes a local minimum of B′,
/// given f(0) and f″(0).
///
/// `Some(0)` when the perfect-channel condition already holds; `None` when
/// f″(0) ≥ 0 so no channel quality helps.
pub fn critical_q_from_curvature(f0: f64, f2: f64) -> Option<f64> {
    let cube4 = 4.0 * f0 * f0 * f0;
    if -f2 > cube4 {
        Some(0.0)
    } else if f2 < 0.0 {
        Some(0.5 * (1.0 - (-f2 / cube4).sqrt()))
    } else {
        None
    }
}

/// Critical BSC flip probability for a noise model.
pub fn critical_bsc_q(m: &NoiseModel) -> Result<Option<f64>> {
    match m.pdf_d2(0.0) {
        Ok(f2) => Ok(critical_q_from_curvature(m.peak(), f2)),
        Err(Error::NonDifferentiable {
            kind: NonDiffKind::InfiniteCurvature,
            ..
        }) => Ok(Some(0.0)),
        Err(e) => Err(e),
    }
}

/// Fisher information ∫ f′²/f of the unquantized location model.
///
/// Gaussian, Cauchy and Laplacian use their analytic values; the others go
/// through [`fisher_info_quadrature`].
pub fn continuous_fisher_info(m: &NoiseModel) -> Result<f64> {
    match m.family() {
        Family::Gaussian { delta } => Ok(2.0 / (delta * delta)),
        Family::Cauchy { delta } => Ok(0.5 / (delta * delta)),
        Family::Laplacian { delta } => Ok(1.0 / (delta * delta)),
        _ => fisher_info_quadrature(m),
    }
}

/// Fisher information by adaptive quadrature over the half line, doubled.
///
/// [0, 50·scale] is integrated directly and the remainder through the
/// substitution v = L/t, which heavy tails (Cauchy) need to reach 1e-8.
pub fn fisher_info_quadrature(m: &NoiseModel) -> Result<f64> {
    let integrand = |v: f64| {
        if v == 0.0 {
            return 0.0;
        }
        let f = m.pdf(v);
        if f == 0.0 {
            return 0.0;
        }
        match m.pdf_d1(v) {
            Ok(d1) => d1 * d1 / f,
            Err(_) => 0.0,
        }
    };
    let breaks: Vec<f64> = match m.family() {
        Family::HybridUniformGaussian { alpha, .. } if alpha > 0.0 => vec![0.5 * alpha],
        _ => vec![],
    };
    let scale = m.scale();
    let half = quadrature::integrate_half_line(integrand, 50.0 * scale, &breaks, 0.5e-10)?;
    Ok(2.0 * half)
}

/// Ratio of the quantized bound at ε = 0 to the continuous-measurement bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelativeLoss {
    pub ratio: f64,
    pub db: f64,
}

impl RelativeLoss {
    pub fn from_ratio(ratio: f64) -> Self {
        Self {
            ratio,
            db: 10.0 * ratio.log10(),
        }
    }
}

/// B(0) · I, with its 10·log₁₀ value.
pub fn relative_loss_at_0(m: &NoiseModel) -> Result<RelativeLoss> {
    Ok(RelativeLoss::from_ratio(b_of_eps(m, 0.0)? * continuous_fisher_info(m)?))
}

/// One sample of a bound curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub epsilon: f64,
    #[serde(rename = "b")]
    pub b_value: f64,
    pub crb: f64,
}

/// B (or B′) and CRB = B/N over a grid of offsets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCurve {
    pub model_desc: String,
    pub n_samples: u64,
    pub channel_q: f64,
    pub rows: Vec<BoundRow>,
}

impl BoundCurve {
    pub fn compute(m: &NoiseModel, ch: &ChannelModel, n_samples: u64, grid: &Grid) -> Result<Self> {
        if n_samples == 0 {
            return Err(Error::InvalidParameter {
                name: "n_samples",
                value: 0.0,
                reason: "must be at least 1",
            });
        }
        let rows = grid
            .values()
            .into_iter()
            .map(|epsilon| {
                let b_value = b_bsc(m, ch, epsilon)?;
                Ok(BoundRow {
                    epsilon,
                    b_value,
                    crb: b_value / n_samples as f64,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            model_desc: m.to_string(),
            n_samples,
            channel_q: ch.q(),
            rows,
        })
    }

    /// CSV with header `epsilon,b,crb`, nine significant digits.
    pub fn to_csv(&self) -> String {
        table::write_csv(
            &["epsilon", "b", "crb"],
            self.rows
                .iter()
                .map(|r| vec![table::sig9(r.epsilon), table::sig9(r.b_value), table::sig9(r.crb)]),
        )
    }

    pub fn rows_from_csv(text: &str) -> Result<Vec<BoundRow>> {
        table::read_csv(text)
    }
}
