//! Frequency-based maximum-likelihood estimate of the location parameter
//! from ±1 observations: X̂ = τ₀ − F⁻¹(p̂), with the BSC variant that
//! de-channels the received frequency first.

use serde::Serialize;

use crate::bounds::ChannelModel;
use crate::error::{Error, Result};
use crate::noise::NoiseModel;

/// Quantizer outputs together with the threshold that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct BinarySample {
    bits: Vec<i8>,
    tau0: f64,
}

impl BinarySample {
    pub fn new(bits: Vec<i8>, tau0: f64) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(&bad) = bits.iter().find(|&&b| b != 1 && b != -1) {
            return Err(Error::InvalidParameter {
                name: "bits",
                value: bad as f64,
                reason: "every element must be -1 or +1",
            });
        }
        Ok(Self { bits, tau0 })
    }

    pub fn bits(&self) -> &[i8] {
        &self.bits
    }

    pub fn tau0(&self) -> f64 {
        self.tau0
    }

    pub fn counts(&self) -> BitCounts {
        BitCounts {
            minus: self.bits.iter().filter(|&&b| b == -1).count() as u64,
            total: self.bits.len() as u64,
        }
    }
}

/// Number of −1 outputs out of `total`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitCounts {
    pub minus: u64,
    pub total: u64,
}

impl BitCounts {
    /// count/N with a single rounding.
    pub fn frequency(&self) -> f64 {
        self.minus as f64 / self.total as f64
    }
}

/// Direction in which a saturated estimate diverges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Positive,
    Negative,
}

/// X̂, or the marker for an estimate driven to ±∞.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimate {
    Finite(f64),
    Saturated(Direction),
}

impl Estimate {
    pub fn finite(&self) -> Option<f64> {
        match self {
            Estimate::Finite(x) => Some(*x),
            Estimate::Saturated(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimateResult {
    pub x_hat: Estimate,
    /// p̂ on a perfect channel, r̂ through a BSC.
    pub frequency: f64,
    /// True when the (r̂ − q)/(1 − 2q) argument had to be clamped into [0, 1].
    pub clamped: bool,
}

impl EstimateResult {
    pub fn saturated(&self) -> bool {
        matches!(self.x_hat, Estimate::Saturated(_))
    }
}

/// p̂ = fraction of −1 outputs.
pub fn estimate_p(bits: &[i8]) -> Result<f64> {
    if bits.is_empty() {
        return Err(Error::EmptyInput);
    }
    let minus = bits.iter().filter(|&&b| b == -1).count() as u64;
    Ok(BitCounts {
        minus,
        total: bits.len() as u64,
    }
    .frequency())
}

/// τ₀ − F⁻¹(arg); arg = 0 saturates toward +∞, arg = 1 toward −∞.
fn invert(m: &NoiseModel, tau0: f64, arg: f64) -> Estimate {
    if arg <= 0.0 {
        Estimate::Saturated(Direction::Positive)
    } else if arg >= 1.0 {
        Estimate::Saturated(Direction::Negative)
    } else {
        Estimate::Finite(tau0 - m.quantile(arg).expect("argument lies in (0, 1)"))
    }
}

pub fn estimate_x(m: &NoiseModel, sample: &BinarySample) -> EstimateResult {
    estimate_x_from_counts(m, &ChannelModel::perfect(), sample.tau0, sample.counts())
}

pub fn estimate_x_bsc(m: &NoiseModel, ch: &ChannelModel, sample: &BinarySample) -> EstimateResult {
    estimate_x_from_counts(m, ch, sample.tau0, sample.counts())
}

/// Estimate from a frequency of −1 received through `ch`.
pub fn estimate_x_from_frequency(m: &NoiseModel, ch: &ChannelModel, tau0: f64, freq: f64) -> EstimateResult {
    let q = ch.q();
    if q == 0.0 {
        return EstimateResult {
            x_hat: invert(m, tau0, freq),
            frequency: freq,
            clamped: false,
        };
    }
    let raw = (freq - q) / (1.0 - 2.0 * q);
    let arg = raw.clamp(0.0, 1.0);
    EstimateResult {
        x_hat: invert(m, tau0, arg),
        frequency: freq,
        clamped: arg != raw,
    }
}

pub fn estimate_x_from_counts(m: &NoiseModel, ch: &ChannelModel, tau0: f64, counts: BitCounts) -> EstimateResult {
    estimate_x_from_frequency(m, ch, tau0, counts.frequency())
}
