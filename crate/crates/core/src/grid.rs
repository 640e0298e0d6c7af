//! Uniform grids written `lo:hi:points`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    lo: f64,
    hi: f64,
    points: usize,
}

impl Grid {
    /// A single point is written `v:v:1`; otherwise `lo < hi` and `points >= 2`.
    pub fn new(lo: f64, hi: f64, points: usize) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::parse("grid", "bounds must be finite"));
        }
        match points {
            0 => Err(Error::parse("grid", "needs at least one point")),
            1 if lo != hi => Err(Error::parse("grid", "a single-point grid is written v:v:1")),
            1 => Ok(Self { lo, hi, points }),
            _ if !(lo < hi) => Err(Error::parse("grid", "requires lo < hi when points >= 2")),
            _ => Ok(Self { lo, hi, points }),
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Grid values, strictly increasing.
    ///
    /// Each node is (lo·(n−1−i) + hi·i)/(n−1), so a grid with lo = −hi is
    /// exactly symmetric and has an exact zero at its centre when n is odd.
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.lo];
        }
        let n = (self.points - 1) as f64;
        if self.lo == -self.hi {
            return (0..self.points)
                .map(|i| self.hi * (2.0 * i as f64 - n) / n)
                .collect();
        }
        (0..self.points)
            .map(|i| {
                let t = i as f64;
                (self.lo * (n - t) + self.hi * t) / n
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.trim().split(':').collect();
        if parts.len() != 3 {
            return Err(Error::parse("grid", format!("expected lo:hi:points, got `{text}`")));
        }
        let num = |s: &str, what: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::parse("grid", format!("{what} `{s}` is not a number")))
        };
        let lo = num(parts[0], "lo")?;
        let hi = num(parts[1], "hi")?;
        let points = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::parse("grid", format!("points `{}` is not a count", parts[2])))?;
        Grid::new(lo, hi, points)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:{:?}:{}", self.lo, self.hi, self.points)
    }
}
