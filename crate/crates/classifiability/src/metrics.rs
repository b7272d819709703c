//! Distance functions between feature vectors.
//!
//! All six metrics are total on finite inputs. Bray-Curtis is a semimetric:
//! it violates the triangle inequality, so no index acceleration relies on
//! it. Hamming compares coordinates by exact floating-point equality and is
//! intended for ordinal-encoded categorical columns, not continuous noise.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricError {
    #[error("vectors have different dimensions: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("unknown metric `{0}` (expected l1|l2|chebyshev|hamming|canberra|braycurtis)")]
    UnknownMetric(String),
}

/// The distance functions selectable per run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    L1,
    L2,
    Chebyshev,
    Hamming,
    Canberra,
    BrayCurtis,
}

/// All metrics in their canonical order.
pub const ALL_METRICS: [MetricKind; 6] = [
    MetricKind::L1,
    MetricKind::L2,
    MetricKind::Chebyshev,
    MetricKind::Hamming,
    MetricKind::Canberra,
    MetricKind::BrayCurtis,
];

impl MetricKind {
    pub fn name(self) -> &'static str {
        match self {
            MetricKind::L1 => "l1",
            MetricKind::L2 => "l2",
            MetricKind::Chebyshev => "chebyshev",
            MetricKind::Hamming => "hamming",
            MetricKind::Canberra => "canberra",
            MetricKind::BrayCurtis => "braycurtis",
        }
    }

    /// True when a coordinate-wise spatial index can bound this metric from
    /// below (the Minkowski family).
    pub fn supports_spatial_index(self) -> bool {
        matches!(self, MetricKind::L1 | MetricKind::L2 | MetricKind::Chebyshev)
    }

    /// Distance between two equal-length vectors.
    ///
    /// Hot-path entry point: dimensions must already agree (checked in debug
    /// builds only). Use [`distance`] for the validated form.
    #[inline]
    pub fn eval(self, a: &[f64], b: &[f64]) -> f64 {
        debug_assert_eq!(a.len(), b.len());
        match self {
            MetricKind::L1 => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
            MetricKind::L2 => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt(),
            MetricKind::Chebyshev => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max),
            MetricKind::Hamming => a.iter().zip(b).filter(|(x, y)| x != y).count() as f64,
            MetricKind::Canberra => a
                .iter()
                .zip(b)
                .map(|(x, y)| {
                    let den = x.abs() + y.abs();
                    // 0/0 coordinate contributes nothing, keeping d(a, a) = 0.
                    if den > 0.0 {
                        (x - y).abs() / den
                    } else {
                        0.0
                    }
                })
                .sum(),
            MetricKind::BrayCurtis => {
                let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum();
                let den: f64 = a.iter().zip(b).map(|(x, y)| (x + y).abs()).sum();
                if den > 0.0 {
                    num / den
                } else {
                    0.0
                }
            }
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = MetricError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(MetricKind::L1),
            "l2" => Ok(MetricKind::L2),
            "chebyshev" => Ok(MetricKind::Chebyshev),
            "hamming" => Ok(MetricKind::Hamming),
            "canberra" => Ok(MetricKind::Canberra),
            "braycurtis" => Ok(MetricKind::BrayCurtis),
            other => Err(MetricError::UnknownMetric(other.to_string())),
        }
    }
}

/// Distance between `a` and `b` under `metric`, with dimension checking.
pub fn distance(metric: MetricKind, a: &[f64], b: &[f64]) -> Result<f64, MetricError> {
    if a.len() != b.len() {
        return Err(MetricError::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(metric.eval(a, b))
}
