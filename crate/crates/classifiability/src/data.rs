//! Foundational data types shared by every other module.
//!
//! Labels are dense integer indices into a [`ClassTable`] so hot loops
//! compare integers; class-name strings only appear at the I/O boundary.
//! Features live in a row-major `f64` matrix because the distance kernels
//! stream rows. All types are immutable after construction and safe to
//! share across concurrent readers.

use crate::metrics::MetricKind;
use crate::numeric;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DataError {
    #[error("dataset has no rows")]
    EmptyDataset,
    #[error("dataset has no feature columns")]
    NoFeatures,
    #[error("row {row} has {got} features, expected {expected}")]
    RaggedRow { row: usize, expected: usize, got: usize },
    #[error("{labels} labels for {rows} feature rows")]
    LabelCountMismatch { rows: usize, labels: usize },
    #[error("non-finite feature value at row {row}, column {col}")]
    NonFiniteFeature { row: usize, col: usize },
    #[error("label {label} at row {row} is out of range for {num_classes} classes")]
    LabelOutOfRange { row: usize, label: usize, num_classes: usize },
    #[error("class `{name}` has no samples")]
    EmptyClass { name: String },
    #[error("class table is empty")]
    NoClasses,
    #[error("class name may not be empty")]
    EmptyClassName,
    #[error("duplicate class name `{0}`")]
    DuplicateClassName(String),
    #[error("radius threshold must be positive, got {0}")]
    InvalidThreshold(f64),
    #[error("neighbor count must be at least 1")]
    InvalidK,
}

/// Ordered table of unique, non-empty class names. Class identifiers used
/// everywhere else are indices into this table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTable {
    names: Vec<String>,
}

impl ClassTable {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Self, DataError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(DataError::NoClasses);
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(DataError::EmptyClassName);
            }
            if names[..i].contains(name) {
                return Err(DataError::DuplicateClassName(name.clone()));
            }
        }
        Ok(ClassTable { names })
    }

    /// Table with names "0", "1", ..., used by the synthetic generators.
    pub fn numbered(count: usize) -> Result<Self, DataError> {
        ClassTable::new((0..count).map(|i| i.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A validated dataset: `n` rows of `d` finite features plus one class
/// index per row, with every class of the table represented at least once.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    features: Vec<f64>,
    n: usize,
    d: usize,
    labels: Vec<usize>,
    classes: ClassTable,
}

impl LabeledDataset {
    /// Validates and constructs a dataset from a row-major feature buffer.
    pub fn new(
        features: Vec<f64>,
        d: usize,
        labels: Vec<usize>,
        classes: ClassTable,
    ) -> Result<Self, DataError> {
        if d == 0 {
            return Err(DataError::NoFeatures);
        }
        if features.len() != labels.len() * d {
            if labels.is_empty() && features.is_empty() {
                return Err(DataError::EmptyDataset);
            }
            return Err(DataError::LabelCountMismatch {
                rows: features.len() / d,
                labels: labels.len(),
            });
        }
        let n = labels.len();
        if n == 0 {
            return Err(DataError::EmptyDataset);
        }
        for (i, value) in features.iter().enumerate() {
            if !value.is_finite() {
                return Err(DataError::NonFiniteFeature { row: i / d, col: i % d });
            }
        }
        let mut seen = vec![false; classes.len()];
        for (row, &label) in labels.iter().enumerate() {
            if label >= classes.len() {
                return Err(DataError::LabelOutOfRange {
                    row,
                    label,
                    num_classes: classes.len(),
                });
            }
            seen[label] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(DataError::EmptyClass {
                name: classes.name(missing).to_string(),
            });
        }
        Ok(LabeledDataset { features, n, d, labels, classes })
    }

    /// Convenience constructor from per-row feature vectors.
    pub fn from_rows(
        rows: &[Vec<f64>],
        labels: Vec<usize>,
        classes: ClassTable,
    ) -> Result<Self, DataError> {
        if rows.is_empty() {
            return Err(DataError::EmptyDataset);
        }
        let d = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(DataError::RaggedRow { row: i, expected: d, got: row.len() });
            }
        }
        let mut features = Vec::with_capacity(rows.len() * d);
        for row in rows {
            features.extend_from_slice(row);
        }
        LabeledDataset::new(features, d, labels, classes)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.d..(i + 1) * self.d]
    }

    pub fn features(&self) -> &[f64] {
        &self.features
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn classes(&self) -> &ClassTable {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Per-class sample counts.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.classes.len()];
        for &label in &self.labels {
            counts[label] += 1;
        }
        counts
    }

    /// Per-class counts divided by n; sums to 1.
    pub fn class_proportions(&self) -> Vec<f64> {
        let n = self.n as f64;
        self.class_counts().iter().map(|&c| c as f64 / n).collect()
    }

    /// Dataset restricted to the given rows (in the given order), keeping
    /// the full class table. Fails if a class loses all its samples.
    pub fn subset(&self, rows: &[usize]) -> Result<LabeledDataset, DataError> {
        if rows.is_empty() {
            return Err(DataError::EmptyDataset);
        }
        let mut features = Vec::with_capacity(rows.len() * self.d);
        let mut labels = Vec::with_capacity(rows.len());
        let mut seen = vec![false; self.classes.len()];
        for &r in rows {
            features.extend_from_slice(self.row(r));
            labels.push(self.labels[r]);
            seen[self.labels[r]] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(DataError::EmptyClass {
                name: self.classes.name(missing).to_string(),
            });
        }
        Ok(LabeledDataset {
            features,
            n: rows.len(),
            d: self.d,
            labels,
            classes: self.classes.clone(),
        })
    }
}

/// Free-function form of [`LabeledDataset::from_rows`].
pub fn validate_dataset(
    rows: &[Vec<f64>],
    labels: Vec<usize>,
    classes: ClassTable,
) -> Result<LabeledDataset, DataError> {
    LabeledDataset::from_rows(rows, labels, classes)
}

/// Free-function form of [`LabeledDataset::class_proportions`].
pub fn class_proportions(dataset: &LabeledDataset) -> Vec<f64> {
    dataset.class_proportions()
}

/// How a point's neighborhood is selected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum NeighborhoodMode {
    /// All points strictly within distance `theta`.
    Radius { theta: f64 },
    /// The `k` closest points, ties broken by row index.
    KNearest { k: usize },
}

/// Neighborhood selection plus the metric it is measured in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeighborhoodSpec {
    #[serde(flatten)]
    pub mode: NeighborhoodMode,
    pub metric: MetricKind,
}

impl NeighborhoodSpec {
    pub fn radius(theta: f64, metric: MetricKind) -> Result<Self, DataError> {
        if !theta.is_finite() || theta <= 0.0 {
            return Err(DataError::InvalidThreshold(theta));
        }
        Ok(NeighborhoodSpec { mode: NeighborhoodMode::Radius { theta }, metric })
    }

    pub fn k_nearest(k: usize, metric: MetricKind) -> Result<Self, DataError> {
        if k == 0 {
            return Err(DataError::InvalidK);
        }
        Ok(NeighborhoodSpec { mode: NeighborhoodMode::KNearest { k }, metric })
    }
}

/// Local per-class proportion vector for one neighborhood.
///
/// `support_size == 0` is the empty-neighborhood sentinel: the vector is
/// all-zero and downstream consumers treat the local entropy as 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassProbabilities {
    probs: Vec<f64>,
    support_size: usize,
}

impl ClassProbabilities {
    /// Proportions from per-class neighbor counts.
    pub fn from_counts(counts: &[usize]) -> Self {
        let support: usize = counts.iter().sum();
        if support == 0 {
            return Self::empty(counts.len());
        }
        let total = support as f64;
        ClassProbabilities {
            probs: counts.iter().map(|&c| c as f64 / total).collect(),
            support_size: support,
        }
    }

    /// The empty-neighborhood sentinel.
    pub fn empty(num_classes: usize) -> Self {
        ClassProbabilities { probs: vec![0.0; num_classes], support_size: 0 }
    }

    /// Directly wraps a probability vector (used by tests and the oracle);
    /// `support_size` records how many neighbors produced it.
    pub fn from_probs(probs: Vec<f64>, support_size: usize) -> Self {
        ClassProbabilities { probs, support_size }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn support_size(&self) -> usize {
        self.support_size
    }

    pub fn is_empty_neighborhood(&self) -> bool {
        self.support_size == 0
    }

    /// Largest class proportion; 0 for the sentinel.
    pub fn max_prob(&self) -> f64 {
        self.probs.iter().copied().fold(0.0, f64::max)
    }
}

/// Result of a classifiability estimate over a dataset.
///
/// Serialization covers the scalar summary; the per-point entropy vector is
/// exported separately (see the entropy-map CSV) to keep reports small.
#[derive(Debug, Clone, Serialize)]
pub struct EstimateReport {
    pub limit: f64,
    pub n: usize,
    pub d: usize,
    pub classes: Vec<String>,
    pub class_proportions: Vec<f64>,
    pub config: NeighborhoodSpec,
    pub empty_neighborhood_count: usize,
    #[serde(skip)]
    pub per_point_entropy: Vec<f64>,
}

impl EstimateReport {
    /// 1 minus the arithmetic mean of the stored per-point entropies,
    /// recomputed from scratch. `limit` agrees with this within 1e-12.
    pub fn limit_from_entropies(&self) -> f64 {
        1.0 - numeric::mean(&self.per_point_entropy)
    }
}
