//! Neighbor-based baseline classifiers and an evaluation harness for
//! comparing empirical test accuracy against the estimated limit.
//!
//! Prediction does not exclude the query from the training neighbors:
//! queries come from a disjoint test partition, so there is no self to
//! exclude.

use crate::data::LabeledDataset;
use crate::estimator::resample;
use crate::metrics::MetricKind;
use crate::neighbors::NeighborIndex;
use crate::numeric::{mean, population_std};
use crate::parallel;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BaselineError {
    #[error("k = {k} too large for a training set of {n} rows")]
    KTooLarge { k: usize, n: usize },
    #[error("query has {got} features, training data has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degenerate split: {0}")]
    DegenerateSplit(String),
    #[error("train fraction {0} outside (0, 1)")]
    InvalidFraction(f64),
    #[error("at least one repeat is required")]
    NoRepeats,
}

/// Train/test partitioning parameters. Partitions are disjoint and cover
/// the dataset; stratified splits keep class proportions on both sides.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub stratified: bool,
    pub seed: u64,
}

/// Which baseline classifier to run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "classifier", rename_all = "snake_case")]
pub enum ClassifierKind {
    Knn { k: usize },
    RadiusNeighbors { theta: f64 },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ClassifierConfig {
    #[serde(flatten)]
    pub kind: ClassifierKind,
    pub metric: MetricKind,
}

/// Accuracy statistics over repeated splits.
#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub accuracies: Vec<f64>,
    pub mean_accuracy: f64,
    pub std_accuracy: f64,
    pub repeats: usize,
}

/// Majority class among the given counts; ties go to the smaller index.
fn majority(counts: &[usize]) -> usize {
    let mut best = 0;
    for (class, &count) in counts.iter().enumerate() {
        if count > counts[best] {
            best = class;
        }
    }
    best
}

fn majority_of_labels(train: &LabeledDataset, indices: &[usize]) -> usize {
    let mut counts = vec![0usize; train.num_classes()];
    for &i in indices {
        counts[train.label(i)] += 1;
    }
    majority(&counts)
}

/// Majority label among the k nearest training points.
pub fn knn_predict(
    train: &LabeledDataset,
    k: usize,
    metric: MetricKind,
    query: &[f64],
) -> Result<usize, BaselineError> {
    if query.len() != train.d() {
        return Err(BaselineError::DimensionMismatch { expected: train.d(), got: query.len() });
    }
    if k == 0 || k > train.n() {
        return Err(BaselineError::KTooLarge { k, n: train.n() });
    }
    let index = NeighborIndex::build_brute(train, metric);
    let list = index
        .k_nearest_point(query, k)
        .expect("k validated against train size");
    Ok(majority_of_labels(train, &list.indices))
}

/// Majority label within distance < theta, or `fallback`
/// when the ball is empty.
pub fn radius_predict(
    train: &LabeledDataset,
    theta: f64,
    metric: MetricKind,
    query: &[f64],
    fallback: usize,
) -> Result<usize, BaselineError> {
    if query.len() != train.d() {
        return Err(BaselineError::DimensionMismatch { expected: train.d(), got: query.len() });
    }
    let index = NeighborIndex::build_brute(train, metric);
    let list = index.within_radius_point(query, theta);
    if list.is_empty() {
        return Ok(fallback);
    }
    Ok(majority_of_labels(train, &list.indices))
}

/// Splits rows into (train, test), both sorted, both covering every class.
fn split_rows(
    dataset: &LabeledDataset,
    split: &SplitSpec,
    rng: &mut StdRng,
) -> Result<(Vec<usize>, Vec<usize>), BaselineError> {
    let n = dataset.n();
    if !(split.train_fraction > 0.0 && split.train_fraction < 1.0) {
        return Err(BaselineError::InvalidFraction(split.train_fraction));
    }
    let target = ((split.train_fraction * n as f64).round() as usize).clamp(1, n - 1);
    let classes = dataset.num_classes();
    let train: Vec<usize> = if split.stratified {
        let counts = dataset.class_counts();
        if counts.iter().any(|&c| c < 2) {
            return Err(BaselineError::DegenerateSplit(
                "every class needs at least 2 samples".to_string(),
            ));
        }
        if target < classes || target > n - classes {
            return Err(BaselineError::DegenerateSplit(format!(
                "train size {target} cannot leave every class on both sides"
            )));
        }
        resample::stratified_split_rows(dataset, target, rng)
    } else {
        let mut all: Vec<usize> = (0..n).collect();
        all.shuffle(rng);
        let mut train = all[..target].to_vec();
        train.sort_unstable();
        train
    };
    let mut in_train = vec![false; n];
    for &i in &train {
        in_train[i] = true;
    }
    let test: Vec<usize> = (0..n).filter(|&i| !in_train[i]).collect();
    for (name, part) in [("train", &train), ("test", &test)] {
        let mut seen = vec![false; classes];
        for &i in part {
            seen[dataset.label(i)] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(BaselineError::DegenerateSplit(format!(
                "{name} partition misses class {}",
                dataset.classes().name(missing)
            )));
        }
    }
    Ok((train, test))
}

/// Mean and standard deviation of test accuracy over
/// `repeats` independent splits.
pub fn evaluate(
    dataset: &LabeledDataset,
    split: &SplitSpec,
    config: &ClassifierConfig,
    repeats: usize,
) -> Result<EvalReport, BaselineError> {
    if repeats == 0 {
        return Err(BaselineError::NoRepeats);
    }
    if dataset.n() < 2 {
        return Err(BaselineError::DegenerateSplit("need at least 2 rows".to_string()));
    }
    if let ClassifierKind::Knn { k } = config.kind {
        let n = dataset.n();
        let min_train = ((split.train_fraction * n as f64).round() as usize).clamp(1, n - 1);
        if k == 0 || k > min_train {
            return Err(BaselineError::KTooLarge { k, n: min_train });
        }
    }
    let mut root = StdRng::seed_from_u64(split.seed);
    let threads = parallel::effective_threads(None);
    let mut accuracies = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let mut rng = StdRng::seed_from_u64(root.random());
        let (train_rows, test_rows) = split_rows(dataset, split, &mut rng)?;
        let train = dataset
            .subset(&train_rows)
            .expect("split keeps every class in the train partition");
        let index = NeighborIndex::build(&train, config.metric);
        let fallback = majority(&train.class_counts());
        let predictions = parallel::par_map(test_rows.len(), threads, |t| {
            let query = dataset.row(test_rows[t]);
            match config.kind {
                ClassifierKind::Knn { k } => {
                    let list = index
                        .k_nearest_point(query, k)
                        .expect("k validated against train size");
                    majority_of_labels(&train, &list.indices)
                }
                ClassifierKind::RadiusNeighbors { theta } => {
                    let list = index.within_radius_point(query, theta);
                    if list.is_empty() {
                        fallback
                    } else {
                        majority_of_labels(&train, &list.indices)
                    }
                }
            }
        });
        let correct = predictions
            .iter()
            .zip(&test_rows)
            .filter(|&(&p, &row)| p == dataset.label(row))
            .count();
        accuracies.push(correct as f64 / test_rows.len() as f64);
    }
    Ok(EvalReport {
        mean_accuracy: mean(&accuracies),
        std_accuracy: population_std(&accuracies),
        repeats,
        accuracies,
    })
}
