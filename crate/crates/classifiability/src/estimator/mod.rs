//! The classifiability-limit estimator.
//!
//! For every point the local class proportions p over its neighborhood give
//! a local entropy H = 1 - max p (the closed simplification of the relative
//! entropy against the locally-constant invariant measure; both forms are
//! implemented and agree within 1e-12). The estimated limit is 1 minus the
//! mean per-point entropy.
//!
//! An empty radius neighborhood contributes H = 0, i.e. it counts as
//! maximally classifiable; `empty_neighborhood_count` in the report lets
//! callers detect an over-small threshold.
//!
//! Per-point evaluation is independent and runs on any number of workers;
//! aggregation uses integer sums where all neighborhoods share one size and
//! a fixed-order pairwise summation otherwise, so results never depend on
//! the worker count or on which neighbor backend produced them.

pub mod resample;

use crate::data::{
    ClassProbabilities, EstimateReport, LabeledDataset, NeighborhoodMode, NeighborhoodSpec,
};
use crate::neighbors::{NeighborIndex, NeighborList};
use crate::numeric::pairwise_sum;
use crate::parallel;
use serde::Serialize;
use thiserror::Error;

pub use resample::{jackknife, jackknife_opts, subsample_sweep, subsample_sweep_opts};
pub use resample::{JackknifeReport, SweepPoint};

#[derive(Debug, Error, PartialEq)]
pub enum EstimatorError {
    #[error("k = {k} too large: a dataset of {n} rows supports at most k = {max}", max = n - 1)]
    KTooLarge { k: usize, n: usize },
    #[error("empty neighborhood has no class probabilities")]
    EmptyNeighborhood,
    #[error("subsample of {got} rows is too small (need at least {needed})")]
    SubsampleTooSmall { needed: usize, got: usize },
    #[error("fraction {0} outside the valid range")]
    InvalidFraction(f64),
    #[error("at least one round/repeat is required")]
    NoRounds,
}

/// Execution knobs shared by the estimator entry points.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExecOptions {
    /// Worker count; `None` falls back to `CLASSIFIABILITY_THREADS` or the
    /// machine default.
    pub threads: Option<usize>,
    /// Forces the brute-force neighbor backend.
    pub brute_force: bool,
}

/// Local invariant-measure values `rho[a] = p[a] * exp(1 - max p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoHat {
    values: Vec<f64>,
}

impl RhoHat {
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Local class proportions of a neighborhood.
pub fn local_probabilities(
    dataset: &LabeledDataset,
    neighborhood: &NeighborList,
) -> ClassProbabilities {
    let mut counts = vec![0usize; dataset.num_classes()];
    for &j in &neighborhood.indices {
        counts[dataset.label(j)] += 1;
    }
    ClassProbabilities::from_counts(&counts)
}

/// The constant-distribution invariant measure.
pub fn rho_hat(probs: &ClassProbabilities) -> Result<RhoHat, EstimatorError> {
    if probs.is_empty_neighborhood() {
        return Err(EstimatorError::EmptyNeighborhood);
    }
    let scale = (1.0 - probs.max_prob()).exp();
    Ok(RhoHat { values: probs.probs().iter().map(|&p| p * scale).collect() })
}

/// Local entropy in its closed simplified form: 1 - max p.
///
/// The empty-neighborhood sentinel maps to 0. This is the production form;
/// [`local_entropy_full`] is the relative-entropy route kept for
/// verification.
pub fn local_entropy(probs: &ClassProbabilities) -> f64 {
    if probs.is_empty_neighborhood() {
        return 0.0;
    }
    1.0 - probs.max_prob()
}

/// Local entropy via the full form -sum p ln(p / rho), with 0 ln 0 = 0.
///
/// Agrees with [`local_entropy`] within 1e-12 for every probability vector.
pub fn local_entropy_full(probs: &ClassProbabilities) -> f64 {
    if probs.is_empty_neighborhood() {
        return 0.0;
    }
    let rho = rho_hat(probs).expect("nonempty neighborhood");
    let mut acc = 0.0;
    for (&p, &r) in probs.probs().iter().zip(rho.values()) {
        if p > 0.0 {
            acc -= p * (p / r).ln();
        }
    }
    acc
}

/// Per-point neighborhood summary: the majority count and the size.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct PointStat {
    pub(crate) max_count: u64,
    pub(crate) size: u64,
}

impl PointStat {
    pub(crate) fn entropy(self) -> f64 {
        if self.size == 0 {
            0.0
        } else {
            (self.size - self.max_count) as f64 / self.size as f64
        }
    }
}

/// Aggregates per-point stats into (entropies, limit, empty count).
///
/// The limit is the mean of the per-point majority proportions: exactly
/// 1 - mean(H) in real arithmetic and within 1e-12 of it in floats. When
/// every nonempty neighborhood has the same size the counts are summed as
/// integers and divided once, which keeps the saturated limit cases exact.
pub(crate) fn finalize(stats: &[PointStat]) -> (Vec<f64>, f64, usize) {
    let n = stats.len();
    let entropies: Vec<f64> = stats.iter().map(|s| s.entropy()).collect();
    let empty = stats.iter().filter(|s| s.size == 0).count();

    let limit = if empty == n {
        1.0
    } else if let Some(b) = common_nonempty_size(stats) {
        let numerator: u64 = stats
            .iter()
            .map(|s| if s.size == 0 { b } else { s.max_count })
            .sum();
        numerator as f64 / (b * n as u64) as f64
    } else {
        let pmax: Vec<f64> = stats
            .iter()
            .map(|s| {
                if s.size == 0 {
                    1.0
                } else {
                    s.max_count as f64 / s.size as f64
                }
            })
            .collect();
        pairwise_sum(&pmax) / n as f64
    };
    (entropies, limit, empty)
}

fn common_nonempty_size(stats: &[PointStat]) -> Option<u64> {
    let mut size = None;
    for s in stats {
        if s.size == 0 {
            continue;
        }
        match size {
            None => size = Some(s.size),
            Some(b) if b == s.size => {}
            Some(_) => return None,
        }
    }
    size
}

pub(crate) fn per_point_stats(
    dataset: &LabeledDataset,
    spec: &NeighborhoodSpec,
    opts: &ExecOptions,
) -> Result<Vec<PointStat>, EstimatorError> {
    let n = dataset.n();
    if let NeighborhoodMode::KNearest { k } = spec.mode {
        if k > n - 1 {
            return Err(EstimatorError::KTooLarge { k, n });
        }
    }
    let index = if opts.brute_force {
        NeighborIndex::build_brute(dataset, spec.metric)
    } else {
        NeighborIndex::build(dataset, spec.metric)
    };
    let threads = parallel::effective_threads(opts.threads);
    let num_classes = dataset.num_classes();
    let stats = parallel::par_map(n, threads, |i| {
        let list = match spec.mode {
            NeighborhoodMode::Radius { theta } => index.within_radius(i, theta),
            NeighborhoodMode::KNearest { k } => index.k_nearest(i, k),
        }
        .expect("query parameters validated");
        let mut counts = vec![0u64; num_classes];
        for &j in &list.indices {
            counts[dataset.label(j)] += 1;
        }
        PointStat {
            max_count: counts.iter().copied().max().unwrap_or(0),
            size: list.len() as u64,
        }
    });
    Ok(stats)
}

fn build_report(
    dataset: &LabeledDataset,
    spec: &NeighborhoodSpec,
    stats: &[PointStat],
) -> EstimateReport {
    let (per_point_entropy, limit, empty_neighborhood_count) = finalize(stats);
    EstimateReport {
        limit,
        n: dataset.n(),
        d: dataset.d(),
        classes: dataset.classes().names().to_vec(),
        class_proportions: dataset.class_proportions(),
        config: *spec,
        empty_neighborhood_count,
        per_point_entropy,
    }
}

/// The classifiability-limit estimate for a dataset.
pub fn classifiability(
    dataset: &LabeledDataset,
    spec: &NeighborhoodSpec,
) -> Result<EstimateReport, EstimatorError> {
    classifiability_opts(dataset, spec, &ExecOptions::default())
}

pub fn classifiability_opts(
    dataset: &LabeledDataset,
    spec: &NeighborhoodSpec,
    opts: &ExecOptions,
) -> Result<EstimateReport, EstimatorError> {
    let stats = per_point_stats(dataset, spec, opts)?;
    Ok(build_report(dataset, spec, &stats))
}

/// One row of the entropy-map export.
#[derive(Debug, Clone, Serialize)]
pub struct EntropyMapRecord {
    pub index: usize,
    pub label: String,
    pub entropy: f64,
    pub neighborhood_size: usize,
    pub coordinates: Vec<f64>,
}

/// Per-point records for external plotting. Entropy values
/// are identical to those inside the corresponding [`EstimateReport`].
pub fn entropy_map(
    dataset: &LabeledDataset,
    spec: &NeighborhoodSpec,
) -> Result<Vec<EntropyMapRecord>, EstimatorError> {
    entropy_map_opts(dataset, spec, &ExecOptions::default())
}

pub fn entropy_map_opts(
    dataset: &LabeledDataset,
    spec: &NeighborhoodSpec,
    opts: &ExecOptions,
) -> Result<Vec<EntropyMapRecord>, EstimatorError> {
    let stats = per_point_stats(dataset, spec, opts)?;
    Ok(stats
        .iter()
        .enumerate()
        .map(|(i, s)| EntropyMapRecord {
            index: i,
            label: dataset.classes().name(dataset.label(i)).to_string(),
            entropy: s.entropy(),
            neighborhood_size: s.size as usize,
            coordinates: dataset.row(i).to_vec(),
        })
        .collect())
}

/// Over-classification diagnostic: N = product of per-dimension resolutions
/// and the P >= 20 N sample-size rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverclassReport {
    pub potential_classes: u64,
    pub resolutions: Vec<u64>,
    pub min_points: u64,
    pub actual_points: u64,
    pub over_classified: bool,
}

/// The over-classification check.
///
/// All resolutions must be >= 1. Products saturate at `u64::MAX`, far past
/// any dataset the rule could accept.
pub fn overclass_check(resolutions: &[u64], actual_points: u64) -> OverclassReport {
    assert!(!resolutions.is_empty(), "at least one resolution required");
    assert!(resolutions.iter().all(|&r| r >= 1), "resolutions must be >= 1");
    let potential_classes = resolutions
        .iter()
        .fold(1u64, |acc, &r| acc.saturating_mul(r));
    let min_points = potential_classes.saturating_mul(20);
    OverclassReport {
        potential_classes,
        resolutions: resolutions.to_vec(),
        min_points,
        actual_points,
        over_classified: actual_points < min_points,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::ClassTable;
    use crate::metrics::MetricKind;
    use crate::neighbors::neighbors_k;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn dataset_1d(points: &[f64], labels: &[usize], classes: usize) -> LabeledDataset {
        let rows: Vec<Vec<f64>> = points.iter().map(|&p| vec![p]).collect();
        LabeledDataset::from_rows(&rows, labels.to_vec(), ClassTable::numbered(classes).unwrap())
            .unwrap()
    }

    #[test]
    fn local_probabilities_counting() {
        let ds = dataset_1d(&[0.0, 0.1, 0.2, 0.3, 5.0], &[0, 0, 0, 1, 1], 2);
        let list = neighbors_k(&ds, 4, 4, MetricKind::L2).unwrap();
        let probs = local_probabilities(&ds, &list);
        assert_eq!(probs.probs(), &[0.75, 0.25]);

        let sentinel = local_probabilities(
            &ds,
            &NeighborList { indices: vec![], distances: vec![] },
        );
        assert!(sentinel.is_empty_neighborhood());
    }

    #[test]
    fn rho_hat_values() {
        let pure = ClassProbabilities::from_probs(vec![1.0, 0.0], 4);
        assert_eq!(rho_hat(&pure).unwrap().values(), &[1.0, 0.0]);

        let even = ClassProbabilities::from_probs(vec![0.5, 0.5], 2);
        let rho = rho_hat(&even).unwrap();
        let expected = 0.5 * 0.5f64.exp();
        assert!((rho.values()[0] - expected).abs() < 1e-12);
        assert!((expected - 0.824360635).abs() < 1e-9);

        let skewed = ClassProbabilities::from_probs(vec![0.75, 0.25], 4);
        let rho = rho_hat(&skewed).unwrap();
        assert!((rho.values()[0] - 0.75 * 0.25f64.exp()).abs() < 1e-12);
        assert!((rho.values()[1] - 0.25 * 0.25f64.exp()).abs() < 1e-12);

        let sentinel = ClassProbabilities::empty(2);
        assert_eq!(rho_hat(&sentinel).unwrap_err(), EstimatorError::EmptyNeighborhood);
    }

    #[test]
    fn entropy_simplified_examples() {
        let pure = ClassProbabilities::from_probs(vec![1.0, 0.0], 4);
        assert_eq!(local_entropy(&pure), 0.0);
        assert_eq!(local_entropy_full(&pure), 0.0);

        let even = ClassProbabilities::from_probs(vec![0.5, 0.5], 2);
        assert_eq!(local_entropy(&even), 0.5);
        assert!((local_entropy_full(&even) - 0.5).abs() < 1e-12);

        let skewed = ClassProbabilities::from_probs(vec![0.75, 0.25], 4);
        assert_eq!(local_entropy(&skewed), 0.25);
        assert!((local_entropy_full(&skewed) - 0.25).abs() < 1e-12);

        assert_eq!(local_entropy(&ClassProbabilities::empty(3)), 0.0);
        assert_eq!(local_entropy_full(&ClassProbabilities::empty(3)), 0.0);
    }

    #[test]
    fn separable_neighborhoods_give_limit_one() {
        let ds = dataset_1d(&[0.0, 0.1, 10.0, 10.1], &[0, 0, 1, 1], 2);
        let spec = NeighborhoodSpec::k_nearest(1, MetricKind::L2).unwrap();
        let report = classifiability(&ds, &spec).unwrap();
        assert_eq!(report.limit, 1.0);
        assert!(report.per_point_entropy.iter().all(|&h| h == 0.0));
    }

    #[test]
    fn huge_theta_gives_majority_proportion_exactly() {
        let ds = dataset_1d(&[0.0, 1.0, 2.0, 3.0, 4.0], &[0, 0, 0, 1, 1], 2);
        let spec = NeighborhoodSpec::radius(1e6, MetricKind::L2).unwrap();
        let report = classifiability(&ds, &spec).unwrap();
        assert_eq!(report.limit, 0.6);
    }

    #[test]
    fn tiny_theta_counts_empty_neighborhoods() {
        let ds = dataset_1d(&[0.0, 1.0, 2.0, 3.0], &[0, 1, 0, 1], 2);
        let spec = NeighborhoodSpec::radius(1e-9, MetricKind::L2).unwrap();
        let report = classifiability(&ds, &spec).unwrap();
        assert_eq!(report.limit, 1.0);
        assert_eq!(report.empty_neighborhood_count, 4);
    }

    #[test]
    fn k_too_large_is_rejected() {
        let ds = dataset_1d(&[0.0, 1.0, 2.0], &[0, 1, 0], 2);
        let spec = NeighborhoodSpec::k_nearest(3, MetricKind::L2).unwrap();
        assert_eq!(
            classifiability(&ds, &spec).unwrap_err(),
            EstimatorError::KTooLarge { k: 3, n: 3 }
        );
    }

    #[test]
    fn report_limit_matches_entropy_mean() {
        let mut rng = StdRng::seed_from_u64(11);
        let rows: Vec<Vec<f64>> = (0..200)
            .map(|_| vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)])
            .collect();
        let mut labels: Vec<usize> = (0..200).map(|_| rng.random_range(0..3)).collect();
        labels[0] = 0;
        labels[1] = 1;
        labels[2] = 2;
        let ds =
            LabeledDataset::from_rows(&rows, labels, ClassTable::numbered(3).unwrap()).unwrap();
        for spec in [
            NeighborhoodSpec::k_nearest(7, MetricKind::L2).unwrap(),
            NeighborhoodSpec::radius(0.3, MetricKind::L1).unwrap(),
        ] {
            let report = classifiability(&ds, &spec).unwrap();
            assert!((report.limit - report.limit_from_entropies()).abs() < 1e-12);
            let g = ds.num_classes() as f64;
            assert!(report.limit >= 1.0 / g && report.limit <= 1.0);
            for &h in &report.per_point_entropy {
                assert!(h >= 0.0 && h <= 1.0 - 1.0 / g + 1e-12);
            }
        }
    }

    #[test]
    fn label_permutation_leaves_limit_unchanged() {
        let mut rng = StdRng::seed_from_u64(5);
        let rows: Vec<Vec<f64>> = (0..120).map(|_| vec![rng.random_range(-4.0..4.0)]).collect();
        let mut labels: Vec<usize> = (0..120).map(|_| rng.random_range(0..3)).collect();
        labels[0] = 0;
        labels[1] = 1;
        labels[2] = 2;
        let pi = [2usize, 0, 1];
        let permuted: Vec<usize> = labels.iter().map(|&l| pi[l]).collect();
        let table = ClassTable::numbered(3).unwrap();
        let ds = LabeledDataset::from_rows(&rows, labels, table.clone()).unwrap();
        let ds_perm = LabeledDataset::from_rows(&rows, permuted, table).unwrap();
        let spec = NeighborhoodSpec::k_nearest(9, MetricKind::L2).unwrap();
        assert_eq!(
            classifiability(&ds, &spec).unwrap().limit,
            classifiability(&ds_perm, &spec).unwrap().limit
        );
    }

    #[test]
    fn entropy_map_matches_report() {
        let ds = dataset_1d(&[0.0, 0.2, 0.4, 5.0, 5.2, 5.4], &[0, 0, 1, 1, 1, 0], 2);
        let spec = NeighborhoodSpec::k_nearest(2, MetricKind::L2).unwrap();
        let report = classifiability(&ds, &spec).unwrap();
        let map = entropy_map(&ds, &spec).unwrap();
        assert_eq!(map.len(), ds.n());
        for (rec, &h) in map.iter().zip(&report.per_point_entropy) {
            assert_eq!(rec.entropy, h);
            assert_eq!(rec.neighborhood_size, 2);
        }
    }

    #[test]
    fn overclass_rule_examples() {
        let r = overclass_check(&[4, 4, 3, 3], 2880);
        assert_eq!(r.potential_classes, 144);
        assert_eq!(r.min_points, 2880);
        assert!(!r.over_classified);

        let r = overclass_check(&[4, 4, 3, 3], 2879);
        assert!(r.over_classified);

        let r = overclass_check(&[1], 25);
        assert_eq!(r.potential_classes, 1);
        assert_eq!(r.min_points, 20);
        assert!(!r.over_classified);
    }

    proptest! {
        // Simplification identity: full relative-entropy form vs 1 - max p.
        #[test]
        fn entropy_forms_agree(raw in prop::collection::vec(0.01f64..1.0, 2..10)) {
            let total: f64 = raw.iter().sum();
            let probs: Vec<f64> = raw.iter().map(|v| v / total).collect();
            let p = ClassProbabilities::from_probs(probs, raw.len());
            prop_assert!((local_entropy_full(&p) - local_entropy(&p)).abs() <= 1e-12);
        }
    }
}
