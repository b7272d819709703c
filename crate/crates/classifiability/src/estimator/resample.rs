//! Resampling procedures: jackknife (bootstrap without replacement) and
//! subsample-proportion sweeps.
//!
//! Subsamples are stratified: per-class take counts follow the class
//! proportions to rounding (largest-remainder apportionment with at least
//! one sample per class), so the majority-class anchoring of the estimate
//! stays meaningful on every subsample. All draws are seeded; subsample
//! index sets are generated single-threaded before any estimation starts,
//! which keeps runs reproducible for any worker count.

use super::{classifiability_opts, EstimatorError, ExecOptions};
use crate::data::{LabeledDataset, NeighborhoodMode, NeighborhoodSpec};
use crate::numeric::{mean, population_std};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

/// Summary of repeated fixed-fraction subsample estimates.
#[derive(Debug, Clone, Serialize)]
pub struct JackknifeReport {
    pub subsample_limits: Vec<f64>,
    pub max_limit: f64,
    pub mean_limit: f64,
    pub std_limit: f64,
    pub rounds: usize,
    pub fraction: f64,
}

/// One point of a subsample-proportion sweep curve.
#[derive(Debug, Clone, Serialize)]
pub struct SweepPoint {
    pub proportion: f64,
    pub mean_limit: f64,
    pub std_limit: f64,
    pub limits: Vec<f64>,
}

/// Splits `target` samples across classes proportionally to `counts`
/// (largest remainder, at least 1 and at most `counts[c] - reserve` per
/// class; `reserve` lets a split keep samples of every class on the other
/// side).
///
/// Quotas are compared in exact integer arithmetic with ties going to the
/// smaller class index, so the apportionment is fully deterministic.
///
/// Caller guarantees `counts.len() <= target <= sum(counts) - reserve * counts.len()`
/// and every `counts[c] >= 1 + reserve`.
pub(crate) fn apportion(counts: &[usize], target: usize, reserve: usize) -> Vec<usize> {
    let n: u128 = counts.iter().map(|&c| c as u128).sum();
    // quota_c = target * count_c / n as an exact rational
    let floors: Vec<usize> = counts
        .iter()
        .map(|&c| (target as u128 * c as u128 / n) as usize)
        .collect();
    let remainders: Vec<u128> =
        counts.iter().map(|&c| target as u128 * c as u128 % n).collect();
    let cap = |c: usize| c - reserve;
    let mut take: Vec<usize> = floors
        .iter()
        .zip(counts)
        .map(|(&f, &c)| f.clamp(1, cap(c)))
        .collect();
    let mut total: usize = take.iter().sum();
    while total < target {
        // grow the class with the largest unmet remainder
        let pick = (0..counts.len())
            .filter(|&c| take[c] < cap(counts[c]))
            .max_by(|&a, &b| {
                let ra = remainders[a] as i128 - (take[a] as i128 - floors[a] as i128) * n as i128;
                let rb = remainders[b] as i128 - (take[b] as i128 - floors[b] as i128) * n as i128;
                ra.cmp(&rb).then(b.cmp(&a))
            })
            .expect("target within capacity");
        take[pick] += 1;
        total += 1;
    }
    while total > target {
        // shrink the class with the smallest remainder that can still shrink
        let pick = (0..counts.len())
            .filter(|&c| take[c] > 1)
            .min_by(|&a, &b| {
                let ra = remainders[a] as i128 - (take[a] as i128 - floors[a] as i128) * n as i128;
                let rb = remainders[b] as i128 - (take[b] as i128 - floors[b] as i128) * n as i128;
                ra.cmp(&rb).then(a.cmp(&b))
            })
            .expect("target >= class count");
        take[pick] -= 1;
        total -= 1;
    }
    take
}

/// Draws a stratified subsample of row indices, sorted ascending.
pub(crate) fn stratified_rows(
    dataset: &LabeledDataset,
    target: usize,
    rng: &mut StdRng,
) -> Vec<usize> {
    stratified_rows_with_reserve(dataset, target, 0, rng)
}

/// Stratified draw that leaves at least one sample of every class out,
/// so the complement is a usable test partition.
pub(crate) fn stratified_split_rows(
    dataset: &LabeledDataset,
    target: usize,
    rng: &mut StdRng,
) -> Vec<usize> {
    stratified_rows_with_reserve(dataset, target, 1, rng)
}

fn stratified_rows_with_reserve(
    dataset: &LabeledDataset,
    target: usize,
    reserve: usize,
    rng: &mut StdRng,
) -> Vec<usize> {
    let counts = dataset.class_counts();
    let take = apportion(&counts, target, reserve);
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); counts.len()];
    for (row, &label) in dataset.labels().iter().enumerate() {
        by_class[label].push(row);
    }
    let mut rows = Vec::with_capacity(target);
    for (class_rows, &m) in by_class.iter_mut().zip(&take) {
        class_rows.shuffle(rng);
        rows.extend_from_slice(&class_rows[..m]);
    }
    rows.sort_unstable();
    rows
}

fn subsample_target(
    dataset: &LabeledDataset,
    spec: &NeighborhoodSpec,
    fraction: f64,
) -> Result<usize, EstimatorError> {
    let target = (fraction * dataset.n() as f64).round() as usize;
    let mut needed = dataset.num_classes();
    if let NeighborhoodMode::KNearest { k } = spec.mode {
        needed = needed.max(k + 1);
    }
    if target < needed {
        return Err(EstimatorError::SubsampleTooSmall { needed, got: target });
    }
    Ok(target)
}

/// Bootstrap without replacement.
///
/// Draws `rounds` stratified subsamples of size round(fraction * n),
/// estimates the limit on each and reports all values plus max/mean/std
/// (population std).
pub fn jackknife(
    dataset: &LabeledDataset,
    spec: &NeighborhoodSpec,
    fraction: f64,
    rounds: usize,
    seed: u64,
) -> Result<JackknifeReport, EstimatorError> {
    jackknife_opts(dataset, spec, fraction, rounds, seed, &ExecOptions::default())
}

pub fn jackknife_opts(
    dataset: &LabeledDataset,
    spec: &NeighborhoodSpec,
    fraction: f64,
    rounds: usize,
    seed: u64,
    opts: &ExecOptions,
) -> Result<JackknifeReport, EstimatorError> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(EstimatorError::InvalidFraction(fraction));
    }
    if rounds == 0 {
        return Err(EstimatorError::NoRounds);
    }
    let target = subsample_target(dataset, spec, fraction)?;
    let mut root = StdRng::seed_from_u64(seed);
    let mut limits = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        let mut rng = StdRng::seed_from_u64(root.random());
        let rows = stratified_rows(dataset, target, &mut rng);
        let sub = dataset.subset(&rows).expect("stratified subsample covers every class");
        limits.push(classifiability_opts(&sub, spec, opts)?.limit);
    }
    Ok(JackknifeReport {
        max_limit: limits.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        mean_limit: mean(&limits),
        std_limit: population_std(&limits),
        rounds,
        fraction,
        subsample_limits: limits,
    })
}

/// Limit stability across subsample proportions.
pub fn subsample_sweep(
    dataset: &LabeledDataset,
    spec: &NeighborhoodSpec,
    proportions: &[f64],
    repeats: usize,
    seed: u64,
) -> Result<Vec<SweepPoint>, EstimatorError> {
    subsample_sweep_opts(dataset, spec, proportions, repeats, seed, &ExecOptions::default())
}

pub fn subsample_sweep_opts(
    dataset: &LabeledDataset,
    spec: &NeighborhoodSpec,
    proportions: &[f64],
    repeats: usize,
    seed: u64,
    opts: &ExecOptions,
) -> Result<Vec<SweepPoint>, EstimatorError> {
    if repeats == 0 {
        return Err(EstimatorError::NoRounds);
    }
    for &p in proportions {
        if !(p > 0.0 && p <= 1.0) {
            return Err(EstimatorError::InvalidFraction(p));
        }
    }
    let mut root = StdRng::seed_from_u64(seed);
    let mut curve = Vec::with_capacity(proportions.len());
    for &proportion in proportions {
        let target = subsample_target(dataset, spec, proportion)?;
        let mut limits = Vec::with_capacity(repeats);
        for _ in 0..repeats {
            let mut rng = StdRng::seed_from_u64(root.random());
            let rows = stratified_rows(dataset, target, &mut rng);
            let sub = dataset.subset(&rows).expect("stratified subsample covers every class");
            limits.push(classifiability_opts(&sub, spec, opts)?.limit);
        }
        curve.push(SweepPoint {
            proportion,
            mean_limit: mean(&limits),
            std_limit: population_std(&limits),
            limits,
        });
    }
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::ClassTable;
    use crate::estimator::classifiability;
    use crate::metrics::MetricKind;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn blobs(n: usize, gap: f64) -> LabeledDataset {
        let mut rng = StdRng::seed_from_u64(42);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let center = if i % 2 == 0 { 0.0 } else { gap };
                vec![center + rand::Rng::random_range(&mut rng, -0.1..0.1)]
            })
            .collect();
        let labels: Vec<usize> = (0..n).map(|i| i % 2).collect();
        LabeledDataset::from_rows(&rows, labels, ClassTable::numbered(2).unwrap()).unwrap()
    }

    #[test]
    fn apportion_exact_and_minimums() {
        assert_eq!(apportion(&[60, 40], 80, 0), vec![48, 32]);
        assert_eq!(apportion(&[97, 2, 1], 80, 0), vec![78, 1, 1]);
        assert_eq!(apportion(&[1, 1, 1, 1], 4, 0), vec![1, 1, 1, 1]);
        // with one sample reserved per class, small classes cannot be drained
        assert_eq!(apportion(&[96, 2, 2], 66, 1), vec![64, 1, 1]);
    }

    #[test]
    fn apportion_always_hits_target_within_caps() {
        let mut rng = StdRng::seed_from_u64(55);
        for _ in 0..500 {
            let classes = rand::Rng::random_range(&mut rng, 2..=8usize);
            let reserve = rand::Rng::random_range(&mut rng, 0..=1usize);
            let counts: Vec<usize> = (0..classes)
                .map(|_| rand::Rng::random_range(&mut rng, (1 + reserve)..=200))
                .collect();
            let capacity: usize = counts.iter().map(|c| c - reserve).sum();
            let target = rand::Rng::random_range(&mut rng, classes..=capacity);
            let take = apportion(&counts, target, reserve);
            assert_eq!(take.iter().sum::<usize>(), target);
            for (t, c) in take.iter().zip(&counts) {
                assert!(*t >= 1 && *t <= c - reserve, "take {t} of {c} (reserve {reserve})");
            }
        }
    }

    #[test]
    fn jackknife_shape_and_determinism() {
        let ds = blobs(100, 50.0);
        let spec = NeighborhoodSpec::k_nearest(5, MetricKind::L2).unwrap();
        let a = jackknife(&ds, &spec, 0.8, 10, 7).unwrap();
        let b = jackknife(&ds, &spec, 0.8, 10, 7).unwrap();
        assert_eq!(a.subsample_limits.len(), 10);
        assert_eq!(a.subsample_limits, b.subsample_limits);
        assert_eq!(a.max_limit, 1.0);
        assert_eq!(a.mean_limit, 1.0);
        assert_eq!(a.std_limit, 0.0);
    }

    #[test]
    fn jackknife_validates_inputs() {
        let ds = blobs(20, 50.0);
        let spec = NeighborhoodSpec::k_nearest(5, MetricKind::L2).unwrap();
        assert!(matches!(
            jackknife(&ds, &spec, 1.0, 10, 7),
            Err(EstimatorError::InvalidFraction(_))
        ));
        assert!(matches!(
            jackknife(&ds, &spec, 0.2, 10, 7),
            Err(EstimatorError::SubsampleTooSmall { .. })
        ));
        assert!(matches!(
            jackknife(&ds, &spec, 0.8, 0, 7),
            Err(EstimatorError::NoRounds)
        ));
    }

    #[test]
    fn sweep_proportion_one_reproduces_full_estimate() {
        let ds = blobs(60, 1.0);
        let spec = NeighborhoodSpec::k_nearest(4, MetricKind::L2).unwrap();
        let full = classifiability(&ds, &spec).unwrap().limit;
        let curve = subsample_sweep(&ds, &spec, &[1.0], 1, 3).unwrap();
        assert_eq!(curve.len(), 1);
        assert_eq!(curve[0].limits, vec![full]);
    }

    #[test]
    fn sweep_has_one_point_per_proportion() {
        let ds = blobs(100, 50.0);
        let spec = NeighborhoodSpec::k_nearest(3, MetricKind::L2).unwrap();
        let proportions = [0.3, 0.5, 0.8, 1.0];
        let curve = subsample_sweep(&ds, &spec, &proportions, 4, 11).unwrap();
        assert_eq!(curve.len(), proportions.len());
        for (point, &p) in curve.iter().zip(&proportions) {
            assert_eq!(point.proportion, p);
            assert_eq!(point.limits.len(), 4);
        }
    }

    #[test]
    fn stratified_rows_preserve_proportions() {
        let ds = blobs(100, 1.0);
        let mut rng = StdRng::seed_from_u64(1);
        let rows = stratified_rows(&ds, 80, &mut rng);
        assert_eq!(rows.len(), 80);
        let sub = ds.subset(&rows).unwrap();
        let counts = sub.class_counts();
        assert_eq!(counts, vec![40, 40]);
        // sorted, unique
        assert!(rows.windows(2).all(|w| w[0] < w[1]));
    }
}
