//! Neighborhood queries over a dataset plus the threshold/k selection
//! heuristics.
//!
//! Radius membership is strict (`distance < theta`): boundary points at
//! exactly theta are excluded. A query point never appears in its own
//! neighborhood, but other rows with identical coordinates do. k-nearest
//! ties are broken by (distance, row index) ascending, which makes every
//! result deterministic regardless of backend or worker count.

mod kdtree;

use crate::data::LabeledDataset;
use crate::metrics::MetricKind;
use crate::numeric::pairwise_sum;
use crate::parallel;
use kdtree::KdTree;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum NeighborError {
    #[error("query index {index} out of range for dataset of {n} rows")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("k = {k} too large: a dataset of {n} rows supports at most k = {max}", max = n - 1)]
    KTooLarge { k: usize, n: usize },
    #[error("dataset of {n} rows is too small (need at least {needed})")]
    DatasetTooSmall { n: usize, needed: usize },
    #[error("fraction {0} outside (0, 1]")]
    InvalidFraction(f64),
}

/// One query result: neighbor row indices with their distances.
///
/// k-nearest results are sorted by (distance, row index) ascending; radius
/// results are sorted by row index.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborList {
    pub indices: Vec<usize>,
    pub distances: Vec<f64>,
}

impl NeighborList {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    fn from_candidates(cands: Vec<Candidate>) -> Self {
        NeighborList {
            indices: cands.iter().map(|c| c.index).collect(),
            distances: cands.iter().map(|c| c.distance).collect(),
        }
    }
}

/// Heap entry ordered by (distance, row index); the max-heap keeps the
/// current worst candidate on top. Distances are finite by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Candidate {
    pub(crate) distance: f64,
    pub(crate) index: usize,
}

impl Eq for Candidate {}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.distance
            .total_cmp(&other.distance)
            .then(self.index.cmp(&other.index))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn push_candidate(heap: &mut BinaryHeap<Candidate>, k: usize, cand: Candidate) {
    if heap.len() < k {
        heap.push(cand);
    } else if cand < *heap.peek().expect("non-empty heap") {
        heap.pop();
        heap.push(cand);
    }
}

enum Backend {
    Brute,
    KdTree(KdTree),
}

/// Accelerating structure over one dataset and metric.
///
/// L1/L2/Chebyshev get a kd-tree; the remaining metrics fall back to the
/// brute-force scan. Either way query results are identical to brute force.
pub struct NeighborIndex<'a> {
    dataset: &'a LabeledDataset,
    metric: MetricKind,
    backend: Backend,
}

impl<'a> NeighborIndex<'a> {
    pub fn build(dataset: &'a LabeledDataset, metric: MetricKind) -> Self {
        let backend = if metric.supports_spatial_index() {
            Backend::KdTree(KdTree::build(dataset, metric))
        } else {
            Backend::Brute
        };
        NeighborIndex { dataset, metric, backend }
    }

    /// Always uses the brute-force scan; this is the correctness oracle.
    pub fn build_brute(dataset: &'a LabeledDataset, metric: MetricKind) -> Self {
        NeighborIndex { dataset, metric, backend: Backend::Brute }
    }

    pub fn backend_name(&self) -> &'static str {
        match self.backend {
            Backend::Brute => "brute",
            Backend::KdTree(_) => "kdtree",
        }
    }

    pub fn metric(&self) -> MetricKind {
        self.metric
    }

    fn check_query_index(&self, index: usize) -> Result<(), NeighborError> {
        if index >= self.dataset.n() {
            return Err(NeighborError::IndexOutOfRange { index, n: self.dataset.n() });
        }
        Ok(())
    }

    /// The k closest rows to row `query_index`, excluding the row itself.
    pub fn k_nearest(&self, query_index: usize, k: usize) -> Result<NeighborList, NeighborError> {
        self.check_query_index(query_index)?;
        if k == 0 || k > self.dataset.n() - 1 {
            return Err(NeighborError::KTooLarge { k, n: self.dataset.n() });
        }
        Ok(NeighborList::from_candidates(self.k_nearest_point_inner(
            self.dataset.row(query_index),
            k,
            Some(query_index),
        )))
    }

    /// The k closest rows to an arbitrary point (no self to exclude).
    pub fn k_nearest_point(&self, point: &[f64], k: usize) -> Result<NeighborList, NeighborError> {
        if k == 0 || k > self.dataset.n() {
            return Err(NeighborError::KTooLarge { k, n: self.dataset.n() + 1 });
        }
        Ok(NeighborList::from_candidates(self.k_nearest_point_inner(point, k, None)))
    }

    fn k_nearest_point_inner(&self, point: &[f64], k: usize, skip: Option<usize>) -> Vec<Candidate> {
        match &self.backend {
            Backend::KdTree(tree) => tree.k_nearest(self.dataset, point, k, skip),
            Backend::Brute => {
                let mut heap = BinaryHeap::with_capacity(k + 1);
                for i in 0..self.dataset.n() {
                    if skip == Some(i) {
                        continue;
                    }
                    let d = self.metric.eval(point, self.dataset.row(i));
                    push_candidate(&mut heap, k, Candidate { distance: d, index: i });
                }
                heap.into_sorted_vec()
            }
        }
    }

    /// All rows strictly within `theta` of row `query_index`, excluding the
    /// row itself.
    pub fn within_radius(
        &self,
        query_index: usize,
        theta: f64,
    ) -> Result<NeighborList, NeighborError> {
        self.check_query_index(query_index)?;
        Ok(NeighborList::from_candidates(self.within_radius_point_inner(
            self.dataset.row(query_index),
            theta,
            Some(query_index),
        )))
    }

    /// All rows strictly within `theta` of an arbitrary point.
    pub fn within_radius_point(&self, point: &[f64], theta: f64) -> NeighborList {
        NeighborList::from_candidates(self.within_radius_point_inner(point, theta, None))
    }

    fn within_radius_point_inner(
        &self,
        point: &[f64],
        theta: f64,
        skip: Option<usize>,
    ) -> Vec<Candidate> {
        let mut out = Vec::new();
        match &self.backend {
            Backend::KdTree(tree) => {
                tree.within_radius(self.dataset, point, theta, skip, &mut out)
            }
            Backend::Brute => {
                for i in 0..self.dataset.n() {
                    if skip == Some(i) {
                        continue;
                    }
                    let d = self.metric.eval(point, self.dataset.row(i));
                    if d < theta {
                        out.push(Candidate { distance: d, index: i });
                    }
                }
            }
        }
        out
    }
}

/// Brute-force radius neighborhood of one row.
pub fn neighbors_radius(
    dataset: &LabeledDataset,
    query_index: usize,
    theta: f64,
    metric: MetricKind,
) -> Result<NeighborList, NeighborError> {
    NeighborIndex::build_brute(dataset, metric).within_radius(query_index, theta)
}

/// Brute-force k-nearest neighborhood of one row.
pub fn neighbors_k(
    dataset: &LabeledDataset,
    query_index: usize,
    k: usize,
    metric: MetricKind,
) -> Result<NeighborList, NeighborError> {
    NeighborIndex::build_brute(dataset, metric).k_nearest(query_index, k)
}

/// Radius heuristic from a dataset fraction.
///
/// With m = round(fraction * n) clamped to [1, n-1], returns the mean over
/// all points of the mean distance to their m nearest neighbors, labels
/// ignored.
pub fn threshold_from_fraction(
    dataset: &LabeledDataset,
    fraction: f64,
    metric: MetricKind,
) -> Result<f64, NeighborError> {
    if dataset.n() < 2 {
        return Err(NeighborError::DatasetTooSmall { n: dataset.n(), needed: 2 });
    }
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(NeighborError::InvalidFraction(fraction));
    }
    let n = dataset.n();
    let m = (((fraction * n as f64).round() as usize).max(1)).min(n - 1);
    let index = NeighborIndex::build(dataset, metric);
    let per_point = parallel::par_map(n, parallel::effective_threads(None), |i| {
        let cands = index.k_nearest_point_inner(dataset.row(i), m, Some(i));
        let dists: Vec<f64> = cands.iter().map(|c| c.distance).collect();
        pairwise_sum(&dists) / m as f64
    });
    Ok(pairwise_sum(&per_point) / n as f64)
}

/// Neighbor-count heuristic from a dataset fraction, clipped to
/// [k_min, min(k_max, n-1)] with the upper bound winning on conflict.
pub fn k_from_fraction(n: usize, fraction: f64, k_min: usize, k_max: usize) -> usize {
    debug_assert!(n >= 2 && k_min >= 1 && k_max >= k_min);
    let raw = (fraction * n as f64).round() as usize;
    let upper = k_max.min(n - 1);
    raw.max(k_min).min(upper).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::ClassTable;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn dataset_1d(points: &[f64], labels: &[usize], num_classes: usize) -> LabeledDataset {
        let rows: Vec<Vec<f64>> = points.iter().map(|&p| vec![p]).collect();
        LabeledDataset::from_rows(
            &rows,
            labels.to_vec(),
            ClassTable::numbered(num_classes).unwrap(),
        )
        .unwrap()
    }

    fn random_dataset(rng: &mut StdRng, n: usize, d: usize) -> LabeledDataset {
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.random_range(-10.0..10.0)).collect())
            .collect();
        let mut labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..3)).collect();
        labels[0] = 0;
        labels[1.min(n - 1)] = 1;
        labels[2.min(n - 1)] = 2;
        LabeledDataset::from_rows(&rows, labels, ClassTable::numbered(3).unwrap()).unwrap()
    }

    #[test]
    fn radius_strict_inequality_and_self_exclusion() {
        let ds = dataset_1d(&[0.0, 0.5, 2.0], &[0, 0, 1], 2);
        let list = neighbors_radius(&ds, 0, 1.0, MetricKind::L2).unwrap();
        assert_eq!(list.indices, vec![1]);

        // boundary point at exactly theta is excluded
        let list = neighbors_radius(&ds, 0, 0.5, MetricKind::L2).unwrap();
        assert!(list.is_empty());
    }

    #[test]
    fn duplicate_rows_are_neighbors_of_each_other() {
        let ds = dataset_1d(&[0.0, 0.0], &[0, 1], 2);
        let list = neighbors_radius(&ds, 0, 0.1, MetricKind::L2).unwrap();
        assert_eq!(list.indices, vec![1]);
        assert_eq!(list.distances, vec![0.0]);
    }

    #[test]
    fn k_nearest_ordering_and_ties() {
        let ds = dataset_1d(&[0.0, 1.0, 2.0, 3.0], &[0, 0, 1, 1], 2);
        let list = neighbors_k(&ds, 0, 2, MetricKind::L1).unwrap();
        assert_eq!(list.indices, vec![1, 2]);
        assert_eq!(list.distances, vec![1.0, 2.0]);

        // equidistant tie resolved by lower row index
        let ds = dataset_1d(&[0.0, -1.0, 1.0], &[0, 1, 1], 2);
        let list = neighbors_k(&ds, 0, 1, MetricKind::L2).unwrap();
        assert_eq!(list.indices, vec![1]);

        // k = n-1 returns all other rows
        let ds = dataset_1d(&[0.0, 1.0, 2.0, 3.0], &[0, 0, 1, 1], 2);
        let list = neighbors_k(&ds, 1, 3, MetricKind::L2).unwrap();
        let mut idx = list.indices.clone();
        idx.sort_unstable();
        assert_eq!(idx, vec![0, 2, 3]);
    }

    #[test]
    fn k_too_large_and_bad_index_rejected() {
        let ds = dataset_1d(&[0.0, 1.0], &[0, 1], 2);
        assert_eq!(
            neighbors_k(&ds, 0, 2, MetricKind::L2).unwrap_err(),
            NeighborError::KTooLarge { k: 2, n: 2 }
        );
        assert_eq!(
            neighbors_k(&ds, 5, 1, MetricKind::L2).unwrap_err(),
            NeighborError::IndexOutOfRange { index: 5, n: 2 }
        );
    }

    #[test]
    fn threshold_fraction_hand_case() {
        // m = 1: nearest distances are 1, 1, 1
        let ds = dataset_1d(&[0.0, 1.0, 2.0], &[0, 0, 1], 2);
        let t = threshold_from_fraction(&ds, 0.34, MetricKind::L2).unwrap();
        assert_eq!(t, 1.0);
    }

    #[test]
    fn threshold_fraction_one_clamps_to_all_others() {
        let ds = dataset_1d(&[0.0, 1.0, 3.0], &[0, 0, 1], 2);
        // m clamps to n-1 = 2: per-point means (1+3)/2=2, (1+2)/2=1.5, (3+2)/2=2.5
        let expected = (2.0 + 1.5 + 2.5) / 3.0;
        let t = threshold_from_fraction(&ds, 1.0, MetricKind::L2).unwrap();
        assert!((t - expected).abs() < 1e-15);
    }

    #[test]
    fn threshold_fraction_matches_brute_recomputation() {
        let mut rng = StdRng::seed_from_u64(7);
        let ds = random_dataset(&mut rng, 100, 2);
        let fraction = 0.05;
        let got = threshold_from_fraction(&ds, fraction, MetricKind::L2).unwrap();

        // independent O(n^2) recomputation
        let n = ds.n();
        let m = ((fraction * n as f64).round() as usize).clamp(1, n - 1);
        let mut per_point = Vec::new();
        for i in 0..n {
            let mut dists: Vec<(f64, usize)> = (0..n)
                .filter(|&j| j != i)
                .map(|j| (MetricKind::L2.eval(ds.row(i), ds.row(j)), j))
                .collect();
            dists.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let picked: Vec<f64> = dists[..m].iter().map(|p| p.0).collect();
            per_point.push(pairwise_sum(&picked) / m as f64);
        }
        let expected = pairwise_sum(&per_point) / n as f64;
        assert_eq!(got, expected);
    }

    #[test]
    fn k_from_fraction_clipping() {
        assert_eq!(k_from_fraction(1000, 0.015, 6, 32), 15);
        assert_eq!(k_from_fraction(100, 0.015, 6, 32), 6);
        assert_eq!(k_from_fraction(10000, 0.015, 6, 32), 32);
        // n-1 wins over k_min when they conflict
        assert_eq!(k_from_fraction(5, 0.015, 6, 32), 4);
    }

    #[test]
    fn index_matches_brute_force_on_all_metrics() {
        let mut rng = StdRng::seed_from_u64(99);
        for trial in 0..4 {
            let n = 60 + trial * 40;
            let ds = random_dataset(&mut rng, n, 3);
            for metric in crate::metrics::ALL_METRICS {
                let fast = NeighborIndex::build(&ds, metric);
                let brute = NeighborIndex::build_brute(&ds, metric);
                for q in [0usize, n / 2, n - 1] {
                    for k in [1usize, 5, 16] {
                        assert_eq!(
                            fast.k_nearest(q, k).unwrap(),
                            brute.k_nearest(q, k).unwrap(),
                            "knn mismatch metric={metric} q={q} k={k}"
                        );
                    }
                    for theta in [0.5, 2.0, 50.0] {
                        assert_eq!(
                            fast.within_radius(q, theta).unwrap(),
                            brute.within_radius(q, theta).unwrap(),
                            "radius mismatch metric={metric} q={q} theta={theta}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn large_l2_index_matches_brute_force_on_random_queries() {
        let mut rng = StdRng::seed_from_u64(2024);
        let ds = random_dataset(&mut rng, 10_000, 2);
        let fast = NeighborIndex::build(&ds, MetricKind::L2);
        let brute = NeighborIndex::build_brute(&ds, MetricKind::L2);
        assert_eq!(fast.backend_name(), "kdtree");
        for _ in 0..100 {
            let q = rng.random_range(0..ds.n());
            let k = rng.random_range(1..=24);
            assert_eq!(fast.k_nearest(q, k).unwrap(), brute.k_nearest(q, k).unwrap());
        }
    }

    #[test]
    fn backend_fallback_for_non_minkowski_metrics() {
        let ds = dataset_1d(&[0.0, 1.0, 2.0], &[0, 0, 1], 2);
        assert_eq!(NeighborIndex::build(&ds, MetricKind::Canberra).backend_name(), "brute");
        assert_eq!(NeighborIndex::build(&ds, MetricKind::L2).backend_name(), "kdtree");
    }

    #[test]
    fn knn_is_subset_of_slightly_larger_radius() {
        let mut rng = StdRng::seed_from_u64(3);
        let ds = random_dataset(&mut rng, 80, 2);
        let index = NeighborIndex::build(&ds, MetricKind::L2);
        for q in 0..10 {
            let knn = index.k_nearest(q, 7).unwrap();
            let kth = *knn.distances.last().unwrap();
            let ball = index.within_radius(q, kth * (1.0 + 1e-9)).unwrap();
            for idx in &knn.indices {
                assert!(ball.indices.contains(idx));
            }
        }
    }
}
