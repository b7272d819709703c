//! Ground-truth computations: analytic limits by quadrature for closed-form
//! problems, seeded sampling from those problems, and a naive reference
//! implementation of the estimator for equivalence testing.
//!
//! Densities are grid-sampled (midpoint rule) rather than symbolic, which
//! keeps the oracle metric-free and dimension-agnostic for 1D/2D desk-scale
//! checks. Default grids: 4096 cells in 1D, 512x512 in 2D.

use crate::data::{DataError, EstimateReport, LabeledDataset, NeighborhoodMode, NeighborhoodSpec};
use crate::data::ClassTable;
use crate::estimator::{finalize, EstimatorError, PointStat};
use crate::numeric::pairwise_sum;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_CELLS_1D: usize = 4096;
pub const DEFAULT_CELLS_2D: usize = 512;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("problem is degenerate: {0}")]
    DegenerateProblem(String),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("sample of {n} points missed class {class}; increase n")]
    MissingClassInSample { n: usize, class: usize },
    #[error(transparent)]
    Data(#[from] DataError),
}

/// Named density families accepted in problem-definition files. Every
/// density is evaluated at cell midpoints and renormalized on the grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum DensityFamily {
    /// Uniform over the sub-box [a, b] (per-axis bounds).
    Uniform { a: Vec<f64>, b: Vec<f64> },
    /// Increasing linear ramp along axis 0 (the "x" density).
    TriangularX,
    /// Decreasing linear ramp along axis 0 (the "1 - x" density).
    TriangularMirrored,
    /// Isotropic Gaussian truncated to the box.
    Gaussian { mu: Vec<f64>, sigma: f64 },
    /// Gaussian shell of radius r around the box center (2D).
    Ring { r: f64, sigma: f64 },
    /// Explicit per-cell values, axis-0-major.
    Table { values: Vec<f64> },
}

/// Problem-definition file contents.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub bounds: Vec<(f64, f64)>,
    pub cells: Vec<usize>,
    #[serde(default)]
    pub weights: Option<Vec<f64>>,
    pub densities: Vec<DensityFamily>,
}

/// Per-class densities on a regular grid over a bounding box, with class
/// weights. Each density integrates to 1 over the box.
#[derive(Debug, Clone)]
pub struct AnalyticProblem {
    bounds: Vec<(f64, f64)>,
    cells: Vec<usize>,
    weights: Vec<f64>,
    /// per class, cell values in axis-0-major order
    densities: Vec<Vec<f64>>,
}

impl AnalyticProblem {
    pub fn new(
        bounds: Vec<(f64, f64)>,
        cells: Vec<usize>,
        weights: Vec<f64>,
        densities: Vec<Vec<f64>>,
    ) -> Result<Self, OracleError> {
        let dims = bounds.len();
        if dims == 0 || dims > 2 {
            return Err(OracleError::InvalidProblem(format!(
                "{dims} dimensions (1 or 2 supported)"
            )));
        }
        if cells.len() != dims {
            return Err(OracleError::InvalidProblem(
                "cells must list one count per axis".to_string(),
            ));
        }
        let bad_axis =
            |&(lo, hi): &(f64, f64)| !lo.is_finite() || !hi.is_finite() || hi <= lo;
        if cells.contains(&0) || bounds.iter().any(bad_axis) {
            return Err(OracleError::InvalidProblem(
                "each axis needs cells >= 1 and hi > lo".to_string(),
            ));
        }
        if densities.len() < 2 {
            return Err(OracleError::InvalidProblem("at least 2 classes required".to_string()));
        }
        if weights.len() != densities.len() {
            return Err(OracleError::InvalidProblem(
                "one weight per class required".to_string(),
            ));
        }
        if weights.iter().any(|&w| !w.is_finite() || w <= 0.0) {
            return Err(OracleError::InvalidProblem("weights must be positive".to_string()));
        }
        let wsum: f64 = weights.iter().sum();
        if (wsum - 1.0).abs() > 1e-6 {
            return Err(OracleError::InvalidProblem(format!(
                "weights sum to {wsum}, expected 1"
            )));
        }
        let cell_count: usize = cells.iter().product();
        let volume = Self::cell_volume_of(&bounds, &cells);
        for (class, density) in densities.iter().enumerate() {
            if density.len() != cell_count {
                return Err(OracleError::InvalidProblem(format!(
                    "class {class} density has {} cells, grid has {cell_count}",
                    density.len()
                )));
            }
            if density.iter().any(|&v| !v.is_finite() || v < 0.0) {
                return Err(OracleError::InvalidProblem(format!(
                    "class {class} density has a negative or non-finite value"
                )));
            }
            let mass = pairwise_sum(density) * volume;
            if mass == 0.0 {
                return Err(OracleError::DegenerateProblem(format!(
                    "class {class} density is identically zero"
                )));
            }
            if (mass - 1.0).abs() > 1e-6 {
                return Err(OracleError::InvalidProblem(format!(
                    "class {class} density integrates to {mass}, expected 1"
                )));
            }
        }
        Ok(AnalyticProblem { bounds, cells, weights, densities })
    }

    /// Builds a problem from named families, normalizing each density on
    /// the grid. Weights default to uniform.
    pub fn from_spec(spec: &ProblemSpec) -> Result<Self, OracleError> {
        let classes = spec.densities.len();
        if classes < 2 {
            return Err(OracleError::InvalidProblem("at least 2 classes required".to_string()));
        }
        let weights = spec
            .weights
            .clone()
            .unwrap_or_else(|| vec![1.0 / classes as f64; classes]);
        let volume = Self::cell_volume_of(&spec.bounds, &spec.cells);
        let mut densities = Vec::with_capacity(classes);
        for (class, family) in spec.densities.iter().enumerate() {
            let mut values = evaluate_family(family, &spec.bounds, &spec.cells)?;
            let mass = pairwise_sum(&values) * volume;
            if mass <= 0.0 {
                return Err(OracleError::DegenerateProblem(format!(
                    "class {class} density is identically zero on the grid"
                )));
            }
            for v in &mut values {
                *v /= mass;
            }
            densities.push(values);
        }
        AnalyticProblem::new(spec.bounds.clone(), spec.cells.clone(), weights, densities)
    }

    /// The two-class problem with densities 2x and 2(1-x) on [0, 1].
    pub fn linear_1d() -> Self {
        let spec = ProblemSpec {
            bounds: vec![(0.0, 1.0)],
            cells: vec![DEFAULT_CELLS_1D],
            weights: None,
            densities: vec![DensityFamily::TriangularX, DensityFamily::TriangularMirrored],
        };
        AnalyticProblem::from_spec(&spec).expect("builtin problem is valid")
    }

    /// Two unit-width uniform classes, the second offset to the right.
    /// Analytic limit: 1 - overlap/2 with overlap = max(0, 1 - offset).
    pub fn overlap_uniform_1d(offset: f64) -> Result<Self, OracleError> {
        if !(0.0..=1.0).contains(&offset) {
            return Err(OracleError::InvalidProblem(format!(
                "offset {offset} outside [0, 1]"
            )));
        }
        let spec = ProblemSpec {
            bounds: vec![(0.0, 1.0 + offset)],
            cells: vec![DEFAULT_CELLS_1D],
            weights: None,
            densities: vec![
                DensityFamily::Uniform { a: vec![0.0], b: vec![1.0] },
                DensityFamily::Uniform { a: vec![offset], b: vec![offset + 1.0] },
            ],
        };
        AnalyticProblem::from_spec(&spec)
    }

    /// Two identical uniform classes on [0, 1]; limit 0.5.
    pub fn full_overlap_1d() -> Self {
        let spec = ProblemSpec {
            bounds: vec![(0.0, 1.0)],
            cells: vec![DEFAULT_CELLS_1D],
            weights: None,
            densities: vec![
                DensityFamily::Uniform { a: vec![0.0], b: vec![1.0] },
                DensityFamily::Uniform { a: vec![0.0], b: vec![1.0] },
            ],
        };
        AnalyticProblem::from_spec(&spec).expect("builtin problem is valid")
    }

    pub fn dims(&self) -> usize {
        self.bounds.len()
    }

    pub fn num_classes(&self) -> usize {
        self.densities.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn cell_volume_of(bounds: &[(f64, f64)], cells: &[usize]) -> f64 {
        bounds
            .iter()
            .zip(cells)
            .map(|(&(lo, hi), &c)| (hi - lo) / c as f64)
            .product()
    }

    fn cell_volume(&self) -> f64 {
        Self::cell_volume_of(&self.bounds, &self.cells)
    }

    fn cell_count(&self) -> usize {
        self.cells.iter().product()
    }

    fn cell_box(&self, index: usize) -> Vec<(f64, f64)> {
        let mut coords = Vec::with_capacity(self.dims());
        let mut rest = index;
        // axis-0-major: index = i0 * c1 * ... + i1 * ... + ...
        for axis in 0..self.dims() {
            let stride: usize = self.cells[axis + 1..].iter().product();
            let i = rest / stride;
            rest %= stride;
            let (lo, hi) = self.bounds[axis];
            let step = (hi - lo) / self.cells[axis] as f64;
            coords.push((lo + i as f64 * step, lo + (i + 1) as f64 * step));
        }
        coords
    }

    /// Refines every axis by the given factor, re-sampling densities by
    /// cell replication (used by grid-stability tests).
    pub fn refined(&self, factor: usize) -> Self {
        let cells: Vec<usize> = self.cells.iter().map(|&c| c * factor).collect();
        let fine_count: usize = cells.iter().product();
        let densities: Vec<Vec<f64>> = self
            .densities
            .iter()
            .map(|coarse| {
                (0..fine_count)
                    .map(|idx| {
                        // map fine cell to its coarse parent
                        let mut rest = idx;
                        let mut coarse_idx = 0;
                        for axis in 0..self.dims() {
                            let stride: usize = cells[axis + 1..].iter().product();
                            let i = rest / stride;
                            rest %= stride;
                            let coarse_stride: usize =
                                self.cells[axis + 1..].iter().product();
                            coarse_idx += (i / factor) * coarse_stride;
                        }
                        coarse[coarse_idx]
                    })
                    .collect()
            })
            .collect();
        AnalyticProblem {
            bounds: self.bounds.clone(),
            cells,
            weights: self.weights.clone(),
            densities,
        }
    }
}

fn evaluate_family(
    family: &DensityFamily,
    bounds: &[(f64, f64)],
    cells: &[usize],
) -> Result<Vec<f64>, OracleError> {
    let dims = bounds.len();
    let cell_count: usize = cells.iter().product();
    let midpoint = |index: usize| -> Vec<f64> {
        let mut rest = index;
        let mut point = Vec::with_capacity(dims);
        for axis in 0..dims {
            let stride: usize = cells[axis + 1..].iter().product();
            let i = rest / stride;
            rest %= stride;
            let (lo, hi) = bounds[axis];
            let step = (hi - lo) / cells[axis] as f64;
            point.push(lo + (i as f64 + 0.5) * step);
        }
        point
    };
    let values = match family {
        DensityFamily::Uniform { a, b } => {
            if a.len() != dims || b.len() != dims {
                return Err(OracleError::InvalidProblem(
                    "uniform bounds must match the problem dimension".to_string(),
                ));
            }
            (0..cell_count)
                .map(|idx| {
                    let p = midpoint(idx);
                    let inside = p
                        .iter()
                        .zip(a.iter().zip(b))
                        .all(|(&x, (&lo, &hi))| x >= lo && x < hi);
                    if inside {
                        1.0
                    } else {
                        0.0
                    }
                })
                .collect()
        }
        DensityFamily::TriangularX => (0..cell_count)
            .map(|idx| {
                let p = midpoint(idx);
                (p[0] - bounds[0].0).max(0.0)
            })
            .collect(),
        DensityFamily::TriangularMirrored => (0..cell_count)
            .map(|idx| {
                let p = midpoint(idx);
                (bounds[0].1 - p[0]).max(0.0)
            })
            .collect(),
        DensityFamily::Gaussian { mu, sigma } => {
            if mu.len() != dims {
                return Err(OracleError::InvalidProblem(
                    "gaussian mean must match the problem dimension".to_string(),
                ));
            }
            if !sigma.is_finite() || *sigma <= 0.0 {
                return Err(OracleError::InvalidProblem("gaussian sigma must be > 0".to_string()));
            }
            (0..cell_count)
                .map(|idx| {
                    let p = midpoint(idx);
                    let sq: f64 =
                        p.iter().zip(mu).map(|(&x, &m)| (x - m) * (x - m)).sum();
                    (-sq / (2.0 * sigma * sigma)).exp()
                })
                .collect()
        }
        DensityFamily::Ring { r, sigma } => {
            if dims != 2 {
                return Err(OracleError::InvalidProblem("ring density requires 2D".to_string()));
            }
            if !sigma.is_finite() || *sigma <= 0.0 || !r.is_finite() || *r <= 0.0 {
                return Err(OracleError::InvalidProblem(
                    "ring requires r > 0 and sigma > 0".to_string(),
                ));
            }
            let center: Vec<f64> =
                bounds.iter().map(|&(lo, hi)| (lo + hi) / 2.0).collect();
            (0..cell_count)
                .map(|idx| {
                    let p = midpoint(idx);
                    let dist: f64 = p
                        .iter()
                        .zip(&center)
                        .map(|(&x, &c)| (x - c) * (x - c))
                        .sum::<f64>()
                        .sqrt();
                    (-((dist - r) * (dist - r)) / (2.0 * sigma * sigma)).exp()
                })
                .collect()
        }
        DensityFamily::Table { values } => {
            if values.len() != cell_count {
                return Err(OracleError::InvalidProblem(format!(
                    "table has {} values, grid has {cell_count}",
                    values.len()
                )));
            }
            if values.iter().any(|&v| !v.is_finite() || v < 0.0) {
                return Err(OracleError::InvalidProblem(
                    "table values must be finite and non-negative".to_string(),
                ));
            }
            values.clone()
        }
    };
    Ok(values)
}

/// The analytic classifiability limit by midpoint-rule
/// quadrature, C = sum over cells of volume * max_a(w_a f_a). This equals
/// the mixture-weighted expected maximum posterior because the mixture
/// factor cancels: m(x) * max_a(w_a f_a / m) = max_a(w_a f_a).
pub fn bayes_limit(problem: &AnalyticProblem) -> Result<f64, OracleError> {
    let volume = problem.cell_volume();
    let contributions: Vec<f64> = (0..problem.cell_count())
        .map(|cell| {
            let best = problem
                .densities
                .iter()
                .zip(&problem.weights)
                .map(|(density, &w)| w * density[cell])
                .fold(0.0f64, f64::max);
            best * volume
        })
        .collect();
    let limit = pairwise_sum(&contributions);
    if limit <= 0.0 {
        return Err(OracleError::DegenerateProblem("total probability mass is zero".to_string()));
    }
    Ok(limit)
}

/// Draws n labeled points from the problem.
///
/// Class is drawn by weight, then a grid cell by that class's cell masses,
/// then the point uniformly inside the cell. Seeded and reproducible.
pub fn sample_problem(
    problem: &AnalyticProblem,
    n: usize,
    seed: u64,
) -> Result<LabeledDataset, OracleError> {
    if n == 0 {
        return Err(OracleError::InvalidProblem("sample size must be >= 1".to_string()));
    }
    let volume = problem.cell_volume();
    // per-class cumulative cell masses
    let cdfs: Vec<Vec<f64>> = problem
        .densities
        .iter()
        .map(|density| {
            let mut acc = 0.0;
            density
                .iter()
                .map(|&v| {
                    acc += v * volume;
                    acc
                })
                .collect()
        })
        .collect();
    let mut weight_cdf = Vec::with_capacity(problem.num_classes());
    let mut acc = 0.0;
    for &w in &problem.weights {
        acc += w;
        weight_cdf.push(acc);
    }

    let mut rng = StdRng::seed_from_u64(seed);
    let d = problem.dims();
    let mut features = Vec::with_capacity(n * d);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let u: f64 = rng.random_range(0.0..acc);
        let class = weight_cdf.partition_point(|&c| c <= u).min(problem.num_classes() - 1);
        let cdf = &cdfs[class];
        let total = *cdf.last().expect("non-empty grid");
        let v: f64 = rng.random_range(0.0..total);
        let cell = cdf.partition_point(|&c| c <= v).min(cdf.len() - 1);
        for (lo, hi) in problem.cell_box(cell) {
            features.push(rng.random_range(lo..hi));
        }
        labels.push(class);
    }
    let mut seen = vec![false; problem.num_classes()];
    for &l in &labels {
        seen[l] = true;
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(OracleError::MissingClassInSample { n, class: missing });
    }
    let classes = ClassTable::numbered(problem.num_classes())?;
    Ok(LabeledDataset::new(features, d, labels, classes)?)
}

/// Naive O(n^2) reference estimator.
///
/// Straight-line code: no index, no parallelism, one full distance pass per
/// point. Matches the production estimator bit-for-bit; the aggregation
/// step is the shared fixed-order reduction because summation order is part
/// of the estimator's output contract.
pub fn reference_estimate(
    dataset: &LabeledDataset,
    spec: &NeighborhoodSpec,
) -> Result<EstimateReport, EstimatorError> {
    let n = dataset.n();
    if let NeighborhoodMode::KNearest { k } = spec.mode {
        if k > n - 1 {
            return Err(EstimatorError::KTooLarge { k, n });
        }
    }
    let num_classes = dataset.num_classes();
    let mut stats = Vec::with_capacity(n);
    for i in 0..n {
        let mut counts = vec![0u64; num_classes];
        let mut size = 0u64;
        match spec.mode {
            NeighborhoodMode::Radius { theta } => {
                for j in 0..n {
                    if j == i {
                        continue;
                    }
                    if spec.metric.eval(dataset.row(i), dataset.row(j)) < theta {
                        counts[dataset.label(j)] += 1;
                        size += 1;
                    }
                }
            }
            NeighborhoodMode::KNearest { k } => {
                let mut all: Vec<(f64, usize)> = Vec::with_capacity(n - 1);
                for j in 0..n {
                    if j == i {
                        continue;
                    }
                    all.push((spec.metric.eval(dataset.row(i), dataset.row(j)), j));
                }
                all.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                for &(_, j) in &all[..k] {
                    counts[dataset.label(j)] += 1;
                }
                size = k as u64;
            }
        }
        stats.push(PointStat {
            max_count: counts.iter().copied().max().unwrap_or(0),
            size,
        });
    }
    let (per_point_entropy, limit, empty_neighborhood_count) = finalize(&stats);
    Ok(EstimateReport {
        limit,
        n,
        d: dataset.d(),
        classes: dataset.classes().names().to_vec(),
        class_proportions: dataset.class_proportions(),
        config: *spec,
        empty_neighborhood_count,
        per_point_entropy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::MetricKind;

    #[test]
    fn linear_problem_limit_is_three_quarters() {
        let problem = AnalyticProblem::linear_1d();
        let limit = bayes_limit(&problem).unwrap();
        assert!((limit - 0.75).abs() < 1e-3, "got {limit}");
    }

    #[test]
    fn identical_uniforms_give_half() {
        let limit = bayes_limit(&AnalyticProblem::full_overlap_1d()).unwrap();
        assert!((limit - 0.5).abs() < 1e-9, "got {limit}");
    }

    #[test]
    fn disjoint_supports_give_one() {
        let problem = AnalyticProblem::overlap_uniform_1d(1.0).unwrap();
        let limit = bayes_limit(&problem).unwrap();
        assert!((limit - 1.0).abs() < 1e-9, "got {limit}");
    }

    #[test]
    fn partial_overlap_matches_closed_form() {
        for offset in [0.25, 0.5, 0.75] {
            let problem = AnalyticProblem::overlap_uniform_1d(offset).unwrap();
            let expected = 1.0 - (1.0 - offset) / 2.0;
            let limit = bayes_limit(&problem).unwrap();
            assert!((limit - expected).abs() < 2e-3, "offset {offset}: got {limit}");
        }
    }

    #[test]
    fn limit_at_least_largest_prior() {
        let spec = ProblemSpec {
            bounds: vec![(0.0, 1.0)],
            cells: vec![1024],
            weights: Some(vec![0.7, 0.3]),
            densities: vec![
                DensityFamily::Uniform { a: vec![0.0], b: vec![1.0] },
                DensityFamily::Uniform { a: vec![0.0], b: vec![1.0] },
            ],
        };
        let problem = AnalyticProblem::from_spec(&spec).unwrap();
        let limit = bayes_limit(&problem).unwrap();
        assert!((0.7 - 1e-9..=1.0).contains(&limit));
        assert!((limit - 0.7).abs() < 1e-9);
    }

    #[test]
    fn class_order_swap_and_grid_refinement_are_stable() {
        let problem = AnalyticProblem::linear_1d();
        let swapped = AnalyticProblem::new(
            vec![(0.0, 1.0)],
            vec![DEFAULT_CELLS_1D],
            problem.weights().to_vec(),
            vec![problem.densities[1].clone(), problem.densities[0].clone()],
        )
        .unwrap();
        assert_eq!(bayes_limit(&problem).unwrap(), bayes_limit(&swapped).unwrap());

        let refined = problem.refined(2);
        let coarse = bayes_limit(&problem).unwrap();
        let fine = bayes_limit(&refined).unwrap();
        assert!((coarse - fine).abs() < 1e-3);
    }

    #[test]
    fn sampling_is_deterministic_and_in_support() {
        let problem = AnalyticProblem::overlap_uniform_1d(1.0).unwrap();
        let a = sample_problem(&problem, 500, 9).unwrap();
        let b = sample_problem(&problem, 500, 9).unwrap();
        assert_eq!(a, b);
        // disjoint supports: every sampled point lies in its class's support
        for i in 0..a.n() {
            let x = a.row(i)[0];
            if a.label(i) == 0 {
                assert!(x < 1.0 + 1e-9);
            } else {
                assert!(x > 1.0 - 1e-9);
            }
        }
    }

    #[test]
    fn sample_class_counts_near_weights() {
        let problem = AnalyticProblem::linear_1d();
        let ds = sample_problem(&problem, 1000, 4).unwrap();
        let counts = ds.class_counts();
        // binomial(1000, 0.5): 4 sigma ~ 63
        assert!((counts[0] as f64 - 500.0).abs() < 63.0, "counts {counts:?}");
    }

    #[test]
    fn class0_sample_mean_matches_density() {
        // E[X] = 2/3 for density 2x
        let problem = AnalyticProblem::linear_1d();
        let ds = sample_problem(&problem, 4000, 21).unwrap();
        let xs: Vec<f64> = (0..ds.n()).filter(|&i| ds.label(i) == 0).map(|i| ds.row(i)[0]).collect();
        let mean = pairwise_sum(&xs) / xs.len() as f64;
        // sd of 2x distribution is ~0.2357; 4 sigma of the mean over ~2000 draws
        assert!((mean - 2.0 / 3.0).abs() < 4.0 * 0.2357 / (xs.len() as f64).sqrt());
    }

    #[test]
    fn reference_matches_saturation_cases() {
        let rows: Vec<Vec<f64>> = (0..5).map(|i| vec![i as f64]).collect();
        let ds = LabeledDataset::from_rows(
            &rows,
            vec![0, 0, 0, 1, 1],
            ClassTable::numbered(2).unwrap(),
        )
        .unwrap();
        let huge = NeighborhoodSpec::radius(1e9, MetricKind::L2).unwrap();
        assert_eq!(reference_estimate(&ds, &huge).unwrap().limit, 0.6);

        let tiny = NeighborhoodSpec::radius(1e-9, MetricKind::L2).unwrap();
        assert_eq!(reference_estimate(&ds, &tiny).unwrap().limit, 1.0);
    }

    #[test]
    fn problem_validation_errors() {
        // single class
        let err = AnalyticProblem::new(
            vec![(0.0, 1.0)],
            vec![4],
            vec![1.0],
            vec![vec![1.0; 4]],
        )
        .unwrap_err();
        assert!(matches!(err, OracleError::InvalidProblem(_)));

        // all-zero density
        let spec = ProblemSpec {
            bounds: vec![(0.0, 1.0)],
            cells: vec![8],
            weights: None,
            densities: vec![
                DensityFamily::Table { values: vec![0.0; 8] },
                DensityFamily::Uniform { a: vec![0.0], b: vec![1.0] },
            ],
        };
        assert!(matches!(
            AnalyticProblem::from_spec(&spec).unwrap_err(),
            OracleError::DegenerateProblem(_)
        ));
    }
}
