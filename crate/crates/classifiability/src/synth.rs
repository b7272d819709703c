//! Seeded generators for the synthetic benchmark problems.
//!
//! Every generator is a pure function of its parameters and seed. Rows are
//! emitted grouped by construction order (class 0 first where the geometry
//! has no say), and all noise is isotropic Gaussian.

use crate::data::{ClassTable, DataError, LabeledDataset};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SynthError {
    #[error("{clusters} clusters need {needed} informative features, got {got}")]
    TooManyClusters { clusters: usize, needed: u32, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Data(#[from] DataError),
}

/// Madelon-style generator parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MadelonParams {
    pub n: usize,
    pub n_features: usize,
    pub n_informative: usize,
    pub n_redundant: usize,
    pub n_classes: usize,
    pub clusters_per_class: usize,
    pub class_sep: f64,
    pub flip_fraction: f64,
    pub seed: u64,
}

/// Declarative description of one synthetic dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SynthSpec {
    Circles { n: usize, noise: f64, radius_ratio: f64, seed: u64 },
    Moons { n: usize, noise: f64, seed: u64 },
    Blobs { n: usize, centers: Vec<Vec<f64>>, noise: f64, seed: u64 },
    Linear1d { n: usize, seed: u64 },
    OverlapUniform1d { n: usize, offset: f64, seed: u64 },
    MadelonLike(MadelonParams),
}

/// Generates the dataset described by `spec`.
pub fn generate(spec: &SynthSpec) -> Result<LabeledDataset, SynthError> {
    match spec {
        SynthSpec::Circles { n, noise, radius_ratio, seed } => {
            gen_circles(*n, *noise, *radius_ratio, *seed)
        }
        SynthSpec::Moons { n, noise, seed } => gen_moons(*n, *noise, *seed),
        SynthSpec::Blobs { n, centers, noise, seed } => gen_blobs(*n, centers, *noise, *seed),
        SynthSpec::Linear1d { n, seed } => gen_linear_1d(*n, *seed),
        SynthSpec::OverlapUniform1d { n, offset, seed } => {
            gen_overlap_uniform_1d(*n, *offset, *seed)
        }
        SynthSpec::MadelonLike(params) => gen_madelon_like(params),
    }
}

fn check_common(n: usize, noise: f64) -> Result<(), SynthError> {
    if n < 2 {
        return Err(SynthError::InvalidParameter(format!("n = {n}, need at least 2")));
    }
    if !noise.is_finite() || noise < 0.0 {
        return Err(SynthError::InvalidParameter(format!("noise = {noise}, need >= 0")));
    }
    Ok(())
}

fn gaussian(rng: &mut StdRng, sigma: f64) -> f64 {
    if sigma == 0.0 {
        return 0.0;
    }
    Normal::new(0.0, sigma).expect("sigma validated").sample(rng)
}

/// Two concentric circles: class 0 on radius 1, class 1 on `radius_ratio`,
/// points evenly spaced by angle, each coordinate perturbed by centered
/// Gaussian noise.
pub fn gen_circles(
    n: usize,
    noise: f64,
    radius_ratio: f64,
    seed: u64,
) -> Result<LabeledDataset, SynthError> {
    check_common(n, noise)?;
    if !(radius_ratio > 0.0 && radius_ratio < 1.0) {
        return Err(SynthError::InvalidParameter(format!(
            "radius_ratio = {radius_ratio}, need (0, 1)"
        )));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let counts = [n - n / 2, n / 2];
    let radii = [1.0, radius_ratio];
    let mut rows = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for (class, (&m, &r)) in counts.iter().zip(&radii).enumerate() {
        for j in 0..m {
            let t = 2.0 * PI * j as f64 / m as f64;
            rows.push(vec![
                r * t.cos() + gaussian(&mut rng, noise),
                r * t.sin() + gaussian(&mut rng, noise),
            ]);
            labels.push(class);
        }
    }
    Ok(LabeledDataset::from_rows(&rows, labels, ClassTable::numbered(2)?)?)
}

/// Two interleaving half-circles in the conventional construction: class 0
/// is the upper half of the unit circle, class 1 the mirrored half-circle
/// through (1 - cos t, 1 - sin t - 1/2).
pub fn gen_moons(n: usize, noise: f64, seed: u64) -> Result<LabeledDataset, SynthError> {
    check_common(n, noise)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let counts = [n - n / 2, n / 2];
    let mut rows = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for (class, &m) in counts.iter().enumerate() {
        for j in 0..m {
            let t = if m > 1 { PI * j as f64 / (m - 1) as f64 } else { 0.0 };
            let (x, y) = if class == 0 {
                (t.cos(), t.sin())
            } else {
                (1.0 - t.cos(), 1.0 - t.sin() - 0.5)
            };
            rows.push(vec![
                x + gaussian(&mut rng, noise),
                y + gaussian(&mut rng, noise),
            ]);
            labels.push(class);
        }
    }
    Ok(LabeledDataset::from_rows(&rows, labels, ClassTable::numbered(2)?)?)
}

/// Isotropic Gaussian clusters, one class per center, counts as equal as n
/// allows (earlier classes take the remainder).
pub fn gen_blobs(
    n: usize,
    centers: &[Vec<f64>],
    noise: f64,
    seed: u64,
) -> Result<LabeledDataset, SynthError> {
    check_common(n, noise)?;
    if centers.len() < 2 {
        return Err(SynthError::InvalidParameter("need at least 2 centers".to_string()));
    }
    let d = centers[0].len();
    if d == 0 || centers.iter().any(|c| c.len() != d) {
        return Err(SynthError::InvalidParameter(
            "centers must share one nonzero dimension".to_string(),
        ));
    }
    if n < centers.len() {
        return Err(SynthError::InvalidParameter(format!(
            "n = {n} smaller than {} centers",
            centers.len()
        )));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let c = centers.len();
    let mut rows = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for (class, center) in centers.iter().enumerate() {
        let m = n / c + usize::from(class < n % c);
        for _ in 0..m {
            rows.push(center.iter().map(|&x| x + gaussian(&mut rng, noise)).collect());
            labels.push(class);
        }
    }
    Ok(LabeledDataset::from_rows(&rows, labels, ClassTable::numbered(c)?)?)
}

/// The 1D two-class problem with densities 2x and 2(1-x) on [0, 1], drawn
/// by inverse CDF with equal class counts.
pub fn gen_linear_1d(n: usize, seed: u64) -> Result<LabeledDataset, SynthError> {
    check_common(n, 0.0)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let counts = [n - n / 2, n / 2];
    let mut rows = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for (class, &m) in counts.iter().enumerate() {
        for _ in 0..m {
            let u: f64 = rng.random();
            let x = if class == 0 { u.sqrt() } else { 1.0 - (1.0 - u).sqrt() };
            rows.push(vec![x]);
            labels.push(class);
        }
    }
    Ok(LabeledDataset::from_rows(&rows, labels, ClassTable::numbered(2)?)?)
}

/// Two unit-width uniform classes, the second shifted right by `offset`.
/// Analytic limit: 1 - max(0, 1 - offset) / 2.
pub fn gen_overlap_uniform_1d(
    n: usize,
    offset: f64,
    seed: u64,
) -> Result<LabeledDataset, SynthError> {
    check_common(n, 0.0)?;
    if !(0.0..=1.0).contains(&offset) {
        return Err(SynthError::InvalidParameter(format!("offset = {offset}, need [0, 1]")));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let counts = [n - n / 2, n / 2];
    let mut rows = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for (class, &m) in counts.iter().enumerate() {
        let lo = if class == 0 { 0.0 } else { offset };
        for _ in 0..m {
            rows.push(vec![lo + rng.random::<f64>()]);
            labels.push(class);
        }
    }
    Ok(LabeledDataset::from_rows(&rows, labels, ClassTable::numbered(2)?)?)
}

/// Madelon-style multiclass data: unit Gaussian clusters on distinct
/// vertices of a hypercube of side 2 * class_sep in the informative
/// subspace, redundant features as random linear combinations of the
/// informative ones, pure standard-Gaussian noise features, and a fraction
/// `flip_fraction` of labels replaced by a uniformly random class (possibly
/// the same one, which gives separable clusters the closed-form limit
/// (1 - q) + q / n_classes).
///
/// Feature layout: informative, then redundant, then noise columns.
pub fn gen_madelon_like(params: &MadelonParams) -> Result<LabeledDataset, SynthError> {
    let p = params;
    check_common(p.n, p.class_sep)?;
    if p.n_classes < 2 {
        return Err(SynthError::InvalidParameter("need at least 2 classes".to_string()));
    }
    if p.clusters_per_class < 1 {
        return Err(SynthError::InvalidParameter("need at least 1 cluster per class".to_string()));
    }
    if !(0.0..=1.0).contains(&p.flip_fraction) {
        return Err(SynthError::InvalidParameter(format!(
            "flip_fraction = {}, need [0, 1]",
            p.flip_fraction
        )));
    }
    if p.n_features < p.n_informative + p.n_redundant || p.n_informative == 0 {
        return Err(SynthError::InvalidParameter(format!(
            "n_features = {} cannot hold {} informative + {} redundant",
            p.n_features, p.n_informative, p.n_redundant
        )));
    }
    let clusters = p.n_classes * p.clusters_per_class;
    let needed = usize::BITS - (clusters - 1).leading_zeros();
    if p.n_informative < 64 && clusters > (1usize << p.n_informative) {
        return Err(SynthError::TooManyClusters {
            clusters,
            needed,
            got: p.n_informative,
        });
    }

    let mut rng = StdRng::seed_from_u64(p.seed);

    // distinct hypercube vertices, one per cluster
    let vertices = sample_vertices(&mut rng, clusters, p.n_informative);
    let centers: Vec<Vec<f64>> = vertices
        .iter()
        .map(|bits| {
            bits.iter()
                .map(|&b| if b { p.class_sep } else { -p.class_sep })
                .collect()
        })
        .collect();

    // mixing matrix for redundant features, entries uniform in [-1, 1)
    let mixing: Vec<Vec<f64>> = (0..p.n_redundant)
        .map(|_| (0..p.n_informative).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();

    let n_noise = p.n_features - p.n_informative - p.n_redundant;
    let mut rows = Vec::with_capacity(p.n);
    let mut labels = Vec::with_capacity(p.n);
    for i in 0..p.n {
        let cluster = i % clusters;
        let center = &centers[cluster];
        let mut row = Vec::with_capacity(p.n_features);
        for &coordinate in center {
            row.push(coordinate + gaussian(&mut rng, 1.0));
        }
        for weights in &mixing {
            let value: f64 = weights.iter().zip(&row[..p.n_informative]).map(|(w, x)| w * x).sum();
            row.push(value);
        }
        for _ in 0..n_noise {
            row.push(gaussian(&mut rng, 1.0));
        }
        rows.push(row);
        labels.push(cluster % p.n_classes);
    }
    for label in labels.iter_mut() {
        if rng.random::<f64>() < p.flip_fraction {
            *label = rng.random_range(0..p.n_classes);
        }
    }
    Ok(LabeledDataset::from_rows(&rows, labels, ClassTable::numbered(p.n_classes)?)?)
}

fn sample_vertices(rng: &mut StdRng, clusters: usize, dims: usize) -> Vec<Vec<bool>> {
    // Enumerate-and-shuffle when the cube is small, rejection-sample when
    // collisions are effectively impossible.
    if dims < 20 && (1usize << dims) <= 8192 {
        let total = 1usize << dims;
        let mut all: Vec<usize> = (0..total).collect();
        all.shuffle(rng);
        all[..clusters]
            .iter()
            .map(|&v| (0..dims).map(|b| (v >> b) & 1 == 1).collect())
            .collect()
    } else {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(clusters);
        while out.len() < clusters {
            let bits: Vec<bool> = (0..dims).map(|_| rng.random::<bool>()).collect();
            if seen.insert(bits.clone()) {
                out.push(bits);
            }
        }
        out
    }
}
