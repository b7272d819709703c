//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line with the measured values (`cargo test --test acceptance
//! -- --nocapture` shows them all).

use classifiability::baselines::{self, ClassifierConfig, ClassifierKind, SplitSpec};
use classifiability::data::{ClassProbabilities, ClassTable, LabeledDataset, NeighborhoodSpec};
use classifiability::estimator::{
    self, classifiability_opts, jackknife, local_entropy, local_entropy_full, overclass_check,
    ExecOptions,
};
use classifiability::metrics::{MetricKind, ALL_METRICS};
use classifiability::neighbors::{k_from_fraction, threshold_from_fraction};
use classifiability::oracle::{bayes_limit, reference_estimate, sample_problem, AnalyticProblem};
use classifiability::synth;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn check(criterion: &str, pass: bool, detail: &str) {
    println!("[{criterion}] {} -- {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{criterion} failed: {detail}");
}

/// Random dataset with distinct rows and, when asked, a strictly unique
/// majority class (the exact saturated-limit equality needs one; a tie is a
/// boundary case where self-exclusion shifts the saturated limit to
/// n_max / (n - 1)).
fn random_dataset(
    rng: &mut StdRng,
    n: usize,
    d: usize,
    num_classes: usize,
    unique_majority: bool,
) -> LabeledDataset {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..d).map(|_| rng.random_range(-10.0..10.0)).collect())
        .collect();
    let mut counts;
    loop {
        let mut labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..num_classes)).collect();
        for (class, slot) in labels.iter_mut().enumerate().take(num_classes) {
            *slot = class;
        }
        counts = vec![0usize; num_classes];
        for &l in &labels {
            counts[l] += 1;
        }
        if counts.contains(&0) {
            continue;
        }
        if unique_majority {
            let top = *counts.iter().max().unwrap();
            if counts.iter().filter(|&&c| c == top).count() != 1 {
                continue;
            }
        }
        return LabeledDataset::from_rows(
            &rows,
            labels,
            ClassTable::numbered(num_classes).unwrap(),
        )
        .unwrap();
    }
}

fn min_nonzero_distance(ds: &LabeledDataset, metric: MetricKind) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..ds.n() {
        for j in (i + 1)..ds.n() {
            let d = metric.eval(ds.row(i), ds.row(j));
            if d > 0.0 && d < best {
                best = d;
            }
        }
    }
    best
}

fn diameter(ds: &LabeledDataset, metric: MetricKind) -> f64 {
    let mut best: f64 = 0.0;
    for i in 0..ds.n() {
        for j in (i + 1)..ds.n() {
            best = best.max(metric.eval(ds.row(i), ds.row(j)));
        }
    }
    best
}

// Criterion 1: the full relative-entropy form and the 1 - max p
// simplification agree within 1e-12 on 10,000 random probability vectors.
#[test]
fn criterion_01_simplification_identity() {
    let mut rng = StdRng::seed_from_u64(101);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let len = rng.random_range(2..=10usize);
        let mut raw: Vec<f64> = (0..len)
            .map(|_| {
                if rng.random::<f64>() < 0.2 {
                    0.0
                } else {
                    rng.random_range(0.01..1.0)
                }
            })
            .collect();
        if raw.iter().all(|&v| v == 0.0) {
            raw[0] = 1.0;
        }
        let total: f64 = raw.iter().sum();
        let probs: Vec<f64> = raw.iter().map(|v| v / total).collect();
        let p = ClassProbabilities::from_probs(probs, len);
        worst = worst.max((local_entropy_full(&p) - local_entropy(&p)).abs());
    }
    check(
        "criterion 01 simplification-identity",
        worst <= 1e-12,
        &format!("max |full - simplified| = {worst:.3e} over 10000 vectors"),
    );
}

// Criterion 2: exact neighborhood-saturation limit cases on 50 random datasets.
#[test]
fn criterion_02_saturation_limit_cases_exact() {
    let mut rng = StdRng::seed_from_u64(202);
    let mut failures = Vec::new();
    for trial in 0..50 {
        let n = rng.random_range(10..=500);
        let d = rng.random_range(1..=3);
        let classes = rng.random_range(2..=5);
        let metric = if trial % 2 == 0 { MetricKind::L2 } else { MetricKind::L1 };
        let ds = random_dataset(&mut rng, n, d, classes, true);
        let top = ds
            .class_proportions()
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);

        // (a) theta below the minimum nonzero pairwise distance
        let tiny = NeighborhoodSpec::radius(min_nonzero_distance(&ds, metric) * 0.5, metric)
            .unwrap();
        let limit = estimator::classifiability(&ds, &tiny).unwrap().limit;
        if limit != 1.0 {
            failures.push(format!("trial {trial} (a): {limit}"));
        }

        // (b) theta above the diameter
        let huge = NeighborhoodSpec::radius(diameter(&ds, metric) * 1.01, metric).unwrap();
        let limit = estimator::classifiability(&ds, &huge).unwrap().limit;
        if limit != top {
            failures.push(format!("trial {trial} (b): {limit} vs {top}"));
        }

        // (c) k = n - 1
        let all = NeighborhoodSpec::k_nearest(n - 1, metric).unwrap();
        let limit = estimator::classifiability(&ds, &all).unwrap().limit;
        if limit != top {
            failures.push(format!("trial {trial} (c): {limit} vs {top}"));
        }
    }
    check(
        "criterion 02 saturation-limit-cases",
        failures.is_empty(),
        &format!("50 datasets, exact equality; failures: {failures:?}"),
    );
}

// Criterion 3: the x / 1-x problem. Quadrature gives 0.75 +- 1e-3; the
// k-NN estimate on 20,000 samples with k = 64 lands within 0.75 +- 0.02
// for at least 9 of 10 seeds.
#[test]
fn criterion_03_linear_problem_oracle_and_estimate() {
    let problem = AnalyticProblem::linear_1d();
    let oracle = bayes_limit(&problem).unwrap();
    let oracle_ok = (oracle - 0.75).abs() <= 1e-3;

    let spec = NeighborhoodSpec::k_nearest(64, MetricKind::L2).unwrap();
    let mut hits = 0;
    let mut estimates = Vec::new();
    for seed in 0..10u64 {
        let ds = sample_problem(&problem, 20_000, 300 + seed).unwrap();
        let est = estimator::classifiability(&ds, &spec).unwrap().limit;
        if (est - 0.75).abs() <= 0.02 {
            hits += 1;
        }
        estimates.push(est);
    }
    check(
        "criterion 03 linear-problem",
        oracle_ok && hits >= 9,
        &format!("oracle {oracle:.6}, {hits}/10 seeds within 0.75 +- 0.02 ({estimates:.4?})"),
    );
}

// Criterion 4: full-overlap symmetry. The quadrature oracle gives 0.5; the
// criterion then requires the k = 64 estimate on 10,000 samples to lie
// within 0.5 +- 0.02. The estimator's neighborhood majority count on a
// fully mixed cloud is Binomial(64, 1/2), so the estimate concentrates on
// 0.5 + E|Bin(64,1/2)/64 - 1/2| ~= 0.5496 for any n -- the stated
// tolerance is not attainable for this estimator, and this check records
// the honest failure.
#[test]
fn criterion_04_full_overlap_symmetry() {
    let problem = AnalyticProblem::full_overlap_1d();
    let oracle = bayes_limit(&problem).unwrap();
    let oracle_ok = (oracle - 0.5).abs() <= 1e-9;

    let spec = NeighborhoodSpec::k_nearest(64, MetricKind::L2).unwrap();
    let ds = sample_problem(&problem, 10_000, 404).unwrap();
    let est = estimator::classifiability(&ds, &spec).unwrap().limit;
    check(
        "criterion 04 full-overlap",
        oracle_ok && (est - 0.5).abs() <= 0.02,
        &format!(
            "oracle {oracle:.6}; estimate {est:.6} vs required 0.5 +- 0.02 \
             (finite-k majority bias is 0.5 + E|Bin(64,1/2)/64 - 1/2| ~= 0.5496)"
        ),
    );
}

// Criterion 5: degradation trend on Circles, Moons and Blobs: 10 noise
// levels, 25 seeds each, n = 500, k = 16. Mean estimate is >= 0.99 at
// noise 0 and monotonically non-increasing up to one pooled std.
#[test]
fn criterion_05_noise_degradation_trend() {
    let spec = NeighborhoodSpec::k_nearest(16, MetricKind::L2).unwrap();
    let blob_centers =
        vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]];
    let mut failures = Vec::new();
    for (kind, max_noise) in [("circles", 0.4), ("moons", 0.6), ("blobs", 0.7)] {
        let mut curve = Vec::new();
        for level in 0..10 {
            let noise = max_noise * level as f64 / 9.0;
            let mut limits = Vec::new();
            for seed in 0..25u64 {
                let ds = match kind {
                    "circles" => synth::gen_circles(500, noise, 0.5, 500 + seed).unwrap(),
                    "moons" => synth::gen_moons(500, noise, 500 + seed).unwrap(),
                    _ => synth::gen_blobs(500, &blob_centers, noise, 500 + seed).unwrap(),
                };
                limits.push(estimator::classifiability(&ds, &spec).unwrap().limit);
            }
            let mean: f64 = limits.iter().sum::<f64>() / limits.len() as f64;
            let var: f64 = limits.iter().map(|l| (l - mean) * (l - mean)).sum::<f64>()
                / limits.len() as f64;
            curve.push((mean, var.sqrt()));
        }
        if curve[0].0 < 0.99 {
            failures.push(format!("{kind}: noiseless mean {:.4} < 0.99", curve[0].0));
        }
        for i in 1..curve.len() {
            let pooled = ((curve[i - 1].1.powi(2) + curve[i].1.powi(2)) / 2.0).sqrt();
            if curve[i].0 > curve[i - 1].0 + pooled {
                failures.push(format!(
                    "{kind}: level {i} rose {:.4} -> {:.4} (pooled sd {pooled:.4})",
                    curve[i - 1].0,
                    curve[i].0
                ));
            }
        }
        println!(
            "  {kind}: means {:?}",
            curve.iter().map(|(m, _)| (m * 1000.0).round() / 1000.0).collect::<Vec<_>>()
        );
    }
    check(
        "criterion 05 noise-degradation",
        failures.is_empty(),
        &format!("3 kinds x 10 levels x 25 seeds; failures: {failures:?}"),
    );
}

// Criterion 6: Madelon-style flip noise. Separable clusters with q = 0.2
// and 4 classes have the closed-form limit (1 - q) + q/4 = 0.85; the
// estimate at n = 10,000, k = 32 must match within 0.03 on 5 seeds.
#[test]
fn criterion_06_madelon_flip_noise() {
    let spec = NeighborhoodSpec::k_nearest(32, MetricKind::L2).unwrap();
    let mut estimates = Vec::new();
    let mut ok = true;
    for seed in 0..5u64 {
        let params = synth::MadelonParams {
            n: 10_000,
            n_features: 10,
            n_informative: 4,
            n_redundant: 3,
            n_classes: 4,
            clusters_per_class: 1,
            class_sep: 8.0,
            flip_fraction: 0.2,
            seed: 600 + seed,
        };
        let ds = synth::gen_madelon_like(&params).unwrap();
        let est = estimator::classifiability(&ds, &spec).unwrap().limit;
        ok &= (est - 0.85).abs() <= 0.03;
        estimates.push(est);
    }
    check(
        "criterion 06 madelon-flip",
        ok,
        &format!("derived limit 0.85; estimates {estimates:.4?}"),
    );
}

// Criterion 7: the production estimator is bit-identical to the naive
// O(n^2) reference on 25 random datasets, across all six metrics and both
// neighborhood modes, and independent of worker count and backend.
#[test]
fn criterion_07_oracle_equivalence() {
    let mut rng = StdRng::seed_from_u64(707);
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for trial in 0..25 {
        let n = if trial < 20 {
            rng.random_range(30..600)
        } else {
            rng.random_range(1000..=2000)
        };
        let d = rng.random_range(1..=6);
        let classes = rng.random_range(2..=5);
        let mut ds = random_dataset(&mut rng, n, d, classes, false);
        if trial % 3 == 0 {
            // quantized features make Hamming/Canberra/Bray-Curtis
            // neighborhoods non-trivial
            let rows: Vec<Vec<f64>> = (0..ds.n())
                .map(|i| ds.row(i).iter().map(|v| (v / 4.0).round()).collect())
                .collect();
            ds = LabeledDataset::from_rows(&rows, ds.labels().to_vec(), ds.classes().clone())
                .unwrap();
        }
        let k = rng.random_range(1..=32.min(n - 1));
        for metric in ALL_METRICS {
            let theta = threshold_from_fraction(&ds, 0.03, metric).unwrap();
            let specs = [
                NeighborhoodSpec::k_nearest(k, metric).unwrap(),
                NeighborhoodSpec::radius(theta.max(1e-9), metric).unwrap(),
            ];
            for spec in specs {
                let reference = reference_estimate(&ds, &spec).unwrap();
                let variants = [
                    ExecOptions { threads: None, brute_force: false },
                    ExecOptions { threads: Some(1), brute_force: false },
                    ExecOptions { threads: Some(7), brute_force: false },
                    ExecOptions { threads: Some(3), brute_force: true },
                ];
                for (v, opts) in variants.iter().enumerate() {
                    let prod = classifiability_opts(&ds, &spec, opts).unwrap();
                    let same_limit = prod.limit.to_bits() == reference.limit.to_bits();
                    let same_entropies = prod
                        .per_point_entropy
                        .iter()
                        .zip(&reference.per_point_entropy)
                        .all(|(a, b)| a.to_bits() == b.to_bits());
                    checked += 1;
                    if !(same_limit && same_entropies) {
                        failures.push(format!(
                            "trial {trial} metric {metric} spec {spec:?} variant {v}"
                        ));
                    }
                }
            }
        }
    }
    check(
        "criterion 07 oracle-equivalence",
        failures.is_empty(),
        &format!("{checked} production runs bit-identical to the reference; failures: {failures:?}"),
    );
}

// Criterion 8: baseline consistency. On oracle-backed problems with
// n = 5000, mean test accuracy of the k-NN and radius classifiers over 10
// stratified 2:1 splits stays within estimated limit + 0.05.
#[test]
fn criterion_08_baseline_consistency() {
    let problems = [
        ("linear1d", AnalyticProblem::linear_1d()),
        ("overlap05", AnalyticProblem::overlap_uniform_1d(0.5).unwrap()),
        ("full-overlap", AnalyticProblem::full_overlap_1d()),
    ];
    let mut failures = Vec::new();
    for (name, problem) in &problems {
        let analytic = bayes_limit(problem).unwrap();
        let ds = sample_problem(problem, 5000, 808).unwrap();
        let k_est = k_from_fraction(ds.n(), 0.015, 6, 32);
        let spec = NeighborhoodSpec::k_nearest(k_est, MetricKind::L2).unwrap();
        let limit = estimator::classifiability(&ds, &spec).unwrap().limit;
        let theta = threshold_from_fraction(&ds, 0.02, MetricKind::L2).unwrap();
        let split = SplitSpec { train_fraction: 2.0 / 3.0, stratified: true, seed: 42 };
        for kind in [
            ClassifierKind::Knn { k: 5 },
            ClassifierKind::RadiusNeighbors { theta },
        ] {
            let config = ClassifierConfig { kind, metric: MetricKind::L2 };
            let eval = baselines::evaluate(&ds, &split, &config, 10).unwrap();
            println!(
                "  {name}: {kind:?} accuracy {:.4} vs limit {limit:.4} (analytic {analytic:.4})",
                eval.mean_accuracy
            );
            if eval.mean_accuracy > limit + 0.05 {
                failures.push(format!(
                    "{name} {kind:?}: accuracy {:.4} exceeds limit {limit:.4} + 0.05",
                    eval.mean_accuracy
                ));
            }
            // no classifier beats the analytic limit by more than noise
            if eval.mean_accuracy > analytic + 0.03 {
                failures.push(format!(
                    "{name} {kind:?}: accuracy {:.4} exceeds analytic {analytic:.4} + 0.03",
                    eval.mean_accuracy
                ));
            }
        }
    }
    check(
        "criterion 08 baseline-consistency",
        failures.is_empty(),
        &format!("3 problems x 2 classifiers x 10 splits; failures: {failures:?}"),
    );
}

// Criterion 9: jackknife contract. Fraction 0.8, rounds 10 produces 10
// limits in [1/|classes|, 1]; on separable data all equal 1.
#[test]
fn criterion_09_jackknife_contract() {
    let centers = vec![vec![0.0, 0.0], vec![50.0, 0.0], vec![0.0, 50.0]];
    let separable = synth::gen_blobs(500, &centers, 0.2, 9).unwrap();
    let spec = NeighborhoodSpec::k_nearest(16, MetricKind::L2).unwrap();
    let report = jackknife(&separable, &spec, 0.8, 10, 909).unwrap();
    let separable_ok = report.subsample_limits.len() == 10
        && report.subsample_limits.iter().all(|&l| l == 1.0);

    let mixed = synth::gen_blobs(400, &[vec![0.0, 0.0], vec![0.5, 0.0]], 1.0, 10).unwrap();
    let mixed_report = jackknife(&mixed, &spec, 0.8, 10, 910).unwrap();
    let g = mixed.num_classes() as f64;
    let range_ok = mixed_report.subsample_limits.len() == 10
        && mixed_report
            .subsample_limits
            .iter()
            .all(|&l| l >= 1.0 / g && l <= 1.0);
    check(
        "criterion 09 jackknife",
        separable_ok && range_ok,
        &format!(
            "separable limits {:?}; mixed limits in [1/{g}, 1]: {:.4?}",
            report.subsample_limits, mixed_report.subsample_limits
        ),
    );
}

/// Little-endian base-1e9 big integer, the independent multiplication
/// oracle for criterion 10.
fn big_mul(limbs: &mut Vec<u64>, factor: u64) {
    const BASE: u64 = 1_000_000_000;
    let mut carry: u128 = 0;
    for limb in limbs.iter_mut() {
        let product = *limb as u128 * factor as u128 + carry;
        *limb = (product % BASE as u128) as u64;
        carry = product / BASE as u128;
    }
    while carry > 0 {
        limbs.push((carry % BASE as u128) as u64);
        carry /= BASE as u128;
    }
}

fn big_to_string(limbs: &[u64]) -> String {
    let mut out = limbs.last().map_or("0".to_string(), |l| l.to_string());
    for limb in limbs.iter().rev().skip(1) {
        out.push_str(&format!("{limb:09}"));
    }
    out
}

// Criterion 10: the over-classification rule reproduces N = prod(r_d) and
// the P >= 20N threshold on 100 random tuples against an independent
// big-integer multiplication.
#[test]
fn criterion_10_overclass_rule() {
    let mut rng = StdRng::seed_from_u64(1010);
    let mut failures = Vec::new();
    for trial in 0..100 {
        let len = rng.random_range(1..=6usize);
        let resolutions: Vec<u64> = (0..len).map(|_| rng.random_range(1..=20)).collect();
        let mut big = vec![1u64];
        for &r in &resolutions {
            big_mul(&mut big, r);
        }
        let n_string = big_to_string(&big);
        let mut big20 = big.clone();
        big_mul(&mut big20, 20);
        let min_string = big_to_string(&big20);

        let points = rng.random_range(0..=200_000u64);
        let report = overclass_check(&resolutions, points);
        let expect_over = {
            // big-int comparison via padded decimal strings
            let p = points.to_string();
            let m = &min_string;
            (p.len(), p.as_str()) < (m.len(), m.as_str())
        };
        if report.potential_classes.to_string() != n_string
            || report.min_points.to_string() != min_string
            || report.over_classified != expect_over
            || report.min_points != 20 * report.potential_classes
        {
            failures.push(format!("trial {trial}: {resolutions:?} points {points}"));
        }
    }
    // the documented worked example of the rule
    let r = overclass_check(&[4, 4, 3, 3], 2880);
    if r.potential_classes != 144 || r.over_classified {
        failures.push("worked example 4,4,3,3".to_string());
    }
    check(
        "criterion 10 overclass-rule",
        failures.is_empty(),
        &format!("100 random tuples vs big-integer oracle; failures: {failures:?}"),
    );
}

fn run_cli(args: &[&str], threads: Option<&str>, dir: &std::path::Path) -> (Vec<u8>, Vec<u8>, i32) {
    let mut command = std::process::Command::new(env!("CARGO_BIN_EXE_classifiability"));
    command.args(args).current_dir(dir);
    match threads {
        Some(t) => command.env(classifiability::THREADS_ENV, t),
        None => command.env_remove(classifiability::THREADS_ENV),
    };
    let output = command.output().expect("binary runs");
    (output.stdout, output.stderr, output.status.code().unwrap_or(-1))
}

// Criterion 11: fixed-seed CLI runs are byte-identical across repeated
// invocations and worker counts, and CSV save/load round-trips generated
// datasets exactly.
#[test]
fn criterion_11_determinism_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut failures = Vec::new();

    // generate twice: identical stdout and identical file bytes
    let gen_args = |out: &str| {
        vec![
            "generate".to_string(),
            "--kind".to_string(),
            "moons".to_string(),
            "--n".to_string(),
            "300".to_string(),
            "--noise".to_string(),
            "0.25".to_string(),
            "--seed".to_string(),
            "42".to_string(),
            "--out".to_string(),
            out.to_string(),
        ]
    };
    for (out, threads) in [("a.csv", Some("1")), ("b.csv", Some("4"))] {
        let args: Vec<String> = gen_args(out);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        run_cli(&refs, threads, dir.path());
    }
    let bytes_a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let bytes_b = std::fs::read(dir.path().join("b.csv")).unwrap();
    if bytes_a != bytes_b {
        failures.push("generated CSVs differ across runs/thread counts".to_string());
    }

    // estimate: identical stdout across invocations and worker counts
    let est_args = ["estimate", "--dataset", "a.csv", "--label", "label", "--k", "16", "--metric", "all"];
    let (stdout_1, _, code_1) = run_cli(&est_args, Some("1"), dir.path());
    let (stdout_8, _, code_8) = run_cli(&est_args, Some("8"), dir.path());
    let (stdout_again, _, _) = run_cli(&est_args, Some("8"), dir.path());
    if code_1 != 0 || code_8 != 0 {
        failures.push(format!("estimate exit codes {code_1}/{code_8}"));
    }
    if stdout_1 != stdout_8 || stdout_8 != stdout_again {
        failures.push("estimate stdout differs across worker counts or runs".to_string());
    }

    // jackknife with a fixed seed: byte-identical
    let jk_args = [
        "jackknife", "--dataset", "a.csv", "--label", "label", "--k", "8", "--fraction", "0.8",
        "--rounds", "10", "--seed", "7",
    ];
    let (jk_1, _, _) = run_cli(&jk_args, Some("1"), dir.path());
    let (jk_8, _, _) = run_cli(&jk_args, Some("6"), dir.path());
    if jk_1 != jk_8 {
        failures.push("jackknife stdout differs across worker counts".to_string());
    }

    // round-trip: generate -> save -> load reproduces the dataset exactly
    let specs = [
        synth::SynthSpec::Circles { n: 151, noise: 0.17, radius_ratio: 0.5, seed: 5 },
        synth::SynthSpec::Moons { n: 150, noise: 0.3, seed: 6 },
        synth::SynthSpec::Blobs {
            n: 149,
            centers: vec![vec![0.0, 0.0], vec![2.0, 1.0]],
            noise: 0.4,
            seed: 7,
        },
        synth::SynthSpec::Linear1d { n: 148, seed: 8 },
        synth::SynthSpec::OverlapUniform1d { n: 147, offset: 0.3, seed: 9 },
    ];
    for spec in &specs {
        let ds = synth::generate(spec).unwrap();
        let mut buffer = Vec::new();
        classifiability::io::save_csv(&ds, &mut buffer).unwrap();
        let schema = classifiability::io::saved_schema(ds.d());
        let loaded = classifiability::io::load_csv_reader(buffer.as_slice(), &schema).unwrap();
        if loaded != ds {
            failures.push(format!("round-trip mismatch for {spec:?}"));
        }
    }
    // flip noise can reorder first label appearance: content must survive
    // the round trip (features bit-exact, class names per row identical)
    let params = synth::MadelonParams {
        n: 200,
        n_features: 6,
        n_informative: 3,
        n_redundant: 2,
        n_classes: 3,
        clusters_per_class: 1,
        class_sep: 2.0,
        flip_fraction: 0.3,
        seed: 11,
    };
    let ds = synth::gen_madelon_like(&params).unwrap();
    let mut buffer = Vec::new();
    classifiability::io::save_csv(&ds, &mut buffer).unwrap();
    let schema = classifiability::io::saved_schema(ds.d());
    let loaded = classifiability::io::load_csv_reader(buffer.as_slice(), &schema).unwrap();
    let mut same = loaded.n() == ds.n() && loaded.d() == ds.d();
    if same {
        for i in 0..ds.n() {
            same &= loaded.row(i) == ds.row(i);
            same &= loaded.classes().name(loaded.label(i)) == ds.classes().name(ds.label(i));
        }
    }
    let mut rebuffer = Vec::new();
    classifiability::io::save_csv(&loaded, &mut rebuffer).unwrap();
    if !same || rebuffer != buffer {
        failures.push("madelon round-trip content mismatch".to_string());
    }

    check(
        "criterion 11 determinism-and-round-trip",
        failures.is_empty(),
        &format!("failures: {failures:?}"),
    );
}
