//! Estimate how the limit of the two-moons problem degrades with noise,
//! and check the estimator against a closed-form problem.
//!
//! Run with: cargo run --release --example noisy_moons

use classifiability::baselines::{evaluate, ClassifierConfig, ClassifierKind, SplitSpec};
use classifiability::data::NeighborhoodSpec;
use classifiability::estimator::{classifiability, jackknife};
use classifiability::metrics::MetricKind;
use classifiability::oracle::{bayes_limit, sample_problem, AnalyticProblem};
use classifiability::synth::gen_moons;

fn main() -> Result<(), classifiability::Error> {
    let spec = NeighborhoodSpec::k_nearest(16, MetricKind::L2)?;

    println!("two moons, n = 2000, k = 16:");
    println!("{:>8} {:>8} {:>14} {:>10}", "noise", "limit", "jackknife max", "5-NN acc");
    for level in 0..6 {
        let noise = 0.1 * level as f64;
        let ds = gen_moons(2000, noise, 7)?;
        let report = classifiability(&ds, &spec)?;
        let jk = jackknife(&ds, &spec, 0.8, 10, 7)?;
        let eval = evaluate(
            &ds,
            &SplitSpec { train_fraction: 2.0 / 3.0, stratified: true, seed: 7 },
            &ClassifierConfig { kind: ClassifierKind::Knn { k: 5 }, metric: MetricKind::L2 },
            10,
        )?;
        println!(
            "{noise:>8.2} {:>8.4} {:>14.4} {:>10.4}",
            report.limit, jk.max_limit, eval.mean_accuracy
        );
    }

    // closed-form cross-check: class densities x and 1-x on [0, 1]
    let problem = AnalyticProblem::linear_1d();
    let analytic = bayes_limit(&problem)?;
    let ds = sample_problem(&problem, 20_000, 3)?;
    let est = classifiability(&ds, &NeighborhoodSpec::k_nearest(64, MetricKind::L2)?)?;
    println!("\nlinear 1D problem: analytic limit {analytic:.4}, estimate {:.4}", est.limit);
    Ok(())
}
