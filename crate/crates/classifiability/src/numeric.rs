//! Deterministic floating-point reductions shared across the crate.
//!
//! Every aggregate the estimator reports is defined in terms of these
//! reductions, so that results do not depend on worker count or on which
//! backend produced the per-point values.

/// Sums a slice by recursive halving (pairwise/tree summation).
///
/// The reduction tree is a fixed function of the slice length, which makes
/// the result reproducible and keeps the rounding error at O(log n) instead
/// of O(n) for a running sum.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 64;
    if values.len() <= BLOCK {
        let mut acc = 0.0;
        for &v in values {
            acc += v;
        }
        return acc;
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Arithmetic mean via [`pairwise_sum`]. Returns 0 for an empty slice.
pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    pairwise_sum(values) / values.len() as f64
}

/// Population standard deviation (divisor n) via a two-pass computation.
pub fn population_std(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let m = mean(values);
    let sq: Vec<f64> = values.iter().map(|v| (v - m) * (v - m)).collect();
    mean(&sq).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_sum_matches_naive_on_integers() {
        let xs: Vec<f64> = (1..=1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&xs), 500_500.0);
    }

    #[test]
    fn pairwise_sum_empty_and_single() {
        assert_eq!(pairwise_sum(&[]), 0.0);
        assert_eq!(pairwise_sum(&[3.5]), 3.5);
    }

    #[test]
    fn population_std_hand_example() {
        // values 1,2,3: mean 2, variance 2/3
        let s = population_std(&[1.0, 2.0, 3.0]);
        assert!((s - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn std_of_constant_is_zero() {
        assert_eq!(population_std(&[4.0; 17]), 0.0);
    }
}
