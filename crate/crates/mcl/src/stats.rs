//! Small statistical helpers shared by the Monte Carlo harness and the
//! goodness-of-fit tests: Wilson score intervals and chi-square machinery.

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Two-sided 95% normal quantile, used for the harness confidence intervals.
pub const Z_95: f64 = 1.959963984540054;

/// Wilson score interval for a binomial proportion. `hits` successes out of
/// `trials`, critical value `z`. Returns (low, high) within [0, 1].
pub fn wilson_interval(hits: u64, trials: u64, z: f64) -> (f64, f64) {
    assert!(trials > 0, "wilson interval needs at least one trial");
    assert!(hits <= trials, "more hits than trials");
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = (z / denom) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    // The score interval's endpoints are exactly 0 (resp. 1) at the extreme
    // tallies; avoid leaving floating-point residue there.
    let low = if hits == 0 { 0.0 } else { (center - half).max(0.0) };
    let high = if hits == trials { 1.0 } else { (center + half).min(1.0) };
    (low, high)
}

/// Pearson chi-square statistic. Bins with zero expectation contribute
/// infinity if observed, nothing otherwise.
pub fn chi_square_stat(observed: &[u64], expected: &[f64]) -> f64 {
    assert_eq!(observed.len(), expected.len(), "bin count mismatch");
    let mut stat = 0.0;
    for (&o, &e) in observed.iter().zip(expected) {
        if e <= 0.0 {
            if o > 0 {
                return f64::INFINITY;
            }
            continue;
        }
        let d = o as f64 - e;
        stat += d * d / e;
    }
    stat
}

/// Upper critical value: P[X > result] = significance for X ~ chi-square(dof).
pub fn chi_square_critical(dof: usize, significance: f64) -> f64 {
    assert!(dof >= 1, "chi-square needs at least one degree of freedom");
    assert!((0.0..1.0).contains(&significance) && significance > 0.0);
    ChiSquared::new(dof as f64)
        .expect("valid degrees of freedom")
        .inverse_cdf(1.0 - significance)
}

/// Goodness-of-fit against a uniform law over `observed.len()` outcomes.
/// Returns (statistic, critical value at the given significance).
pub fn chi_square_uniform(observed: &[u64], significance: f64) -> (f64, f64) {
    let total: u64 = observed.iter().sum();
    let e = total as f64 / observed.len() as f64;
    let expected = vec![e; observed.len()];
    let stat = chi_square_stat(observed, &expected);
    let crit = chi_square_critical(observed.len() - 1, significance);
    (stat, crit)
}
