//! Capacity formulas, bounds, limiting expressions, and penalty terms for
//! the three matrix channels, all in q-ary units (one unit = one GF(q)
//! symbol). Exact counts come from the `counting` module; the only floating
//! point is the final logarithm, with relative error far below 1e-12.
//!
//! Channels are parameterized by (q, n, m, t): field order, packets per
//! batch, packet length in symbols, and the maximum number of injected error
//! packets. The multiplicative channel (MMC) applies Y = AX; the additive
//! channel (AMC) applies Y = X + W with rank(W) = t; their combination
//! (AMMC) applies Y = A(X + W).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counting::{
    self, binomial, gaussian_coefficient, log_q_count, BigCount, CountError,
};
use crate::gf::prime_power;
use num_traits::Zero;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CapacityError {
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("field order {0} is not a prime power p^k with 2 <= p^k <= 65536")]
    InvalidOrder(u64),
    #[error("error rank t={t} exceeds batch size n={n}")]
    RankExceedsBatch { t: u64, n: u64 },
    #[error("error rank t={t} exceeds min(n={n}, m={m})")]
    RankOutOfRange { t: u64, n: u64, m: u64 },
    #[error("upper bound needs n <= m/2, got n={n}, m={m}")]
    UpperBoundNeedsShortBatch { n: u64, m: u64 },
    #[error("lower bound needs n <= m, got n={n}, m={m}")]
    LowerBoundNeedsOrderedDims { n: u64, m: u64 },
    #[error("epsilon must be finite and nonnegative, got {0}")]
    BadEpsilon(f64),
    #[error("rank-sum bound needs k + t <= min(n, m), got k={k}, t={t}, n={n}, m={m}")]
    RankSumOutOfRange { k: u64, t: u64, n: u64, m: u64 },
    #[error("weight {s} exceeds packet length {m}")]
    WeightOutOfRange { s: u64, m: u64 },
    #[error("invalid pmf: {0}")]
    InvalidPmf(String),
}

/// The (q, n, m, t) tuple naming a matrix channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChannelParams {
    pub q: u64,
    pub n: u64,
    pub m: u64,
    pub t: u64,
}

impl ChannelParams {
    /// Validated constructor: q must be a prime power in range and the error
    /// budget t can never exceed the batch size n.
    pub fn new(q: u64, n: u64, m: u64, t: u64) -> Result<ChannelParams, CapacityError> {
        if prime_power(q).is_none() {
            return Err(CapacityError::InvalidOrder(q));
        }
        if t > n {
            return Err(CapacityError::RankExceedsBatch { t, n });
        }
        Ok(ChannelParams { q, n, m, t })
    }

    /// Batch-to-length ratio λ = n/m (0 when m = 0).
    pub fn lambda(&self) -> f64 {
        if self.m == 0 { 0.0 } else { self.n as f64 / self.m as f64 }
    }

    /// Error fraction τ = t/n (0 when n = 0).
    pub fn tau(&self) -> f64 {
        if self.n == 0 { 0.0 } else { self.t as f64 / self.n as f64 }
    }

    fn min_nm(&self) -> u64 {
        self.n.min(self.m)
    }
}

/// Exact MMC capacity: log_q of the number of subspaces of F_q^m with
/// dimension at most min(n, m).
pub fn capacity_mmc(params: &ChannelParams) -> Result<f64, CapacityError> {
    let mut sum = BigCount::zero();
    for k in 0..=params.min_nm() {
        sum += gaussian_coefficient(params.m, k, params.q)?;
    }
    Ok(log_q_count(&sum, params.q))
}

/// Limiting expressions for the MMC.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MmcLimits {
    /// Infinite-field-size limit of the capacity, in q-ary units: (m - n*) n*
    /// with n* = min(n, floor(m/2)).
    pub infinite_field: f64,
    /// Infinite-rank limit of the normalized capacity: 1 - λ for λ <= 1/2,
    /// 1/(4λ) beyond (the peak-subspace substitution regime).
    pub infinite_rank_normalized: f64,
    pub lambda: f64,
    /// True when λ > 1/2, where the 1 - λ form does not apply.
    pub lambda_beyond_half: bool,
}

pub fn capacity_mmc_limits(params: &ChannelParams) -> MmcLimits {
    let lambda = params.lambda();
    let n_star = params.n.min(params.m / 2);
    let infinite_field = ((params.m - n_star) * n_star) as f64;
    let beyond = lambda > 0.5;
    let infinite_rank_normalized = if params.n == 0 {
        1.0
    } else if beyond {
        1.0 / (4.0 * lambda)
    } else {
        1.0 - lambda
    };
    MmcLimits {
        infinite_field,
        infinite_rank_normalized,
        lambda,
        lambda_beyond_half: beyond,
    }
}

/// Exact AMC capacity: nm - log_q |T_{n x m, t}|.
pub fn capacity_amc(params: &ChannelParams) -> Result<f64, CapacityError> {
    if params.t > params.min_nm() {
        return Err(CapacityError::RankOutOfRange { t: params.t, n: params.n, m: params.m });
    }
    let count = counting::count_rank_matrices(params.n, params.m, params.t, params.q)?;
    Ok((params.n * params.m) as f64 - log_q_count(&count, params.q))
}

/// Limiting expressions for the AMC.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AmcLimits {
    /// Infinite-field-size limit, q-ary units: (m - t)(n - t).
    pub infinite_field: f64,
    /// Infinite-rank limit of the normalized capacity: (1 - λτ)(1 - τ).
    pub infinite_rank_normalized: f64,
    /// Infinite-packet-length limit, normalized: (n - t)/n.
    pub infinite_packet_normalized: f64,
    /// Infinite-batch-size limit, normalized: (m - t)/m.
    pub infinite_batch_normalized: f64,
}

pub fn capacity_amc_limits(params: &ChannelParams) -> Result<AmcLimits, CapacityError> {
    if params.t > params.min_nm() {
        return Err(CapacityError::RankOutOfRange { t: params.t, n: params.n, m: params.m });
    }
    let (n, m, t) = (params.n, params.m, params.t);
    let lambda_tau = if m == 0 { 0.0 } else { t as f64 / m as f64 }; // λτ = t/m
    let tau = params.tau();
    Ok(AmcLimits {
        infinite_field: ((m - t) * (n - t)) as f64,
        infinite_rank_normalized: (1.0 - lambda_tau) * (1.0 - tau),
        infinite_packet_normalized: if n == 0 { 1.0 } else { (n - t) as f64 / n as f64 },
        infinite_batch_normalized: if m == 0 { 1.0 } else { (m - t) as f64 / m as f64 },
    })
}

/// AMMC capacity upper bound (m - n)(n - t) + log_q 4(1 + n)(1 + t), valid
/// for n <= m/2.
pub fn ammc_upper_bound(params: &ChannelParams) -> Result<f64, CapacityError> {
    if 2 * params.n > params.m {
        return Err(CapacityError::UpperBoundNeedsShortBatch { n: params.n, m: params.m });
    }
    let (n, m, t) = (params.n, params.m, params.t);
    let log_term = (4.0 * (1 + n) as f64 * (1 + t) as f64).ln() / (params.q as f64).ln();
    Ok(((m - n) * (n - t)) as f64 + log_term)
}

/// AMMC lower bound for a caller-chosen ε >= 0. The raw expression can be
/// negative; `clamped` folds in the trivial capacity >= 0 fact.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AmmcLower {
    pub raw: f64,
    pub clamped: f64,
    pub epsilon: f64,
}

pub fn ammc_lower_bound(params: &ChannelParams, epsilon: f64) -> Result<AmmcLower, CapacityError> {
    if params.n > params.m {
        return Err(CapacityError::LowerBoundNeedsOrderedDims { n: params.n, m: params.m });
    }
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(CapacityError::BadEpsilon(epsilon));
    }
    let (q, n, m, t) = (params.q as f64, params.n as f64, params.m as f64, params.t as f64);
    let raw = (m - n) * (n - t - epsilon * t) - 4f64.ln() / q.ln()
        - 2.0 * t * n * m / q.powf(1.0 + epsilon * t);
    Ok(AmmcLower { raw, clamped: raw.max(0.0), epsilon })
}

/// The ε(m) = 1/sqrt(m) schedule that drives the lower bound to the
/// infinite-field limit.
pub fn epsilon_schedule(m: u64) -> f64 {
    assert!(m >= 1, "packet length must be positive for the epsilon schedule");
    1.0 / (m as f64).sqrt()
}

/// Limiting expressions for the AMMC.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AmmcLimits {
    /// Infinite-field-size limit, q-ary units: (m - n)(n - t).
    pub infinite_field: f64,
    /// Infinite-rank limit of the normalized capacity: (1 - λ)(1 - τ).
    pub infinite_rank_normalized: f64,
    /// Infinite-packet-length limit, normalized: (n - t)/n.
    pub infinite_packet_normalized: f64,
    pub lambda: f64,
    /// True when λ > 1/2, outside the regime where the limit form applies.
    pub lambda_beyond_half: bool,
}

pub fn ammc_limits(params: &ChannelParams) -> AmmcLimits {
    let (n, m, t) = (params.n, params.m, params.t);
    let lambda = params.lambda();
    let tau = params.tau();
    AmmcLimits {
        infinite_field: (m.saturating_sub(n) * (n - t)) as f64,
        infinite_rank_normalized: (1.0 - lambda) * (1.0 - tau),
        infinite_packet_normalized: if n == 0 { 1.0 } else { (n - t) as f64 / n as f64 },
        lambda,
        lambda_beyond_half: lambda > 0.5,
    }
}

/// Probability bound P[rank(X + W) < k + t] <= 2t / q^{min(n,m)-k-t+1} for
/// any fixed rank-k X and uniform rank-t W, capped at 1.
pub fn rank_sum_failure_bound(q: u64, n: u64, m: u64, k: u64, t: u64) -> Result<f64, CapacityError> {
    if prime_power(q).is_none() {
        return Err(CapacityError::InvalidOrder(q));
    }
    if k + t > n.min(m) {
        return Err(CapacityError::RankSumOutOfRange { k, t, n, m });
    }
    if t == 0 {
        return Ok(0.0);
    }
    let exponent = (n.min(m) - k - t + 1) as f64;
    Ok((2.0 * t as f64 / (q as f64).powf(exponent)).min(1.0))
}

/// Capacity loss from signalling a variable error rank: the entropy H(R) of
/// the rank distribution in q-ary units, with its cap log_q(t + 1).
/// Returns (entropy, cap).
pub fn variable_rank_penalty(pmf: &[f64], q: u64) -> Result<(f64, f64), CapacityError> {
    if prime_power(q).is_none() {
        return Err(CapacityError::InvalidOrder(q));
    }
    if pmf.is_empty() {
        return Err(CapacityError::InvalidPmf("empty".into()));
    }
    let mut sum = 0.0;
    for (i, &p) in pmf.iter().enumerate() {
        if !p.is_finite() || p < 0.0 {
            return Err(CapacityError::InvalidPmf(format!("entry {i} is {p}")));
        }
        sum += p;
    }
    if (sum - 1.0).abs() > 1e-12 {
        return Err(CapacityError::InvalidPmf(format!("sums to {sum}")));
    }
    let ln_q = (q as f64).ln();
    let entropy = -pmf
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.ln())
        .sum::<f64>()
        / ln_q;
    let cap = (pmf.len() as f64).ln() / ln_q;
    Ok((entropy, cap))
}

/// Approximate capacity gain from restricting error packets to weight s:
/// (m - s - log_q C(m, s)) * t.
pub fn low_weight_gain(m: u64, s: u64, t: u64, q: u64) -> Result<f64, CapacityError> {
    if prime_power(q).is_none() {
        return Err(CapacityError::InvalidOrder(q));
    }
    if s > m {
        return Err(CapacityError::WeightOutOfRange { s, m });
    }
    let choose = binomial(m, s);
    debug_assert!(!choose.is_zero());
    Ok(((m - s) as f64 - log_q_count(&choose, q)) * t as f64)
}

/// Which law a capacity report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CapacityLaw {
    Mmc,
    Amc,
    Ammc,
}

/// Everything the `capacity` CLI subcommand prints: exact value and/or
/// bounds, the limiting expressions, and the normalized forms. Values are in
/// q-ary units unless `units` says "bits" (then scaled by log2 q); the
/// normalized, λ, and τ fields are dimensionless and never scaled.
#[derive(Debug, Clone, Serialize)]
pub struct CapacityReport {
    pub law: CapacityLaw,
    pub q: u64,
    pub n: u64,
    pub m: u64,
    pub t: u64,
    pub units: String,
    pub lambda: f64,
    pub tau: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_normalized: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound_raw: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    pub limit_infinite_field: f64,
    pub limit_infinite_rank_normalized: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_infinite_packet_normalized: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_infinite_batch_normalized: Option<f64>,
    pub lambda_beyond_half: bool,
}

impl CapacityReport {
    /// Assemble the full report for one law. `epsilon` applies only to the
    /// AMMC lower bound (default: the 1/sqrt(m) schedule); `bits` rescales
    /// capacity-valued fields by log2 q.
    pub fn build(
        law: CapacityLaw,
        params: &ChannelParams,
        epsilon: Option<f64>,
        bits: bool,
    ) -> Result<CapacityReport, CapacityError> {
        let scale = if bits { (params.q as f64).log2() } else { 1.0 };
        let nm = (params.n * params.m) as f64;
        let normalize = |v: f64| if nm > 0.0 { Some(v / nm) } else { None };
        let mut report = CapacityReport {
            law,
            q: params.q,
            n: params.n,
            m: params.m,
            t: params.t,
            units: if bits { "bits".into() } else { "qary".into() },
            lambda: params.lambda(),
            tau: params.tau(),
            exact: None,
            exact_normalized: None,
            upper_bound: None,
            lower_bound_raw: None,
            lower_bound: None,
            epsilon: None,
            limit_infinite_field: 0.0,
            limit_infinite_rank_normalized: 0.0,
            limit_infinite_packet_normalized: None,
            limit_infinite_batch_normalized: None,
            lambda_beyond_half: false,
        };
        match law {
            CapacityLaw::Mmc => {
                let exact = capacity_mmc(params)?;
                report.exact = Some(exact * scale);
                report.exact_normalized = normalize(exact);
                let lim = capacity_mmc_limits(params);
                report.limit_infinite_field = lim.infinite_field * scale;
                report.limit_infinite_rank_normalized = lim.infinite_rank_normalized;
                report.lambda_beyond_half = lim.lambda_beyond_half;
            }
            CapacityLaw::Amc => {
                let exact = capacity_amc(params)?;
                report.exact = Some(exact * scale);
                report.exact_normalized = normalize(exact);
                let lim = capacity_amc_limits(params)?;
                report.limit_infinite_field = lim.infinite_field * scale;
                report.limit_infinite_rank_normalized = lim.infinite_rank_normalized;
                report.limit_infinite_packet_normalized = Some(lim.infinite_packet_normalized);
                report.limit_infinite_batch_normalized = Some(lim.infinite_batch_normalized);
            }
            CapacityLaw::Ammc => {
                // The upper bound needs n <= m/2; outside that regime the
                // report simply omits it.
                if 2 * params.n <= params.m {
                    report.upper_bound = Some(ammc_upper_bound(params)? * scale);
                }
                if params.n <= params.m {
                    let eps = epsilon.unwrap_or_else(|| epsilon_schedule(params.m.max(1)));
                    let lower = ammc_lower_bound(params, eps)?;
                    report.lower_bound_raw = Some(lower.raw * scale);
                    report.lower_bound = Some(lower.clamped * scale);
                    report.epsilon = Some(eps);
                }
                let lim = ammc_limits(params);
                report.limit_infinite_field = lim.infinite_field * scale;
                report.limit_infinite_rank_normalized = lim.infinite_rank_normalized;
                report.limit_infinite_packet_normalized = Some(lim.infinite_packet_normalized);
                report.lambda_beyond_half = lim.lambda_beyond_half;
            }
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: u64, n: u64, m: u64, t: u64) -> ChannelParams {
        ChannelParams::new(q, n, m, t).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ChannelParams::new(6, 2, 2, 1).is_err());
        assert!(matches!(
            ChannelParams::new(2, 2, 4, 3),
            Err(CapacityError::RankExceedsBatch { t: 3, n: 2 })
        ));
        let ok = p(2, 2, 4, 1);
        assert_eq!(ok.lambda(), 0.5);
        assert_eq!(ok.tau(), 0.5);
    }

    #[test]
    fn mmc_capacity_frozen_values() {
        assert!((capacity_mmc(&p(2, 1, 1, 0)).unwrap() - 1.0).abs() < 1e-12);
        let c22 = capacity_mmc(&p(2, 2, 2, 0)).unwrap();
        assert!((c22 - 5f64.log2()).abs() < 1e-12, "{c22}");
        let c23 = capacity_mmc(&p(2, 2, 3, 0)).unwrap();
        assert!((c23 - 15f64.log2()).abs() < 1e-12, "{c23}");
        assert!((c23 - 3.9069).abs() < 1e-4);
    }

    #[test]
    fn mmc_capacity_clamps_rank_at_packet_length() {
        // n > m: dimensions above m contribute nothing.
        let tall = capacity_mmc(&p(2, 5, 2, 0)).unwrap();
        let square = capacity_mmc(&p(2, 2, 2, 0)).unwrap();
        assert_eq!(tall, square);
    }

    #[test]
    fn mmc_limits_frozen_values() {
        let lim = capacity_mmc_limits(&p(2, 0, 7, 0));
        assert_eq!(lim.infinite_field, 0.0);
        assert_eq!(lim.infinite_rank_normalized, 1.0);

        let lim = capacity_mmc_limits(&p(2, 2, 4, 0));
        assert_eq!(lim.infinite_field, 4.0);
        assert_eq!(lim.infinite_rank_normalized, 0.5);
        assert!(!lim.lambda_beyond_half);

        // λ > 1/2: peak substitution n* = floor(m/2).
        let lim = capacity_mmc_limits(&p(2, 4, 4, 0));
        assert!(lim.lambda_beyond_half);
        assert_eq!(lim.infinite_field, 4.0); // (4-2)*2
        assert_eq!(lim.infinite_rank_normalized, 0.25); // 1/(4λ), λ=1
    }

    #[test]
    fn mmc_sandwich_at_finite_q() {
        // |capacity - (m-n)n| <= log_q((n+1) gc / q^{(m-n*)n*})-ish: test the
        // concrete claim |C - 4| <= log2(4*3) at q=2, n=2, m=4.
        let c = capacity_mmc(&p(2, 2, 4, 0)).unwrap();
        assert!((c - 4.0).abs() <= (12f64).log2());
        // And the exact value: log2(51).
        assert!((c - 51f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn amc_capacity_frozen_values() {
        assert_eq!(capacity_amc(&p(3, 2, 5, 0)).unwrap(), 10.0);
        let c = capacity_amc(&p(2, 2, 2, 1)).unwrap();
        assert!((c - (4.0 - 9f64.log2())).abs() < 1e-12);
        assert!((c - 0.8301).abs() < 1e-4);
        let c = capacity_amc(&p(2, 2, 3, 1)).unwrap();
        assert!((c - (6.0 - 21f64.log2())).abs() < 1e-12);
        assert!((c - 1.6076).abs() < 1e-4);
    }

    #[test]
    fn amc_rank_range_enforced() {
        // t <= n passes construction but t > min(n,m) must fail the formula.
        let params = p(2, 3, 2, 3);
        assert!(matches!(
            capacity_amc(&params),
            Err(CapacityError::RankOutOfRange { t: 3, n: 3, m: 2 })
        ));
    }

    #[test]
    fn amc_limits_frozen_values() {
        let lim = capacity_amc_limits(&p(2, 2, 4, 0)).unwrap();
        assert_eq!(lim.infinite_field, 8.0);
        assert_eq!(lim.infinite_rank_normalized, 1.0);
        assert_eq!(lim.infinite_packet_normalized, 1.0);
        assert_eq!(lim.infinite_batch_normalized, 1.0);

        let lim = capacity_amc_limits(&p(2, 2, 4, 1)).unwrap();
        assert_eq!(lim.infinite_field, 3.0);
        assert_eq!(lim.infinite_packet_normalized, 0.5);
        assert_eq!(lim.infinite_batch_normalized, 0.75);
        assert!((lim.infinite_rank_normalized - 0.75 * 0.5).abs() < 1e-12);
    }

    #[test]
    fn amc_gap_shrinks_with_field_size() {
        // gap |capacity - (m-t)(n-t)| at q=256 below the q=2 gap.
        let gap = |q: u64| {
            let params = p(q, 2, 4, 1);
            let c = capacity_amc(&params).unwrap();
            (c - 3.0).abs()
        };
        assert!(gap(256) < gap(2));
        assert!(gap(256) < 1e-2);
    }

    #[test]
    fn mmc_gap_shrinks_with_field_size() {
        let gap = |q: u64| {
            let params = p(q, 2, 4, 0);
            (capacity_mmc(&params).unwrap() - 4.0).abs()
        };
        assert!(gap(256) < gap(2));
        assert!(gap(256) < 1e-2);
    }

    #[test]
    fn amc_strictly_decreasing_in_t() {
        // Monotone on the whole range for rectangular channels; the square
        // case stops at t = n-1 because |T_{n x n, t}| peaks below full rank
        // (fewer nonsingular matrices than rank n-1 ones), so the capacity
        // ticks back up at the degenerate t = n = m corner.
        for q in [2u64, 3, 4] {
            for (n, m) in [(2u64, 4u64), (3, 5), (4, 4)] {
                let top = if n == m { n - 1 } else { n.min(m) };
                let mut prev = f64::INFINITY;
                for t in 0..=top {
                    let c = capacity_amc(&p(q, n, m, t)).unwrap();
                    assert!(c < prev, "capacity not decreasing at ({q},{n},{m},{t})");
                    prev = c;
                }
            }
        }
    }

    #[test]
    fn ammc_upper_frozen_values() {
        let b = ammc_upper_bound(&p(2, 2, 4, 1)).unwrap();
        assert!((b - (2.0 + 24f64.log2())).abs() < 1e-12);
        assert!((b - 6.585).abs() < 1e-3);
        // t = n leaves only the log term.
        let b = ammc_upper_bound(&p(2, 2, 4, 2)).unwrap();
        assert!((b - (4.0 * 9.0f64).log2()).abs() < 1e-12);
        // q -> large kills the log term.
        let b = ammc_upper_bound(&p(65536, 2, 4, 1)).unwrap();
        assert!((b - 2.0).abs() < 0.3);
        assert!(matches!(
            ammc_upper_bound(&p(2, 3, 4, 1)),
            Err(CapacityError::UpperBoundNeedsShortBatch { n: 3, m: 4 })
        ));
    }

    #[test]
    fn ammc_lower_frozen_values() {
        let lower = ammc_lower_bound(&p(2, 2, 4, 1), 0.0).unwrap();
        assert!((lower.raw - (-8.0)).abs() < 1e-12);
        assert_eq!(lower.clamped, 0.0);
        // t=0, eps=0: (m-n)n - log_q 4.
        let lower = ammc_lower_bound(&p(4, 2, 6, 0), 0.0).unwrap();
        assert!((lower.raw - (8.0 - 1.0)).abs() < 1e-12);
        assert!(matches!(
            ammc_lower_bound(&p(2, 5, 4, 1), 0.0),
            Err(CapacityError::LowerBoundNeedsOrderedDims { n: 5, m: 4 })
        ));
        assert!(matches!(
            ammc_lower_bound(&p(2, 2, 4, 1), -0.5),
            Err(CapacityError::BadEpsilon(_))
        ));
    }

    #[test]
    fn epsilon_schedule_matches_definition() {
        assert!((epsilon_schedule(4) - 0.5).abs() < 1e-15);
        assert!((epsilon_schedule(100) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn ammc_limits_frozen_values() {
        let lim = ammc_limits(&p(2, 2, 4, 1));
        assert_eq!(lim.infinite_field, 2.0);
        assert!((lim.infinite_rank_normalized - 0.25).abs() < 1e-12);
        assert_eq!(lim.infinite_packet_normalized, 0.5);
        // t=0 matches the MMC limits where both are defined.
        let a = ammc_limits(&p(2, 2, 6, 0));
        let m = capacity_mmc_limits(&p(2, 2, 6, 0));
        assert_eq!(a.infinite_field, m.infinite_field);
        assert!((a.infinite_rank_normalized - m.infinite_rank_normalized).abs() < 1e-12);
    }

    #[test]
    fn sandwich_lower_below_upper() {
        for q in [2u64, 4, 16] {
            for n in 1..=4u64 {
                for t in 0..=n {
                    let m = 2 * n + 2;
                    let params = p(q, n, m, t);
                    let upper = ammc_upper_bound(&params).unwrap();
                    for eps in [0.0, 0.25, 1.0] {
                        let lower = ammc_lower_bound(&params, eps).unwrap();
                        assert!(
                            lower.raw <= upper,
                            "({q},{n},{m},{t},eps={eps}): {} > {upper}",
                            lower.raw
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn normalized_limits_agree() {
        // infinite-field / nm must equal the infinite-rank normalized form.
        for (n, m, t) in [(2u64, 4u64, 1u64), (3, 7, 2), (4, 9, 0)] {
            let params = p(2, n, m, t);
            let nm = (n * m) as f64;
            let mmc = capacity_mmc_limits(&params);
            assert!((mmc.infinite_field / nm - mmc.infinite_rank_normalized).abs() < 1e-12);
            let amc = capacity_amc_limits(&params).unwrap();
            assert!(
                (amc.infinite_field / nm - amc.infinite_rank_normalized).abs() < 1e-12
            );
            let ammc = ammc_limits(&params);
            assert!(
                (ammc.infinite_field / nm - ammc.infinite_rank_normalized).abs() < 1e-12
            );
        }
    }

    #[test]
    fn rank_sum_bound_values() {
        assert_eq!(rank_sum_failure_bound(2, 4, 4, 2, 0).unwrap(), 0.0);
        assert_eq!(rank_sum_failure_bound(2, 4, 4, 1, 1).unwrap(), 0.25);
        // Cap at 1.
        assert_eq!(rank_sum_failure_bound(2, 2, 2, 1, 1).unwrap(), 1.0);
        assert!(matches!(
            rank_sum_failure_bound(2, 3, 3, 2, 2),
            Err(CapacityError::RankSumOutOfRange { .. })
        ));
    }

    #[test]
    fn rank_sum_bound_holds_empirically() {
        use crate::gf::Field;
        use crate::sampling::{sample_rank_t, DetRng};
        // q=2, n=m=3, k=1, t=1: estimate P[rank(X+W) < 2] over 10^5 trials;
        // the bound value is 0.5 and the estimate must respect it.
        let bound = rank_sum_failure_bound(2, 3, 3, 1, 1).unwrap();
        assert_eq!(bound, 0.5);
        let f2 = Field::new(2).unwrap();
        let mut rng = DetRng::new(424242);
        let trials = 100_000u64;
        let mut drops = 0u64;
        for _ in 0..trials {
            let (x, _) = sample_rank_t(&mut rng, &f2, 3, 3, 1).unwrap();
            let (w, _) = sample_rank_t(&mut rng, &f2, 3, 3, 1).unwrap();
            if x.add(&w).unwrap().rank() < 2 {
                drops += 1;
            }
        }
        let rate = drops as f64 / trials as f64;
        assert!(rate < bound, "empirical {rate} vs bound {bound}");
    }

    #[test]
    fn variable_rank_penalty_values() {
        let (h, cap) = variable_rank_penalty(&[0.0, 1.0], 2).unwrap();
        assert_eq!(h, 0.0);
        assert!((cap - 1.0).abs() < 1e-12);
        let (h, cap) = variable_rank_penalty(&[0.25; 4], 2).unwrap();
        assert!((h - 2.0).abs() < 1e-12);
        assert!((cap - 2.0).abs() < 1e-12);
        let (h, _) = variable_rank_penalty(&[0.5, 0.5], 2).unwrap();
        assert!((h - 1.0).abs() < 1e-12);
        // Entropy never exceeds its cap.
        let (h, cap) = variable_rank_penalty(&[0.1, 0.2, 0.3, 0.4], 3).unwrap();
        assert!(h <= cap + 1e-12);
        assert!(variable_rank_penalty(&[0.5, 0.4], 2).is_err());
        assert!(variable_rank_penalty(&[], 2).is_err());
    }

    #[test]
    fn low_weight_gain_values() {
        assert_eq!(low_weight_gain(8, 8, 3, 2).unwrap(), 0.0);
        assert_eq!(low_weight_gain(8, 1, 0, 2).unwrap(), 0.0);
        let g = low_weight_gain(8, 1, 1, 2).unwrap();
        assert!((g - 4.0).abs() < 1e-12, "{g}");
        assert!(matches!(
            low_weight_gain(3, 5, 1, 2),
            Err(CapacityError::WeightOutOfRange { s: 5, m: 3 })
        ));
    }

    #[test]
    fn report_mmc_and_amc_carry_exact_values() {
        let params = p(2, 2, 3, 1);
        let r = CapacityReport::build(CapacityLaw::Mmc, &params, None, false).unwrap();
        assert!((r.exact.unwrap() - 15f64.log2()).abs() < 1e-12);
        assert!((r.exact_normalized.unwrap() - 15f64.log2() / 6.0).abs() < 1e-12);
        assert!(r.upper_bound.is_none());

        let r = CapacityReport::build(CapacityLaw::Amc, &params, None, false).unwrap();
        assert!((r.exact.unwrap() - (6.0 - 21f64.log2())).abs() < 1e-12);
        assert!(r.limit_infinite_batch_normalized.is_some());
    }

    #[test]
    fn report_ammc_bounds_and_epsilon_default() {
        let params = p(2, 2, 6, 1);
        let r = CapacityReport::build(CapacityLaw::Ammc, &params, None, false).unwrap();
        assert!(r.exact.is_none());
        let eps = r.epsilon.unwrap();
        assert!((eps - 1.0 / 6f64.sqrt()).abs() < 1e-12);
        assert!(r.lower_bound_raw.unwrap() <= r.upper_bound.unwrap());
        assert!(r.lower_bound.unwrap() >= 0.0);

        // n > m/2: upper bound is omitted rather than invalid.
        let r = CapacityReport::build(CapacityLaw::Ammc, &p(2, 3, 4, 1), None, false).unwrap();
        assert!(r.upper_bound.is_none());
        assert!(r.lower_bound.is_some());
    }

    #[test]
    fn report_bits_toggle_scales_capacities_not_ratios() {
        let params = p(4, 2, 4, 1);
        let q_units = CapacityReport::build(CapacityLaw::Amc, &params, None, false).unwrap();
        let bits = CapacityReport::build(CapacityLaw::Amc, &params, None, true).unwrap();
        assert!((bits.exact.unwrap() - 2.0 * q_units.exact.unwrap()).abs() < 1e-12);
        assert!(
            (bits.limit_infinite_field - 2.0 * q_units.limit_infinite_field).abs() < 1e-12
        );
        // Dimensionless fields unchanged.
        assert_eq!(bits.lambda, q_units.lambda);
        assert_eq!(
            bits.limit_infinite_rank_normalized,
            q_units.limit_infinite_rank_normalized
        );
        assert_eq!(bits.exact_normalized, q_units.exact_normalized);
        assert_eq!(bits.units, "bits");
    }

    #[test]
    fn report_serializes_to_json() {
        let params = p(2, 2, 4, 1);
        let r = CapacityReport::build(CapacityLaw::Ammc, &params, Some(0.5), false).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["law"], "ammc");
        assert_eq!(json["q"], 2);
        assert!(json.get("exact").is_none());
        assert!(json["upper_bound"].is_f64());
    }
}
