//! Exact big-integer combinatorics for rank ensembles: Gaussian binomial
//! coefficients, cardinalities of fixed-rank matrix sets, superspace counts,
//! and the sandwich bounds the capacity limit arguments lean on.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::gf::prime_power;

/// Exact nonnegative count; all functions in this module are rounding-free.
pub type BigCount = BigUint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("field order {0} is not a prime power p^k with 2 <= p^k <= 65536")]
    InvalidOrder(u64),
    #[error("subspace dimension {k} exceeds ambient dimension {m}")]
    KOutOfRange { k: u64, m: u64 },
    #[error("rank {t} exceeds min({n}, {m})")]
    RankOutOfRange { t: u64, n: u64, m: u64 },
    #[error("need k <= n <= m, got k={k}, n={n}, m={m}")]
    BadDimensionChain { k: u64, n: u64, m: u64 },
}

fn check_q(q: u64) -> Result<BigCount, CountError> {
    prime_power(q).ok_or(CountError::InvalidOrder(q))?;
    Ok(BigCount::from(q))
}

/// Number of k-dimensional subspaces of F_q^m: the Gaussian binomial
/// coefficient [m choose k]_q, evaluated as an exact integer by incremental
/// cancellation — after step i the partial product is [m-k+i choose i]_q,
/// itself an integer, so every division is exact.
pub fn gaussian_coefficient(m: u64, k: u64, q: u64) -> Result<BigCount, CountError> {
    let bq = check_q(q)?;
    if k > m {
        return Err(CountError::KOutOfRange { k, m });
    }
    let k = k.min(m - k); // symmetry keeps the loop short
    let mut acc = BigCount::one();
    for i in 1..=k {
        let num = bq.pow((m - k + i) as u32) - 1u32;
        let den = bq.pow(i as u32) - 1u32;
        acc = acc * num / den;
    }
    Ok(acc)
}

/// |T_{n x m, t}|: number of n x m matrices over F_q of rank exactly t.
/// Computed as (rank-t row spaces) x (full-column-rank coordinate maps):
/// [m choose t]_q * prod_{i=0}^{t-1} (q^n - q^i).
pub fn count_rank_matrices(n: u64, m: u64, t: u64, q: u64) -> Result<BigCount, CountError> {
    let bq = check_q(q)?;
    if t > n.min(m) {
        return Err(CountError::RankOutOfRange { t, n, m });
    }
    let mut acc = gaussian_coefficient(m, t, q)?;
    for i in 0..t {
        acc *= bq.pow(n as u32) - bq.pow(i as u32);
    }
    Ok(acc)
}

/// |T_{n x m}|: number of full-rank n x m matrices,
/// prod_{i=0}^{min-1} (q^max - q^i). Agrees with
/// count_rank_matrices(n, m, min(n,m), q).
pub fn count_full_rank(n: u64, m: u64, q: u64) -> Result<BigCount, CountError> {
    let bq = check_q(q)?;
    let (lo, hi) = (n.min(m), n.max(m));
    let mut acc = BigCount::one();
    for i in 0..lo {
        acc *= bq.pow(hi as u32) - bq.pow(i as u32);
    }
    Ok(acc)
}

/// Number of n-dimensional subspaces of F_q^m containing a fixed
/// k-dimensional subspace: [m-k choose n-k]_q by the correspondence theorem.
pub fn count_superspaces(m: u64, k: u64, n: u64, q: u64) -> Result<BigCount, CountError> {
    if !(k <= n && n <= m) {
        return Err(CountError::BadDimensionChain { k, n, m });
    }
    gaussian_coefficient(m - k, n - k, q)
}

/// The sandwich q^{(m-k)k} < [m choose k]_q < 4 q^{(m-k)k}, returned as
/// (lower, upper). Strict on the interior 0 < k < m; at k = 0 or k = m the
/// coefficient equals the lower bound.
pub fn gc_sandwich_bounds(m: u64, k: u64, q: u64) -> Result<(BigCount, BigCount), CountError> {
    let bq = check_q(q)?;
    if k > m {
        return Err(CountError::KOutOfRange { k, m });
    }
    let core = bq.pow(((m - k) * k) as u32);
    Ok((core.clone(), core * 4u32))
}

/// Bounds on the total subspace count sum_{k=0}^{n} [m choose k]_q:
/// with n* = min(n, floor(m/2)), the sum lies strictly between
/// [m choose n*]_q and (n+1) [m choose n*]_q for n >= 1.
/// Returns (lower, exact sum, upper).
pub fn sum_gc_bounds(n: u64, m: u64, q: u64) -> Result<(BigCount, BigCount, BigCount), CountError> {
    if n > m {
        return Err(CountError::KOutOfRange { k: n, m });
    }
    let mut sum = BigCount::zero();
    for k in 0..=n {
        sum += gaussian_coefficient(m, k, q)?;
    }
    let n_star = n.min(m / 2);
    let peak = gaussian_coefficient(m, n_star, q)?;
    let upper = peak.clone() * (n + 1);
    Ok((peak, sum, upper))
}

/// Ordinary binomial coefficient C(n, k), exact.
pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 1..=k {
        acc = acc * BigCount::from(n - k + i) / BigCount::from(i);
    }
    acc
}

/// log base q of an exact count, with relative error well under 1e-12:
/// the top 64 bits give the mantissa, the bit length gives the exponent.
pub fn log_q_count(x: &BigCount, q: u64) -> f64 {
    assert!(!x.is_zero(), "logarithm of zero count");
    assert!(q >= 2, "log base must be at least 2");
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift)
        .to_u64()
        .expect("top 64 bits fit by construction");
    let log2x = (top as f64).log2() + shift as f64;
    log2x / (q as f64).log2()
}
