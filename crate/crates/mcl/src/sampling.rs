//! Seeded sampling of the matrix ensembles the channels draw from: uniform,
//! full-rank, nonsingular, fixed-rank-t, and mixture-of-ranks.
//!
//! Everything is driven by [`DetRng`], a deterministic 64-bit-seeded stream:
//! the same seed always reproduces the same matrix sequence, and Monte Carlo
//! trials fork independent streams via [`fork_seed`] so campaigns can run in
//! parallel without the tally depending on scheduling order.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gf::{Fe, FieldRef};
use crate::mat::Matrix;

/// Rejection attempts allowed when sampling full-rank ensembles before the
/// sampler reports a defect. The acceptance probability is at least
/// prod_{i>=1}(1 - q^-i) > 0.288 for every q, so 1000 straight rejections
/// signal a broken RNG rather than bad luck.
pub const FULL_RANK_RETRY_CAP: u32 = 1000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SampleError {
    #[error("no full-rank {n}x{m} matrix over GF({q}) found in {cap} attempts; RNG defect suspected")]
    RetryCapExceeded { n: usize, m: usize, q: u32, cap: u32 },
    #[error("target rank {t} exceeds min({n}, {m})")]
    RankOutOfRange { t: usize, n: usize, m: usize },
    #[error("rank pmf is empty")]
    PmfEmpty,
    #[error("rank pmf has {len} entries, so its top rank {top} exceeds min({n}, {m})")]
    PmfTooLong { len: usize, top: usize, n: usize, m: usize },
    #[error("rank pmf entry {index} is {value}, not a finite nonnegative probability")]
    PmfBadEntry { index: usize, value: f64 },
    #[error("rank pmf sums to {sum}, more than 1e-12 away from 1")]
    PmfBadSum { sum: f64 },
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Derive the seed for an independent stream (Monte Carlo trial, sweep point)
/// from a master seed. This mapping is part of the reproducibility contract:
/// changing it changes every seeded campaign result.
pub fn fork_seed(master: u64, stream: u64) -> u64 {
    splitmix64(master ^ splitmix64(stream.wrapping_add(0x9E3779B97F4A7C15)))
}

/// Deterministic pseudorandom stream with a 64-bit seed.
#[derive(Debug, Clone)]
pub struct DetRng {
    inner: ChaCha8Rng,
    seed: u64,
}

impl DetRng {
    pub fn new(seed: u64) -> DetRng {
        DetRng { inner: ChaCha8Rng::seed_from_u64(seed), seed }
    }

    /// Stream for one Monte Carlo trial: `DetRng::new(fork_seed(master, trial))`.
    pub fn for_trial(master: u64, trial: u64) -> DetRng {
        DetRng::new(fork_seed(master, trial))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform integer in `0..bound` (unbiased).
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        self.inner.gen_range(0..bound)
    }

    /// Uniform field element.
    pub fn fe(&mut self, field: &FieldRef) -> Fe {
        Fe(self.below(field.q() as u64) as u16)
    }

    /// Uniform real in [0, 1).
    pub fn unit(&mut self) -> f64 {
        self.inner.gen::<f64>()
    }
}

/// Uniform over all n x m matrices (each of the q^{nm} equally likely).
pub fn sample_uniform(rng: &mut DetRng, field: &FieldRef, n: usize, m: usize) -> Matrix {
    Matrix::from_fn(field.clone(), n, m, |_, _| rng.fe(field))
}

fn sample_full_rank_capped(
    rng: &mut DetRng,
    field: &FieldRef,
    n: usize,
    m: usize,
    cap: u32,
) -> Result<Matrix, SampleError> {
    let target = n.min(m);
    for _ in 0..cap.max(1) {
        let cand = sample_uniform(rng, field, n, m);
        if cand.rank() == target {
            return Ok(cand);
        }
    }
    Err(SampleError::RetryCapExceeded { n, m, q: field.q(), cap })
}

/// Uniform over T_{n x m}, the full-rank n x m matrices, by rejection.
pub fn sample_full_rank(
    rng: &mut DetRng,
    field: &FieldRef,
    n: usize,
    m: usize,
) -> Result<Matrix, SampleError> {
    sample_full_rank_capped(rng, field, n, m, FULL_RANK_RETRY_CAP)
}

/// Uniform over GL_n(F_q).
pub fn sample_nonsingular(
    rng: &mut DetRng,
    field: &FieldRef,
    n: usize,
) -> Result<Matrix, SampleError> {
    sample_full_rank(rng, field, n, n)
}

/// The two full-rank factors behind a rank-t sample: W = B * Z.
#[derive(Debug, Clone)]
pub struct RankFactorization {
    /// n x t, full column rank.
    pub b: Matrix,
    /// t x m, full row rank.
    pub z: Matrix,
}

/// Uniform over T_{n x m, t}, the matrices of rank exactly t, as W = B * Z
/// with independent uniform full-rank factors. Each rank-t matrix admits
/// exactly |GL_t| factorizations, so the product is uniform.
pub fn sample_rank_t(
    rng: &mut DetRng,
    field: &FieldRef,
    n: usize,
    m: usize,
    t: usize,
) -> Result<(Matrix, RankFactorization), SampleError> {
    if t > n.min(m) {
        return Err(SampleError::RankOutOfRange { t, n, m });
    }
    let b = sample_full_rank(rng, field, n, t)?;
    let z = sample_full_rank(rng, field, t, m)?;
    let w = b.mul(&z).expect("factor shapes agree by construction");
    Ok((w, RankFactorization { b, z }))
}

/// Check a rank pmf: nonempty, top rank within min(n, m), entries finite and
/// nonnegative, total within 1e-12 of 1.
pub fn validate_rank_pmf(pmf: &[f64], n: usize, m: usize) -> Result<(), SampleError> {
    if pmf.is_empty() {
        return Err(SampleError::PmfEmpty);
    }
    let top = pmf.len() - 1;
    if top > n.min(m) {
        return Err(SampleError::PmfTooLong { len: pmf.len(), top, n, m });
    }
    let mut sum = 0.0;
    for (index, &value) in pmf.iter().enumerate() {
        if !value.is_finite() || value < 0.0 {
            return Err(SampleError::PmfBadEntry { index, value });
        }
        sum += value;
    }
    if (sum - 1.0).abs() > 1e-12 {
        return Err(SampleError::PmfBadSum { sum });
    }
    Ok(())
}

/// Draw an index from a validated pmf via inverse transform sampling.
/// Floating-point residue past the last bucket lands on the last entry with
/// positive mass.
pub fn draw_rank(rng: &mut DetRng, pmf: &[f64]) -> usize {
    let mut u = rng.unit();
    for (r, &p) in pmf.iter().enumerate() {
        if u < p {
            return r;
        }
        u -= p;
    }
    pmf.iter()
        .rposition(|&p| p > 0.0)
        .expect("pmf sums to 1, so some entry is positive")
}

/// Draw a rank R from `pmf` (entry r = P[R = r], r in 0..pmf.len()), then a
/// uniform rank-R matrix. Returns the matrix and the realized rank.
pub fn sample_variable_rank(
    rng: &mut DetRng,
    field: &FieldRef,
    n: usize,
    m: usize,
    pmf: &[f64],
) -> Result<(Matrix, usize), SampleError> {
    validate_rank_pmf(pmf, n, m)?;
    let rank = draw_rank(rng, pmf);
    let (w, _) = sample_rank_t(rng, field, n, m, rank)?;
    Ok((w, rank))
}
