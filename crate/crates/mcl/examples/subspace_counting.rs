//! Exact combinatorics of subspaces and fixed-rank matrices: Gaussian
//! binomial coefficients, rank-t matrix counts, and the two-sided bounds
//! that drive the capacity formulas.

use mcl::counting::{
    count_full_rank, count_rank_matrices, gaussian_coefficient, gc_sandwich_bounds, log_q_count,
    sum_gc_bounds,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // [m choose k]_q counts k-dimensional subspaces of GF(q)^m.
    println!("subspace counts over GF(2):");
    for m in 1..=6u64 {
        let row: Vec<String> = (0..=m)
            .map(|k| gaussian_coefficient(m, k, 2).unwrap().to_string())
            .collect();
        println!("  m={m}: [{}]", row.join(", "));
    }

    // Fixed-rank matrix counts: |T_{n x m, t}| over GF(q).
    println!("\nrank-t matrix counts, 3 x 4 over GF(3):");
    for t in 0..=3u64 {
        println!("  t={t}: {}", count_rank_matrices(3, 4, t, 3)?);
    }
    let total: num_bigint::BigUint =
        (0..=3u64).map(|t| count_rank_matrices(3, 4, t, 3).unwrap()).sum();
    assert_eq!(total, num_bigint::BigUint::from(3u32).pow(12));
    println!("  sum over t equals 3^12 = {total}");

    println!("\nfull-rank square counts |GL_n(F_2)|:");
    for n in 1..=5u64 {
        println!("  n={n}: {}", count_full_rank(n, n, 2)?);
    }

    // The sandwich q^{(m-k)k} <= [m choose k]_q <= 4 q^{(m-k)k} pins the
    // exponential growth rate.
    let (lo, hi) = gc_sandwich_bounds(8, 3, 2)?;
    let exact = gaussian_coefficient(8, 3, 2)?;
    println!("\n[8 choose 3]_2 = {exact}, sandwich [{lo}, {hi}]");
    assert!(lo <= exact && exact <= hi);

    // Same idea for the sum over all k, which is the MMC capacity kernel.
    let (peak, sum, upper) = sum_gc_bounds(4, 8, 2)?;
    println!("sum_k [8 choose k]_2 for k <= 4: {sum} in [{peak}, {upper}]");

    // log_q of a huge count without leaving integers until the last step.
    let big = gaussian_coefficient(64, 32, 2)?;
    println!("\nlog_2 [64 choose 32]_2 = {:.6} (a {}-bit integer)", log_q_count(&big, 2), big.bits());
    Ok(())
}
