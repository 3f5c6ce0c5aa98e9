//! Capacity formulas, bounds, and asymptotic limits for the three channel
//! laws, plus the JSON report the CLI emits.

use mcl::capacity::{
    ammc_lower_bound, ammc_upper_bound, capacity_amc, capacity_amc_limits, capacity_mmc,
    capacity_mmc_limits, epsilon_schedule, rank_sum_failure_bound, CapacityLaw, CapacityReport,
    ChannelParams,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Multiplicative law: exact capacity is log_q of the number of row
    // spaces that fit in n rows.
    let p = ChannelParams::new(2, 2, 2, 0)?;
    println!("MMC capacity (q=2, 2x2): {:.6} q-ary units = log2(5)", capacity_mmc(&p)?);
    let limits = capacity_mmc_limits(&p);
    println!("  infinite-field limit: {} q-ary units", limits.infinite_field);

    // Additive law: the error rank knocks out log_q |T_{n x m, t}| symbols.
    let p = ChannelParams::new(2, 2, 2, 1)?;
    println!(
        "\nAMC capacity (q=2, 2x2, t=1): {:.6} q-ary units (= 4 - log2 9)",
        capacity_amc(&p)?
    );
    let lim = capacity_amc_limits(&p)?;
    println!(
        "  limits: field -> {}, packet-normalized -> {}, batch-normalized -> {}",
        lim.infinite_field, lim.infinite_packet_normalized, lim.infinite_batch_normalized
    );

    // Additive-multiplicative law: only bounds are known in general.
    let p = ChannelParams::new(16, 4, 12, 1)?;
    let upper = ammc_upper_bound(&p)?;
    let eps = epsilon_schedule(p.m);
    let lower = ammc_lower_bound(&p, eps)?;
    println!(
        "\nAMMC (q=16, 4x12, t=1): capacity in [{:.4}, {:.4}] q-ary units (eps = {:.4})",
        lower.clamped, upper, lower.epsilon
    );
    assert!(lower.clamped <= upper);

    // Capacity gaps close as the field grows.
    let gap = |q: u64| {
        let p = ChannelParams::new(q, 2, 4, 1).unwrap();
        capacity_amc(&p).unwrap() - ((p.m - p.t) * (p.n - p.t)) as f64
    };
    println!("\nAMC distance to its infinite-field limit: q=2 -> {:.4}, q=256 -> {:.6}", gap(2), gap(256));

    // Side calculations used by coding arguments.
    println!(
        "\nrank-sum decoding failure bound (q=2, 8x8, k=3, t=2): {}",
        rank_sum_failure_bound(2, 8, 8, 3, 2)?
    );

    // The full JSON report (in bits) as served by the CLI.
    let p = ChannelParams::new(2, 2, 4, 1)?;
    let report = CapacityReport::build(CapacityLaw::Ammc, &p, Some(0.0), true)?;
    println!("\nAMMC report (bits):\n{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
