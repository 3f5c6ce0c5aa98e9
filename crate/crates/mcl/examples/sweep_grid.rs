//! Sweep a parameter grid in one call: a `SweepSpec` lists the axes, the
//! runner validates every grid point up front, runs a seeded campaign per
//! point, and renders the whole table as stable-schema CSV; each row also
//! carries the exact capacity (or bounds) for its parameters.

use mcl::codec::Scheme;
use mcl::sim::{run_sweep, sweep_csv, SweepSpec, SWEEP_CSV_HEADER};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = SweepSpec {
        scheme: Scheme::AmmcTrap,
        qs: vec![2, 4],
        ns: vec![4],
        ms: vec![8],
        ts: vec![1],
        vs: vec![1, 2, 3],
        trials: 2000,
        seed: 7,
        pmf: None,
    };

    let points = spec.grid()?;
    println!(
        "grid: {} points (q in {:?}, v in {:?}), {} trials each\n",
        points.len(),
        spec.qs,
        spec.vs,
        spec.trials
    );

    let rows = run_sweep(&spec)?;
    let csv = sweep_csv(&rows);
    print!("{csv}");

    // The header is part of the public contract: downstream parsers can
    // rely on it byte for byte.
    assert!(csv.starts_with(SWEEP_CSV_HEADER));
    assert_eq!(csv.lines().count(), rows.len() + 1);

    // Within one q, the bound column halves per extra trap row and the
    // measured rate stays at or below it.
    for row in &rows {
        assert!(
            row.estimate.empirical_rate <= row.estimate.bound,
            "rate exceeded bound at q={} v={}",
            row.q,
            row.v
        );
    }
    for pair in rows.windows(2) {
        if pair[0].q == pair[1].q {
            let ratio = pair[0].estimate.bound / pair[1].estimate.bound;
            assert!(
                (ratio - pair[1].q as f64).abs() < 1e-9,
                "bound should shrink q-fold per trap row"
            );
        }
    }
    eprintln!("\nall {} grid points respect their failure bounds", rows.len());

    // An invalid point anywhere in the grid is rejected before any trial runs.
    let bad = SweepSpec { vs: vec![0], ..spec };
    match bad.grid() {
        Err(e) => eprintln!("undersized trap rejected up front: {e}"),
        Ok(_) => panic!("v=0 < t=1 must not validate"),
    }
    Ok(())
}
