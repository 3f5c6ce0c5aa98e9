//! Error-trapping codes end to end: encode a data matrix into a trap-coded
//! codeword, push it through the matching channel, decode, and compare the
//! measured failure rate of many such round trips against the closed-form
//! failure bound 2t / q^(1 + v - t).

use mcl::capacity::ChannelParams;
use mcl::channel::{Channel, RankMode};
use mcl::codec::{
    decode_amc, decode_ammc, decode_mmc_pilot, encode, failure_probability_bound, CodeConfig,
    Outcome, Scheme,
};
use mcl::gf::Field;
use mcl::sampling::{fork_seed, sample_uniform, DetRng};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::new(4)?;

    // --- One fully worked AMC round trip -----------------------------------
    let params = ChannelParams::new(4, 4, 6, 1)?;
    let config = CodeConfig::new(f.clone(), params, Scheme::AmcTrap, 2)?;
    let (rows, cols) = config.data_shape();
    println!(
        "AMC trap code: n={} m={} t={} v={} carries a {}x{} data block ({} symbols)",
        params.n,
        params.m,
        params.t,
        2,
        rows,
        cols,
        config.rate_symbols()
    );

    let mut rng = DetRng::new(7);
    let u = sample_uniform(&mut rng, &f, rows, cols);
    let x = encode(&config, &u)?;
    println!("data U =\n{u}");
    println!("codeword X (data in the lower-right, trap rows/cols zero) =\n{x}");

    let channel = Channel::amc(f.clone(), params, RankMode::Fixed)?;
    let rec = channel.transmit(&x, &mut rng)?;
    println!("received Y = X + W =\n{}", rec.y);

    let result = decode_amc(&config, &rec.y)?;
    match &result.outcome {
        Outcome::Success(decoded) => {
            println!(
                "decoded: trap corner rank {} == t, recovered U exactly: {}",
                result.observed_rank,
                *decoded == u
            );
            assert_eq!(*decoded, u, "successful decode must return the exact data");
        }
        Outcome::Failure => {
            println!(
                "decode declared failure (corner rank {} != required {})",
                result.observed_rank, result.required_rank
            );
        }
    }

    // --- Failure rate vs. the bound, per scheme -----------------------------
    // The trap fails when the error's row/column span misses the trap region;
    // the chance of that shrinks as q^-(1 + v - t).
    println!("\nmeasured failure rate vs bound (2000 trials each):");
    println!("{:<10} {:>3} {:>3} {:>10} {:>10}", "scheme", "t", "v", "measured", "bound");
    for v in [1u64, 2, 3] {
        let rate = measure_rate(&Scheme::AmcTrap, 4, 4, 6, 1, v, 2000, 1000 + v)?;
        let bound = failure_probability_bound(4, 1, v)?;
        println!("{:<10} {:>3} {:>3} {:>10.4} {:>10.4}", "amc-trap", 1, v, rate, bound);
        assert!(rate <= bound + 0.05, "measured rate should respect the bound");
    }
    for v in [1u64, 2, 3] {
        let rate = measure_rate(&Scheme::AmmcTrap, 4, 4, 8, 1, v, 2000, 2000 + v)?;
        let bound = failure_probability_bound(4, 1, v)?;
        println!("{:<10} {:>3} {:>3} {:>10.4} {:>10.4}", "ammc-trap", 1, v, rate, bound);
        assert!(rate <= bound + 0.05, "measured rate should respect the bound");
    }

    // --- The error-free pilot scheme ----------------------------------------
    // The multiplicative-only channel never needs a trap: an identity header
    // rides along and the decoder inverts whatever the channel applied.
    let params = ChannelParams::new(4, 3, 7, 0)?;
    let config = CodeConfig::new(f.clone(), params, Scheme::MmcPilot, 0)?;
    let channel = Channel::mmc(f.clone(), params)?;
    let mut failures = 0u64;
    for trial in 0..500u64 {
        let mut rng = DetRng::new(fork_seed(99, trial));
        let (rows, cols) = config.data_shape();
        let u = sample_uniform(&mut rng, &f, rows, cols);
        let x = encode(&config, &u)?;
        let y = channel.transmit(&x, &mut rng)?.y;
        match decode_mmc_pilot(&config, &y)?.outcome {
            Outcome::Success(d) if d == u => {}
            _ => failures += 1,
        }
    }
    println!("\npilot scheme over the multiplicative channel: {failures} failures in 500 trials");
    assert_eq!(failures, 0, "the pilot scheme is error-free under a nonsingular transfer");
    Ok(())
}

fn measure_rate(
    scheme: &Scheme,
    q: u64,
    n: u64,
    m: u64,
    t: u64,
    v: u64,
    trials: u64,
    seed: u64,
) -> Result<f64, Box<dyn std::error::Error>> {
    let f = Field::new(q)?;
    let params = ChannelParams::new(q, n, m, t)?;
    let config = CodeConfig::new(f.clone(), params, *scheme, v)?;
    let channel = match scheme {
        Scheme::AmcTrap => Channel::amc(f.clone(), params, RankMode::Fixed)?,
        Scheme::AmmcTrap => Channel::ammc(f.clone(), params, RankMode::Fixed)?,
        Scheme::MmcPilot => Channel::mmc(f.clone(), params)?,
    };
    let (rows, cols) = config.data_shape();
    let mut bad = 0u64;
    for trial in 0..trials {
        let mut rng = DetRng::new(fork_seed(seed, trial));
        let u = sample_uniform(&mut rng, &f, rows, cols);
        let x = encode(&config, &u)?;
        let y = channel.transmit(&x, &mut rng)?.y;
        let result = match scheme {
            Scheme::AmcTrap => decode_amc(&config, &y)?,
            Scheme::AmmcTrap => decode_ammc(&config, &y)?,
            Scheme::MmcPilot => decode_mmc_pilot(&config, &y)?,
        };
        match result.outcome {
            Outcome::Success(d) if d == u => {}
            _ => bad += 1,
        }
    }
    Ok(bad as f64 / trials as f64)
}
