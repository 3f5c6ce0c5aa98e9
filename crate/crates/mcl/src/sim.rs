//! Monte Carlo failure-rate campaigns and parameter sweeps.
//!
//! Every trial runs encode -> transmit -> decode with its own Rng forked
//! deterministically from the master seed, so campaigns are reproducible
//! bit-for-bit regardless of thread scheduling: tallies are commutative and
//! the per-trial streams never interact.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::capacity::{
    ammc_lower_bound, ammc_upper_bound, capacity_amc, capacity_mmc, epsilon_schedule,
    CapacityError, ChannelParams,
};
use crate::channel::{Channel, ChannelError, RankMode};
use crate::codec::{
    decode_amc, decode_ammc, decode_mmc_pilot, decode_variable_rank, encode,
    failure_probability_bound, CodeConfig, CodecError, Scheme,
};
use crate::gf::{Field, GfError};
use crate::sampling::{fork_seed, sample_uniform, DetRng};
use crate::stats::{wilson_interval, Z_95};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("a campaign needs at least one trial")]
    NoTrials,
    #[error("grid point (q={q}, n={n}, m={m}, t={t}, v={v}) is invalid: {source}")]
    BadGridPoint {
        q: u64,
        n: u64,
        m: u64,
        t: u64,
        v: u64,
        source: Box<dyn std::error::Error + Send + Sync>,
    },
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Codec(#[from] CodecError),
}

/// Outcome tallies of one campaign with the Wilson 95% interval on the
/// error rate (failures plus undetected errors, over trials) and the
/// matching analytic bound. Wall time is measured but excluded from
/// serialization so identical seeds give byte-identical reports.
#[derive(Debug, Clone, Serialize)]
pub struct MCEstimate {
    pub trials: u64,
    pub successes: u64,
    pub failures: u64,
    pub undetected: u64,
    pub empirical_rate: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    pub bound: f64,
    #[serde(skip)]
    pub wall_ms: u64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    successes: u64,
    failures: u64,
    undetected: u64,
}

impl Tally {
    fn merge(self, other: Tally) -> Tally {
        Tally {
            successes: self.successes + other.successes,
            failures: self.failures + other.failures,
            undetected: self.undetected + other.undetected,
        }
    }
}

fn build_channel(config: &CodeConfig, rank_mode: &RankMode) -> Result<Channel, SimError> {
    let field = config.field().clone();
    let params = *config.params();
    let channel = match config.scheme() {
        Scheme::AmcTrap => Channel::amc(field, params, rank_mode.clone())?,
        Scheme::AmmcTrap => Channel::ammc(field, params, rank_mode.clone())?,
        Scheme::MmcPilot => {
            if let RankMode::Variable(_) = rank_mode {
                return Err(ChannelError::VariableRankUnsupported {
                    law: crate::channel::Law::Mmc,
                }
                .into());
            }
            Channel::mmc(field, params)?
        }
    };
    Ok(channel)
}

/// Run `trials` independent encode/transmit/decode rounds and classify each
/// as success (exact data back), failure (decoder declared), or undetected
/// error (decoder accepted wrong data; possible only with variable ranks).
pub fn run_campaign(
    config: &CodeConfig,
    rank_mode: &RankMode,
    trials: u64,
    master_seed: u64,
) -> Result<MCEstimate, SimError> {
    if trials == 0 {
        return Err(SimError::NoTrials);
    }
    let start = Instant::now();
    let channel = build_channel(config, rank_mode)?;
    let variable = matches!(rank_mode, RankMode::Variable(_));
    let (rows, cols) = config.data_shape();

    let tally = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<Tally, SimError> {
            let mut rng = DetRng::new(fork_seed(master_seed, trial));
            let u = sample_uniform(&mut rng, config.field(), rows, cols);
            let x = encode(config, &u)?;
            let y = channel.transmit(&x, &mut rng)?.y;
            let result = if variable {
                decode_variable_rank(config, &y)?
            } else {
                match config.scheme() {
                    Scheme::AmcTrap => decode_amc(config, &y)?,
                    Scheme::AmmcTrap => decode_ammc(config, &y)?,
                    Scheme::MmcPilot => decode_mmc_pilot(config, &y)?,
                }
            };
            Ok(match result.data() {
                Some(got) if got == &u => Tally { successes: 1, ..Tally::default() },
                Some(_) => Tally { undetected: 1, ..Tally::default() },
                None => Tally { failures: 1, ..Tally::default() },
            })
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;

    let params = config.params();
    let bound = failure_probability_bound(params.q, params.t, config.trap_size() as u64)?;
    let errors = tally.failures + tally.undetected;
    let (wilson_low, wilson_high) = wilson_interval(errors, trials, Z_95);
    Ok(MCEstimate {
        trials,
        successes: tally.successes,
        failures: tally.failures,
        undetected: tally.undetected,
        empirical_rate: errors as f64 / trials as f64,
        wilson_low,
        wilson_high,
        bound,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// A Cartesian grid of campaign points. Every point must satisfy its
/// scheme's preconditions; validation happens up front so an invalid point
/// aborts the sweep before any trials run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSpec {
    pub scheme: Scheme,
    pub qs: Vec<u64>,
    pub ns: Vec<u64>,
    pub ms: Vec<u64>,
    pub ts: Vec<u64>,
    pub vs: Vec<u64>,
    pub trials: u64,
    pub seed: u64,
    /// Rank pmf for variable-rank operation of the whole sweep; None = fixed.
    #[serde(default)]
    pub pmf: Option<Vec<f64>>,
}

/// One grid point's results: parameters, rate, the applicable capacity
/// values, and the campaign estimate.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub scheme: Scheme,
    pub q: u64,
    pub n: u64,
    pub m: u64,
    pub t: u64,
    pub v: u64,
    pub rate_symbols: u64,
    pub capacity_exact: Option<f64>,
    pub capacity_upper: Option<f64>,
    pub capacity_lower: Option<f64>,
    #[serde(flatten)]
    pub estimate: MCEstimate,
}

impl SweepSpec {
    /// All grid points in deterministic order (q outermost, v innermost),
    /// each validated into a CodeConfig.
    pub fn grid(&self) -> Result<Vec<CodeConfig>, SimError> {
        let mut points = Vec::new();
        for &q in &self.qs {
            for &n in &self.ns {
                for &m in &self.ms {
                    for &t in &self.ts {
                        for &v in &self.vs {
                            let config = Field::new(q)
                                .map_err(|e| boxed_grid_err(q, n, m, t, v, e))
                                .and_then(|field| {
                                    let params = ChannelParams::new(q, n, m, t)
                                        .map_err(|e| boxed_grid_err(q, n, m, t, v, e))?;
                                    CodeConfig::new(field, params, self.scheme, v)
                                        .map_err(|e| boxed_grid_err(q, n, m, t, v, e))
                                })?;
                            if let Some(pmf) = &self.pmf {
                                build_channel(&config, &RankMode::Variable(pmf.clone()))
                                    .map_err(|e| boxed_grid_err(q, n, m, t, v, e))?;
                            }
                            points.push(config);
                        }
                    }
                }
            }
        }
        Ok(points)
    }
}

fn boxed_grid_err<E: std::error::Error + Send + Sync + 'static>(
    q: u64,
    n: u64,
    m: u64,
    t: u64,
    v: u64,
    source: E,
) -> SimError {
    SimError::BadGridPoint { q, n, m, t, v, source: Box::new(source) }
}

/// Run every grid point with its own forked seed and collect rows.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>, SimError> {
    let points = spec.grid()?;
    let rank_mode = match &spec.pmf {
        Some(pmf) => RankMode::Variable(pmf.clone()),
        None => RankMode::Fixed,
    };
    let mut rows = Vec::with_capacity(points.len());
    for (index, config) in points.iter().enumerate() {
        let estimate =
            run_campaign(config, &rank_mode, spec.trials, fork_seed(spec.seed, index as u64))?;
        rows.push(make_row(config, estimate)?);
    }
    Ok(rows)
}

fn make_row(config: &CodeConfig, estimate: MCEstimate) -> Result<SweepRow, SimError> {
    let params = config.params();
    let (capacity_exact, capacity_upper, capacity_lower) = match config.scheme() {
        Scheme::AmcTrap => (Some(capacity_amc(params)?), None, None),
        Scheme::MmcPilot => (Some(capacity_mmc(params)?), None, None),
        Scheme::AmmcTrap => {
            let upper = if 2 * params.n <= params.m {
                Some(ammc_upper_bound(params)?)
            } else {
                None
            };
            let lower = if params.n <= params.m {
                Some(ammc_lower_bound(params, epsilon_schedule(params.m))?.clamped)
            } else {
                None
            };
            (None, upper, lower)
        }
    };
    Ok(SweepRow {
        scheme: config.scheme(),
        q: params.q,
        n: params.n,
        m: params.m,
        t: params.t,
        v: config.trap_size() as u64,
        rate_symbols: config.rate_symbols(),
        capacity_exact,
        capacity_upper,
        capacity_lower,
        estimate,
    })
}

/// Stable CSV header for sweep output; the golden-file test pins it.
pub const SWEEP_CSV_HEADER: &str = "scheme,q,n,m,t,v,rate_symbols,capacity_exact,\
capacity_upper,capacity_lower,trials,successes,failures,undetected,empirical_rate,\
wilson_low,wilson_high,bound";

/// Stable CSV header for a single campaign estimate.
pub const ESTIMATE_CSV_HEADER: &str =
    "trials,successes,failures,undetected,empirical_rate,wilson_low,wilson_high,bound";

/// Render one estimate as CSV (header plus one row).
pub fn estimate_csv(e: &MCEstimate) -> String {
    format!(
        "{ESTIMATE_CSV_HEADER}\n{},{},{},{},{},{},{},{}\n",
        e.trials,
        e.successes,
        e.failures,
        e.undetected,
        e.empirical_rate,
        e.wilson_low,
        e.wilson_high,
        e.bound,
    )
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Render sweep rows as CSV (header + one line per grid point).
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let e = &r.estimate;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.scheme,
            r.q,
            r.n,
            r.m,
            r.t,
            r.v,
            r.rate_symbols,
            opt(r.capacity_exact),
            opt(r.capacity_upper),
            opt(r.capacity_lower),
            e.trials,
            e.successes,
            e.failures,
            e.undetected,
            e.empirical_rate,
            e.wilson_low,
            e.wilson_high,
            e.bound,
        ));
    }
    out
}
