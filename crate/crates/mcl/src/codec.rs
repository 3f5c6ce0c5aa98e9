//! One-shot error-trapping codes with Gauss-Jordan decoders.
//!
//! Three schemes share one config type:
//!
//! * **AMC trap** — codeword `X = [[0, 0], [0, U]]` with a v x v all-zero
//!   corner trap; data U is (n-v) x (m-v), rate (n-v)(m-v) symbols per use.
//! * **AMMC trap** — codeword `X = [[0, 0, 0], [0, I, U]]`: v all-zero trap
//!   rows, an (n-v) identity pilot, data U of (n-v) x (m-n), rate (n-v)(m-n).
//! * **MMC pilot** — codeword `X = [I, U]`: an n x n identity header, data
//!   U of n x (m-n), rate n(m-n).
//!
//! Decoders are functions of the received Y alone (never of channel hidden
//! state) and either return the exact data or declare a failure. In
//! fixed-rank operation a success is always correct; with variable error
//! ranks the decoder additionally runs the observable consistency checks,
//! and a residual undetected-error event becomes possible (measured, not
//! returned).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::capacity::ChannelParams;
use crate::gf::FieldRef;
use crate::mat::{MatError, Matrix};

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("config field GF({field_q}) does not match params q={params_q}")]
    FieldMismatch { field_q: u32, params_q: u64 },
    #[error("trap size v={v} is below the error budget t={t}")]
    TrapTooSmall { v: u64, t: u64 },
    #[error("trap size v={v} does not fit in a {n}x{m} codeword")]
    TrapTooLarge { v: u64, n: u64, m: u64 },
    #[error("scheme needs n <= m, got n={n}, m={m}")]
    NeedsWidePackets { n: u64, m: u64 },
    #[error("the pilot scheme has no trap and tolerates no errors; needs v=0 and t=0, got v={v}, t={t}")]
    PilotTakesNoErrors { v: u64, t: u64 },
    #[error("data matrix is {got_rows}x{got_cols}, scheme expects {rows}x{cols}")]
    DataShape { rows: usize, cols: usize, got_rows: usize, got_cols: usize },
    #[error("received matrix is {got_rows}x{got_cols}, channel delivers {n}x{m}")]
    ReceivedShape { n: usize, m: usize, got_rows: usize, got_cols: usize },
    #[error("matrix field GF({got}) does not match code field GF({expected})")]
    WrongField { expected: u32, got: u32 },
    #[error("variable-rank decoding is defined for the trap schemes, not {0:?}")]
    UnsupportedScheme(Scheme),
    #[error(transparent)]
    Mat(#[from] MatError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    AmcTrap,
    AmmcTrap,
    MmcPilot,
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::AmcTrap => "amc-trap",
            Scheme::AmmcTrap => "ammc-trap",
            Scheme::MmcPilot => "mmc-pilot",
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A validated code configuration: channel parameters plus trap size.
#[derive(Debug, Clone)]
pub struct CodeConfig {
    field: FieldRef,
    params: ChannelParams,
    v: usize,
    scheme: Scheme,
}

impl CodeConfig {
    pub fn new(
        field: FieldRef,
        params: ChannelParams,
        scheme: Scheme,
        v: u64,
    ) -> Result<CodeConfig, CodecError> {
        if field.q() as u64 != params.q {
            return Err(CodecError::FieldMismatch { field_q: field.q(), params_q: params.q });
        }
        let (n, m, t) = (params.n, params.m, params.t);
        if v < t {
            return Err(CodecError::TrapTooSmall { v, t });
        }
        match scheme {
            Scheme::AmcTrap => {
                if v > n || v > m {
                    return Err(CodecError::TrapTooLarge { v, n, m });
                }
            }
            Scheme::AmmcTrap => {
                if n > m {
                    return Err(CodecError::NeedsWidePackets { n, m });
                }
                if v > n {
                    return Err(CodecError::TrapTooLarge { v, n, m });
                }
            }
            Scheme::MmcPilot => {
                if n > m {
                    return Err(CodecError::NeedsWidePackets { n, m });
                }
                if v != 0 || t != 0 {
                    return Err(CodecError::PilotTakesNoErrors { v, t });
                }
            }
        }
        Ok(CodeConfig { field, params, v: v as usize, scheme })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn params(&self) -> &ChannelParams {
        &self.params
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn trap_size(&self) -> usize {
        self.v
    }

    fn n(&self) -> usize {
        self.params.n as usize
    }

    fn m(&self) -> usize {
        self.params.m as usize
    }

    fn t(&self) -> usize {
        self.params.t as usize
    }

    /// Data matrix dimensions for this scheme.
    pub fn data_shape(&self) -> (usize, usize) {
        let (n, m, v) = (self.n(), self.m(), self.v);
        match self.scheme {
            Scheme::AmcTrap => (n - v, m - v),
            Scheme::AmmcTrap => (n - v, m - n),
            Scheme::MmcPilot => (n, m - n),
        }
    }

    /// Code rate in q-ary symbols per channel use.
    pub fn rate_symbols(&self) -> u64 {
        let (r, c) = self.data_shape();
        (r * c) as u64
    }

    fn check_data(&self, u: &Matrix) -> Result<(), CodecError> {
        if !u.field().same(&self.field) {
            return Err(CodecError::WrongField { expected: self.field.q(), got: u.field().q() });
        }
        let (rows, cols) = self.data_shape();
        if u.rows() != rows || u.cols() != cols {
            return Err(CodecError::DataShape {
                rows,
                cols,
                got_rows: u.rows(),
                got_cols: u.cols(),
            });
        }
        Ok(())
    }

    fn check_received(&self, y: &Matrix) -> Result<(), CodecError> {
        if !y.field().same(&self.field) {
            return Err(CodecError::WrongField { expected: self.field.q(), got: y.field().q() });
        }
        if y.rows() != self.n() || y.cols() != self.m() {
            return Err(CodecError::ReceivedShape {
                n: self.n(),
                m: self.m(),
                got_rows: y.rows(),
                got_cols: y.cols(),
            });
        }
        Ok(())
    }
}

/// What one decode attempt produced.
#[derive(Debug, Clone)]
pub enum Outcome {
    Success(Matrix),
    Failure,
}

/// Decode outcome plus the rank diagnostics behind the decision and the
/// field-operation count of the eliminations performed.
#[derive(Debug, Clone)]
pub struct DecodeResult {
    pub outcome: Outcome,
    /// The rank the decoder observed in the trap/header region.
    pub observed_rank: usize,
    /// The rank the acceptance condition asked for.
    pub required_rank: usize,
    /// Field multiply/add operations spent in Gauss-Jordan elimination.
    pub ops: u64,
}

impl DecodeResult {
    pub fn is_success(&self) -> bool {
        matches!(self.outcome, Outcome::Success(_))
    }

    pub fn data(&self) -> Option<&Matrix> {
        match &self.outcome {
            Outcome::Success(u) => Some(u),
            Outcome::Failure => None,
        }
    }

    fn failure(observed: usize, required: usize, ops: u64) -> DecodeResult {
        DecodeResult { outcome: Outcome::Failure, observed_rank: observed, required_rank: required, ops }
    }
}

/// Lay the data matrix into the scheme's codeword.
pub fn encode(config: &CodeConfig, u: &Matrix) -> Result<Matrix, CodecError> {
    config.check_data(u)?;
    let (n, m, v) = (config.n(), config.m(), config.v);
    let f = config.field.clone();
    match config.scheme {
        Scheme::AmcTrap => {
            let mut x = Matrix::zero(f, n, m);
            x.set_block(v, v, u)?;
            Ok(x)
        }
        Scheme::AmmcTrap => {
            let mut x = Matrix::zero(f.clone(), n, m);
            x.set_block(v, v, &Matrix::identity(f, n - v))?;
            x.set_block(v, n, u)?;
            Ok(x)
        }
        Scheme::MmcPilot => Matrix::identity(f, n).hstack(u).map_err(CodecError::from),
    }
}

/// AMC trap decoding: Gaussian elimination on the v x v corner. The corner
/// of Y = X + W is exactly B1 Z1 (the trap sees only error content), so the
/// observable corner rank equals t precisely when the trap caught the full
/// error rank; then U = Y_br - Tbar Y_tr with Tbar solving Tbar (B1 Z1) = B2 Z1.
pub fn decode_amc(config: &CodeConfig, y: &Matrix) -> Result<DecodeResult, CodecError> {
    config.check_received(y)?;
    decode_amc_at_rank(config, y, config.t(), false)
}

fn decode_amc_at_rank(
    config: &CodeConfig,
    y: &Matrix,
    required: usize,
    consistency: bool,
) -> Result<DecodeResult, CodecError> {
    let (n, m, v) = (config.n(), config.m(), config.v);
    let corner = y.block(0, v, 0, v)?;
    let cred = corner.rref();
    let mut ops = cred.ops;
    let observed = cred.rank;
    if observed != required {
        return Ok(DecodeResult::failure(observed, required, ops));
    }
    if consistency {
        // Variable-rank necessary condition: the whole trap-row block and
        // trap-column block must agree with the corner rank.
        let row_red = y.block(0, v, 0, m)?.rref();
        let col_red = y.block(0, n, 0, v)?.rref();
        ops += row_red.ops + col_red.ops;
        if row_red.rank != observed || col_red.rank != observed {
            return Ok(DecodeResult::failure(observed, row_red.rank.max(col_red.rank), ops));
        }
    }
    let left = y.block(v, n, 0, v)?;
    let tbar = match corner.solve_left(&left) {
        Ok(t) => t,
        // Unreachable under the actual channel law; arbitrary Y stays total.
        Err(MatError::Inconsistent) => {
            return Ok(DecodeResult::failure(observed, required, ops))
        }
        Err(e) => return Err(e.into()),
    };
    let u = y
        .block(v, n, v, m)?
        .sub(&tbar.mul(&y.block(0, v, v, m)?)?)?;
    Ok(DecodeResult { outcome: Outcome::Success(u), observed_rank: observed, required_rank: required, ops })
}

/// Pivot-structure template for the AMMC trap scheme: RRE(Y) must consist of
/// r rows with pivots inside the trap columns [0, v), then the full identity
/// block on columns [v, n), and nothing else. Returns r on a match.
fn ammc_template_rank(pivots: &[usize], rank: usize, v: usize, n: usize) -> Option<usize> {
    let r = pivots.iter().take_while(|&&c| c < v).count();
    if rank != r + (n - v) || pivots.len() != rank {
        return None;
    }
    for (i, &col) in pivots[r..].iter().enumerate() {
        if col != v + i {
            return None;
        }
    }
    Some(r)
}

/// AMMC trap decoding: one Gauss-Jordan elimination on Y, then a template
/// match on the pivot structure. Fixed-rank operation additionally demands
/// that the realized trap rank equal t, which is what makes a success
/// provably exact.
pub fn decode_ammc(config: &CodeConfig, y: &Matrix) -> Result<DecodeResult, CodecError> {
    config.check_received(y)?;
    decode_ammc_at(config, y, Some(config.t()))
}

fn decode_ammc_at(
    config: &CodeConfig,
    y: &Matrix,
    required: Option<usize>,
) -> Result<DecodeResult, CodecError> {
    let (n, m, v) = (config.n(), config.m(), config.v);
    let red = y.rref();
    let ops = red.ops;
    let matched = ammc_template_rank(&red.pivots, red.rank, v, n);
    let observed = matched.unwrap_or_else(|| red.pivots.iter().take_while(|&&c| c < v).count());
    let required_rank = required.unwrap_or(observed);
    match matched {
        Some(r) if required.is_none() || r == required.unwrap() => {
            let u = red.matrix.block(r, r + (n - v), n, m)?;
            Ok(DecodeResult {
                outcome: Outcome::Success(u),
                observed_rank: r,
                required_rank,
                ops,
            })
        }
        _ => Ok(DecodeResult::failure(observed, required_rank, ops)),
    }
}

/// MMC pilot decoding: the left n x n header of Y = A [I U] is A itself, so
/// a single elimination inverts it and recovers U = A^{-1} Y_right.
pub fn decode_mmc_pilot(config: &CodeConfig, y: &Matrix) -> Result<DecodeResult, CodecError> {
    config.check_received(y)?;
    let (n, m) = (config.n(), config.m());
    let left = y.block(0, n, 0, n)?;
    let red = left.rref();
    if red.rank < n {
        return Ok(DecodeResult::failure(red.rank, n, red.ops));
    }
    // Full-rank square RREF transform is the inverse of the header.
    let u = red.transform.mul(&y.block(0, n, n, m)?)?;
    Ok(DecodeResult { outcome: Outcome::Success(u), observed_rank: n, required_rank: n, ops: red.ops })
}

/// Variable-rank decoding: the error budget t is unknown per use, so the
/// decoder trusts the observed trap rank r instead of demanding r = t.
/// For the AMC trap it first verifies the observable consistency condition
/// (trap rows, trap columns, and corner all at rank r); for the AMMC trap
/// the template match itself plays that role. A realized error rank above
/// the observed one can now slip through as an undetected error - callers
/// measure that event against ground truth, it is not an error return.
pub fn decode_variable_rank(config: &CodeConfig, y: &Matrix) -> Result<DecodeResult, CodecError> {
    config.check_received(y)?;
    match config.scheme {
        Scheme::AmcTrap => {
            let corner_rank = y.block(0, config.v, 0, config.v)?.rank();
            decode_amc_at_rank(config, y, corner_rank, true)
        }
        Scheme::AmmcTrap => decode_ammc_at(config, y, None),
        Scheme::MmcPilot => Err(CodecError::UnsupportedScheme(Scheme::MmcPilot)),
    }
}

/// The trap failure probability bound 2t / q^{1+v-t}, capped at 1.
pub fn failure_probability_bound(q: u64, t: u64, v: u64) -> Result<f64, CodecError> {
    if v < t {
        return Err(CodecError::TrapTooSmall { v, t });
    }
    if t == 0 {
        return Ok(0.0);
    }
    let bound = 2.0 * t as f64 / (q as f64).powf((1 + v - t) as f64);
    Ok(bound.min(1.0))
}

/// Operating regime for trap-size selection.
#[derive(Debug, Clone, Copy)]
pub enum TrapRegime {
    /// Growing field size at fixed dimensions: v = t suffices.
    LargeField,
    /// Growing packet length at fixed ratios: v = ceil((tau + epsilon) n).
    LargePacket { epsilon: f64 },
}

/// The achievability schedules' trap sizes, clamped into [t, n].
pub fn suggest_trap_size(params: &ChannelParams, regime: TrapRegime) -> u64 {
    match regime {
        TrapRegime::LargeField => params.t,
        TrapRegime::LargePacket { epsilon } => {
            // Absorb one-ulp float noise so e.g. (0.2 + 0.1) * 10 still
            // ceils to 3 rather than 4.
            let raw = (params.tau() + epsilon) * params.n as f64;
            let v = (raw - 1e-9).ceil().max(0.0) as u64;
            v.clamp(params.t, params.n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{Channel, RankMode};
    use crate::gf::Field;
    use crate::sampling::{sample_nonsingular, sample_uniform, DetRng};

    fn f(q: u64) -> FieldRef {
        Field::new(q).unwrap()
    }

    fn p(q: u64, n: u64, m: u64, t: u64) -> ChannelParams {
        ChannelParams::new(q, n, m, t).unwrap()
    }

    fn cfg(q: u64, n: u64, m: u64, t: u64, scheme: Scheme, v: u64) -> CodeConfig {
        CodeConfig::new(f(q), p(q, n, m, t), scheme, v).unwrap()
    }

    fn random_data(rng: &mut DetRng, config: &CodeConfig) -> Matrix {
        let (r, c) = config.data_shape();
        sample_uniform(rng, config.field(), r, c)
    }

    #[test]
    fn config_validation() {
        assert!(matches!(
            CodeConfig::new(f(2), p(2, 4, 6, 2), Scheme::AmcTrap, 1),
            Err(CodecError::TrapTooSmall { v: 1, t: 2 })
        ));
        assert!(matches!(
            CodeConfig::new(f(2), p(2, 4, 6, 2), Scheme::AmcTrap, 5),
            Err(CodecError::TrapTooLarge { .. })
        ));
        assert!(matches!(
            CodeConfig::new(f(2), p(2, 6, 4, 2), Scheme::AmmcTrap, 2),
            Err(CodecError::NeedsWidePackets { n: 6, m: 4 })
        ));
        assert!(matches!(
            CodeConfig::new(f(2), p(2, 4, 6, 1), Scheme::MmcPilot, 1),
            Err(CodecError::PilotTakesNoErrors { .. })
        ));
        assert!(matches!(
            CodeConfig::new(f(3), p(2, 4, 6, 1), Scheme::AmcTrap, 2),
            Err(CodecError::FieldMismatch { .. })
        ));
    }

    #[test]
    fn rate_accounting_matches_formulas() {
        let c = cfg(2, 4, 7, 1, Scheme::AmcTrap, 2);
        assert_eq!(c.data_shape(), (2, 5));
        assert_eq!(c.rate_symbols(), (4 - 2) * (7 - 2));
        let c = cfg(2, 4, 7, 1, Scheme::AmmcTrap, 2);
        assert_eq!(c.data_shape(), (2, 3));
        assert_eq!(c.rate_symbols(), (4 - 2) * (7 - 4));
        let c = cfg(2, 4, 7, 0, Scheme::MmcPilot, 0);
        assert_eq!(c.data_shape(), (4, 3));
        assert_eq!(c.rate_symbols(), 4 * (7 - 4));
        // Degenerate v = n: rate 0, still constructible.
        let c = cfg(2, 3, 5, 1, Scheme::AmcTrap, 3);
        assert_eq!(c.rate_symbols(), 0);
    }

    #[test]
    fn encode_layouts() {
        let f2 = f(2);
        // Frozen 2x2 example: v=1, U = [1] -> [[0,0],[0,1]].
        let c = cfg(2, 2, 2, 1, Scheme::AmcTrap, 1);
        let u = Matrix::from_indices(f2.clone(), 1, 1, &[1]).unwrap();
        let x = encode(&c, &u).unwrap();
        assert_eq!(x, Matrix::from_indices(f2.clone(), 2, 2, &[0, 0, 0, 1]).unwrap());

        // Zero data leaves only structure.
        let c = cfg(2, 3, 6, 1, Scheme::AmmcTrap, 1);
        let x = encode(&c, &Matrix::zero(f2.clone(), 2, 3)).unwrap();
        let want = Matrix::from_indices(
            f2.clone(),
            3,
            6,
            &[0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
        )
        .unwrap();
        assert_eq!(x, want);

        let c = cfg(2, 2, 4, 0, Scheme::MmcPilot, 0);
        let u = Matrix::from_indices(f2.clone(), 2, 2, &[1, 0, 1, 1]).unwrap();
        let x = encode(&c, &u).unwrap();
        assert_eq!(
            x,
            Matrix::from_indices(f2.clone(), 2, 4, &[1, 0, 1, 0, 0, 1, 1, 1]).unwrap()
        );

        // Shape violations rejected.
        assert!(matches!(
            encode(&c, &Matrix::zero(f2, 2, 3)),
            Err(CodecError::DataShape { .. })
        ));
    }

    #[test]
    fn ammc_codeword_rank_is_pilot_rank() {
        let mut rng = DetRng::new(5);
        let c = cfg(3, 4, 9, 2, Scheme::AmmcTrap, 2);
        for _ in 0..20 {
            let u = random_data(&mut rng, &c);
            let x = encode(&c, &u).unwrap();
            assert_eq!(x.rank(), 2); // n - v
        }
    }

    #[test]
    fn amc_noiseless_roundtrip() {
        // t = 0 with any trap size: always Success with exact U.
        let mut rng = DetRng::new(17);
        for v in [0u64, 1, 2] {
            let c = cfg(4, 3, 5, 0, Scheme::AmcTrap, v);
            let channel = Channel::amc(c.field().clone(), *c.params(), RankMode::Fixed).unwrap();
            for _ in 0..50 {
                let u = random_data(&mut rng, &c);
                let x = encode(&c, &u).unwrap();
                let y = channel.transmit(&x, &mut rng).unwrap().y;
                let res = decode_amc(&c, &y).unwrap();
                assert_eq!(res.data().unwrap(), &u);
            }
        }
    }

    /// Decoder outcome must coincide with the hidden-state trap oracle
    /// (rank B1 = rank Z1 = t), and every success must be exact.
    #[test]
    fn amc_decoder_agrees_with_hidden_oracle() {
        let c = cfg(2, 6, 8, 1, Scheme::AmcTrap, 2);
        let channel = Channel::amc(c.field().clone(), *c.params(), RankMode::Fixed).unwrap();
        let mut rng = DetRng::new(90210);
        let v = c.trap_size();
        let t = c.params().t as usize;
        let (mut successes, mut failures) = (0u64, 0u64);
        for _ in 0..10_000 {
            let u = random_data(&mut rng, &c);
            let x = encode(&c, &u).unwrap();
            let rec = channel.transmit(&x, &mut rng).unwrap();
            let res = decode_amc(&c, &rec.y).unwrap();
            let b1 = rec.hidden.b.as_ref().unwrap().block(0, v, 0, t).unwrap();
            let z1 = rec.hidden.z.as_ref().unwrap().block(0, t, 0, v).unwrap();
            let trap_ok = b1.rank() == t && z1.rank() == t;
            assert_eq!(res.is_success(), trap_ok, "decoder vs oracle");
            if let Some(got) = res.data() {
                assert_eq!(got, &u, "success must be exact");
                successes += 1;
            } else {
                failures += 1;
            }
        }
        // The failure rate respects the trap bound (0.5 here) and both
        // outcomes actually occur at these parameters.
        let bound = failure_probability_bound(2, 1, 2).unwrap();
        assert!((failures as f64) < bound * 10_000.0 * 1.1);
        assert!(successes > 0 && failures > 0);
    }

    #[test]
    fn amc_failure_rate_below_bound_across_grid() {
        let mut rng = DetRng::new(1999);
        for (q, n, m, t, v) in [
            (2u64, 4u64, 6u64, 1u64, 2u64),
            (2, 4, 6, 1, 3),
            (3, 3, 5, 1, 2),
            (4, 4, 4, 2, 3),
        ] {
            let c = cfg(q, n, m, t, Scheme::AmcTrap, v);
            let channel =
                Channel::amc(c.field().clone(), *c.params(), RankMode::Fixed).unwrap();
            let bound = failure_probability_bound(q, t, v).unwrap();
            let trials = 4000u64;
            let mut failures = 0u64;
            for _ in 0..trials {
                let u = random_data(&mut rng, &c);
                let x = encode(&c, &u).unwrap();
                let y = channel.transmit(&x, &mut rng).unwrap().y;
                let res = decode_amc(&c, &y).unwrap();
                match res.data() {
                    Some(got) => assert_eq!(got, &u, "no undetected errors in fixed mode"),
                    None => failures += 1,
                }
            }
            let rate = failures as f64 / trials as f64;
            assert!(
                rate <= bound,
                "({q},{n},{m},t={t},v={v}): empirical {rate} > bound {bound}"
            );
        }
    }

    #[test]
    fn ammc_noiseless_always_succeeds() {
        let mut rng = DetRng::new(3003);
        let c = cfg(2, 4, 9, 0, Scheme::AmmcTrap, 1);
        let channel = Channel::ammc(c.field().clone(), *c.params(), RankMode::Fixed).unwrap();
        for _ in 0..100 {
            let u = random_data(&mut rng, &c);
            let x = encode(&c, &u).unwrap();
            let y = channel.transmit(&x, &mut rng).unwrap().y;
            let res = decode_ammc(&c, &y).unwrap();
            assert_eq!(res.data().unwrap(), &u);
            assert_eq!(res.observed_rank, 0);
        }
    }

    /// RRE is a row-space invariant, so decoding commutes with any further
    /// nonsingular left multiplication of Y.
    #[test]
    fn ammc_decode_invariant_under_row_transform() {
        let c = cfg(2, 4, 9, 1, Scheme::AmmcTrap, 2);
        let channel = Channel::ammc(c.field().clone(), *c.params(), RankMode::Fixed).unwrap();
        let mut rng = DetRng::new(515);
        for _ in 0..1000 {
            let u = random_data(&mut rng, &c);
            let x = encode(&c, &u).unwrap();
            let y = channel.transmit(&x, &mut rng).unwrap().y;
            let p = sample_nonsingular(&mut rng, c.field(), 4).unwrap();
            let py = p.mul(&y).unwrap();
            let a = decode_ammc(&c, &y).unwrap();
            let b = decode_ammc(&c, &py).unwrap();
            assert_eq!(a.is_success(), b.is_success());
            assert_eq!(a.data(), b.data());
            assert_eq!(a.observed_rank, b.observed_rank);
        }
    }

    /// Trap success is equivalent to the rank observable
    /// rank(first n columns of Y) = n - v + r, checked against hidden state.
    #[test]
    fn ammc_rank_observable_matches_hidden_state() {
        let c = cfg(2, 6, 12, 1, Scheme::AmmcTrap, 2);
        let channel = Channel::ammc(c.field().clone(), *c.params(), RankMode::Fixed).unwrap();
        let mut rng = DetRng::new(606060);
        let (n, v, t) = (6usize, 2usize, 1usize);
        let (mut successes, mut failures) = (0u64, 0u64);
        for _ in 0..10_000 {
            let u = random_data(&mut rng, &c);
            let x = encode(&c, &u).unwrap();
            let rec = channel.transmit(&x, &mut rng).unwrap();
            let res = decode_ammc(&c, &rec.y).unwrap();
            // Hidden-state oracle: the trap works iff both B1 (trap rows of
            // the placement) and Z1 (trap columns of the content) keep rank t.
            let b1 = rec.hidden.b.as_ref().unwrap().block(0, v, 0, t).unwrap();
            let z1 = rec.hidden.z.as_ref().unwrap().block(0, t, 0, v).unwrap();
            let trap_ok = b1.rank() == t && z1.rank() == t;
            assert_eq!(res.is_success(), trap_ok);
            // The observable form: left-block rank = n - v + t on success.
            let left_rank = rec.y.block(0, n, 0, n).unwrap().rank();
            if trap_ok {
                assert_eq!(left_rank, n - v + t);
                assert_eq!(res.data().unwrap(), &u);
                successes += 1;
            } else {
                failures += 1;
            }
        }
        assert!(successes > 0 && failures > 0);
        let bound = failure_probability_bound(2, 1, 2).unwrap();
        assert!((failures as f64 / 10_000.0) <= bound);
    }

    #[test]
    fn mmc_pilot_never_fails_on_channel() {
        let c = cfg(2, 3, 6, 0, Scheme::MmcPilot, 0);
        let channel = Channel::mmc(c.field().clone(), *c.params()).unwrap();
        let mut rng = DetRng::new(112);
        for _ in 0..10_000 {
            let u = random_data(&mut rng, &c);
            let x = encode(&c, &u).unwrap();
            let y = channel.transmit(&x, &mut rng).unwrap().y;
            let res = decode_mmc_pilot(&c, &y).unwrap();
            assert_eq!(res.data().unwrap(), &u);
        }
        // Off-channel robustness: a rank-deficient header is a Failure, not
        // a wrong answer.
        let y = Matrix::zero(c.field().clone(), 3, 6);
        let res = decode_mmc_pilot(&c, &y).unwrap();
        assert!(!res.is_success());
        assert_eq!(res.required_rank, 3);
    }

    #[test]
    fn bound_values() {
        assert_eq!(failure_probability_bound(2, 0, 0).unwrap(), 0.0);
        assert_eq!(failure_probability_bound(2, 2, 5).unwrap(), 0.25);
        assert_eq!(failure_probability_bound(16, 1, 1).unwrap(), 0.125);
        // Capped at 1 where the raw expression exceeds it.
        assert_eq!(failure_probability_bound(2, 2, 2).unwrap(), 1.0);
        assert!(matches!(
            failure_probability_bound(2, 3, 2),
            Err(CodecError::TrapTooSmall { .. })
        ));
    }

    #[test]
    fn trap_size_suggestions() {
        let params = p(16, 10, 40, 2);
        assert_eq!(suggest_trap_size(&params, TrapRegime::LargeField), 2);
        let v = suggest_trap_size(&params, TrapRegime::LargePacket { epsilon: 0.1 });
        assert_eq!(v, 3); // ceil((0.2 + 0.1) * 10)
        // Clamped into [t, n].
        let v = suggest_trap_size(&params, TrapRegime::LargePacket { epsilon: 2.0 });
        assert_eq!(v, 10);
    }

    #[test]
    fn variable_rank_zero_mass_always_succeeds() {
        let c = cfg(2, 4, 6, 2, Scheme::AmcTrap, 3);
        let channel = Channel::amc(
            c.field().clone(),
            *c.params(),
            RankMode::Variable(vec![1.0]),
        )
        .unwrap();
        let mut rng = DetRng::new(8);
        for _ in 0..100 {
            let u = random_data(&mut rng, &c);
            let x = encode(&c, &u).unwrap();
            let y = channel.transmit(&x, &mut rng).unwrap().y;
            let res = decode_variable_rank(&c, &y).unwrap();
            assert_eq!(res.data().unwrap(), &u);
            assert_eq!(res.observed_rank, 0);
        }
    }

    /// Wherever the fixed-rank decoder succeeds, the variable-rank decoder
    /// must reach the same data; a point-mass pmf then behaves identically
    /// in law because the channel itself samples the same ensembles.
    #[test]
    fn variable_agrees_with_fixed_on_trap_success() {
        for scheme in [Scheme::AmcTrap, Scheme::AmmcTrap] {
            let c = cfg(2, 5, 10, 1, scheme, 2);
            let channel = match scheme {
                Scheme::AmcTrap => {
                    Channel::amc(c.field().clone(), *c.params(), RankMode::Fixed).unwrap()
                }
                _ => Channel::ammc(c.field().clone(), *c.params(), RankMode::Fixed).unwrap(),
            };
            let mut rng = DetRng::new(5150);
            let mut agreements = 0u64;
            for _ in 0..2000 {
                let u = random_data(&mut rng, &c);
                let x = encode(&c, &u).unwrap();
                let y = channel.transmit(&x, &mut rng).unwrap().y;
                let fixed_res = match scheme {
                    Scheme::AmcTrap => decode_amc(&c, &y).unwrap(),
                    _ => decode_ammc(&c, &y).unwrap(),
                };
                let var_res = decode_variable_rank(&c, &y).unwrap();
                if fixed_res.is_success() {
                    assert_eq!(var_res.data(), fixed_res.data());
                    agreements += 1;
                }
            }
            assert!(agreements > 0);
        }
    }

    /// Variable-rank AMC operation at a mixture pmf: failures and undetected
    /// errors together stay below a 0.5 budget at these parameters.
    #[test]
    fn variable_rank_error_budget() {
        let c = cfg(2, 6, 8, 2, Scheme::AmcTrap, 3);
        let pmf = vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0];
        let channel =
            Channel::amc(c.field().clone(), *c.params(), RankMode::Variable(pmf)).unwrap();
        let mut rng = DetRng::new(26000);
        let trials = 10_000u64;
        let mut failures = 0u64;
        let mut undetected = 0u64;
        for _ in 0..trials {
            let u = random_data(&mut rng, &c);
            let x = encode(&c, &u).unwrap();
            let y = channel.transmit(&x, &mut rng).unwrap().y;
            let res = decode_variable_rank(&c, &y).unwrap();
            match res.data() {
                Some(got) if got == &u => {}
                Some(_) => undetected += 1,
                None => failures += 1,
            }
        }
        let rate = (failures + undetected) as f64 / trials as f64;
        assert!(rate < 0.5, "failures {failures} + undetected {undetected} rate {rate}");
        // The mixture makes both events possible; make sure we exercised them.
        assert!(failures > 0);
    }

    /// Variable-rank pilot decoding is undefined.
    #[test]
    fn variable_rank_rejects_pilot() {
        let c = cfg(2, 3, 6, 0, Scheme::MmcPilot, 0);
        let y = Matrix::zero(c.field().clone(), 3, 6);
        assert!(matches!(
            decode_variable_rank(&c, &y),
            Err(CodecError::UnsupportedScheme(Scheme::MmcPilot))
        ));
    }

    /// Elimination cost scales as O(n^2 m): doubling m doubles the operation
    /// count, doubling n quadruples it (within slack).
    #[test]
    fn ammc_decode_cost_scaling() {
        let mut rng = DetRng::new(321);
        let measure = |n: u64, m: u64, rng: &mut DetRng| -> f64 {
            let c = cfg(2, n, m, 1, Scheme::AmmcTrap, 2);
            let channel =
                Channel::ammc(c.field().clone(), *c.params(), RankMode::Fixed).unwrap();
            let mut total = 0u64;
            for _ in 0..30 {
                let u = random_data(rng, &c);
                let x = encode(&c, &u).unwrap();
                let y = channel.transmit(&x, rng).unwrap().y;
                total += decode_ammc(&c, &y).unwrap().ops;
            }
            total as f64
        };
        let base = measure(8, 32, &mut rng);
        let double_m = measure(8, 64, &mut rng);
        let double_n = measure(16, 32, &mut rng);
        let m_ratio = double_m / base;
        let n_ratio = double_n / base;
        assert!((1.5..=3.0).contains(&m_ratio), "m scaling ratio {m_ratio:.2}");
        assert!((2.5..=6.5).contains(&n_ratio), "n scaling ratio {n_ratio:.2}");
    }

    #[test]
    fn received_shape_validated() {
        let c = cfg(2, 3, 6, 1, Scheme::AmcTrap, 1);
        let bad = Matrix::zero(c.field().clone(), 2, 6);
        assert!(matches!(
            decode_amc(&c, &bad),
            Err(CodecError::ReceivedShape { .. })
        ));
        let wrong_field = Matrix::zero(f(3), 3, 6);
        assert!(matches!(
            decode_amc(&c, &wrong_field),
            Err(CodecError::WrongField { expected: 2, got: 3 })
        ));
    }
}
