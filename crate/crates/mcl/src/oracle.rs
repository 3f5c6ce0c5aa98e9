//! Ground-truth machinery for tiny instances.
//!
//! Everything here is exhaustive: transition matrices are materialized by
//! enumerating every hidden-state realization with its exact uniform weight
//! (integer counts over a common denominator, so probabilities are exact
//! rationals), capacities come from Blahut-Arimoto with a provable
//! lower/upper sandwich, and row-space orbits are listed outright. Guards
//! refuse instances whose state space or total work would be too large,
//! reporting the arithmetic that tripped them.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::capacity::{CapacityLaw, ChannelParams};
use crate::counting::{count_full_rank, count_rank_matrices, gaussian_coefficient, BigCount};
use crate::gf::{Fe, FieldRef};
use crate::mat::Matrix;

/// Largest allowed input/output alphabet, q^{nm}.
pub const MAX_ENUM_STATES: f64 = 4096.0;
/// Largest allowed total work in law evaluations.
pub const MAX_ENUM_WORK: f64 = 1e8;

/// The arithmetic behind an enumeration guard decision. Returned inside
/// [`OracleError::TooLarge`] so refusals can show their work.
#[derive(Debug, Clone, Serialize)]
pub struct GuardReport {
    pub q: u64,
    pub n: u64,
    pub m: u64,
    pub t: u64,
    /// q^{nm}, the input (and output) alphabet size.
    pub input_count: f64,
    pub input_limit: f64,
    /// Hidden-state realizations weighted per input.
    pub ensemble_size: f64,
    /// Raw matrix-space scans needed to materialize the ensembles.
    pub scan_size: f64,
    /// input_count * ensemble_size + scan_size, in law evaluations.
    pub work: f64,
    pub work_limit: f64,
}

impl std::fmt::Display for GuardReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "q^(nm) = {}^({}x{}) = {} (limit {}); ensemble = {}; \
             work = {} * {} + {} = {} law evaluations (limit {})",
            self.q,
            self.n,
            self.m,
            self.input_count,
            self.input_limit,
            self.ensemble_size,
            self.input_count,
            self.ensemble_size,
            self.scan_size,
            self.work,
            self.work_limit
        )
    }
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("instance too large to enumerate: {0}")]
    TooLarge(GuardReport),
    #[error("field GF({field_q}) does not match params q={params_q}")]
    FieldMismatch { field_q: u32, params_q: u64 },
    #[error("the multiplicative law is error-free; it needs t=0, got t={t}")]
    MmcNeedsZeroT { t: u64 },
    #[error("error rank t={t} exceeds min(n,m)=min({n},{m})")]
    RankOutOfRange { t: u64, n: u64, m: u64 },
    #[error("input distribution has {got} entries, channel has {want} inputs")]
    DistributionLength { got: usize, want: usize },
    #[error("input distribution entry {index} is negative ({value})")]
    DistributionNegative { index: usize, value: f64 },
    #[error("input distribution sums to {sum}, expected 1 within 1e-9")]
    DistributionSum { sum: f64 },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("Blahut-Arimoto did not converge in {iterations} iterations; sandwich gap {gap:.3e} q-ary units")]
    NonConvergence { iterations: u32, gap: f64 },
    #[error("matrix is {got_rows}x{got_cols} over GF({got_q}), table holds {m}-column row spaces over GF({q}) of dimension <= {n}")]
    NotInTable { got_rows: usize, got_cols: usize, got_q: u32, n: usize, m: usize, q: u32 },
    #[error("transition rows malformed: {0}")]
    BadRows(String),
}

fn big_to_f64(x: &BigCount) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

fn space_size(q: u64, cells: u64) -> f64 {
    (q as f64).powi(cells.min(u64::from(u32::MAX)) as i32)
}

/// Matrix whose row-major entries are the base-q digits of `idx`,
/// least-significant digit first.
pub fn matrix_from_index(field: &FieldRef, n: usize, m: usize, idx: u64) -> Matrix {
    let q = field.q() as u64;
    let mut cur = idx;
    let mut mat = Matrix::zero(field.clone(), n, m);
    for r in 0..n {
        for c in 0..m {
            mat.set(r, c, Fe((cur % q) as u16));
            cur /= q;
        }
    }
    mat
}

/// Inverse of [`matrix_from_index`].
pub fn matrix_to_index(mat: &Matrix) -> u64 {
    let q = mat.field().q() as u64;
    let mut idx = 0u64;
    for &e in mat.data().iter().rev() {
        idx = idx * q + e.0 as u64;
    }
    idx
}

/// An exactly materialized finite channel: for every input matrix X the
/// sparse row of output counts over a common denominator (the hidden-state
/// ensemble size), so p(Y|X) = count / ensemble exactly.
#[derive(Debug, Clone)]
pub struct DiscreteChannel {
    field: FieldRef,
    params: ChannelParams,
    law: CapacityLaw,
    inputs: usize,
    ensemble: u64,
    /// rows[x] = sorted (output index, count) with counts summing to `ensemble`.
    rows: Vec<Vec<(u32, u64)>>,
}

impl DiscreteChannel {
    /// Assemble a channel from parts, validating row-stochasticity.
    pub fn from_parts(
        field: FieldRef,
        params: ChannelParams,
        law: CapacityLaw,
        ensemble: u64,
        rows: Vec<Vec<(u32, u64)>>,
    ) -> Result<DiscreteChannel, OracleError> {
        let inputs = space_size(params.q, params.n * params.m);
        if inputs > MAX_ENUM_STATES {
            return Err(OracleError::BadRows(format!(
                "alphabet q^(nm) = {inputs} exceeds {MAX_ENUM_STATES}"
            )));
        }
        let inputs = inputs as usize;
        if rows.len() != inputs {
            return Err(OracleError::BadRows(format!(
                "{} rows for {} inputs",
                rows.len(),
                inputs
            )));
        }
        if ensemble == 0 {
            return Err(OracleError::BadRows("empty ensemble".into()));
        }
        for (x, row) in rows.iter().enumerate() {
            let mut sum = 0u64;
            let mut last: Option<u32> = None;
            for &(y, c) in row {
                if (y as usize) >= inputs {
                    return Err(OracleError::BadRows(format!(
                        "row {x} references output {y} beyond alphabet"
                    )));
                }
                if c == 0 {
                    return Err(OracleError::BadRows(format!("row {x} has a zero count")));
                }
                if last.is_some_and(|p| p >= y) {
                    return Err(OracleError::BadRows(format!("row {x} not sorted")));
                }
                last = Some(y);
                sum += c;
            }
            if sum != ensemble {
                return Err(OracleError::BadRows(format!(
                    "row {x} sums to {sum}, ensemble is {ensemble}"
                )));
            }
        }
        Ok(DiscreteChannel { field, params, law, inputs, ensemble, rows })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn params(&self) -> &ChannelParams {
        &self.params
    }

    pub fn law(&self) -> CapacityLaw {
        self.law
    }

    /// Input alphabet size |X| = q^{nm}.
    pub fn num_inputs(&self) -> usize {
        self.inputs
    }

    /// Output alphabet size |Y| (same index space as the inputs).
    pub fn num_outputs(&self) -> usize {
        self.inputs
    }

    /// Common denominator of every transition probability.
    pub fn ensemble_size(&self) -> u64 {
        self.ensemble
    }

    /// Count of nonzero transition entries.
    pub fn nonzero_entries(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Sparse transition row for input index `x`.
    pub fn row(&self, x: usize) -> &[(u32, u64)] {
        &self.rows[x]
    }

    /// Exact transition probability p(y|x).
    pub fn transition(&self, x: usize, y: usize) -> f64 {
        match self.rows[x].binary_search_by_key(&(y as u32), |&(o, _)| o) {
            Ok(pos) => self.rows[x][pos].1 as f64 / self.ensemble as f64,
            Err(_) => 0.0,
        }
    }

    /// The input matrix at index `x`.
    pub fn input_matrix(&self, x: usize) -> Matrix {
        matrix_from_index(&self.field, self.params.n as usize, self.params.m as usize, x as u64)
    }
}

fn guard(
    law: CapacityLaw,
    params: &ChannelParams,
) -> Result<(f64, f64, f64), OracleError> {
    let (q, n, m, t) = (params.q, params.n, params.m, params.t);
    let input_count = space_size(q, n * m);
    let (ensemble, scan) = match law {
        CapacityLaw::Mmc => (
            big_to_f64(&count_full_rank(n, n, q).map_err(count_bug)?),
            space_size(q, n * n),
        ),
        CapacityLaw::Amc => (
            big_to_f64(&count_rank_matrices(n, m, t, q).map_err(count_bug)?),
            space_size(q, n * m),
        ),
        CapacityLaw::Ammc => {
            let gl = big_to_f64(&count_full_rank(n, n, q).map_err(count_bug)?);
            let tt = big_to_f64(&count_rank_matrices(n, m, t, q).map_err(count_bug)?);
            (gl * tt, space_size(q, n * n) + space_size(q, n * m))
        }
    };
    let work = input_count * ensemble + scan;
    if input_count > MAX_ENUM_STATES || work > MAX_ENUM_WORK {
        return Err(OracleError::TooLarge(GuardReport {
            q,
            n,
            m,
            t,
            input_count,
            input_limit: MAX_ENUM_STATES,
            ensemble_size: ensemble,
            scan_size: scan,
            work,
            work_limit: MAX_ENUM_WORK,
        }));
    }
    Ok((input_count, ensemble, scan))
}

fn count_bug(e: crate::counting::CountError) -> OracleError {
    // Parameters are validated before counting; surface anything else loudly.
    OracleError::BadRows(format!("internal counting failure: {e}"))
}

fn collect_matrices_of_rank(
    field: &FieldRef,
    n: usize,
    m: usize,
    rank: usize,
) -> Vec<Matrix> {
    let q = field.q() as u64;
    let total = (q as u128).pow((n * m) as u32) as u64;
    (0..total)
        .map(|idx| matrix_from_index(field, n, m, idx))
        .filter(|mat| mat.rank() == rank)
        .collect()
}

/// Materialize the exact transition matrix of a channel law by enumerating
/// every hidden-state realization for every input.
pub fn enumerate_channel(
    law: CapacityLaw,
    field: &FieldRef,
    params: &ChannelParams,
) -> Result<DiscreteChannel, OracleError> {
    if field.q() as u64 != params.q {
        return Err(OracleError::FieldMismatch { field_q: field.q(), params_q: params.q });
    }
    let (n, m, t) = (params.n as usize, params.m as usize, params.t as usize);
    match law {
        CapacityLaw::Mmc if t != 0 => {
            return Err(OracleError::MmcNeedsZeroT { t: params.t });
        }
        CapacityLaw::Amc | CapacityLaw::Ammc if t > n.min(m) => {
            return Err(OracleError::RankOutOfRange { t: params.t, n: params.n, m: params.m });
        }
        _ => {}
    }
    let (input_count, _, _) = guard(law, params)?;
    let inputs = input_count as usize;

    let transfers: Vec<Matrix> = match law {
        CapacityLaw::Mmc | CapacityLaw::Ammc => collect_matrices_of_rank(field, n, n, n),
        CapacityLaw::Amc => Vec::new(),
    };
    let errors: Vec<Matrix> = match law {
        CapacityLaw::Amc | CapacityLaw::Ammc => collect_matrices_of_rank(field, n, m, t),
        CapacityLaw::Mmc => Vec::new(),
    };
    let ensemble = match law {
        CapacityLaw::Mmc => transfers.len() as u64,
        CapacityLaw::Amc => errors.len() as u64,
        CapacityLaw::Ammc => (transfers.len() * errors.len()) as u64,
    };

    let rows: Vec<Vec<(u32, u64)>> = (0..inputs)
        .into_par_iter()
        .map(|xi| {
            let x = matrix_from_index(field, n, m, xi as u64);
            let mut scratch = vec![0u64; inputs];
            let mut tally = |y: &Matrix| scratch[matrix_to_index(y) as usize] += 1;
            match law {
                CapacityLaw::Mmc => {
                    for a in &transfers {
                        tally(&a.mul(&x).expect("shapes fixed by construction"));
                    }
                }
                CapacityLaw::Amc => {
                    for w in &errors {
                        tally(&x.add(w).expect("shapes fixed by construction"));
                    }
                }
                CapacityLaw::Ammc => {
                    for w in &errors {
                        let s = x.add(w).expect("shapes fixed by construction");
                        for a in &transfers {
                            tally(&a.mul(&s).expect("shapes fixed by construction"));
                        }
                    }
                }
            }
            scratch
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(y, &c)| (y as u32, c))
                .collect()
        })
        .collect();

    DiscreteChannel::from_parts(field.clone(), *params, law, ensemble, rows)
}

fn validate_distribution(ch: &DiscreteChannel, p_x: &[f64]) -> Result<(), OracleError> {
    if p_x.len() != ch.inputs {
        return Err(OracleError::DistributionLength { got: p_x.len(), want: ch.inputs });
    }
    let mut sum = 0.0;
    for (index, &value) in p_x.iter().enumerate() {
        if value < 0.0 {
            return Err(OracleError::DistributionNegative { index, value });
        }
        sum += value;
    }
    if (sum - 1.0).abs() > 1e-9 {
        return Err(OracleError::DistributionSum { sum });
    }
    Ok(())
}

/// Output distribution q_y = sum_x p_x p(y|x), and per-input relative
/// entropies D_x = D(p(.|x) || q) in nats.
fn ba_step(ch: &DiscreteChannel, p_x: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let ens = ch.ensemble as f64;
    let mut q_y = vec![0.0f64; ch.inputs];
    for (x, row) in ch.rows.iter().enumerate() {
        if p_x[x] == 0.0 {
            continue;
        }
        for &(y, c) in row {
            q_y[y as usize] += p_x[x] * (c as f64 / ens);
        }
    }
    let d_x: Vec<f64> = ch
        .rows
        .iter()
        .enumerate()
        .map(|(x, row)| {
            if p_x[x] == 0.0 {
                // Convention for unused inputs; BA never zeroes a weight, so
                // this only matters for mutual_information at sparse p_x.
                return row
                    .iter()
                    .map(|&(y, c)| {
                        let p = c as f64 / ens;
                        p * (p / q_y[y as usize].max(f64::MIN_POSITIVE)).ln()
                    })
                    .sum();
            }
            row.iter()
                .map(|&(y, c)| {
                    let p = c as f64 / ens;
                    p * (p / q_y[y as usize]).ln()
                })
                .sum()
        })
        .collect();
    (q_y, d_x)
}

/// Exact mutual information I(X;Y) in q-ary units for a given input law.
pub fn mutual_information(ch: &DiscreteChannel, p_x: &[f64]) -> Result<f64, OracleError> {
    validate_distribution(ch, p_x)?;
    let (_, d_x) = ba_step(ch, p_x);
    let nats: f64 = p_x.iter().zip(&d_x).map(|(&p, &d)| if p > 0.0 { p * d } else { 0.0 }).sum();
    Ok(nats / (ch.params.q as f64).ln())
}

/// Blahut-Arimoto output: the capacity estimate with its lower/upper
/// sandwich (all q-ary units) and the optimizing input distribution.
#[derive(Debug, Clone, Serialize)]
pub struct BaResult {
    pub capacity: f64,
    pub lower: f64,
    pub upper: f64,
    pub iterations: u32,
    #[serde(skip)]
    pub p_x: Vec<f64>,
}

/// Alternating-optimization channel capacity, started from the uniform
/// input distribution. Stops when the standard sandwich
/// max_x D_x - sum_x p_x D_x pins the capacity within `tolerance` q-ary
/// units; convexity guarantees eventual convergence.
pub fn blahut_arimoto(
    ch: &DiscreteChannel,
    tolerance: f64,
    max_iters: u32,
) -> Result<BaResult, OracleError> {
    if !(tolerance > 0.0) {
        return Err(OracleError::BadTolerance(tolerance));
    }
    let ln_q = (ch.params.q as f64).ln();
    let mut p_x = vec![1.0 / ch.inputs as f64; ch.inputs];
    let mut gap = f64::INFINITY;
    for iter in 1..=max_iters {
        let (_, d_x) = ba_step(ch, &p_x);
        let lower: f64 = p_x.iter().zip(&d_x).map(|(&p, &d)| p * d).sum();
        let upper: f64 = d_x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        gap = upper - lower;
        if gap <= tolerance * ln_q {
            return Ok(BaResult {
                capacity: lower / ln_q,
                lower: lower / ln_q,
                upper: upper / ln_q,
                iterations: iter,
                p_x,
            });
        }
        let mut norm = 0.0;
        for (p, &d) in p_x.iter_mut().zip(&d_x) {
            *p *= d.exp();
            norm += *p;
        }
        for p in &mut p_x {
            *p /= norm;
        }
    }
    Err(OracleError::NonConvergence { iterations: max_iters, gap: gap / ln_q })
}

/// One row-space equivalence class: the canonical reduced-row-echelon
/// representative (zero-padded to n rows) and every member's matrix index.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub representative: Matrix,
    pub members: Vec<u32>,
}

/// All of GF(q)^{n x m} partitioned into row-space orbits, keyed by the
/// trimmed RRE basis of the row space.
#[derive(Debug, Clone)]
pub struct OrbitTable {
    field: FieldRef,
    n: usize,
    m: usize,
    orbits: Vec<Orbit>,
    lookup: HashMap<Vec<u16>, u32>,
}

fn rowspace_key(mat: &Matrix) -> Vec<u16> {
    let red = mat.rref();
    red.matrix.data()[..red.rank * mat.cols()].iter().map(|e| e.0).collect()
}

/// Enumerate all q^{nm} matrices and group them by row space.
pub fn build_orbit_table(field: &FieldRef, n: u64, m: u64) -> Result<OrbitTable, OracleError> {
    let q = field.q() as u64;
    let input_count = space_size(q, n * m);
    if input_count > MAX_ENUM_STATES {
        return Err(OracleError::TooLarge(GuardReport {
            q,
            n,
            m,
            t: 0,
            input_count,
            input_limit: MAX_ENUM_STATES,
            ensemble_size: 1.0,
            scan_size: input_count,
            work: 2.0 * input_count,
            work_limit: MAX_ENUM_WORK,
        }));
    }
    let (n, m) = (n as usize, m as usize);
    let mut orbits: Vec<Orbit> = Vec::new();
    let mut lookup: HashMap<Vec<u16>, u32> = HashMap::new();
    for idx in 0..input_count as u64 {
        let mat = matrix_from_index(field, n, m, idx);
        let red = mat.rref();
        let key: Vec<u16> =
            red.matrix.data()[..red.rank * m].iter().map(|e| e.0).collect();
        let id = *lookup.entry(key).or_insert_with(|| {
            orbits.push(Orbit { representative: red.matrix.clone(), members: Vec::new() });
            (orbits.len() - 1) as u32
        });
        orbits[id as usize].members.push(idx as u32);
    }
    Ok(OrbitTable { field: field.clone(), n, m, orbits, lookup })
}

impl OrbitTable {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    /// Expected orbit count sum_{k<=min(n,m)} [m choose k]_q, from the
    /// counting formulas rather than the table itself.
    pub fn expected_orbit_count(&self) -> BigCount {
        let q = self.field.q() as u64;
        let mut total = BigCount::from(0u32);
        for k in 0..=(self.n.min(self.m) as u64) {
            total += gaussian_coefficient(self.m as u64, k, q).expect("k <= m by loop bound");
        }
        total
    }

    /// Orbit id of any matrix over the same field with `m` columns and row
    /// rank at most `n` (its row space determines the orbit).
    pub fn orbit_of(&self, mat: &Matrix) -> Result<usize, OracleError> {
        let key = rowspace_key(mat);
        if mat.cols() == self.m && mat.field().same(&self.field) {
            if let Some(&id) = self.lookup.get(&key) {
                return Ok(id as usize);
            }
        }
        Err(OracleError::NotInTable {
            got_rows: mat.rows(),
            got_cols: mat.cols(),
            got_q: mat.field().q(),
            n: self.n,
            m: self.m,
            q: self.field.q(),
        })
    }
}

/// One codeword per row-space orbit: the canonical representative,
/// zero-padded to n rows. Over the multiplicative channel these are
/// zero-error decodable by row-space matching.
pub fn mmc_capacity_code(field: &FieldRef, n: u64, m: u64) -> Result<Vec<Matrix>, OracleError> {
    let table = build_orbit_table(field, n, m)?;
    Ok(table.orbits.iter().map(|o| o.representative.clone()).collect())
}

/// Zero-error decoder for [`mmc_capacity_code`]: matches the received row
/// space against each codeword's. Returns the codeword index, or None for a
/// row space outside the codebook.
pub fn mmc_decode_codeword(code: &[Matrix], y: &Matrix) -> Option<usize> {
    let key = rowspace_key(y);
    code.iter().position(|cw| rowspace_key(cw) == key)
}
