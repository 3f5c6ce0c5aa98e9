//! Executable channel laws. A [`Channel`] binds a field, the (q, n, m, t)
//! parameters, one of the four laws, and the sampling modes for the transfer
//! matrix A and the error component; [`Channel::transmit`] then maps an input
//! X and an RNG to an output Y, recording all hidden state along the way.
//!
//! Laws:
//!   MMC      Y = A X            (A uniform nonsingular, no errors)
//!   AMC      Y = X + W          (A pinned to identity, rank(W) = t)
//!   AMMC     Y = A (X + W)
//!   GENERAL  Y = A X + D Z      (D n x t, Z t x m, both full rank)
//!
//! Hidden state (A, W, B, Z, D, realized rank) exists for test oracles and
//! distribution checks; decoders must never read it.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::capacity::ChannelParams;
use crate::gf::FieldRef;
use crate::mat::{MatError, Matrix};
use crate::sampling::{
    draw_rank, sample_full_rank, sample_nonsingular, validate_rank_pmf, DetRng, SampleError,
};

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("channel field GF({expected}) does not match input field GF({got})")]
    FieldMismatch { expected: u32, got: u32 },
    #[error("input is {rows}x{cols}, channel expects {n}x{m}")]
    InputShape { rows: usize, cols: usize, n: usize, m: usize },
    #[error("channel field GF({field_q}) does not match params q={params_q}")]
    ParamsFieldMismatch { field_q: u32, params_q: u64 },
    #[error("error rank t={t} exceeds min(n={n}, m={m})")]
    RankOutOfRange { t: u64, n: u64, m: u64 },
    #[error("the multiplicative channel carries no error component; t must be 0, got {t}")]
    MmcNeedsZeroT { t: u64 },
    #[error("variable-rank errors are defined for the additive laws only, not {law}")]
    VariableRankUnsupported { law: Law },
    #[error("the additive channel fixes A to the identity")]
    AmcNeedsIdentityA,
    #[error("constant transfer matrix must be {n}x{n} over GF({q}), got {rows}x{cols} over GF({got_q})")]
    BadConstantAShape { n: usize, q: u32, rows: usize, cols: usize, got_q: u32 },
    #[error("constant transfer matrix is singular")]
    ConstantASingular,
    #[error("sampler hook returned a bad matrix: {0}")]
    HookOutput(String),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Mat(#[from] MatError),
}

/// The four channel laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    Mmc,
    Amc,
    Ammc,
    General,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Mmc => "MMC",
            Law::Amc => "AMC",
            Law::Ammc => "AMMC",
            Law::General => "GENERAL",
        };
        f.write_str(s)
    }
}

/// How the error rank behaves: pinned at t, or drawn per transmission from a
/// pmf over 0..=t.
#[derive(Debug, Clone)]
pub enum RankMode {
    Fixed,
    Variable(Vec<f64>),
}

type ASampler = Arc<dyn Fn(&mut DetRng) -> Matrix + Send + Sync>;
type ZSampler = Arc<dyn Fn(&mut DetRng, usize) -> Matrix + Send + Sync>;
type JointAdSampler = Arc<dyn Fn(&mut DetRng) -> (Matrix, Matrix) + Send + Sync>;

/// How the transfer matrix A is produced.
#[derive(Clone)]
pub enum AMode {
    UniformNonsingular,
    Constant(Matrix),
    /// Caller-supplied distribution; output is validated (n x n, nonsingular).
    Hook(ASampler),
}

impl fmt::Debug for AMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AMode::UniformNonsingular => write!(f, "UniformNonsingular"),
            AMode::Constant(a) => write!(f, "Constant({}x{})", a.rows(), a.cols()),
            AMode::Hook(_) => write!(f, "Hook(..)"),
        }
    }
}

/// How the error row-content Z is produced (given the realized rank r,
/// a full-row-rank r x m matrix).
#[derive(Clone)]
pub enum ZMode {
    UniformFullRank,
    /// Caller-supplied distribution; output is validated (r x m, rank r).
    Hook(ZSampler),
}

impl fmt::Debug for ZMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZMode::UniformFullRank => write!(f, "UniformFullRank"),
            ZMode::Hook(_) => write!(f, "Hook(..)"),
        }
    }
}

/// Joint (A, D) sampler for the general law with dependent transfer and
/// error-placement matrices.
#[derive(Clone)]
pub enum JointAdMode {
    Independent,
    Hook(JointAdSampler),
}

impl fmt::Debug for JointAdMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JointAdMode::Independent => write!(f, "Independent"),
            JointAdMode::Hook(_) => write!(f, "Hook(..)"),
        }
    }
}

/// Everything the channel measured while producing one output. Test-only by
/// convention: decoding paths must not read any of it.
#[derive(Debug, Clone)]
pub struct HiddenState {
    pub a: Option<Matrix>,
    pub w: Option<Matrix>,
    pub b: Option<Matrix>,
    pub z: Option<Matrix>,
    pub d: Option<Matrix>,
    /// rank of the realized error component (0 for the MMC).
    pub realized_rank: usize,
}

/// One use of the channel: input, output, and the hidden state behind it.
#[derive(Debug, Clone)]
pub struct TransmitRecord {
    pub x: Matrix,
    pub y: Matrix,
    pub hidden: HiddenState,
}

#[derive(Debug, Clone)]
pub struct Channel {
    field: FieldRef,
    params: ChannelParams,
    law: Law,
    rank_mode: RankMode,
    a_mode: AMode,
    z_mode: ZMode,
    joint_ad: JointAdMode,
}

impl Channel {
    /// Fully general constructor; the convenience constructors below cover
    /// the common cases. Mode combinations are validated here once so that
    /// transmit stays cheap.
    pub fn new(
        field: FieldRef,
        params: ChannelParams,
        law: Law,
        rank_mode: RankMode,
        a_mode: AMode,
        z_mode: ZMode,
        joint_ad: JointAdMode,
    ) -> Result<Channel, ChannelError> {
        if field.q() as u64 != params.q {
            return Err(ChannelError::ParamsFieldMismatch {
                field_q: field.q(),
                params_q: params.q,
            });
        }
        let (n, m, t) = (params.n as usize, params.m as usize, params.t as usize);
        match law {
            Law::Mmc => {
                if t != 0 {
                    return Err(ChannelError::MmcNeedsZeroT { t: params.t });
                }
                if matches!(rank_mode, RankMode::Variable(_)) {
                    return Err(ChannelError::VariableRankUnsupported { law });
                }
            }
            Law::Amc => {
                // The additive law has no transfer matrix; represent that as
                // a pinned identity and reject anything else.
                match &a_mode {
                    AMode::Constant(a) if *a == Matrix::identity(field.clone(), n) => {}
                    _ => return Err(ChannelError::AmcNeedsIdentityA),
                }
            }
            Law::Ammc => {}
            Law::General => {
                if matches!(rank_mode, RankMode::Variable(_)) {
                    return Err(ChannelError::VariableRankUnsupported { law });
                }
            }
        }
        if law != Law::Mmc && t > n.min(m) {
            return Err(ChannelError::RankOutOfRange { t: params.t, n: params.n, m: params.m });
        }
        if let RankMode::Variable(pmf) = &rank_mode {
            validate_rank_pmf(pmf, n, m)?;
        }
        if let AMode::Constant(a) = &a_mode {
            if !a.field().same(&field) || a.rows() != n || a.cols() != n {
                return Err(ChannelError::BadConstantAShape {
                    n,
                    q: field.q(),
                    rows: a.rows(),
                    cols: a.cols(),
                    got_q: a.field().q(),
                });
            }
            if a.rank() != n {
                return Err(ChannelError::ConstantASingular);
            }
        }
        Ok(Channel { field, params, law, rank_mode, a_mode, z_mode, joint_ad })
    }

    /// Multiplicative channel Y = AX with uniform nonsingular A.
    pub fn mmc(field: FieldRef, params: ChannelParams) -> Result<Channel, ChannelError> {
        Channel::new(
            field,
            params,
            Law::Mmc,
            RankMode::Fixed,
            AMode::UniformNonsingular,
            ZMode::UniformFullRank,
            JointAdMode::Independent,
        )
    }

    /// Additive channel Y = X + W.
    pub fn amc(
        field: FieldRef,
        params: ChannelParams,
        rank_mode: RankMode,
    ) -> Result<Channel, ChannelError> {
        let identity = Matrix::identity(field.clone(), params.n as usize);
        Channel::new(
            field,
            params,
            Law::Amc,
            rank_mode,
            AMode::Constant(identity),
            ZMode::UniformFullRank,
            JointAdMode::Independent,
        )
    }

    /// Combined channel Y = A(X + W) with uniform nonsingular A.
    pub fn ammc(
        field: FieldRef,
        params: ChannelParams,
        rank_mode: RankMode,
    ) -> Result<Channel, ChannelError> {
        Channel::new(
            field,
            params,
            Law::Ammc,
            rank_mode,
            AMode::UniformNonsingular,
            ZMode::UniformFullRank,
            JointAdMode::Independent,
        )
    }

    /// General law Y = AX + DZ with independent uniform components.
    pub fn general(field: FieldRef, params: ChannelParams) -> Result<Channel, ChannelError> {
        Channel::new(
            field,
            params,
            Law::General,
            RankMode::Fixed,
            AMode::UniformNonsingular,
            ZMode::UniformFullRank,
            JointAdMode::Independent,
        )
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn params(&self) -> &ChannelParams {
        &self.params
    }

    pub fn law(&self) -> Law {
        self.law
    }

    fn sample_a(&self, rng: &mut DetRng) -> Result<Matrix, ChannelError> {
        let n = self.params.n as usize;
        match &self.a_mode {
            AMode::UniformNonsingular => Ok(sample_nonsingular(rng, &self.field, n)?),
            AMode::Constant(a) => Ok(a.clone()),
            AMode::Hook(h) => {
                let a = h(rng);
                if !a.field().same(&self.field) || a.rows() != n || a.cols() != n {
                    return Err(ChannelError::HookOutput(format!(
                        "transfer hook produced {}x{} over GF({}), expected {n}x{n} over GF({})",
                        a.rows(),
                        a.cols(),
                        a.field().q(),
                        self.field.q()
                    )));
                }
                if a.rank() != n {
                    return Err(ChannelError::HookOutput("transfer hook produced a singular matrix".into()));
                }
                Ok(a)
            }
        }
    }

    fn sample_z(&self, rng: &mut DetRng, rank: usize) -> Result<Matrix, ChannelError> {
        let m = self.params.m as usize;
        match &self.z_mode {
            ZMode::UniformFullRank => Ok(sample_full_rank(rng, &self.field, rank, m)?),
            ZMode::Hook(h) => {
                let z = h(rng, rank);
                if !z.field().same(&self.field) || z.rows() != rank || z.cols() != m {
                    return Err(ChannelError::HookOutput(format!(
                        "error-content hook produced {}x{}, expected {rank}x{m}",
                        z.rows(),
                        z.cols()
                    )));
                }
                if z.rank() != rank {
                    return Err(ChannelError::HookOutput(
                        "error-content hook produced a row-deficient matrix".into(),
                    ));
                }
                Ok(z)
            }
        }
    }

    fn realized_rank(&self, rng: &mut DetRng) -> usize {
        match &self.rank_mode {
            RankMode::Fixed => self.params.t as usize,
            RankMode::Variable(pmf) => draw_rank(rng, pmf),
        }
    }

    /// Sample the error component W = B Z at the realized rank.
    fn sample_error(
        &self,
        rng: &mut DetRng,
    ) -> Result<(Matrix, Matrix, Matrix, usize), ChannelError> {
        let n = self.params.n as usize;
        let rank = self.realized_rank(rng);
        let b = sample_full_rank(rng, &self.field, n, rank)?;
        let z = self.sample_z(rng, rank)?;
        let w = b.mul(&z)?;
        Ok((w, b, z, rank))
    }

    /// Apply the law once. Hidden state is recorded exactly as sampled.
    pub fn transmit(&self, x: &Matrix, rng: &mut DetRng) -> Result<TransmitRecord, ChannelError> {
        if !x.field().same(&self.field) {
            return Err(ChannelError::FieldMismatch {
                expected: self.field.q(),
                got: x.field().q(),
            });
        }
        let (n, m) = (self.params.n as usize, self.params.m as usize);
        if x.rows() != n || x.cols() != m {
            return Err(ChannelError::InputShape { rows: x.rows(), cols: x.cols(), n, m });
        }

        let mut hidden = HiddenState { a: None, w: None, b: None, z: None, d: None, realized_rank: 0 };
        let y = match self.law {
            Law::Mmc => {
                let a = self.sample_a(rng)?;
                let y = a.mul(x)?;
                hidden.a = Some(a);
                y
            }
            Law::Amc => {
                let (w, b, z, rank) = self.sample_error(rng)?;
                let y = x.add(&w)?;
                hidden.w = Some(w);
                hidden.b = Some(b);
                hidden.z = Some(z);
                hidden.realized_rank = rank;
                y
            }
            Law::Ammc => {
                let a = self.sample_a(rng)?;
                let (w, b, z, rank) = self.sample_error(rng)?;
                let y = a.mul(&x.add(&w)?)?;
                hidden.a = Some(a);
                hidden.w = Some(w);
                hidden.b = Some(b);
                hidden.z = Some(z);
                hidden.realized_rank = rank;
                y
            }
            Law::General => {
                let t = self.params.t as usize;
                let (a, d) = match &self.joint_ad {
                    JointAdMode::Independent => {
                        let a = self.sample_a(rng)?;
                        let d = sample_full_rank(rng, &self.field, n, t)?;
                        (a, d)
                    }
                    JointAdMode::Hook(h) => {
                        let (a, d) = h(rng);
                        if !a.field().same(&self.field)
                            || a.rows() != n
                            || a.cols() != n
                            || a.rank() != n
                        {
                            return Err(ChannelError::HookOutput(
                                "joint hook produced an invalid transfer matrix".into(),
                            ));
                        }
                        if !d.field().same(&self.field)
                            || d.rows() != n
                            || d.cols() != t
                            || d.rank() != t
                        {
                            return Err(ChannelError::HookOutput(
                                "joint hook produced an invalid placement matrix".into(),
                            ));
                        }
                        (a, d)
                    }
                };
                let z = self.sample_z(rng, t)?;
                let y = a.mul(x)?.add(&d.mul(&z)?)?;
                hidden.a = Some(a);
                hidden.d = Some(d);
                hidden.z = Some(z);
                hidden.realized_rank = t;
                y
            }
        };
        Ok(TransmitRecord { x: x.clone(), y, hidden })
    }
}

/// Left source randomization X = T X' with T uniform nonsingular; returns
/// (X, T). Makes the effective transfer matrix uniform regardless of the
/// channel's own A distribution.
pub fn source_randomize_left(
    rng: &mut DetRng,
    x_prime: &Matrix,
) -> Result<(Matrix, Matrix), ChannelError> {
    let t = sample_nonsingular(rng, x_prime.field(), x_prime.rows())?;
    let x = t.mul(x_prime)?;
    Ok((x, t))
}

/// Right source randomization X = X' T with T uniform nonsingular m x m;
/// returns (X, T). Undone at the destination by [`destination_derandomize`].
pub fn source_randomize_right(
    rng: &mut DetRng,
    x_prime: &Matrix,
) -> Result<(Matrix, Matrix), ChannelError> {
    let t = sample_nonsingular(rng, x_prime.field(), x_prime.cols())?;
    let x = x_prime.mul(&t)?;
    Ok((x, t))
}

/// Y' = Y T^{-1}, undoing a right randomization. Any error content Z rides
/// along as Z T^{-1}, which is uniform over full-rank matrices whenever T is.
pub fn destination_derandomize(y: &Matrix, t: &Matrix) -> Result<Matrix, ChannelError> {
    Ok(y.mul(&t.inverse()?)?)
}
