//! Finite-field matrix channels: exact capacity formulas and bounds,
//! error-trapping codes with one-shot Gauss-Jordan decoding, exhaustive
//! small-instance oracles, and a deterministic Monte Carlo harness.
//!
//! A channel here carries an n x m matrix X over GF(q) and delivers
//! Y = A(X + W) for a square transfer matrix A and a rank-limited additive
//! error W; the multiplicative-only (Y = AX) and additive-only (Y = X + W)
//! special cases get their own laws. See the `examples/` directory for a
//! runnable tour of each capability.

pub mod capacity;
pub mod channel;
pub mod cli;
pub mod codec;
pub mod counting;
pub mod gf;
pub mod mat;
pub mod oracle;
pub mod sampling;
pub mod sim;
pub mod stats;
pub mod textio;

pub use capacity::{CapacityError, CapacityLaw, CapacityReport, ChannelParams};
pub use channel::{Channel, ChannelError, Law, RankMode, TransmitRecord};
pub use codec::{CodeConfig, CodecError, DecodeResult, Outcome, Scheme};
pub use gf::{Fe, Field, FieldRef, GfError};
pub use mat::{MatError, Matrix, Rref};
pub use oracle::{BaResult, DiscreteChannel, GuardReport, OracleError, OrbitTable};
pub use sampling::{DetRng, RankFactorization, SampleError};
pub use sim::{MCEstimate, SimError, SweepRow, SweepSpec};
