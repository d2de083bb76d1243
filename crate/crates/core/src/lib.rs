//! SO(3) Turaev-Viro invariants `TV_r(M)` at `q = e^{2πi/r}` for odd `r`,
//! computed from face-gluing data of closed and ideal triangulations.
//!
//! Fast paths run in `f64` log-domain arithmetic. The literal formulas are
//! generic over [`Real`], so they also run in `f32` or in extended precision
//! ([`BigReal`]); the state sum switches to extended precision on its own when
//! the alternating sum cancels too heavily for doubles.

pub mod appendix;
pub mod asymptotics;
pub mod complexes;
pub mod error;
pub mod lobachevsky;
pub mod qarith;
pub mod real;
pub mod signed_log;
pub mod sixj;
pub mod statesum;

pub use error::{Error, Result};
pub use qarith::{BracketTable, FactorialTable, Level};
pub use real::{BigReal, Complex, Real};
pub use signed_log::{LogSum, SignedLog};

/// Log-domain value used by the fast paths.
pub type SignedLogValue = SignedLog<f64>;
pub type BracketTable64 = BracketTable<f64>;
pub type OracleBracketTable = BracketTable<BigReal>;
