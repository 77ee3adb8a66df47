//! Generalized Cauchy-Schwarz inequality and uncertainty relations.
//!
//! * [`hilbert`]: states, Hermitian operators, expectations and variances.
//! * [`inequalities`]: the standard and generalized Cauchy-Schwarz
//!   inequalities, their optimal multipliers, and the Heisenberg-Robertson,
//!   Robertson-Schroedinger and generalized uncertainty relations.
//! * [`wavepacket`]: minimum-uncertainty Gaussian packets and the modified
//!   two-Gaussian packets on a 1-D grid.
//! * [`io`] and [`cli`]: JSON state/operator files, CSV/JSON reports and the
//!   `check`, `packet` and `modified` commands behind the `gcsu` binary.

pub mod cli;
pub mod error;
pub mod hilbert;
pub mod inequalities;
pub mod io;
pub mod sampling;
pub mod wavepacket;

pub use error::{Error, Result};
pub use hilbert::{HermitianOperator, Moments, StateVector};
pub use inequalities::{InequalityReport, Label};
pub use num_complex::Complex64;
