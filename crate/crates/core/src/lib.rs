//! Odd partitions of an interval and their decreasing enumeration, with
//! the spectral and analytic machinery to study how fast the enumerated
//! lengths decay.
//!
//! * [`partition`]: rows, families and the lazy decreasing enumerator.
//! * [`families`]: equi, Farey, spheroid, random and JSON-defined families.
//! * [`specfun`]: Legendre functions on `x > 1`, zeta, quadrature.
//! * [`np_spectrum`]: Neumann–Poincaré eigenvalues of prolate spheroids.
//! * [`analysis`]: tau brackets, decay fits and probes.

// Argument checks are written `!(x > bound)` on purpose so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod exec;
pub mod families;
pub mod np_spectrum;
pub mod numeric;
pub mod partition;
pub mod specfun;

pub use error::{Error, Result};
pub use exec::Execution;
