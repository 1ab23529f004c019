//! Concrete partition families and their command-line descriptions.

mod custom;
mod equi;
mod farey;
mod random;
mod spec;
mod spheroid;

pub use custom::{CustomFamily, TailPolicy};
pub use equi::{equi_row, EquiFamily};
pub use farey::{farey_row, FareyFamily};
pub use random::RandomOddFamily;
pub use spec::{BuildOptions, BuiltFamily, FamilySpec};
pub use spheroid::{spheroid_row, SpheroidFamily, DEFAULT_N_MAX, SPECTRAL_ROW_TOL, TRACE_TOL};
