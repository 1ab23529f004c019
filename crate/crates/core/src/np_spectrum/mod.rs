//! Neumann–Poincaré eigenvalues of prolate spheroids, the Willmore energy
//! and Weyl coefficient, the inverse shape problem, and a Nyström oracle.

mod nystrom;
mod shape;
mod solve;
mod weyl;

pub use nystrom::{nystrom_oracle, NystromMesh, NystromSpectrum, NYSTROM_NODE_BUDGET};
pub use shape::{np_eigenvalue, ModeEigenvalue, SpectrumTable, SpheroidShape};
pub use solve::{solve_xi0, SolveOutcome, SOLVE_TOL, SPHERE_MARGIN, XI0_CEILING};
pub use weyl::{
    weyl_coefficient, weyl_constant, weyl_report_with_fit, willmore_energy, willmore_energy_scaled, WeylReport,
    EULER_CHARACTERISTIC,
};
