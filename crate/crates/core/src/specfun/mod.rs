//! Special functions: associated Legendre functions on `x > 1`, the
//! Riemann and Hurwitz zeta functions, and Gauss–Legendre quadrature.

mod legendre;
mod quadrature;
mod zeta;

pub use legendre::{
    legendre_table, miller_start, LegendreColumn, LegendrePair, PrecisionMode, SignedLog, WorkingFloat,
    PRECISION_LOSS_THRESHOLD,
};
pub use quadrature::{gauss_legendre, gauss_on, integrate_adaptive};
pub use zeta::{hurwitz_zeta, tau_bound_regular, tau_zeta_bound, zeta, zeta_regular, EULER_GAMMA};
