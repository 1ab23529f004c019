//! Checks of the decay and summability statements: bracketing tau(p),
//! power-law fits of the enumerated sequence, the gamma-limit probe and
//! windowed infima of `sqrt(j) a_j`.

mod decay;
mod probes;
pub mod report;
mod tau;

pub use decay::{decay_fit, dyadic_points, fit_samples, DecayFit, DEFAULT_J_BUDGET};
pub use probes::{default_gamma_exponents, gamma_limit_probe, gamma_limit_target, liminf_probe, GammaProbe, LiminfWindow};
pub use tau::{tau_bracket, tau_bracket_built, tau_brackets, TauBracket};
