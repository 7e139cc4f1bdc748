//! Bound states of the d-dimensional Klein-Gordon equation with Coulomb and
//! Kratzer scalar/vector potentials.
//!
//! The crate has two independent routes to every number it produces:
//!
//! * an algebraic route — exact Laurent-polynomial iteration
//!   ([`aim`]) on the factorized radial equation ([`model`]), closed-form
//!   spectra and normalized wavefunctions ([`spectra`]) built on gamma /
//!   confluent-hypergeometric / Bessel-K machinery ([`specfun`]);
//! * a numerical route — two-sided shooting integration, adaptive
//!   quadrature and operator residuals ([`oracle`]) that never touch the
//!   closed forms.
//!
//! The acceptance suite in `tests/` drives both routes against each other.

pub mod aim;
pub mod error;
pub mod laurent;
pub mod model;
pub mod oracle;
mod root;
pub mod specfun;
pub mod spectra;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use model::{
    build_aim_inputs, build_radial, coulomb_exponent, equal_kratzer_exponent, unequal_exponent,
    FactorizationAnsatz, PotentialCase, PotentialParams, ProblemSpec, RadialEquation,
};
pub use spectra::{BoundState, Branch, WaveFamily};
