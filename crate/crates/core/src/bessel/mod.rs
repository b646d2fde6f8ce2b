//! Real-order Bessel functions of the first and second kind, their
//! argument and order derivatives, and entire normalisations.

mod dnu;
pub(crate) mod j;
mod landau;
mod normalized;
pub mod oracle;
pub(crate) mod y;

pub use dnu::bessel_j_dnu;
pub use j::{bessel_j, bessel_j_prime, bessel_j_prime_forms, CLI_MAX_ARG, MAX_ARG, MIN_ORDER};
pub use landau::{airy_ai, landau_bound, landau_constants, landau_margin, LandauConstants};
pub use normalized::{jtilde, normalized_j};
pub use y::{bessel_y, bessel_y_prime};
