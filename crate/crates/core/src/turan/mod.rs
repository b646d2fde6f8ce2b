//! Turán-type expressions for `J_ν`: evaluation, identities and sweeps.

mod delta;
mod det;
mod extrema;
pub(crate) mod identity;
mod ineq;
mod jensen;

pub(crate) use delta::jx;
pub use delta::{delta, delta_prime, phi, phi_prime, phi_series};
pub use extrema::{conjecture_explore, extrema, monotonicity_threshold, ConjectureRecord, Extrema, MonotonicityScan};
pub use det::{hankel_det_jtilde, turan_det};
pub use identity::{identity_residual, IdentityId};
pub use ineq::{
    check_inequality, check_inequality_lenient, natural_order_suite, tolerance, InequalityId, InequalityReport,
    PointMargin, Violation, YDomain,
};
pub use jensen::{jensen_poly, JensenPoly, MAX_JENSEN_DEGREE};
