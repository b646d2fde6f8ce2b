//! Real-order Bessel functions and numerical certification of Turán-type
//! inequalities for `J_ν`, `Y_ν` and Neumann series built from them.

pub mod bessel;
mod dd;
mod error;
pub mod gamma;
pub mod grid;
pub mod neumann;
pub mod report;
mod tracked;
pub mod turan;
mod types;
pub mod yturan;
pub mod zeros;

pub use error::{Error, Result};
pub use types::{Eval, Method, Order, Precision};
