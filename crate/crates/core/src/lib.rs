//! Millimeter-wave link engineering: path loss and link budgets, fading
//! bit-error probabilities, a seeded Monte Carlo modem, and distance-domain
//! capacity and coverage curves.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coverage;
pub mod error;
pub mod fading_ber;
pub mod link_budget;
pub mod phy_sim;
pub mod rf_math;

pub use error::{Error, Result};
