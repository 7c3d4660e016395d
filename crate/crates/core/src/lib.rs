//! Exact Duistermaat-Heckman pipeline for the Hilbert-Schmidt separability
//! probability of two-qubit states, with a Monte Carlo cross-check.

pub mod exactmath;
pub mod volumes;
pub mod dh_density;
pub mod sep_integral;
pub mod reference;
pub mod sampling;
pub mod checks;
pub mod cli;
