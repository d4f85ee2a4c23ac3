//! Free-electron/photon coupling coefficients and their analytical upper bounds.

// `!(x > 0.0)` is used on purpose so NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod materials;
pub mod modes;
pub mod nearfield;
pub mod numerics;
pub mod physics;
pub mod regions;
pub mod scans;
pub mod spectra;
pub mod sweep;

pub use error::{Error, Result};
