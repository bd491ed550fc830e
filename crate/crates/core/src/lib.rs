//! Exact computations for families of quadric surfaces over a low-dimensional base.

pub mod error;
pub mod exactalg;
pub mod quadric_family;
pub mod clifford;
pub mod fano_lines;
pub mod homcx;

pub use error::{Error, Result};
