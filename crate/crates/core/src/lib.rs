//! Exact verification of contact, even-contact and Engel structures on
//! polynomial coordinate charts.

pub mod batch;
pub mod chartgeom;
pub mod cli;
pub mod constructions;
pub mod distribution;
mod error;
pub mod sampling;
pub mod symcore;

pub use error::{Error, Result};
