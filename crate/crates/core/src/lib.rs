//! Exact group-ring engine for SLC-groups with the canonical involution.

pub mod canonical;
pub mod cli;
pub mod coeff;
pub mod decide;
pub mod error;
pub mod groupring;
pub mod groups;
pub mod numtheory;
pub mod witness;

pub use error::{Error, Result};
