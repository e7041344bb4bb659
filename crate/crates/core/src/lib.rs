//! Exact verification of the multivariable Chevalley restriction theorem on
//! small classical symmetric pairs.

pub mod error;
pub mod exactlin;
pub mod invring;
pub mod liealg;
pub mod par;
pub mod reps;
pub mod restrict;
pub mod rootsys;
pub mod sympair;

pub use error::{Error, Result};
