//! Hessenbergians and variable-coefficient linear difference equations.

pub mod cli;
pub mod error;
pub mod hessenberg;
pub mod leibnizian;
pub mod matrix;
pub mod nested_sum;
pub mod scalar;
pub mod vclde;

pub use error::{Error, Result};
