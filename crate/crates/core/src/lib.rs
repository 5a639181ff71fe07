pub mod blaschke;
pub mod cli;
pub mod error;
pub mod generate;
pub mod numerics;
pub mod parametrization;
pub mod pick;
pub mod problem;
pub mod reduction;
pub mod special;

pub use error::{Error, Result};
