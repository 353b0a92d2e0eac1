pub mod error;
pub mod algebra;
pub mod classify;
pub mod complex;
pub mod field;
pub mod functors;
pub mod spec;

pub use error::{Error, Result};

#[cfg(test)]
pub(crate) mod fixtures;
