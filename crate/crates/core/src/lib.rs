pub mod algebra;
pub mod error;
pub mod field;
pub mod hecke;
pub mod ray_class;
pub mod units;
pub mod verifier;

pub use error::{Error, Result};
