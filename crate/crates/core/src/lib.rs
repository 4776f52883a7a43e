pub mod bounds;
pub mod cli;
pub mod error;
pub mod family;
pub mod field;
pub mod hyperbolic;
pub mod trace;

pub use error::{Error, Result};
