pub mod cavity;
pub mod cli;
pub mod constants;
pub mod detection;
pub mod error;
pub mod material;
pub mod membrane;
pub mod oracle;
pub mod reproduction;
pub mod specfun;

pub use error::{Error, Result};
