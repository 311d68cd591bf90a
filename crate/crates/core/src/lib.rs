pub mod catalog_cli;
pub mod contract;
pub mod derive;
pub mod error;
pub mod freealg;
pub mod morphisms;
pub mod presentations;
pub mod report;
pub mod scalars;
pub mod tensor;

pub use error::{Error, Result};
