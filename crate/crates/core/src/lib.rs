pub mod algebra;
pub mod analysis;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod io;
pub mod norms;
pub mod structures;

pub use error::{Error, Result};
