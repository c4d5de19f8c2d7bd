pub mod census;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod field;
pub mod group;
pub mod io;
pub mod maniplex;
pub mod string_rep;

pub use error::{Error, Result};
