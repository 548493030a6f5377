//! File formats, verification sweeps and the command-line driver built on
//! [`cyclosum_core`].

pub mod config;
pub mod csv;
mod error;
pub mod ppm;
pub mod svg;
pub mod verify;

pub use cyclosum_core;
pub use error::{Error, Result};
