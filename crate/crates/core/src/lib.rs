//! Exact computer algebra for the algebraic cobordism ring of involutions.

pub mod algebra;
pub mod error;
pub mod partitions;

pub use error::{Error, Result};
pub mod chow;
pub mod config;
pub mod fgl;
pub mod lazard;
pub mod symbols;

pub use config::Config;
pub mod context;
pub mod equivariant;
pub mod mring;
pub mod verdicts;

pub use context::Context;
