//! Fact-versus-myth classification of child-development statements.

pub mod bench;
pub mod classify;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod evaluate;
pub mod experiment;
pub mod pipeline;
pub mod rng;
pub mod textprep;
pub mod validate;
pub mod vectorize;

pub use error::{Error, Result};
