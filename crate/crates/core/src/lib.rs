//! Max Unique Coverage: offline greedy algorithms with ratio guarantees, a
//! kernel-based approximation scheme, a subsampled set-streaming engine, an
//! exact oracle and a generator for layered hard instances.

pub mod algorithms;
pub mod error;
pub mod gen;
pub mod hardgen;
pub mod io;
pub mod kernel;
pub mod oracle;
pub mod setsys;
pub mod streaming;
mod util;

pub use error::{Error, Result};
pub use setsys::{harmonic, CoverageProfile, ElementId, FrequencyCounter, SetId, SetSystem, SubCollection};
