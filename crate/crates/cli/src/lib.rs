//! Experiment harness for `fracpow-core`: a thread-pool node executor, the
//! field file format, CSV output and the commands behind the `fracpow`
//! binary.

pub mod executor;
pub mod experiments;
pub mod field_io;
pub mod output;

pub use executor::Executor;
