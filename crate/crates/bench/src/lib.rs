//! Benchmarks for budgeted generation.
//!
//! Three policies build the same list-children [`Tree`](costgen::fixtures::Tree):
//! a naive generator that never shrinks its size (and so runs until a step
//! cap stops it), a size-dividing generator, and the budgeted one. The
//! [`growth`] module predicts how often the naive one runs away.

use std::path::PathBuf;

pub mod growth;
pub mod policy;
pub mod report;
pub mod run;
pub mod suites;

pub use growth::{expected_size, GrowthModel, RefCount};
pub use policy::Policy;
pub use report::{emit_csv, read_csv};
pub use run::{run_bench, Outcome, RunRecord};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Policy(String),
    #[error("{0}")]
    Model(String),
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/bench.md")]
    mod bench {}
}
