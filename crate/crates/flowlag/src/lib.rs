//! Command-line tools, file formats and multi-threaded search on top of `flowlag-core`.

pub mod bench;
pub mod cli;
pub mod error;
pub mod format;
pub mod gantt;
pub mod parallel;
pub mod solve;
