//! Operational layer around `diamondlab-core`: file formats, seeded random
//! corpora, report rendering, and the threaded verification runners used by
//! the `diamondlab` binary and the acceptance suite.

pub mod corpus;
pub mod formats;
pub mod report;
pub mod runner;
