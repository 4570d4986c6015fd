//! File formats, bundled scenarios, and run orchestration behind the
//! `cordon` command line. The simulation itself lives in `cordon-core`;
//! this crate owns everything that touches IO: the TOML scenario format,
//! report tables and flat records, line-delimited traces with replay
//! footers, and SVG snapshots.

pub mod batch;
pub mod document;
pub mod error;
pub mod report;
pub mod scenarios;
pub mod snapshot;
pub mod trace;

pub use error::CliError;
