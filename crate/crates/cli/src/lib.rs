//! Command-line front end: builds complexes, runs verification suites and
//! exports documents. Build kinds, suites and export formats are
//! trait objects in a [`registry::Registry`], selected by name.

mod cli;
pub mod document;
pub mod error;
pub mod export;
pub mod params;
pub mod registry;

pub use cli::{configure_threads, run, run_with, ReportDocument, THREADS_ENV};
pub use document::ComplexDocument;
pub use error::{CliError, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
pub use registry::{Construction, Registry, VerificationSuite};
