//! Enumeration oracle, command line and output formats on top of
//! `sepcount-core`.

pub mod cli;
pub mod oracle;
pub mod record;

pub use oracle::{EnumerationQuery, Oracle, OracleError, Status, VerificationReport};
pub use record::{OutputRecord, Provenance, Value};
