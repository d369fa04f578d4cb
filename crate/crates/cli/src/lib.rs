//! Spec-file ingestion, fixtures, reports and the `nearsub` command.

pub mod app;
pub mod fixtures;
pub mod report;
pub mod specfile;
