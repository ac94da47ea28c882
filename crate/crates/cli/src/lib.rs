//! File formats, JSON reports and the command-line front end of the
//! independent-set counter.

pub mod app;
pub mod format;
pub mod report;
