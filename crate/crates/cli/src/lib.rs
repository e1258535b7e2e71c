//! Job loading, report rendering, and suite execution for the `dyndeg`
//! binary.  Exposed as a library so integration tests can drive jobs and
//! suites in-process and compare report bytes.

pub mod job;
pub mod report;
pub mod run;
pub mod suites;
