//! Problem-file front end for `secohom-core`: parsing, validation, command
//! dispatch and the JSON report.

pub mod error;
pub mod model;
pub mod problem;
pub mod report;
pub mod run;
