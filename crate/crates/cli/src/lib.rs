//! Library side of the easywg CLI: command dispatch, structured output,
//! and the verification suites (which the acceptance tests drive directly
//! at their full parameters).

pub mod app;
pub mod output;
pub mod verify;
