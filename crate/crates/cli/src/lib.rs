//! Batch front end: job files in, JSON out.

pub mod job;
pub mod run;

pub use dmod_core::text::render;
pub use job::{parse, Command, JobFile, JobOptions};
pub use run::{run, Outcome, Overrides, Status};
