//! Experiment harness for `gig-core`: sampling, acceptance and timing grids,
//! and statistical self-checks, with CSV or JSON output.

pub mod cli;
pub mod experiments;
pub mod output;
pub mod spec;
