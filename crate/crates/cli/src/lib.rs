//! Command-line front end: argument parsing, config files and file output.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod app;
pub mod config;
pub mod figure;
pub mod output;
pub mod report;
pub mod simulate;

pub use app::{execute, exit_code, Cli};
