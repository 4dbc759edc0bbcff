//! Script language, command runner and property suites on top of `arthur-core`.
//!
//! A script declares a group, cuspidal labels, extended multi-segments and
//! Speh factors, then issues commands. [`parser::parse`] resolves every name
//! up front; [`runner::run`] turns each command into a JSON result document.

pub mod encode;
pub mod lexer;
pub mod parser;
pub mod props;
pub mod runner;
pub mod script;

pub use parser::{parse, render_exms};
pub use runner::{render_all, run, ResultDocument, RunOptions, Status};
pub use script::{Command, Diagnostic, Script};
