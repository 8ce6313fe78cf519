//! Command-line front end: the ordinal expression language and the
//! `dilator` subcommands.

pub mod app;
pub mod expr;

pub use app::{run, Outcome};
pub use expr::{parse_expr, parse_ordinal, Expr, ParseError};
