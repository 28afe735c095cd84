//! Expression syntax and the `darboux` command line.

pub mod app;
pub mod expr;

pub use app::{run, run_with};
pub use expr::{format_expr, parse_ast, parse_expr, parse_scalar, ExprAst, ParseError};
