//! The input language: declarations of charts, tensors, Poisson structures
//! and Lie algebra data, followed by commands that compute or check things.
//!
//! ```text
//! chart M(x, y);
//! mv L : 2 on M = x^2 * @x^@y;
//! jacobi L;
//! ```

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod report;
pub mod runner;
pub mod scope;
pub mod verbs;

pub use ast::{Expr, Script, Stmt};
pub use parser::{parse, parse_expr, parse_in, parse_syntax};
pub use report::{Entry, Report, Verdict};
pub use runner::{run_source, Failure, Session};
