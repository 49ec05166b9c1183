//! Expression language and command line front end for `surreal-core`.

pub mod ast;
pub mod error;
pub mod eval;
pub mod parser;
pub mod render;

pub use error::{CliError, Result};
pub use eval::{Config, EvalResult, Layer, Payload, Session};
