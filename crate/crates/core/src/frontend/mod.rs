//! Presentation files (`.lcf`), reports and command dispatch.
//!
//! ```text
//! module g { basis L }
//! bracket { [L, L] = (D + 2*l) L }
//! ```
//!
//! `D` is ∂. A map of arity n uses λ-variables `l` (n = 2) or `l1 … l(n-1)`
//! unless it declares `vars (…)`. Names that are not plain identifiers, or
//! that clash with a variable, are written in double quotes.

pub mod cli;
pub mod explain;
pub mod fixtures;
pub mod lexer;
pub mod parser;
pub mod report;
pub mod spec;

pub use cli::{dispatch, load};
pub use lexer::{ParseError, Span};
pub use report::{FailureRow, Report, Status};
pub use spec::{default_ctx, fmt_value, parse, SpecFile};

#[cfg(test)]
mod tests;
