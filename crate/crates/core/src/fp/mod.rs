//! Finitely presented groups.

pub mod parse;
pub mod presentation;
pub mod todd_coxeter;
pub mod word;

pub use parse::{parse_expr, Expr, Macros};
pub use presentation::Presentation;
pub use todd_coxeter::{enumerate_cosets, CosetTable, DEFAULT_MAX_COSETS};
pub use word::Word;
pub mod table3;
pub mod quotient;
pub mod table4;
pub mod completion;
