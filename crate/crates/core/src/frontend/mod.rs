//! The `.qalg` presentation language: parsing, compilation, printing and
//! validation.

mod lexer;
mod parser;
mod presentation;
mod print;
mod validate;

pub use parser::{parse_expr, parse_map, parse_source, BracketDecl, GenDecl, RelDecl, Source};
pub use presentation::{epsilon, AlgebraPresentation, ColorData, Generator, Kind};
pub use validate::{bracket, validate_presentation, CheckResult, Status, ValidationReport};
