//! Ordered monomials, polynomials and the rewrite engine.

mod confluence;
mod engine;
mod expr;
mod monomial;
mod poly;
mod system;
pub mod text;

pub use confluence::{ConfluenceReport, Overlap};
pub use expr::Expr;
pub use monomial::{compact_word, Monomial, VarId, Word};
pub use poly::QPolynomial;
pub use system::{RewriteSystem, Rule, DEFAULT_STEP_BUDGET, STEP_BUDGET_ENV};
