//! Exact arithmetic: Gaussian-rational coefficients, sparse multivariate
//! polynomials in graded-lex order, and reduced rational functions.

mod coefficient;
pub mod gcd;
mod heugcd;
mod limits;
pub mod linalg;
mod polynomial;
mod ratfun;
pub mod text;

pub use coefficient::Coefficient;
pub use gcd::{gcd, lcm, squarefree_part};
pub use limits::{set_term_ceiling, term_ceiling, DEFAULT_TERM_CEILING, TERM_CEILING_ENV};
pub use polynomial::{Monomial, Polynomial};
pub use ratfun::RationalFunction;
