//! Exact coefficient arithmetic over ℚ(q^{1/2}) and ℚ(λ, μ)(x, y).
//!
//! Every coefficient in the engine is a [`RationalFunction`]: a reduced
//! fraction of integer polynomials in the indeterminates listed in [`Var`].
//! The deformation parameter `q` is the square of `q^{1/2}`, which keeps the
//! fractional powers of `q` inside a purely rational field.

mod poly;
mod ratfunc;

pub use poly::{gcd, FunSymbol, Monomial, Poly, Var};
pub use ratfunc::{Assignment, RationalFunction};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    Pole,
    #[error("evaluation point does not assign every indeterminate")]
    Unassigned,
}

/// Shorthand for the coefficient field element.
pub type Scalar = RationalFunction;
