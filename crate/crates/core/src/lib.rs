//! Exact symbolic engine for bicovariant differential calculi.
//!
//! The crate builds quantum tangent spaces on `U_q(su_2)` from central
//! elements, calculi on ℝ and ℝ² from a generator function `c(p)`, and runs
//! gauge theory (curvature, gauge transformations, covariant derivatives,
//! flatness) over those calculi with exact rational-function arithmetic.

pub mod scalars;
pub mod linalg;
pub mod uqsu2;
pub mod rn;
pub mod gauge;
pub mod parse;
pub mod report;
pub mod random;
pub mod suites;

pub use scalars::{RationalFunction, Scalar, ScalarError, Var};
