//! Bicovariant calculi on ℝ and ℝ² classified by a generator function `c(p)`.

mod calculus;
mod coord;
mod forms;
mod generator;

pub use calculus::{tangent_space_from_c, BasisVector, CalculusSpec, DerivedElement, Omega2, TangentData};
pub use coord::{coord_var, derivative, nth_derivative, shift, symbol, CoordFunction, DiffOp};
pub use forms::{DisplayForm, GradedForm};
pub use generator::{term_operator, GenTerm, GeneratorFunction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RnError {
    #[error("derivative closure did not stabilize")]
    NonStabilizing,
    #[error("generator uses {needed} momentum variables but the calculus has {nvars}")]
    Arity { needed: usize, nvars: usize },
    #[error("projected translation leaves L: {0}")]
    NotTranslationClosed(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    Degree(String),
}
