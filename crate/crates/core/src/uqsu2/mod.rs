//! `U_q(su_2)` in PBW normal form with its Hopf structure, the q-Casimir
//! tangent-space construction and the braided Lie bracket table.

mod bralie;
mod casimir;
mod element;
mod hopf;
mod tangent;
mod tensor;

pub use bralie::{
    braided_lie_basis, braided_lie_space, braided_lie_table, bracket, expected_bracket, express_in, BasisChange,
    BracketEntry,
};
pub use casimir::{
    casimir, casimir_c, casimir_coproduct_closed_form, is_central, q_limit_diagnostic, reference_casimir_basis,
    tangent_space_from_central, LimitSample, SUQ2_KER_EPS,
};
pub use element::{PbwMonomial, UqElement};
pub use hopf::{
    adjoint, antipode, coproduct, coproduct_on_leg, counit, fundamental_rep, fundamental_rep_monomial, Matrix2,
};
pub use tangent::{check_tangent_space, generators, TangentSpace, TangentSpaceCheck};
pub use tensor::TensorElement;

use thiserror::Error;

use crate::scalars::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UqError {
    #[error("element is not central: {0}")]
    NotCentral(String),
    #[error("tangent space has no element labelled {0}")]
    MissingElement(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
