//! The quadratic q-Casimir and the quantum tangent space it generates.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::element::{PbwMonomial, UqElement};
use super::hopf::{coproduct, counit, counit_monomial, fundamental_rep, fundamental_rep_monomial};
use super::tangent::{generators, TangentSpace};
use super::tensor::TensorElement;
use super::UqError;
use crate::scalars::{Assignment, Scalar};

fn q() -> Scalar {
    Scalar::q()
}

fn q_plus_inv() -> Scalar {
    &q() + &Scalar::q_pow(-1)
}

/// `C = q⁻¹K² + qK⁻² + (q − q⁻¹)² X₊X₋`.
pub fn casimir_c() -> UqElement {
    let qm = &q() - &Scalar::q_pow(-1);
    let mut c = UqElement::zero();
    c.add_term(PbwMonomial::new(0, 2, 0), Scalar::q_pow(-1));
    c.add_term(PbwMonomial::new(0, -2, 0), q());
    c.add_term(PbwMonomial::new(1, 0, 1), &qm * &qm);
    c
}

/// Normalization `(q − q⁻²)(q − 1)` of the offset Casimir.
fn cq_normalization() -> Scalar {
    &(&q() - &Scalar::q_pow(-2)) * &(&q() - &Scalar::one())
}

/// Returns `(C, c_q)` with `c_q = (C − (q + q⁻¹)) / ((q − q⁻²)(q − 1))`.
pub fn casimir() -> (UqElement, UqElement) {
    let c = casimir_c();
    let shifted = &c - &UqElement::scalar(q_plus_inv());
    let cq = shifted.scale(&cq_normalization().inv().expect("nonzero"));
    (c, cq)
}

/// The closed form of `ΔC` as a sum of five tensor terms.
pub fn casimir_coproduct_closed_form() -> TensorElement {
    let c = casimir_c();
    let k2 = UqElement::k_pow(2);
    let km2 = UqElement::k_pow(-2);
    let qm = &q() - &Scalar::q_pow(-1);
    let cross = &TensorElement::from_legs(&[
        UqElement::x_plus().multiply(&UqElement::k_pow(-1)),
        UqElement::k().multiply(&UqElement::x_minus()),
    ]) + &TensorElement::from_legs(&[
        UqElement::k_pow(-1).multiply(&UqElement::x_minus()),
        UqElement::x_plus().multiply(&UqElement::k()),
    ]);
    let mut t = &TensorElement::from_legs(&[c.clone(), k2.clone()]) + &TensorElement::from_legs(&[km2.clone(), c]);
    t = &t - &TensorElement::from_legs(&[km2, k2]).scale(&q_plus_inv());
    &t + &cross.scale(&(&qm * &qm))
}

pub fn is_central(u: &UqElement) -> bool {
    generators().iter().all(|(_, g)| u.commutator(g).is_zero())
}

/// Matrix-entry labels of `a − 1, b, c, d − 1 ∈ ker ε ⊂ SU_q(2)`.
pub const SUQ2_KER_EPS: [(&str, usize, usize); 4] = [("a-1", 0, 0), ("b", 0, 1), ("c", 1, 0), ("d-1", 1, 1)];

/// Tangent space from a central element: `x_a = ⟨a, c₍₁₎⟩c₍₂₎ − ⟨a, c⟩` with the
/// pairing `⟨t^i_j − δ^i_j, u⟩ = ρ(u)^i_j − δ^i_j ε(u)`.
pub fn tangent_space_from_central(c: &UqElement) -> Result<TangentSpace, UqError> {
    if !is_central(c) {
        return Err(UqError::NotCentral(c.to_string()));
    }
    let delta = coproduct(c);
    let rho_c = fundamental_rep(c);
    let eps_c = counit(c);
    let mut labels = Vec::new();
    let mut elements = Vec::new();
    for (label, i, j) in SUQ2_KER_EPS {
        let diag = i == j;
        let pair = |m: &PbwMonomial| -> Scalar {
            let r = fundamental_rep_monomial(m).entry(i, j).clone();
            if diag {
                &r - &counit_monomial(m)
            } else {
                r
            }
        };
        let mut x = UqElement::zero();
        for (legs, coeff) in delta.terms() {
            let p = pair(&legs[0]);
            if !p.is_zero() {
                x.add_term(legs[1], &p * coeff);
            }
        }
        let offset = if diag { rho_c.entry(i, j) - &eps_c } else { rho_c.entry(i, j).clone() };
        x.add_term(PbwMonomial::ONE, -offset);
        labels.push(format!("x_{label}"));
        elements.push(x);
    }
    Ok(TangentSpace::new(labels, elements))
}

/// The four elements in closed form, written exactly as the reference formulas
/// before any PBW normalization by the engine.
pub fn reference_casimir_basis() -> Vec<(String, UqElement)> {
    let (_, cq) = casimir();
    let one = UqElement::one();
    let k2_minus_1 = &UqElement::k_pow(2) - &one;
    let q_minus_qm2 = &q() - &Scalar::q_pow(-2);
    let qinv = Scalar::q_pow(-1);
    let xa = &k2_minus_1.scale(&(&(&q() + &Scalar::one()) / &q_minus_qm2)) + &cq.scale(&(&qinv - &Scalar::one()));
    let offdiag = &(&(&Scalar::sqrt_q() * &(&q() + &Scalar::one())) * &(&Scalar::one() - &Scalar::q_pow(-2))) / &q_minus_qm2;
    let xb = UqElement::k().multiply(&UqElement::x_minus()).scale(&offdiag);
    let xc = UqElement::x_plus().multiply(&UqElement::k()).scale(&offdiag);
    let xd_coeff = &(&qinv + &Scalar::one()) / &(&qinv - &Scalar::q_pow(2));
    let xd = &k2_minus_1.scale(&xd_coeff) + &cq.scale(&(&q() - &Scalar::one()));
    vec![
        ("x_a-1".to_string(), xa),
        ("x_b".to_string(), xb),
        ("x_c".to_string(), xc),
        ("x_d-1".to_string(), xd),
    ]
}

/// One sample of the q → 1 diagnostic.
#[derive(Clone, Debug)]
pub struct LimitSample {
    pub k: u32,
    pub q: f64,
    /// Angle in radians between the lines spanned by the two coefficient vectors.
    pub angle: f64,
}

/// Evaluates `x_{a−1}` and `x_{d−1}` at `q = 1 + 10^{−k}` for `k` in `ks` and
/// reports the angle between their (unsigned) coefficient directions.
pub fn q_limit_diagnostic(space: &TangentSpace, ks: impl IntoIterator<Item = u32>) -> Result<Vec<LimitSample>, UqError> {
    let xa = space.element("x_a-1").ok_or_else(|| UqError::MissingElement("x_a-1".into()))?;
    let xd = space.element("x_d-1").ok_or_else(|| UqError::MissingElement("x_d-1".into()))?;
    let mut cols: Vec<PbwMonomial> = xa.monomials().chain(xd.monomials()).copied().collect();
    cols.sort();
    cols.dedup();
    let mut out = Vec::new();
    for k in ks {
        let eps = BigRational::new(One::one(), num_traits::pow(num_bigint::BigInt::from(10), k as usize));
        let qv = BigRational::one() + eps;
        let at = Assignment::new().with_q(qv.clone());
        let eval = |u: &UqElement| -> Result<Vec<BigRational>, UqError> {
            cols.iter().map(|m| u.coefficient(m).evaluate(&at).map_err(UqError::from)).collect()
        };
        let a = eval(xa)?;
        let d = eval(xd)?;
        let dot: BigRational = a.iter().zip(&d).fold(BigRational::zero(), |s, (x, y)| s + x * y);
        let na: BigRational = a.iter().fold(BigRational::zero(), |s, x| s + x * x);
        let nd: BigRational = d.iter().fold(BigRational::zero(), |s, x| s + x * x);
        // sin² of the angle between lines, exact until the final conversion
        let sin2 = BigRational::one() - (&dot * &dot) / (&na * &nd);
        let sin2 = sin2.abs().to_f64().unwrap_or(f64::NAN);
        out.push(LimitSample { k, q: qv.to_f64().unwrap_or(f64::NAN), angle: sin2.sqrt().asin() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uqsu2::hopf::adjoint;

    #[test]
    fn casimir_is_central() {
        let (c, cq) = casimir();
        assert!(is_central(&c));
        assert!(is_central(&cq));
        assert!(!is_central(&UqElement::x_plus()));
    }

    #[test]
    fn counit_of_offset_casimir_vanishes() {
        let (c, cq) = casimir();
        assert_eq!(counit(&c), q_plus_inv());
        assert!(counit(&cq).is_zero());
    }

    #[test]
    fn non_central_input_is_rejected() {
        assert!(matches!(tangent_space_from_central(&UqElement::k()), Err(UqError::NotCentral(_))));
    }

    #[test]
    fn casimir_acts_trivially_under_adjoint_of_k() {
        let (c, _) = casimir();
        assert_eq!(adjoint(&UqElement::k(), &c), c);
    }
}
