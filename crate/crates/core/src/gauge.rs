//! Gauge theory on trivial bundles with scalar coefficients over a calculus
//! with second-order forms.

use crate::report::Check;
use crate::rn::{nth_derivative, shift, symbol, CalculusSpec, CoordFunction, GradedForm, RnError};
use crate::scalars::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GaugeError {
    #[error(transparent)]
    Calculus(#[from] RnError),
    #[error("gauge transformation must be invertible: {0}")]
    NotInvertible(#[from] ScalarError),
    #[error("expected a {expected}-form, got a {got}-form")]
    Degree { expected: usize, got: usize },
}

/// `α = Σ θ_m · a_m`.
pub type GaugeField = GradedForm;
/// `F ∈ Ω²`.
pub type FieldStrength = GradedForm;
/// Scalar matter field `ψ`.
pub type MatterField = CoordFunction;

/// An invertible function `γ` with its exact inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeTransformation {
    gamma: CoordFunction,
    inverse: CoordFunction,
}

impl GaugeTransformation {
    pub fn new(gamma: CoordFunction) -> Result<Self, GaugeError> {
        let inverse = gamma.inv()?;
        Ok(GaugeTransformation { gamma, inverse })
    }

    pub fn identity() -> Self {
        Self::new(CoordFunction::one()).expect("1 is invertible")
    }

    pub fn gamma(&self) -> &CoordFunction {
        &self.gamma
    }

    pub fn inverse(&self) -> &CoordFunction {
        &self.inverse
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::new(&self.gamma * &other.gamma).expect("product of units is a unit")
    }
}

fn expect_degree(phi: &GradedForm, degree: usize) -> Result<(), GaugeError> {
    if phi.degree == degree {
        Ok(())
    } else {
        Err(GaugeError::Degree { expected: degree, got: phi.degree })
    }
}

/// Builds `α = Σ θ_m · a_m` from its components.
pub fn gauge_field(spec: &CalculusSpec, components: Vec<CoordFunction>) -> Result<GaugeField, GaugeError> {
    if components.len() != spec.dimension() {
        return Err(RnError::Degree(format!("{} needs {} components, got {}", spec.name, spec.dimension(), components.len())).into());
    }
    Ok(GradedForm { degree: 1, coeffs: components })
}

/// `F(α) = dα + α ∧ α`.
pub fn curvature(spec: &CalculusSpec, alpha: &GaugeField) -> Result<FieldStrength, GaugeError> {
    expect_degree(alpha, 1)?;
    Ok(spec.d1(alpha)?.add(&spec.wedge(alpha, alpha)?)?)
}

/// `γ⁻¹ · φ · γ`.
pub fn conjugate(spec: &CalculusSpec, phi: &GradedForm, g: &GaugeTransformation) -> Result<GradedForm, GaugeError> {
    Ok(spec.left_mult(g.inverse(), phi)?.right_mult(g.gamma()))
}

/// `α^γ = γ⁻¹αγ + γ⁻¹dγ`.
pub fn gauge_transform(spec: &CalculusSpec, alpha: &GaugeField, g: &GaugeTransformation) -> Result<GaugeField, GaugeError> {
    expect_degree(alpha, 1)?;
    let conj = conjugate(spec, alpha, g)?;
    Ok(conj.add(&pure_gauge(spec, g)?)?)
}

/// `γ⁻¹ dγ`, always flat.
pub fn pure_gauge(spec: &CalculusSpec, g: &GaugeTransformation) -> Result<GaugeField, GaugeError> {
    Ok(spec.left_mult(g.inverse(), &spec.d0(g.gamma()))?)
}

/// `∇ψ = dψ + α ψ`.
pub fn cov_deriv_scalar(spec: &CalculusSpec, alpha: &GaugeField, psi: &MatterField) -> Result<GradedForm, GaugeError> {
    expect_degree(alpha, 1)?;
    Ok(spec.d0(psi).add(&alpha.right_mult(psi))?)
}

/// `∇σ = dσ + α ∧ σ`.
pub fn cov_deriv_oneform(spec: &CalculusSpec, alpha: &GaugeField, sigma: &GradedForm) -> Result<FieldStrength, GaugeError> {
    expect_degree(alpha, 1)?;
    expect_degree(sigma, 1)?;
    Ok(spec.d1(sigma)?.add(&spec.wedge(alpha, sigma)?)?)
}

/// Exact zero test of every curvature component; canonical fractions are
/// zero exactly when their numerators are.
pub fn is_flat(spec: &CalculusSpec, alpha: &GaugeField) -> Result<bool, GaugeError> {
    Ok(curvature(spec, alpha)?.coeffs.iter().all(|c| c.numer().is_zero()))
}

/// `F(α^γ)` against `γ⁻¹ F(α) γ`.
pub fn gauge_transform_curvature_check(
    spec: &CalculusSpec,
    alpha: &GaugeField,
    g: &GaugeTransformation,
) -> Result<Vec<Check>, GaugeError> {
    let f = curvature(spec, alpha)?;
    let lhs = curvature(spec, &gauge_transform(spec, alpha, g)?)?;
    let rhs = conjugate(spec, &f, g)?;
    let mut out = vec![form_check(spec, "F(α^γ) = γ⁻¹Fγ", &lhs, &rhs)];
    if spec.name == "jet:2" {
        // functions commute with 2-forms in the 2-jet calculus
        out.push(form_check(spec, "γ⁻¹Fγ = F", &rhs, &f));
    }
    Ok(out)
}

/// The three fundamental identities on the given data:
/// `F(α^γ) = γ⁻¹F(α)γ`, `∇^γ ψ^γ = γ⁻¹∇ψ` with `ψ^γ = γ⁻¹ψ`, and `∇²ψ = Fψ`.
pub fn verify_lemmas(
    spec: &CalculusSpec,
    alpha: &GaugeField,
    g: &GaugeTransformation,
    psi: &MatterField,
) -> Result<Vec<Check>, GaugeError> {
    let f = curvature(spec, alpha)?;
    let alpha_g = gauge_transform(spec, alpha, g)?;
    let lemma1 = form_check(spec, "F(α^γ) = γ⁻¹F(α)γ", &curvature(spec, &alpha_g)?, &conjugate(spec, &f, g)?);

    let psi_g = g.inverse() * psi;
    let cov = cov_deriv_scalar(spec, alpha, psi)?;
    let lemma2 = form_check(spec, "∇^γψ^γ = γ⁻¹∇ψ", &cov_deriv_scalar(spec, &alpha_g, &psi_g)?, &spec.left_mult(g.inverse(), &cov)?);

    let lemma3 = form_check(spec, "∇²ψ = Fψ", &cov_deriv_oneform(spec, alpha, &cov)?, &f.right_mult(psi));
    Ok(vec![lemma1, lemma2, lemma3])
}

pub fn form_check(spec: &CalculusSpec, name: &str, lhs: &GradedForm, rhs: &GradedForm) -> Check {
    Check::new(name, spec.display(lhs).to_string(), spec.display(rhs).to_string(), lhs == rhs)
}

fn d(f: &CoordFunction, n: u32) -> CoordFunction {
    nth_derivative(f, 0, n)
}

/// Symbolic components `a, b` (and `s, t`, `γ`, `ψ`) as opaque functions.
pub fn symbols() -> [CoordFunction; 6] {
    ['a', 'b', 's', 't', 'g', 'f'].map(symbol)
}

/// The 2-jet closed forms, with fully symbolic components, against the engine.
pub fn jet_symbolic_checks() -> Result<Vec<Check>, GaugeError> {
    let spec = CalculusSpec::jet(2)?;
    let [a, b, s, t, gm, psi] = symbols();
    let two = Scalar::from_i64(2);
    let alpha = gauge_field(&spec, vec![a.clone(), b.clone()])?;
    let mut out = Vec::new();

    // F = dx∧ω (b′ − a″ + 2a′a) − (dx)² (a′ − b − a²)
    let f = curvature(&spec, &alpha)?;
    let dxdx = -&(&(&d(&a, 1) - &b) - &(&a * &a));
    let dxw = &(&d(&b, 1) - &d(&a, 2)) + &(&two * &(&d(&a, 1) * &a));
    let closed = GradedForm { degree: 2, coeffs: vec![dxdx, dxw] };
    out.push(form_check(&spec, "curvature (symbolic a, b)", &f, &closed));

    // a → a + γ′/γ, b → b − 2aγ′/γ + γ″/γ − 2(γ′)²/γ²
    let g = GaugeTransformation::new(gm.clone())?;
    let ginv = g.inverse().clone();
    let ratio1 = &d(&gm, 1) * &ginv;
    let ratio2 = &d(&gm, 2) * &ginv;
    let law = GradedForm {
        degree: 1,
        coeffs: vec![
            &a + &ratio1,
            &(&(&b - &(&two * &(&a * &ratio1))) + &ratio2) - &(&two * &(&ratio1 * &ratio1)),
        ],
    };
    out.push(form_check(&spec, "gauge transformation law (symbolic)", &gauge_transform(&spec, &alpha, &g)?, &law));
    out.extend(gauge_transform_curvature_check(&spec, &alpha, &g)?);

    // ∇ψ = dx(ψ′ + aψ) + ω(ψ″ + bψ)
    let cov = GradedForm { degree: 1, coeffs: vec![&d(&psi, 1) + &(&a * &psi), &d(&psi, 2) + &(&b * &psi)] };
    out.push(form_check(&spec, "∇ψ (symbolic)", &cov_deriv_scalar(&spec, &alpha, &psi)?, &cov));

    let sigma = gauge_field(&spec, vec![s.clone(), t.clone()])?;
    let expanded = covd1_expanded(&a, &b, &s, &t);
    out.push(form_check(&spec, "∇σ expanded form (symbolic)", &cov_deriv_oneform(&spec, &alpha, &sigma)?, &expanded));
    let lemmas = verify_lemmas(&spec, &alpha, &g, &psi)?;
    out.extend(lemmas.into_iter().map(|c| Check { name: format!("{} (symbolic)", c.name), ..c }));
    Ok(out)
}

/// `(dx)²(t − s′ + as) + dx∧ω(t′ − s″ + 2a′s + at − bs)`.
pub fn covd1_expanded(a: &CoordFunction, b: &CoordFunction, s: &CoordFunction, t: &CoordFunction) -> GradedForm {
    let two = Scalar::from_i64(2);
    let first = &(t - &d(s, 1)) + &(a * s);
    let second = &(&(&(&d(t, 1) - &d(s, 2)) + &(&two * &(&d(a, 1) * s))) + &(a * t)) - &(b * s);
    GradedForm { degree: 2, coeffs: vec![first, second] }
}

/// The covariant derivative on 1-forms in the 2-jet calculus, as printed in
/// the reference: `(dx)²(−s′ + t + a²) + dx∧ω(−s″ + 2a′a − bs + at + t′)`.
pub fn covd1_printed(a: &CoordFunction, b: &CoordFunction, s: &CoordFunction, t: &CoordFunction) -> GradedForm {
    let two = Scalar::from_i64(2);
    let first = &(t - &d(s, 1)) + &(a * a);
    let second = &(&(&(&d(t, 1) - &d(s, 2)) + &(&two * &(&d(a, 1) * a))) + &(a * t)) - &(b * s);
    GradedForm { degree: 2, coeffs: vec![first, second] }
}

/// Adjudicates the printed 1-form covariant derivative of the 2-jet calculus.
///
/// Both candidate formulas are tested through `∇(∇ψ) = Fψ` with `σ = ∇ψ`, and
/// the coefficient positions where the printed formula departs from the
/// engine are listed.
pub fn covd1_adjudication() -> Result<(Vec<Check>, Vec<String>), GaugeError> {
    let spec = CalculusSpec::jet(2)?;
    let [a, b, s, t, _, psi] = symbols();
    let alpha = gauge_field(&spec, vec![a.clone(), b.clone()])?;
    let sigma = gauge_field(&spec, vec![s.clone(), t.clone()])?;
    let engine = cov_deriv_oneform(&spec, &alpha, &sigma)?;
    let expanded = covd1_expanded(&a, &b, &s, &t);
    let printed = covd1_printed(&a, &b, &s, &t);

    let f = curvature(&spec, &alpha)?;
    let cov = cov_deriv_scalar(&spec, &alpha, &psi)?;
    let target = f.right_mult(&psi);
    let [s_psi, t_psi] = [cov.coeffs[0].clone(), cov.coeffs[1].clone()];
    let engine_sq = cov_deriv_oneform(&spec, &alpha, &cov)?;
    let printed_sq = covd1_printed(&a, &b, &s_psi, &t_psi);

    let checks = vec![
        form_check(&spec, "engine ∇σ = expanded form", &engine, &expanded),
        form_check(&spec, "engine ∇(∇ψ) = Fψ", &engine_sq, &target),
        Check::new(
            "printed ∇σ rejected by ∇(∇ψ) = Fψ",
            spec.display(&printed_sq).to_string(),
            spec.display(&target).to_string(),
            printed_sq != target,
        ),
    ];
    let mut notes = Vec::new();
    for (k, name) in spec.names(2).iter().enumerate() {
        let diff = &printed.coeffs[k] - &engine.coeffs[k];
        if !diff.is_zero() {
            notes.push(format!("printed ∇σ differs at {name}: printed − engine = {diff}"));
        }
    }
    Ok((checks, notes))
}

/// The 2D lattice closed forms, with fully symbolic components, against the engine.
pub fn lattice_symbolic_checks() -> Result<Vec<Check>, GaugeError> {
    let spec = CalculusSpec::finite_difference_2d()?;
    let [a, b, s, t, gm, psi] = symbols();
    let lam = Scalar::lambda();
    let mu = Scalar::mu();
    let d1 = |f: &CoordFunction| &(&shift(f, 0, &lam) - f) / &lam;
    let d2 = |f: &CoordFunction| &(&shift(f, 1, &mu) - f) / &mu;
    let sx = |f: &CoordFunction| shift(f, 0, &lam);
    let sy = |f: &CoordFunction| shift(f, 1, &mu);
    let alpha = gauge_field(&spec, vec![a.clone(), b.clone()])?;
    let mut out = Vec::new();

    let f_closed = &(&(&d1(&b) - &d2(&a)) + &(&sy(&a) * &b)) - &(&sx(&b) * &a);
    let f = curvature(&spec, &alpha)?;
    out.push(form_check(&spec, "curvature (symbolic a, b)", &f, &GradedForm { degree: 2, coeffs: vec![f_closed.clone()] }));

    let g = GaugeTransformation::new(gm.clone())?;
    let one = CoordFunction::one();
    let rx = &gm / &sx(&gm);
    let ry = &gm / &sy(&gm);
    let law = GradedForm {
        degree: 1,
        coeffs: vec![&(&a * &rx) + &(&(&one - &rx) / &lam), &(&b * &ry) + &(&(&one - &ry) / &mu)],
    };
    let alpha_g = gauge_transform(&spec, &alpha, &g)?;
    out.push(form_check(&spec, "gauge transformation law (symbolic)", &alpha_g, &law));

    let factor = &gm / &sy(&sx(&gm));
    let transformed = GradedForm { degree: 2, coeffs: vec![&f_closed * &factor] };
    out.push(form_check(&spec, "F → F γ/γ(x+λ,y+μ) (symbolic)", &curvature(&spec, &alpha_g)?, &transformed));

    let cov = GradedForm { degree: 1, coeffs: vec![&d1(&psi) + &(&a * &psi), &d2(&psi) + &(&b * &psi)] };
    out.push(form_check(&spec, "∇ψ (symbolic)", &cov_deriv_scalar(&spec, &alpha, &psi)?, &cov));

    let sigma = gauge_field(&spec, vec![s.clone(), t.clone()])?;
    let cov1 = &(&(&d1(&t) - &d2(&s)) + &(&sy(&a) * &t)) - &(&sx(&b) * &s);
    out.push(form_check(
        &spec,
        "∇σ (symbolic)",
        &cov_deriv_oneform(&spec, &alpha, &sigma)?,
        &GradedForm { degree: 2, coeffs: vec![cov1] },
    ));
    let lemmas = verify_lemmas(&spec, &alpha, &g, &psi)?;
    out.extend(lemmas.into_iter().map(|c| Check { name: format!("{} (symbolic)", c.name), ..c }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Var;

    fn x() -> CoordFunction {
        CoordFunction::var(Var::X)
    }

    fn jet() -> CalculusSpec {
        CalculusSpec::jet(2).unwrap()
    }

    #[test]
    fn zero_field_is_flat() {
        let spec = jet();
        let alpha = GradedForm::zero(&spec, 1).unwrap();
        assert!(curvature(&spec, &alpha).unwrap().is_zero());
        assert!(is_flat(&spec, &alpha).unwrap());
    }

    #[test]
    fn pure_gauge_of_x() {
        let spec = jet();
        let g = GaugeTransformation::new(x()).unwrap();
        let alpha = pure_gauge(&spec, &g).unwrap();
        assert_eq!(alpha.coeffs, vec![x().inv().unwrap(), &Scalar::from_i64(-2) * &x().pow(-2).unwrap()]);
        assert!(is_flat(&spec, &alpha).unwrap());
        let zero = GradedForm::zero(&spec, 1).unwrap();
        assert_eq!(gauge_transform(&spec, &zero, &g).unwrap(), alpha);
    }

    #[test]
    fn flatness_examples() {
        let spec = jet();
        let flat = gauge_field(&spec, vec![x().inv().unwrap(), &Scalar::from_i64(-2) * &x().pow(-2).unwrap()]).unwrap();
        assert!(is_flat(&spec, &flat).unwrap());
        let curved = gauge_field(&spec, vec![x(), CoordFunction::zero()]).unwrap();
        assert!(!is_flat(&spec, &curved).unwrap());
    }

    #[test]
    fn constant_gamma_is_trivial() {
        let spec = jet();
        let alpha = gauge_field(&spec, vec![x(), &x() * &x()]).unwrap();
        let g = GaugeTransformation::new(Scalar::from_i64(3)).unwrap();
        assert_eq!(gauge_transform(&spec, &alpha, &g).unwrap(), alpha);
    }

    #[test]
    fn lattice_pure_gauge() {
        let spec = CalculusSpec::finite_difference_2d().unwrap();
        let g = GaugeTransformation::new(x()).unwrap();
        let alpha = pure_gauge(&spec, &g).unwrap();
        let expected = (&x() + &Scalar::lambda()).inv().unwrap();
        assert_eq!(alpha.coeffs, vec![expected, CoordFunction::zero()]);
        assert!(is_flat(&spec, &alpha).unwrap());
    }

    #[test]
    fn lattice_curvature_factor() {
        // α = dx·1, γ = x: F transforms by x/(x+λ)
        let spec = CalculusSpec::finite_difference_2d().unwrap();
        let alpha = gauge_field(&spec, vec![CoordFunction::one(), CoordFunction::var(Var::Y)]).unwrap();
        let g = GaugeTransformation::new(x()).unwrap();
        let f = curvature(&spec, &alpha).unwrap();
        let fg = curvature(&spec, &gauge_transform(&spec, &alpha, &g).unwrap()).unwrap();
        let factor = &x() / &(&x() + &Scalar::lambda());
        assert_eq!(fg.coeffs[0], &f.coeffs[0] * &factor);
    }

    #[test]
    fn zero_gamma_is_rejected() {
        assert!(GaugeTransformation::new(CoordFunction::zero()).is_err());
    }

    #[test]
    fn symbolic_jet_closed_forms() {
        for c in jet_symbolic_checks().unwrap() {
            assert!(c.pass, "{}: {} vs {}", c.name, c.lhs, c.rhs);
        }
    }

    #[test]
    fn symbolic_lattice_closed_forms() {
        for c in lattice_symbolic_checks().unwrap() {
            assert!(c.pass, "{}: {} vs {}", c.name, c.lhs, c.rhs);
        }
    }

    #[test]
    fn printed_covd1_is_flagged() {
        let (checks, notes) = covd1_adjudication().unwrap();
        assert!(checks.iter().all(|c| c.pass));
        assert_eq!(notes.len(), 2);
    }
}
