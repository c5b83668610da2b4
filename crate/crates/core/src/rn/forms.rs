//! Differential forms of degree 0, 1 and 2 over a [`CalculusSpec`], written
//! with basis forms on the left and coefficient functions on the right.

use std::fmt;

use super::calculus::CalculusSpec;
use super::coord::CoordFunction;
use super::RnError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedForm {
    pub degree: usize,
    /// `Σ θ_i · coeffs[i]`; a single entry in degree 0.
    pub coeffs: Vec<CoordFunction>,
}

impl GradedForm {
    pub fn function(f: CoordFunction) -> Self {
        GradedForm { degree: 0, coeffs: vec![f] }
    }

    pub fn zero(spec: &CalculusSpec, degree: usize) -> Result<Self, RnError> {
        let n = spec.rank(degree)?;
        Ok(GradedForm { degree, coeffs: vec![CoordFunction::zero(); n] })
    }

    /// `θ_i · f`.
    pub fn basis(spec: &CalculusSpec, degree: usize, i: usize, f: CoordFunction) -> Result<Self, RnError> {
        let mut out = Self::zero(spec, degree)?;
        out.coeffs[i] = f;
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CoordFunction::is_zero)
    }

    pub fn as_function(&self) -> Option<&CoordFunction> {
        (self.degree == 0).then(|| &self.coeffs[0])
    }

    pub fn add(&self, other: &Self) -> Result<Self, RnError> {
        self.same_degree(other)?;
        Ok(GradedForm { degree: self.degree, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RnError> {
        self.same_degree(other)?;
        Ok(GradedForm { degree: self.degree, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn neg(&self) -> Self {
        GradedForm { degree: self.degree, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    /// `φ · f`.
    pub fn right_mult(&self, f: &CoordFunction) -> Self {
        GradedForm { degree: self.degree, coeffs: self.coeffs.iter().map(|a| a * f).collect() }
    }

    fn same_degree(&self, other: &Self) -> Result<(), RnError> {
        if self.degree != other.degree || self.coeffs.len() != other.coeffs.len() {
            return Err(RnError::Degree(format!("cannot combine a {}-form with a {}-form", self.degree, other.degree)));
        }
        Ok(())
    }
}

impl CalculusSpec {
    /// Dimension of Ωᵏ over the functions.
    pub fn rank(&self, degree: usize) -> Result<usize, RnError> {
        match degree {
            0 => Ok(1),
            1 => Ok(self.dimension()),
            2 => self.omega2_dimension().ok_or_else(|| RnError::Unsupported(format!("no second-order forms for {}", self.name))),
            _ => Ok(0),
        }
    }

    fn two_forms(&self) -> Result<&super::calculus::Omega2, RnError> {
        self.omega2.as_ref().ok_or_else(|| RnError::Unsupported(format!("no second-order forms for {}", self.name)))
    }

    /// `∂_i f = e_i(∂) f`.
    pub fn partial(&self, i: usize, f: &CoordFunction) -> CoordFunction {
        self.tangent.basis[i].function.to_operator().apply(f)
    }

    /// `Ψ⁻¹(f ⊗ e_j)` as a list of `(i, g)` meaning `e_i ⊗ g`.
    pub fn braiding_inverse(&self, f: &CoordFunction, j: usize) -> Vec<(usize, CoordFunction)> {
        self.braid_rule[j].iter().map(|(i, op)| (*i, op.apply(f))).filter(|(_, g)| !g.is_zero()).collect()
    }

    /// `df = Σ θ_i ∂_i f`.
    pub fn d0(&self, f: &CoordFunction) -> GradedForm {
        GradedForm { degree: 1, coeffs: (0..self.dimension()).map(|i| self.partial(i, f)).collect() }
    }

    /// `d(Σ θ_m c_m) = Σ dθ_m · c_m − θ_m ∧ dc_m`.
    pub fn d1(&self, phi: &GradedForm) -> Result<GradedForm, RnError> {
        let omega = self.two_forms()?;
        let mut out = GradedForm::zero(self, 2)?;
        for (m, c) in phi.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, s) in &omega.d_theta[m] {
                out.coeffs[*k] = &out.coeffs[*k] + &(s * c);
            }
            for (j, dc) in self.d0(c).coeffs.iter().enumerate() {
                for (k, s) in &omega.wedge[m][j] {
                    out.coeffs[*k] = &out.coeffs[*k] - &(s * dc);
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative on forms of any degree.
    pub fn d(&self, phi: &GradedForm) -> Result<GradedForm, RnError> {
        match phi.degree {
            0 => Ok(self.d0(&phi.coeffs[0])),
            1 => self.d1(phi),
            _ => Err(RnError::Degree("d is only defined up to 1-forms".into())),
        }
    }

    /// `f · φ`, moving `f` past the basis forms.
    pub fn left_mult(&self, f: &CoordFunction, phi: &GradedForm) -> Result<GradedForm, RnError> {
        let rules = match phi.degree {
            0 => return Ok(GradedForm::function(f * &phi.coeffs[0])),
            1 => &self.left_rule,
            2 => &self.two_forms()?.left_rule,
            _ => return Err(RnError::Degree("forms above degree 2 are not supported".into())),
        };
        let mut out = GradedForm::zero(self, phi.degree)?;
        for (m, c) in phi.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, op) in &rules[m] {
                out.coeffs[*j] = &out.coeffs[*j] + &(&op.apply(f) * c);
            }
        }
        Ok(out)
    }

    /// `(Σ θ_i a_i) ∧ (Σ θ_j b_j) = Σ θ_i ∧ θ_k · (op_{kj} a_i) · b_j`.
    pub fn wedge(&self, a: &GradedForm, b: &GradedForm) -> Result<GradedForm, RnError> {
        match (a.degree, b.degree) {
            (0, _) => self.left_mult(&a.coeffs[0], b),
            (_, 0) => Ok(a.right_mult(&b.coeffs[0])),
            (1, 1) => {
                let omega = self.two_forms()?;
                let mut out = GradedForm::zero(self, 2)?;
                for (i, ai) in a.coeffs.iter().enumerate() {
                    if ai.is_zero() {
                        continue;
                    }
                    for (j, bj) in b.coeffs.iter().enumerate() {
                        if bj.is_zero() {
                            continue;
                        }
                        for (k, op) in &self.left_rule[j] {
                            let moved = &op.apply(ai) * bj;
                            for (l, s) in &omega.wedge[i][*k] {
                                out.coeffs[*l] = &out.coeffs[*l] + &(s * &moved);
                            }
                        }
                    }
                }
                Ok(out)
            }
            (da, db) => {
                if da + db > 2 && self.omega2.is_some() {
                    // Ω³ vanishes for the supported calculi
                    Ok(GradedForm { degree: da + db, coeffs: Vec::new() })
                } else {
                    Err(RnError::Degree(format!("cannot wedge a {da}-form with a {db}-form")))
                }
            }
        }
    }

    /// Basis names in the given degree.
    pub fn names(&self, degree: usize) -> Vec<String> {
        match degree {
            0 => vec![String::new()],
            1 => self.forms.clone(),
            2 => self.omega2.as_ref().map(|o| o.names.clone()).unwrap_or_default(),
            _ => Vec::new(),
        }
    }

    pub fn display<'a>(&'a self, phi: &'a GradedForm) -> DisplayForm<'a> {
        DisplayForm { spec: self, form: phi }
    }
}

fn wrap_atom(s: &str) -> String {
    let atomic = s.chars().all(|c| c.is_alphanumeric() || c == '^' || c == '_' || c == '\'');
    if atomic {
        s.to_string()
    } else {
        format!("({s})")
    }
}

pub struct DisplayForm<'a> {
    spec: &'a CalculusSpec,
    form: &'a GradedForm,
}

impl fmt::Display for DisplayForm<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.form.degree == 0 {
            return write!(f, "{}", self.form.coeffs[0]);
        }
        let names = self.spec.names(self.form.degree);
        let parts: Vec<String> = names
            .iter()
            .zip(&self.form.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| if c.is_one() { n.clone() } else { format!("{n}*{}", wrap_atom(&c.to_string())) })
            .collect();
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rn::coord::{shift, symbol};
    use crate::scalars::{Scalar, Var};

    fn x() -> CoordFunction {
        CoordFunction::var(Var::X)
    }

    fn y() -> CoordFunction {
        CoordFunction::var(Var::Y)
    }

    #[test]
    fn jet_derivative_of_square() {
        let spec = CalculusSpec::jet(2).unwrap();
        let f = &x() * &x();
        let df = spec.d0(&f);
        assert_eq!(df.coeffs, vec![&x() * &Scalar::from_i64(2), Scalar::from_i64(2)]);
        assert_eq!(spec.display(&df).to_string(), "dx*(2*x) + w*2");
    }

    #[test]
    fn omega_witness() {
        // ω = ½(x·dx − dx·x)
        let spec = CalculusSpec::jet(2).unwrap();
        let dx = GradedForm::basis(&spec, 1, 0, CoordFunction::one()).unwrap();
        let x_dx = spec.left_mult(&x(), &dx).unwrap();
        let dx_x = dx.right_mult(&x());
        let w = x_dx.sub(&dx_x).unwrap().right_mult(&Scalar::from_ratio(1, 2));
        assert_eq!(w, GradedForm::basis(&spec, 1, 1, CoordFunction::one()).unwrap());
    }

    #[test]
    fn lattice_bimodule() {
        let spec = CalculusSpec::finite_difference_2d().unwrap();
        let a = symbol('a');
        let dx = GradedForm::basis(&spec, 1, 0, CoordFunction::one()).unwrap();
        let moved = spec.left_mult(&a, &dx).unwrap();
        assert_eq!(moved.coeffs[0], shift(&a, 0, &Scalar::lambda()));
        let dxdy = GradedForm::basis(&spec, 2, 0, CoordFunction::one()).unwrap();
        let moved = spec.left_mult(&y(), &dxdy).unwrap();
        assert_eq!(moved.coeffs[0], &y() + &Scalar::mu());
    }

    #[test]
    fn d_squared_vanishes() {
        for spec in [CalculusSpec::jet(2).unwrap(), CalculusSpec::finite_difference_2d().unwrap()] {
            let f = &(&x() * &x()) * &(&y() + &x().inv().unwrap());
            let ddf = spec.d1(&spec.d0(&f)).unwrap();
            assert!(ddf.is_zero(), "{}", spec.name);
        }
    }

    #[test]
    fn wedge_of_basis_forms() {
        let spec = CalculusSpec::jet(2).unwrap();
        let dx = GradedForm::basis(&spec, 1, 0, CoordFunction::one()).unwrap();
        let w = GradedForm::basis(&spec, 1, 1, CoordFunction::one()).unwrap();
        assert_eq!(spec.wedge(&w, &dx).unwrap(), spec.wedge(&dx, &w).unwrap().neg());
        assert!(spec.wedge(&w, &w).unwrap().is_zero());
    }
}
