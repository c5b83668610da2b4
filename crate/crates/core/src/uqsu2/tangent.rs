use std::collections::BTreeSet;

use super::element::{PbwMonomial, UqElement};
use super::hopf::{adjoint, coproduct, counit};
use super::tensor::TensorElement;
use crate::linalg;
use crate::scalars::Scalar;

/// A subspace `L ⊂ U_q(su_2)` given by a spanning list.
#[derive(Clone, Debug)]
pub struct TangentSpace {
    labels: Vec<String>,
    elements: Vec<UqElement>,
    rank: usize,
}

fn support(elems: &[&UqElement]) -> Vec<PbwMonomial> {
    let set: BTreeSet<PbwMonomial> = elems.iter().flat_map(|e| e.monomials().copied()).collect();
    set.into_iter().collect()
}

impl TangentSpace {
    pub fn new(labels: Vec<String>, elements: Vec<UqElement>) -> Self {
        assert_eq!(labels.len(), elements.len());
        let refs: Vec<&UqElement> = elements.iter().collect();
        let cols = support(&refs);
        let rows: Vec<Vec<Scalar>> = elements.iter().map(|e| e.coordinates(&cols)).collect();
        let rank = linalg::rank(&rows);
        TangentSpace { labels, elements, rank }
    }

    pub fn from_elements(elements: Vec<UqElement>) -> Self {
        let labels = (0..elements.len()).map(|i| format!("e{i}")).collect();
        Self::new(labels, elements)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> &[UqElement] {
        &self.elements
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn element(&self, label: &str) -> Option<&UqElement> {
        self.labels.iter().position(|l| l == label).map(|i| &self.elements[i])
    }

    /// Coordinates of `u` along the spanning list, if `u` lies in the span.
    pub fn coordinates_of(&self, u: &UqElement) -> Option<Vec<Scalar>> {
        let mut refs: Vec<&UqElement> = self.elements.iter().collect();
        refs.push(u);
        let cols = support(&refs);
        let basis: Vec<Vec<Scalar>> = self.elements.iter().map(|e| e.coordinates(&cols)).collect();
        linalg::solve_in_span(&basis, &u.coordinates(&cols))
    }

    pub fn contains(&self, u: &UqElement) -> bool {
        u.is_zero() || self.coordinates_of(u).is_some()
    }
}

/// Outcome of testing the three quantum-tangent-space conditions.
#[derive(Clone, Debug)]
pub struct TangentSpaceCheck {
    pub counit_zero: bool,
    /// One entry per generator in `K, K⁻¹, X₊, X₋` order.
    pub adjoint_stable: Vec<(String, bool)>,
    pub coproduct_stable: bool,
    pub failures: Vec<String>,
}

impl TangentSpaceCheck {
    pub fn passed(&self) -> bool {
        self.counit_zero && self.coproduct_stable && self.adjoint_stable.iter().all(|(_, ok)| *ok)
    }
}

pub fn generators() -> Vec<(&'static str, UqElement)> {
    vec![
        ("K", UqElement::k()),
        ("K^-1", UqElement::k_pow(-1)),
        ("Xp", UqElement::x_plus()),
        ("Xm", UqElement::x_minus()),
    ]
}

/// Tests `L ⊂ ker ε`, `Ad_g(L) ⊆ L` for the generators `g`, and
/// `(Δ − id⊗1)(L) ⊆ A ⊗ L` by exact membership of every right leg.
pub fn check_tangent_space(space: &TangentSpace) -> TangentSpaceCheck {
    let mut failures = Vec::new();
    let mut counit_zero = true;
    for (label, e) in space.labels.iter().zip(&space.elements) {
        if !counit(e).is_zero() {
            counit_zero = false;
            failures.push(format!("counit({label}) = {} != 0", counit(e)));
        }
    }
    let mut adjoint_stable = Vec::new();
    for (name, g) in generators() {
        let mut ok = true;
        for (label, e) in space.labels.iter().zip(&space.elements) {
            let image = adjoint(&g, e);
            if !space.contains(&image) {
                ok = false;
                failures.push(format!("Ad_{name}({label}) = {image} not in L"));
            }
        }
        adjoint_stable.push((name.to_string(), ok));
    }
    let mut coproduct_stable = true;
    for (label, e) in space.labels.iter().zip(&space.elements) {
        let shifted = &coproduct(e) - &TensorElement::from_legs(&[e.clone(), UqElement::one()]);
        for (left, right) in shifted.right_legs_by_left() {
            if !space.contains(&right) {
                coproduct_stable = false;
                failures.push(format!("(Δ - id⊗1)({label}) has right leg {right} at ({left}) not in L"));
            }
        }
    }
    TangentSpaceCheck { counit_zero, adjoint_stable, coproduct_stable, failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_span_passes() {
        let l = TangentSpace::from_elements(vec![]);
        assert_eq!(l.rank(), 0);
        assert!(check_tangent_space(&l).passed());
    }

    #[test]
    fn xplus_alone_fails_coproduct_condition() {
        let l = TangentSpace::from_elements(vec![UqElement::x_plus()]);
        let report = check_tangent_space(&l);
        assert!(report.counit_zero);
        assert!(!report.coproduct_stable);
        assert!(report.failures.iter().any(|f| f.contains("K - 1") || f.contains("-1 + K") || f.contains("K")));
    }

    #[test]
    fn membership() {
        let l = TangentSpace::from_elements(vec![UqElement::x_plus(), UqElement::k()]);
        let u = &UqElement::x_plus().scale(&Scalar::q()) + &UqElement::k();
        assert_eq!(l.coordinates_of(&u).unwrap(), vec![Scalar::q(), Scalar::one()]);
        assert!(!l.contains(&UqElement::x_minus()));
    }
}
