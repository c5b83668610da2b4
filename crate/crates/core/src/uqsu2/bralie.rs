//! The braided Lie algebra `gl_{2,q}` inside `U_q(su_2)` and its bracket table.

use super::casimir::casimir_c;
use super::element::UqElement;
use super::hopf::adjoint;
use super::tangent::TangentSpace;
use crate::scalars::Scalar;

fn q() -> Scalar {
    Scalar::q()
}

/// `h, x, y, γ` built from the Casimir.
pub fn braided_lie_basis() -> Vec<(&'static str, UqElement)> {
    let c = casimir_c();
    let pref = &Scalar::q_pow(-1) / &(&Scalar::q_pow(2) - &Scalar::one());
    let qq = &q() + &Scalar::q_pow(-1);
    let h = (&c - &UqElement::k_pow(2).scale(&qq)).scale(&pref);
    let gamma = (&c - &UqElement::scalar(qq)).scale(&pref);
    let norm = Scalar::q_half_pow(-3);
    let x = UqElement::k().multiply(&UqElement::x_minus()).scale(&norm);
    let y = UqElement::x_plus().multiply(&UqElement::k()).scale(&norm);
    vec![("h", h), ("x", x), ("y", y), ("gamma", gamma)]
}

/// `[u, v] = Ad_u(v)`.
pub fn bracket(u: &UqElement, v: &UqElement) -> UqElement {
    adjoint(u, v)
}

/// Expected value of `[left, right]` as `(coefficient, basis label)`, for the
/// brackets with a known closed form.
pub fn expected_bracket(left: &str, right: &str) -> Option<(Scalar, &'static str)> {
    let qm2 = Scalar::q_pow(-2);
    let one = Scalar::one();
    let qm2p1 = &qm2 + &one;
    let one_minus_qm4 = &one - &Scalar::q_pow(-4);
    Some(match (left, right) {
        ("h", "x") => (qm2p1, "x"),
        ("x", "h") => (-&(&qm2 * &qm2p1), "x"),
        ("h", "y") => (-&(&qm2p1 * &qm2), "y"),
        ("y", "h") => (qm2p1, "y"),
        ("x", "y") => (qm2, "h"),
        ("y", "x") => (-&qm2, "h"),
        ("h", "h") => (one_minus_qm4, "h"),
        ("gamma", "h") => (one_minus_qm4, "h"),
        ("gamma", "x") => (one_minus_qm4, "x"),
        ("gamma", "y") => (one_minus_qm4, "y"),
        _ => return None,
    })
}

#[derive(Clone, Debug)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub computed: UqElement,
    /// Coordinates in `h, x, y, γ` if the bracket closes on the span.
    pub coordinates: Option<Vec<Scalar>>,
    pub expected: Option<UqElement>,
}

impl BracketEntry {
    pub fn passes(&self) -> bool {
        self.coordinates.is_some() && self.expected.as_ref().is_none_or(|e| *e == self.computed)
    }
}

/// All sixteen brackets on `h, x, y, γ`, with closure coordinates and the
/// closed-form expectation where one is known.
pub fn braided_lie_table() -> Vec<BracketEntry> {
    let basis = braided_lie_basis();
    let span = TangentSpace::new(
        basis.iter().map(|(l, _)| l.to_string()).collect(),
        basis.iter().map(|(_, e)| e.clone()).collect(),
    );
    let lookup = |label: &str| basis.iter().find(|(l, _)| *l == label).map(|(_, e)| e.clone()).expect("basis label");
    let mut out = Vec::new();
    for (l, u) in &basis {
        for (r, v) in &basis {
            let computed = bracket(u, v);
            let coordinates = span.coordinates_of(&computed);
            let expected = expected_bracket(l, r).map(|(c, target)| lookup(target).scale(&c));
            out.push(BracketEntry { left: l.to_string(), right: r.to_string(), computed, coordinates, expected });
        }
    }
    out
}

/// Coordinates of every element of `from` in the span of `onto` plus the unit.
#[derive(Clone, Debug)]
pub struct BasisChange {
    pub label: String,
    pub coordinates: Option<Vec<Scalar>>,
}

pub fn express_in(from: &TangentSpace, onto: &TangentSpace) -> Vec<BasisChange> {
    let mut labels: Vec<String> = onto.labels().to_vec();
    labels.push("1".into());
    let mut elements: Vec<UqElement> = onto.elements().to_vec();
    elements.push(UqElement::one());
    let extended = TangentSpace::new(labels, elements);
    from.labels()
        .iter()
        .zip(from.elements())
        .map(|(label, e)| BasisChange { label: label.clone(), coordinates: extended.coordinates_of(e) })
        .collect()
}

pub fn braided_lie_space() -> TangentSpace {
    let basis = braided_lie_basis();
    TangentSpace::new(basis.iter().map(|(l, _)| l.to_string()).collect(), basis.into_iter().map(|(_, e)| e).collect())
}
