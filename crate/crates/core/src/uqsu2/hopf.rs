//! Hopf structure of `U_q(su_2)`: coproduct, counit, antipode, adjoint action
//! and the spin-1/2 representation.

use std::fmt;
use std::sync::OnceLock;

use super::element::{PbwMonomial, UqElement};
use super::tensor::TensorElement;
use crate::scalars::Scalar;

fn delta_k_pow(e: i32) -> TensorElement {
    let k = PbwMonomial::new(0, e, 0);
    let mut t = TensorElement::zero(2);
    t.add_term(vec![k, k], Scalar::one());
    t
}

/// `ΔX = X ⊗ K + K⁻¹ ⊗ X` for `X = X₊` or `X₋`.
fn delta_skew(x: PbwMonomial) -> TensorElement {
    let mut t = TensorElement::zero(2);
    t.add_term(vec![x, PbwMonomial::new(0, 1, 0)], Scalar::one());
    t.add_term(vec![PbwMonomial::new(0, -1, 0), x], Scalar::one());
    t
}

/// Coproduct of a PBW monomial, extended multiplicatively from the generators.
pub fn coproduct_monomial(m: &PbwMonomial) -> TensorElement {
    let xp = delta_skew(PbwMonomial::new(1, 0, 0));
    let xm = delta_skew(PbwMonomial::new(0, 0, 1));
    let mut acc = TensorElement::one(2);
    for _ in 0..m.plus {
        acc = acc.multiply(&xp);
    }
    if m.k != 0 {
        acc = acc.multiply(&delta_k_pow(m.k));
    }
    for _ in 0..m.minus {
        acc = acc.multiply(&xm);
    }
    acc
}

pub fn coproduct(u: &UqElement) -> TensorElement {
    let mut out = TensorElement::zero(2);
    for (m, c) in u.terms() {
        out = &out + &coproduct_monomial(m).scale(c);
    }
    out
}

/// Applies `Δ` to one leg of a tensor, raising its arity by one.
pub fn coproduct_on_leg(t: &TensorElement, leg: usize) -> TensorElement {
    t.map_leg(leg, 2, coproduct_monomial)
}

pub fn counit_monomial(m: &PbwMonomial) -> Scalar {
    if m.is_grouplike() {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

pub fn counit(u: &UqElement) -> Scalar {
    u.terms().filter(|(m, _)| m.is_grouplike()).fold(Scalar::zero(), |acc, (_, c)| &acc + c)
}

/// Solves `m∘(S⊗id)∘Δ(g) = ε(g)` for `S(g)` when `Δg = g ⊗ h + Σ lᵢ ⊗ rᵢ` with
/// `h` and every `lᵢ` grouplike.
fn solve_generator_antipode(g: PbwMonomial) -> UqElement {
    let delta = coproduct_monomial(&g);
    let mut h = None;
    let mut rest = UqElement::zero();
    for (legs, c) in delta.terms() {
        let (l, r) = (legs[0], legs[1]);
        if l == g {
            assert!(r.is_grouplike() && c.is_one(), "generator is not skew-primitive");
            h = Some(r);
        } else {
            assert!(l.is_grouplike(), "left leg must be grouplike");
            // S(K^e) = K^{-e}, forced by S(K^e) K^e = 1
            let s_l = UqElement::k_pow(-l.k);
            rest = &rest + &s_l.multiply(&UqElement::monomial(r)).scale(c);
        }
    }
    let h = h.expect("coproduct contains g ⊗ h");
    let h_inv = UqElement::k_pow(-h.k);
    let eps = UqElement::scalar(counit_monomial(&g));
    (&eps - &rest).multiply(&h_inv)
}

struct GeneratorAntipodes {
    x_plus: UqElement,
    x_minus: UqElement,
}

fn generator_antipodes() -> &'static GeneratorAntipodes {
    static CELL: OnceLock<GeneratorAntipodes> = OnceLock::new();
    CELL.get_or_init(|| GeneratorAntipodes {
        x_plus: solve_generator_antipode(PbwMonomial::new(1, 0, 0)),
        x_minus: solve_generator_antipode(PbwMonomial::new(0, 0, 1)),
    })
}

pub fn antipode_monomial(m: &PbwMonomial) -> UqElement {
    let gens = generator_antipodes();
    // S(X₊^a K^b X₋^c) = S(X₋)^c S(K)^b S(X₊)^a
    gens.x_minus.pow(m.minus).multiply(&UqElement::k_pow(-m.k)).multiply(&gens.x_plus.pow(m.plus))
}

pub fn antipode(u: &UqElement) -> UqElement {
    let mut out = UqElement::zero();
    for (m, c) in u.terms() {
        out = &out + &antipode_monomial(m).scale(c);
    }
    out
}

/// Quantum adjoint action `Ad_x(y) = x₍₁₎ y S(x₍₂₎)`.
pub fn adjoint(actor: &UqElement, target: &UqElement) -> UqElement {
    let mut out = UqElement::zero();
    for (legs, c) in coproduct(actor).terms() {
        let left = UqElement::monomial(legs[0]).multiply(target);
        let term = left.multiply(&antipode_monomial(&legs[1]));
        out = &out + &term.scale(c);
    }
    out
}

/// 2×2 matrix over the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix2(pub [[Scalar; 2]; 2]);

impl Matrix2 {
    pub fn zero() -> Self {
        Matrix2(Default::default())
    }

    pub fn identity() -> Self {
        Self::diag(Scalar::one(), Scalar::one())
    }

    pub fn diag(a: Scalar, d: Scalar) -> Self {
        Matrix2([[a, Scalar::zero()], [Scalar::zero(), d]])
    }

    pub fn unit(i: usize, j: usize) -> Self {
        let mut m = Self::zero();
        m.0[i][j] = Scalar::one();
        m
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.0[i][j]
    }

    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = &(&self.0[i][0] * &o.0[0][j]) + &(&self.0[i][1] * &o.0[1][j]);
            }
        }
        m
    }

    pub fn add(&self, o: &Matrix2) -> Matrix2 {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = &self.0[i][j] + &o.0[i][j];
            }
        }
        m
    }

    pub fn scale(&self, c: &Scalar) -> Matrix2 {
        let mut m = self.clone();
        for row in &mut m.0 {
            for e in row {
                *e = &*e * c;
            }
        }
        m
    }

    pub fn pow(&self, n: u32) -> Matrix2 {
        (0..n).fold(Self::identity(), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1])
    }
}

pub fn fundamental_rep_monomial(m: &PbwMonomial) -> Matrix2 {
    if m.plus > 1 || m.minus > 1 {
        return Matrix2::zero();
    }
    let k = Matrix2::diag(Scalar::q_half_pow(m.k as i64), Scalar::q_half_pow(-(m.k as i64)));
    Matrix2::unit(0, 1).pow(m.plus).mul(&k).mul(&Matrix2::unit(1, 0).pow(m.minus))
}

/// Spin-1/2 representation: `K ↦ diag(q^{1/2}, q^{-1/2})`, `X₊ ↦ E₁₂`, `X₋ ↦ E₂₁`.
pub fn fundamental_rep(u: &UqElement) -> Matrix2 {
    u.terms().fold(Matrix2::zero(), |acc, (m, c)| acc.add(&fundamental_rep_monomial(m).scale(c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::q()
    }

    #[test]
    fn coproduct_of_generators() {
        let dk = coproduct(&UqElement::k());
        assert_eq!(dk, TensorElement::from_legs(&[UqElement::k(), UqElement::k()]));
        let dx = coproduct(&UqElement::x_plus());
        let expected = &TensorElement::from_legs(&[UqElement::x_plus(), UqElement::k()])
            + &TensorElement::from_legs(&[UqElement::k_pow(-1), UqElement::x_plus()]);
        assert_eq!(dx, expected);
    }

    #[test]
    fn derived_antipode_on_generators() {
        assert_eq!(antipode(&UqElement::k()), UqElement::k_pow(-1));
        assert_eq!(antipode(&UqElement::x_plus()), UqElement::x_plus().scale(&-q()));
        assert_eq!(antipode(&UqElement::x_minus()), UqElement::x_minus().scale(&-Scalar::q_pow(-1)));
        assert_eq!(antipode(&UqElement::one()), UqElement::one());
    }

    #[test]
    fn counit_values() {
        assert!(counit(&UqElement::k_pow(-3)).is_one());
        let m = UqElement::monomial(PbwMonomial::new(1, 1, 1));
        assert!(counit(&m).is_zero());
    }

    #[test]
    fn adjoint_by_unit_is_identity() {
        let u = &UqElement::x_plus() + &UqElement::k_pow(2);
        assert_eq!(adjoint(&UqElement::one(), &u), u);
    }

    #[test]
    fn fundamental_rep_of_generators() {
        let k = fundamental_rep(&UqElement::k());
        assert_eq!(k, Matrix2::diag(Scalar::sqrt_q(), Scalar::sqrt_q().inv().unwrap()));
        assert_eq!(fundamental_rep(&UqElement::x_plus()), Matrix2::unit(0, 1));
        assert_eq!(fundamental_rep(&UqElement::x_minus()), Matrix2::unit(1, 0));
    }

    #[test]
    fn fundamental_rep_respects_commutator() {
        let lhs = fundamental_rep(&UqElement::x_plus().commutator(&UqElement::x_minus()));
        assert_eq!(lhs, Matrix2::diag(Scalar::one(), Scalar::from_i64(-1)));
    }
}
