use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use super::element::{coefficient_prefix, join_terms, PbwMonomial, UqElement};
use crate::scalars::Scalar;

/// Element of the n-fold tensor power of `U_q(su_2)` in the PBW basis of each leg.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<Vec<PbwMonomial>, Scalar>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        TensorElement { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        let mut t = Self::zero(arity);
        t.add_term(vec![PbwMonomial::ONE; arity], Scalar::one());
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_term(&mut self, legs: Vec<PbwMonomial>, c: Scalar) {
        assert_eq!(legs.len(), self.arity, "tensor leg count mismatch");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(legs) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<PbwMonomial>, &Scalar)> {
        self.terms.iter()
    }

    /// `u₁ ⊗ u₂ ⊗ …` expanded into basis terms.
    pub fn from_legs(legs: &[UqElement]) -> Self {
        let mut acc = Self::one(0);
        for leg in legs {
            let mut next = Self::zero(acc.arity + 1);
            for (ms, c) in &acc.terms {
                for (m, d) in leg.terms() {
                    let mut key = ms.clone();
                    key.push(*m);
                    next.add_term(key, c * d);
                }
            }
            acc = next;
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.arity);
        for (k, d) in &self.terms {
            out.add_term(k.clone(), d * c);
        }
        out
    }

    /// Legwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn multiply(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.arity, other.arity, "tensor arity mismatch");
        let mut out = Self::zero(self.arity);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let legs: Vec<UqElement> = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| UqElement::monomial(*x).multiply(&UqElement::monomial(*y)))
                    .collect();
                let cd = c * d;
                for (k, e) in Self::from_legs(&legs).terms {
                    out.add_term(k, &cd * &e);
                }
            }
        }
        out
    }

    /// Applies a linear map `leg ↦ tensor of arity r` to one leg.
    pub fn map_leg(&self, leg: usize, arity_out: usize, f: impl Fn(&PbwMonomial) -> TensorElement) -> TensorElement {
        let mut out = Self::zero(self.arity - 1 + arity_out);
        for (k, c) in &self.terms {
            let image = f(&k[leg]);
            for (ik, d) in image.terms {
                let mut key = k[..leg].to_vec();
                key.extend(ik);
                key.extend_from_slice(&k[leg + 1..]);
                out.add_term(key, c * &d);
            }
        }
        out
    }

    /// Multiplies all legs together in order.
    pub fn contract(&self) -> UqElement {
        let mut out = UqElement::zero();
        for (k, c) in &self.terms {
            let mut prod = UqElement::one();
            for m in k {
                prod = prod.multiply(&UqElement::monomial(*m));
            }
            out = &out + &prod.scale(c);
        }
        out
    }

    /// Groups a 2-tensor by its left leg: `Σ m ⊗ w_m`.
    pub fn right_legs_by_left(&self) -> BTreeMap<PbwMonomial, UqElement> {
        assert_eq!(self.arity, 2);
        let mut out: BTreeMap<PbwMonomial, UqElement> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry(k[0]).or_default().add_term(k[1], c.clone());
        }
        out
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|(k, c)| {
            let (neg, prefix) = coefficient_prefix(c);
            let legs: Vec<String> = k.iter().map(|m| format!("({m})")).collect();
            (neg, format!("{prefix}{}", legs.join(" ⊗ ")))
        });
        f.write_str(&join_terms(terms))
    }
}
