use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalars::Scalar;

/// PBW monomial `X₊^plus K^k X₋^minus` with `K = q^{H/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PbwMonomial {
    pub plus: u32,
    pub k: i32,
    pub minus: u32,
}

impl PbwMonomial {
    pub const ONE: PbwMonomial = PbwMonomial { plus: 0, k: 0, minus: 0 };

    pub fn new(plus: u32, k: i32, minus: u32) -> Self {
        PbwMonomial { plus, k, minus }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    /// A power of `K` alone; these are the grouplike monomials.
    pub fn is_grouplike(&self) -> bool {
        self.plus == 0 && self.minus == 0
    }

    pub fn degree(&self) -> u32 {
        self.plus + self.minus
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut parts = Vec::new();
        match self.plus {
            0 => {}
            1 => parts.push("Xp".to_string()),
            n => parts.push(format!("Xp^{n}")),
        }
        match self.k {
            0 => {}
            1 => parts.push("K".to_string()),
            n => parts.push(format!("K^{n}")),
        }
        match self.minus {
            0 => {}
            1 => parts.push("Xm".to_string()),
            n => parts.push(format!("Xm^{n}")),
        }
        f.write_str(&parts.join("*"))
    }
}

/// Finite linear combination of PBW monomials over ℚ(q^{1/2}); zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UqElement {
    terms: BTreeMap<PbwMonomial, Scalar>,
}

fn geometric_q2(count: u32, sign: i64) -> Scalar {
    // Σ_{j<count} q^{2·sign·j}
    let mut acc = Scalar::zero();
    for j in 0..count {
        acc = &acc + &Scalar::q_pow(2 * sign * j as i64);
    }
    acc
}

impl UqElement {
    pub fn zero() -> Self {
        UqElement::default()
    }

    pub fn one() -> Self {
        Self::monomial(PbwMonomial::ONE)
    }

    pub fn monomial(m: PbwMonomial) -> Self {
        Self::term(m, Scalar::one())
    }

    pub fn term(m: PbwMonomial, c: Scalar) -> Self {
        let mut e = UqElement::zero();
        e.add_term(m, c);
        e
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::term(PbwMonomial::ONE, c)
    }

    pub fn k() -> Self {
        Self::k_pow(1)
    }

    pub fn k_pow(e: i32) -> Self {
        Self::monomial(PbwMonomial::new(0, e, 0))
    }

    pub fn x_plus() -> Self {
        Self::monomial(PbwMonomial::new(1, 0, 0))
    }

    pub fn x_minus() -> Self {
        Self::monomial(PbwMonomial::new(0, 0, 1))
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &PbwMonomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &PbwMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return UqElement::zero();
        }
        UqElement { terms: self.terms.iter().map(|(m, d)| (*m, d * c)).collect() }
    }

    /// Maximal PBW degree `plus + minus` over the support.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(PbwMonomial::degree).max().unwrap_or(0)
    }

    /// `mono · X₊`, normal ordered via `K X₊ = q X₊ K` and
    /// `X₋ X₊ = X₊ X₋ − (K² − K⁻²)/(q − q⁻¹)`.
    fn mono_times_xplus(m: PbwMonomial) -> UqElement {
        let mut out = UqElement::term(PbwMonomial::new(m.plus + 1, m.k, m.minus), Scalar::q_pow(m.k as i64));
        if m.minus > 0 {
            let denom = &Scalar::q() - &Scalar::q_pow(-1);
            let f = (Scalar::one() / denom).neg();
            out.add_term(PbwMonomial::new(m.plus, m.k + 2, m.minus - 1), &f * &geometric_q2(m.minus, 1));
            out.add_term(PbwMonomial::new(m.plus, m.k - 2, m.minus - 1), -(&f * &geometric_q2(m.minus, -1)));
        }
        out
    }

    /// `mono · K^e` using `X₋ K = q K X₋`.
    fn mono_times_k(m: PbwMonomial, e: i32) -> (PbwMonomial, Scalar) {
        (PbwMonomial::new(m.plus, m.k + e, m.minus), Scalar::q_pow(m.minus as i64 * e as i64))
    }

    fn times_xplus(&self) -> UqElement {
        let mut out = UqElement::zero();
        for (m, c) in &self.terms {
            for (n, d) in Self::mono_times_xplus(*m).terms {
                out.add_term(n, c * &d);
            }
        }
        out
    }

    fn mono_product(a: PbwMonomial, b: PbwMonomial) -> UqElement {
        if b.plus == 0 {
            let (m, c) = Self::mono_times_k(a, b.k);
            return UqElement::term(PbwMonomial::new(m.plus, m.k, m.minus + b.minus), c);
        }
        let mut acc = UqElement::monomial(a);
        for _ in 0..b.plus {
            acc = acc.times_xplus();
        }
        let mut out = UqElement::zero();
        for (m, c) in acc.terms {
            let (n, d) = Self::mono_times_k(m, b.k);
            out.add_term(PbwMonomial::new(n.plus, n.k, n.minus + b.minus), &c * &d);
        }
        out
    }

    /// Product in PBW normal form.
    pub fn multiply(&self, other: &UqElement) -> UqElement {
        let mut out = UqElement::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let cd = c * d;
                for (m, e) in Self::mono_product(*a, *b).terms {
                    out.add_term(m, &cd * &e);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> UqElement {
        let mut acc = UqElement::one();
        for _ in 0..n {
            acc = acc.multiply(self);
        }
        acc
    }

    /// `[self, other] = self·other − other·self` (ordinary commutator).
    pub fn commutator(&self, other: &UqElement) -> UqElement {
        &self.multiply(other) - &other.multiply(self)
    }

    /// Coordinates along `monomials`; entries outside the list are ignored.
    pub fn coordinates(&self, monomials: &[PbwMonomial]) -> Vec<Scalar> {
        monomials.iter().map(|m| self.coefficient(m)).collect()
    }
}

impl Add for &UqElement {
    type Output = UqElement;
    fn add(self, rhs: &UqElement) -> UqElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &UqElement {
    type Output = UqElement;
    fn sub(self, rhs: &UqElement) -> UqElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &UqElement {
    type Output = UqElement;
    fn neg(self) -> UqElement {
        self.scale(&Scalar::from_i64(-1))
    }
}

impl Mul for &UqElement {
    type Output = UqElement;
    fn mul(self, rhs: &UqElement) -> UqElement {
        self.multiply(rhs)
    }
}

/// Wraps a coefficient in parentheses unless it is a bare integer or variable.
pub(crate) fn coefficient_prefix(c: &Scalar) -> (bool, String) {
    let neg_one = Scalar::from_i64(-1);
    if c.is_one() {
        return (false, String::new());
    }
    if *c == neg_one {
        return (true, String::new());
    }
    let s = c.to_string();
    let simple = s.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '^');
    if simple {
        (false, format!("{s}*"))
    } else if let Some(stripped) = s.strip_prefix('-').filter(|t| t.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '^')) {
        (true, format!("{stripped}*"))
    } else {
        (false, format!("({s})*"))
    }
}

/// Joins `(negated, body)` terms into `a + b - c` form.
pub(crate) fn join_terms(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for UqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // highest PBW monomials first
        let terms = self.terms.iter().rev().map(|(m, c)| {
            if m.is_one() {
                let s = c.to_string();
                match s.strip_prefix('-') {
                    Some(t) if !t.contains(' ') => (true, t.to_string()),
                    _ if s.contains(' ') && !s.starts_with('(') => (false, format!("({s})")),
                    _ => (false, s),
                }
            } else {
                let (neg, prefix) = coefficient_prefix(c);
                (neg, format!("{prefix}{m}"))
            }
        });
        f.write_str(&join_terms(terms))
    }
}
