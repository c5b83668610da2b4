//! Generating functions `c(p)` of translation-invariant calculi: finite sums of
//! `coef · p_a^k · e^{r·p_a}` along a single momentum axis per term.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::coord::DiffOp;
use crate::scalars::Scalar;

/// `p_axis^pow · e^{rate·p_axis}`; the constant term is `axis = 0, pow = 0, rate = 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GenTerm {
    pub axis: usize,
    pub pow: u32,
    pub rate: Scalar,
}

impl GenTerm {
    pub fn new(axis: usize, pow: u32, rate: Scalar) -> Self {
        if pow == 0 && rate.is_zero() {
            GenTerm::constant()
        } else {
            GenTerm { axis, pow, rate }
        }
    }

    pub fn constant() -> Self {
        GenTerm { axis: 0, pow: 0, rate: Scalar::zero() }
    }

    pub fn is_constant(&self) -> bool {
        self.pow == 0 && self.rate.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GeneratorFunction {
    terms: BTreeMap<GenTerm, Scalar>,
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

fn binomial(n: u32, k: u32) -> Scalar {
    Scalar::from_rational(&BigRational::from_integer(factorial(n) / (factorial(k) * factorial(n - k))))
}

impl GeneratorFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(GenTerm::constant(), c)
    }

    pub fn term(t: GenTerm, c: Scalar) -> Self {
        let mut g = Self::zero();
        g.add_term(t, c);
        g
    }

    /// `p_axis^k`.
    pub fn monomial(axis: usize, k: u32) -> Self {
        Self::term(GenTerm::new(axis, k, Scalar::zero()), Scalar::one())
    }

    /// `e^{rate·p_axis}`.
    pub fn exp(axis: usize, rate: Scalar) -> Self {
        Self::term(GenTerm::new(axis, 0, rate), Scalar::one())
    }

    pub fn add_term(&mut self, t: GenTerm, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&t) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(t, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GenTerm, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest axis index used, plus one.
    pub fn arity(&self) -> usize {
        self.terms.keys().filter(|t| !t.is_constant()).map(|t| t.axis + 1).max().unwrap_or(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (t, d) in &self.terms {
            out.add_term(t.clone(), d * c);
        }
        out
    }

    /// Product, defined when every pair of non-constant factors shares an axis.
    pub fn mul(&self, other: &Self) -> Option<Self> {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let t = if a.is_constant() {
                    b.clone()
                } else if b.is_constant() {
                    a.clone()
                } else if a.axis == b.axis {
                    GenTerm::new(a.axis, a.pow + b.pow, &a.rate + &b.rate)
                } else {
                    return None;
                };
                out.add_term(t, ca * cb);
            }
        }
        Some(out)
    }

    pub fn pow(&self, n: u32) -> Option<Self> {
        let mut acc = Self::constant(Scalar::one());
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Some(acc)
    }

    pub fn derivative(&self, axis: usize) -> Self {
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            if t.is_constant() || t.axis != axis {
                continue;
            }
            if t.pow > 0 {
                out.add_term(GenTerm::new(axis, t.pow - 1, t.rate.clone()), c.scale_int(t.pow as i64));
            }
            if !t.rate.is_zero() {
                out.add_term(t.clone(), c * &t.rate);
            }
        }
        out
    }

    pub fn value_at_zero(&self) -> Scalar {
        self.terms
            .iter()
            .filter(|(t, _)| t.pow == 0)
            .fold(Scalar::zero(), |acc, (_, c)| &acc + c)
    }

    /// `f − f(0)`.
    pub fn centered(&self) -> Self {
        self.sub(&Self::constant(self.value_at_zero()))
    }

    /// Coefficient of `p_axis^m` in the Taylor expansion at 0.
    pub fn taylor_coefficient(&self, axis: usize, m: u32) -> Scalar {
        let mut acc = Scalar::zero();
        for (t, c) in &self.terms {
            if t.is_constant() {
                if m == 0 {
                    acc = &acc + c;
                }
                continue;
            }
            if t.axis != axis && m > 0 {
                continue;
            }
            if t.axis != axis {
                // m == 0: value of a term in another axis at 0
                if t.pow == 0 {
                    acc = &acc + c;
                }
                continue;
            }
            if m < t.pow {
                continue;
            }
            let j = m - t.pow;
            let r = t.rate.pow(j as i64).expect("nonnegative power");
            let inv_fact = Scalar::from_rational(&BigRational::new(BigInt::from(1), factorial(j)));
            acc = &acc + &(&(c * &r) * &inv_fact);
        }
        acc
    }

    /// Splits `f(p + t) = Σ_τ h_τ(p) · τ(t)` by the monomial `τ` in `t`.
    pub fn translation_split(&self) -> BTreeMap<GenTerm, GeneratorFunction> {
        let mut out: BTreeMap<GenTerm, GeneratorFunction> = BTreeMap::new();
        for (t, c) in &self.terms {
            if t.is_constant() {
                out.entry(GenTerm::constant()).or_default().add_term(GenTerm::constant(), c.clone());
                continue;
            }
            for i in 0..=t.pow {
                let tau = GenTerm::new(t.axis, t.pow - i, t.rate.clone());
                let in_p = GenTerm::new(t.axis, i, t.rate.clone());
                out.entry(tau).or_default().add_term(in_p, c * &binomial(t.pow, i));
            }
        }
        out.retain(|_, h| !h.is_zero());
        out
    }

    /// The operator `f(∂)`: `p^k e^{rp}` acts as `∂^k` followed by `x ↦ x + r`.
    pub fn to_operator(&self) -> DiffOp {
        let mut op = DiffOp::zero();
        for (t, c) in &self.terms {
            op = op.add(&term_operator(t).scale(c));
        }
        op
    }
}

pub fn term_operator(t: &GenTerm) -> DiffOp {
    if t.is_constant() {
        return DiffOp::identity();
    }
    DiffOp::derivative(t.axis, t.pow).compose(&DiffOp::shift(t.axis, t.rate.clone()))
}

pub(crate) const MOMENTA: [&str; 2] = ["p", "q"];

fn wrap(s: String) -> String {
    if s.chars().all(|c| c.is_alphanumeric() || c == '^' || c == '_') {
        s
    } else {
        format!("({s})")
    }
}

impl fmt::Display for GeneratorFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(t, c)| {
                let mut factors = Vec::new();
                if !c.is_one() || t.is_constant() {
                    factors.push(wrap(c.to_string()));
                }
                let p = MOMENTA[t.axis];
                match t.pow {
                    0 => {}
                    1 => factors.push(p.to_string()),
                    k => factors.push(format!("{p}^{k}")),
                }
                if !t.rate.is_zero() {
                    let r = t.rate.to_string();
                    let arg = if r == "1" { p.to_string() } else { format!("{}*{p}", wrap(r)) };
                    factors.push(format!("exp({arg})"));
                }
                factors.join("*")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
