//! Coordinate functions on ℝ and ℝ² and the difference/differential operators
//! acting on them.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::{FunSymbol, Poly, RationalFunction, Scalar, Var};

/// Rational function in `x` (and `y`) with coefficients in ℚ(λ, μ).
pub type CoordFunction = RationalFunction;

pub fn coord_var(axis: usize) -> Var {
    match axis {
        0 => Var::X,
        1 => Var::Y,
        _ => panic!("coordinate axis {axis} out of range"),
    }
}

/// Opaque function symbol `name(x, y)` with formal derivatives and shifts.
pub fn symbol(name: char) -> CoordFunction {
    RationalFunction::var(Var::Fun(FunSymbol::new(name)))
}

/// `∂f/∂x` (axis 0) or `∂f/∂y` (axis 1).
pub fn derivative(f: &CoordFunction, axis: usize) -> CoordFunction {
    let target = coord_var(axis);
    f.derive(&|v| match v {
        v if v == target => Poly::one(),
        Var::Fun(s) => {
            let mut t = s;
            if axis == 0 {
                t.dx += 1;
            } else {
                t.dy += 1;
            }
            Poly::var(Var::Fun(t))
        }
        _ => Poly::zero(),
    })
}

pub fn nth_derivative(f: &CoordFunction, axis: usize, n: u32) -> CoordFunction {
    (0..n).fold(f.clone(), |g, _| derivative(&g, axis))
}

/// Number of lattice steps `amount / step` when it is an integer.
fn lattice_steps(amount: &Scalar, axis: usize) -> Option<i8> {
    let step = if axis == 0 { Scalar::lambda() } else { Scalar::mu() };
    let ratio = (amount / &step).as_rational()?;
    if ratio.is_integer() {
        i8::try_from(ratio.to_integer()).ok()
    } else {
        None
    }
}

/// `f(x + amount, y)` (axis 0) or `f(x, y + amount)` (axis 1).
///
/// Opaque symbols can only be shifted by integer multiples of `λ` (axis 0)
/// or `μ` (axis 1).
pub fn shift(f: &CoordFunction, axis: usize, amount: &Scalar) -> CoordFunction {
    if amount.is_zero() {
        return f.clone();
    }
    let target = coord_var(axis);
    let has_symbols = f.vars().iter().any(|v| matches!(v, Var::Fun(_)));
    let steps = if has_symbols {
        lattice_steps(amount, axis).unwrap_or_else(|| panic!("cannot shift a symbolic function by {amount}"))
    } else {
        0
    };
    assert!(amount.is_polynomial(), "shift amounts are polynomial in the lattice parameters");
    let by = amount.numer().clone();
    f.substitute(&|v| match v {
        v if v == target => &Poly::var(v) + &by,
        Var::Fun(s) => {
            let mut t = s;
            if axis == 0 {
                t.sx += steps;
            } else {
                t.sy += steps;
            }
            Poly::var(Var::Fun(t))
        }
        v => Poly::var(v),
    })
    .expect("shifting keeps denominators nonzero")
}

/// Linear operator `Σ c · shift_{s} ∘ ∂^{o}` with constant coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiffOp {
    terms: BTreeMap<([u32; 2], [Scalar; 2]), Scalar>,
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp::default()
    }

    pub fn identity() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::term(c, [0, 0], [Scalar::zero(), Scalar::zero()])
    }

    pub fn term(c: Scalar, orders: [u32; 2], shifts: [Scalar; 2]) -> Self {
        let mut op = DiffOp::zero();
        op.add_term(orders, shifts, c);
        op
    }

    pub fn derivative(axis: usize, order: u32) -> Self {
        let mut orders = [0, 0];
        orders[axis] = order;
        Self::term(Scalar::one(), orders, [Scalar::zero(), Scalar::zero()])
    }

    pub fn shift(axis: usize, amount: Scalar) -> Self {
        let mut shifts = [Scalar::zero(), Scalar::zero()];
        shifts[axis] = amount;
        Self::term(Scalar::one(), [0, 0], shifts)
    }

    fn add_term(&mut self, orders: [u32; 2], shifts: [Scalar; 2], c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (orders, shifts);
        let v = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for ((o, s), c) in &other.terms {
            out.add_term(*o, s.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> DiffOp {
        let mut out = DiffOp::zero();
        for ((o, s), d) in &self.terms {
            out.add_term(*o, s.clone(), d * c);
        }
        out
    }

    /// `self ∘ other`; constant-coefficient operators commute.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero();
        for ((o1, s1), c1) in &self.terms {
            for ((o2, s2), c2) in &other.terms {
                let o = [o1[0] + o2[0], o1[1] + o2[1]];
                let s = [&s1[0] + &s2[0], &s1[1] + &s2[1]];
                out.add_term(o, s, c1 * c2);
            }
        }
        out
    }

    pub fn apply(&self, f: &CoordFunction) -> CoordFunction {
        let mut acc = CoordFunction::zero();
        for ((orders, shifts), c) in &self.terms {
            let mut g = f.clone();
            for axis in 0..2 {
                g = nth_derivative(&g, axis, orders[axis]);
            }
            for axis in 0..2 {
                g = shift(&g, axis, &shifts[axis]);
            }
            acc = &acc + &(c * &g);
        }
        acc
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((o, s), c)| {
                let mut factors = vec![format!("({c})")];
                for (axis, name) in ["x", "y"].iter().enumerate() {
                    if !s[axis].is_zero() {
                        factors.push(format!("T_{name}[{}]", s[axis]));
                    }
                    if o[axis] > 0 {
                        factors.push(format!("D_{name}^{}", o[axis]));
                    }
                }
                factors.join("·")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> CoordFunction {
        CoordFunction::var(Var::X)
    }

    #[test]
    fn derivative_of_rational() {
        let f = x().inv().unwrap();
        assert_eq!(derivative(&f, 0), -&x().pow(-2).unwrap());
    }

    #[test]
    fn shift_of_symbol_and_polynomial() {
        let a = symbol('a');
        let shifted = shift(&a, 0, &Scalar::lambda());
        assert_eq!(shifted.to_string(), "a(x+lam,y)");
        let f = &x() * &x();
        let g = shift(&f, 0, &Scalar::lambda());
        assert_eq!(g, &(&x() + &Scalar::lambda()) * &(&x() + &Scalar::lambda()));
    }

    #[test]
    fn derivative_of_symbol() {
        let a = symbol('a');
        assert_eq!(nth_derivative(&a, 0, 2).to_string(), "a''");
    }

    #[test]
    fn difference_operator() {
        // (T_λ − 1)/λ applied to x² is 2x + λ
        let op = DiffOp::shift(0, Scalar::lambda()).add(&DiffOp::identity().scale(&Scalar::from_i64(-1)));
        let op = op.scale(&Scalar::lambda().inv().unwrap());
        let got = op.apply(&(&x() * &x()));
        assert_eq!(got, &(&x() * &Scalar::from_i64(2)) + &Scalar::lambda());
    }
}
