use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, Poly, Var};
use super::ScalarError;

/// Canonical reduced fraction `num / den` of integer polynomials.
///
/// Invariants: `gcd(num, den) = 1` over ℤ[vars], `den` has a positive leading
/// coefficient, and zero is stored as `0 / 1`. Two equal field elements
/// therefore have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl Default for RationalFunction {
    fn default() -> Self {
        RationalFunction::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RationalFunction { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_i64(n: i64) -> Self {
        RationalFunction { num: Poly::from_i64(n), den: Poly::one() }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_polys(Poly::from_i64(n), Poly::from_i64(d)).expect("nonzero denominator")
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_polys(Poly::constant(r.numer().clone()), Poly::constant(r.denom().clone()))
            .expect("rational denominators are nonzero")
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    /// The deformation parameter `q = (q^{1/2})^2`.
    pub fn q() -> Self {
        Self::from_poly(Poly::term(Monomial::var(Var::SqrtQ, 2), BigInt::one()))
    }

    pub fn sqrt_q() -> Self {
        Self::var(Var::SqrtQ)
    }

    /// `q^{n/2}` for any integer `n`.
    pub fn q_half_pow(n: i64) -> Self {
        let m = Poly::term(Monomial::var(Var::SqrtQ, n.unsigned_abs() as u32), BigInt::one());
        if n >= 0 {
            Self::from_poly(m)
        } else {
            RationalFunction { num: Poly::one(), den: m }
        }
    }

    /// `q^n`.
    pub fn q_pow(n: i64) -> Self {
        Self::q_half_pow(2 * n)
    }

    pub fn lambda() -> Self {
        Self::var(Var::Lambda)
    }

    pub fn mu() -> Self {
        Self::var(Var::Mu)
    }

    pub fn from_polys(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return RationalFunction { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        if den.lead_coeff().is_negative() {
            num = -num;
            den = -den;
        }
        RationalFunction { num, den }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Value as a rational number if no indeterminate occurs.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n, d))
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v.sort();
        v.dedup();
        v
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.lead_coeff().is_negative() {
            num = -num;
            den = -den;
        }
        Ok(RationalFunction { num, den })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = e.unsigned_abs() as u32;
        Ok(RationalFunction { num: base.num.pow(n), den: base.den.pow(n) })
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self * &Self::from_i64(k)
    }

    /// Applies a derivation given by its values on variables (quotient rule).
    pub fn derive(&self, on_var: &impl Fn(Var) -> Poly) -> Self {
        let dn = self.num.derive(on_var);
        if self.den.is_constant() {
            return Self::reduce(dn, self.den.clone());
        }
        let dd = self.den.derive(on_var);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::reduce(num, self.den.pow(2))
    }

    /// Ring substitution of every variable by a polynomial.
    pub fn substitute(&self, on_var: &impl Fn(Var) -> Poly) -> Result<Self, ScalarError> {
        let num = self.num.substitute(on_var);
        let den = self.den.substitute(on_var);
        Self::from_polys(num, den)
    }

    /// Exact evaluation at a point.
    pub fn evaluate(&self, at: &Assignment) -> Result<BigRational, ScalarError> {
        let value = |v: Var, e: u32| at.power(v, e);
        let n = self.num.evaluate(&value).ok_or(ScalarError::Unassigned)?;
        let d = self.den.evaluate(&value).ok_or(ScalarError::Unassigned)?;
        if d.is_zero() {
            return Err(ScalarError::Pole);
        }
        Ok(n / d)
    }

    /// Partial evaluation: substitutes rational values for the assigned
    /// variables and keeps the rest symbolic.
    pub fn specialize(&self, at: &Assignment) -> Result<Self, ScalarError> {
        let part = |p: &Poly| -> Result<(Poly, BigInt), ScalarError> {
            // clear rational denominators as we go
            let mut acc = RationalFunction::zero();
            for (m, c) in p.terms() {
                let mut t = RationalFunction::from_poly(Poly::constant(c.clone()));
                for &(v, e) in m.factors() {
                    match at.power(v, e) {
                        Some(r) => t = &t * &RationalFunction::from_rational(&r),
                        None => t = &t * &RationalFunction::from_poly(Poly::term(Monomial::var(v, e), BigInt::one())),
                    }
                }
                acc = &acc + &t;
            }
            let d = acc.den.as_constant().expect("specialized denominators are constants");
            Ok((acc.num, d))
        };
        let (n, nd) = part(&self.num)?;
        let (d, dd) = part(&self.den)?;
        if d.is_zero() {
            return Err(ScalarError::Pole);
        }
        Self::from_polys(n.scale(&dd), d.scale(&nd))
    }
}

/// Rational values for some of the indeterminates. Assigning `q` fixes every
/// even power of `q^{1/2}`; odd powers then need `q^{1/2}` itself.
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    values: BTreeMap<Var, BigRational>,
    q: Option<BigRational>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn with(mut self, v: Var, value: BigRational) -> Self {
        self.values.insert(v, value);
        self
    }

    pub fn with_q(mut self, value: BigRational) -> Self {
        self.q = Some(value);
        self
    }

    fn power(&self, v: Var, e: u32) -> Option<BigRational> {
        if let Some(r) = self.values.get(&v) {
            return Some(num_traits::pow(r.clone(), e as usize));
        }
        match (v, &self.q) {
            (Var::SqrtQ, Some(q)) if e % 2 == 0 => Some(num_traits::pow(q.clone(), (e / 2) as usize)),
            _ => None,
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_one() {
            return RationalFunction::reduce(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            return RationalFunction::reduce(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RationalFunction::reduce(num, &self.den * &rhs.den);
        }
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RationalFunction::reduce(num, &(&a * &b) * &g)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        // inputs are reduced, so cross-cancellation leaves a reduced result
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let mut num = &n1 * &n2;
        let mut den = &d1 * &d2;
        if den.lead_coeff().is_negative() {
            num = -num;
            den = -den;
        }
        RationalFunction { num, den }
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::checked_div`] to recover.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -self.num, den: self.den }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        RationalFunction::from_i64(n)
    }
}

/// True when the polynomial prints as a single factor that needs no parentheses
/// on the right of `/`.
fn is_atomic(p: &Poly) -> bool {
    if let Some(c) = p.as_constant() {
        return !c.is_negative();
    }
    p.num_terms() == 1
        && p.lead().is_some_and(|(m, c)| c.is_one() && m.factors().len() == 1 && !matches!(m.factors()[0].0, Var::Fun(_)))
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if is_atomic(&self.den) {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RationalFunction {
        RationalFunction::q()
    }
    fn r(n: i64) -> RationalFunction {
        RationalFunction::from_i64(n)
    }

    #[test]
    fn q_plus_inverse() {
        let s = &q() + &q().inv().unwrap();
        let expected = (&q().pow(2).unwrap() + &r(1)) / q();
        assert_eq!(s, expected);
        assert_eq!(s.to_string(), "(q^2 + 1)/q");
    }

    #[test]
    fn inverse_cancels() {
        let a = &q() - &r(1);
        assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn inverse_of_q_minus_q_minus_two() {
        // (q - q^-2)^-1 = q^2/(q^3 - 1)
        let a = &q() - &q().pow(-2).unwrap();
        let expected = RationalFunction::from_polys(
            q().pow(2).unwrap().numer().clone(),
            (&q().pow(3).unwrap() - &r(1)).numer().clone(),
        )
        .unwrap();
        assert_eq!(a.inv().unwrap(), expected);
        assert_eq!(expected.to_string(), "q^2/(q^3 - 1)");
    }

    #[test]
    fn zero_inverse_is_error() {
        assert_eq!(RationalFunction::zero().inv(), Err(ScalarError::DivisionByZero));
        assert!(RationalFunction::from_polys(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn evaluation() {
        let two = BigRational::from_integer(2.into());
        let one = BigRational::one();
        let a = &q().pow(2).unwrap() + &q().pow(-2).unwrap();
        assert_eq!(a.evaluate(&Assignment::new().with_q(one.clone())).unwrap(), two);
        let pole = (&q() - &r(1)).inv().unwrap();
        assert_eq!(pole.evaluate(&Assignment::new().with_q(one)), Err(ScalarError::Pole));
        let b = (&q().pow(2).unwrap() + &r(1)) / q();
        assert_eq!(b.evaluate(&Assignment::new().with_q(two)).unwrap(), BigRational::new(5.into(), 2.into()));
    }

    #[test]
    fn odd_sqrt_power_needs_sqrt_assignment() {
        let s = RationalFunction::sqrt_q();
        assert_eq!(s.evaluate(&Assignment::new().with_q(BigRational::one())), Err(ScalarError::Unassigned));
        let v = s.evaluate(&Assignment::new().with(Var::SqrtQ, BigRational::from_integer(3.into()))).unwrap();
        assert_eq!(v, BigRational::from_integer(3.into()));
    }

    #[test]
    fn canonical_sign() {
        let a = RationalFunction::from_polys(Poly::one(), -Poly::var(Var::X)).unwrap();
        assert_eq!(a.to_string(), "-1/x");
        assert_eq!(a, -&RationalFunction::var(Var::X).inv().unwrap());
    }

    #[test]
    fn specialize_keeps_other_vars() {
        let x = RationalFunction::var(Var::X);
        let l = RationalFunction::lambda();
        let f = (&x + &l) / (&x - &l);
        let half = BigRational::new(1.into(), 2.into());
        let g = f.specialize(&Assignment::new().with(Var::Lambda, half)).unwrap();
        assert_eq!(g, (&(&x * &r(2)) + &r(1)) / (&(&x * &r(2)) - &r(1)));
    }
}
