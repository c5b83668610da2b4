//! Expression parser shared by scalars, `U_q(su_2)` elements, generator
//! functions and differential forms.
//!
//! Grammar (ASCII, explicit `*` required):
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' unary)?          right associative
//! atom    := INT | IDENT | IDENT '(' sum (',' sum)* ')' | '(' sum ')'
//! ```
//!
//! The same tree is evaluated in different [`Context`]s; products are
//! normalized immediately by the owning module.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::rn::{shift, CalculusSpec, CoordFunction, GeneratorFunction, GradedForm, RnError};
use crate::scalars::{FunSymbol, Scalar, ScalarError, Var};
use crate::uqsu2::{PbwMonomial, UqElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownIdentifier,
    DivisionByZero,
    /// A well-formed expression that has no meaning in the chosen context.
    Type,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{} at column {column}: {message}", kind_name(*.kind))]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

fn kind_name(k: ParseErrorKind) -> &'static str {
    match k {
        ParseErrorKind::Syntax => "syntax error",
        ParseErrorKind::UnknownIdentifier => "unknown identifier",
        ParseErrorKind::DivisionByZero => "division by zero",
        ParseErrorKind::Type => "invalid expression",
    }
}

fn err(kind: ParseErrorKind, pos: usize, message: impl Into<String>) -> ParseError {
    ParseError { kind, column: pos + 1, message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Token::Int(s.parse().expect("digits")), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            while i < chars.len() && (chars[i] == '\'' || chars[i] == '`') {
                i += 1;
            }
            out.push((Token::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^(),".contains(c) {
            out.push((Token::Op(c), i));
            i += 1;
        } else {
            return Err(err(ParseErrorKind::Syntax, i, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Int(BigInt),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

/// A parsed expression with the position of its leading token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub node: Node,
    pub pos: usize,
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<(), ParseError> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected '{op}'")))
        }
    }

    fn unexpected(&self, what: &str) -> ParseError {
        match self.peek() {
            None => err(ParseErrorKind::Syntax, self.end, format!("{what}, found end of input")),
            Some(t) => {
                let shown = match t {
                    Token::Int(n) => n.to_string(),
                    Token::Ident(s) => s.clone(),
                    Token::Op(c) => c.to_string(),
                };
                err(ParseErrorKind::Syntax, self.pos(), format!("{what}, found '{shown}'"))
            }
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            let pos = self.pos();
            let node = if self.eat('+') {
                Node::Add
            } else if self.eat('-') {
                Node::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.product()?;
            lhs = Expr { pos: lhs.pos.min(pos), node: node(Box::new(lhs), Box::new(rhs)) };
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.pos();
            if self.eat('*') {
                let rhs = self.unary()?;
                lhs = Expr { pos: lhs.pos, node: Node::Mul(Box::new(lhs), Box::new(rhs)) };
            } else if self.eat('/') {
                // division errors point at the operator
                let rhs = self.unary()?;
                lhs = Expr { pos, node: Node::Div(Box::new(lhs), Box::new(rhs)) };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        if self.eat('-') {
            let inner = self.unary()?;
            return Ok(Expr { pos, node: Node::Neg(Box::new(inner)) });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let exponent = self.unary()?;
            return Ok(Expr { pos: base.pos, node: Node::Pow(Box::new(base), Box::new(exponent)) });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.at += 1;
                Ok(Expr { pos, node: Node::Int(n) })
            }
            Some(Token::Ident(name)) => {
                self.at += 1;
                if self.eat('(') {
                    let mut args = vec![self.sum()?];
                    while self.eat(',') {
                        args.push(self.sum()?);
                    }
                    self.expect(')')?;
                    Ok(Expr { pos, node: Node::Call(name, args) })
                } else {
                    Ok(Expr { pos, node: Node::Ident(name) })
                }
            }
            Some(Token::Op('(')) => {
                self.at += 1;
                let mut inner = self.sum()?;
                self.expect(')')?;
                inner.pos = pos;
                Ok(inner)
            }
            _ => Err(self.unexpected("expected a number, identifier or '('")),
        }
    }
}

/// Parses `text` into an expression tree.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(text)?;
    let end = text.chars().count();
    let mut p = Parser { tokens, at: 0, end };
    let e = p.sum()?;
    if p.peek().is_some() {
        return Err(p.unexpected("expected an operator"));
    }
    Ok(e)
}

/// An algebra in which expression trees are evaluated.
pub trait Context {
    type Value: Clone;

    fn int(&self, n: &BigInt) -> Self::Value;
    fn ident(&self, name: &str, pos: usize) -> Result<Self::Value, ParseError>;
    fn neg(&self, v: Self::Value) -> Self::Value;
    fn add(&self, a: Self::Value, b: Self::Value, pos: usize) -> Result<Self::Value, ParseError>;
    fn sub(&self, a: Self::Value, b: Self::Value, pos: usize) -> Result<Self::Value, ParseError>;
    fn mul(&self, a: Self::Value, b: Self::Value, pos: usize) -> Result<Self::Value, ParseError>;
    fn div(&self, a: Self::Value, b: Self::Value, pos: usize) -> Result<Self::Value, ParseError>;
    fn pow(&self, base: Self::Value, exponent: Self::Value, pos: usize) -> Result<Self::Value, ParseError>;
    fn call(&self, name: &str, args: Vec<Self::Value>, pos: usize) -> Result<Self::Value, ParseError>;
}

pub fn evaluate<C: Context>(ctx: &C, e: &Expr) -> Result<C::Value, ParseError> {
    let ev = |x: &Expr| evaluate(ctx, x);
    match &e.node {
        Node::Int(n) => Ok(ctx.int(n)),
        Node::Ident(name) => ctx.ident(name, e.pos),
        Node::Neg(a) => Ok(ctx.neg(ev(a)?)),
        Node::Add(a, b) => ctx.add(ev(a)?, ev(b)?, e.pos),
        Node::Sub(a, b) => ctx.sub(ev(a)?, ev(b)?, e.pos),
        Node::Mul(a, b) => ctx.mul(ev(a)?, ev(b)?, e.pos),
        Node::Div(a, b) => ctx.div(ev(a)?, ev(b)?, e.pos),
        Node::Pow(a, b) => ctx.pow(ev(a)?, ev(b)?, b.pos),
        Node::Call(name, args) => {
            let vals = args.iter().map(ev).collect::<Result<Vec<_>, _>>()?;
            ctx.call(name, vals, e.pos)
        }
    }
}

pub fn parse_in<C: Context>(ctx: &C, text: &str) -> Result<C::Value, ParseError> {
    evaluate(ctx, &parse(text)?)
}

fn scalar_err(e: ScalarError, pos: usize) -> ParseError {
    match e {
        ScalarError::DivisionByZero => err(ParseErrorKind::DivisionByZero, pos, "division by zero"),
        other => err(ParseErrorKind::Type, pos, other.to_string()),
    }
}

fn type_err(pos: usize, message: impl Into<String>) -> ParseError {
    err(ParseErrorKind::Type, pos, message)
}

/// `name` followed by `'` (x-derivatives) and `` ` `` (y-derivatives).
fn symbol_of(name: &str) -> Option<FunSymbol> {
    let mut chars = name.chars();
    let head = chars.next()?;
    if !head.is_ascii_lowercase() || "xypq".contains(head) {
        return None;
    }
    let rest: String = chars.collect();
    if !rest.chars().all(|c| c == '\'' || c == '`') {
        return None;
    }
    let mut s = FunSymbol::new(head);
    s.dx = rest.chars().filter(|&c| c == '\'').count() as u8;
    s.dy = rest.chars().filter(|&c| c == '`').count() as u8;
    Some(s)
}

/// Scalar identifiers: `x, y, q, lam, mu` and, if enabled, opaque function symbols.
fn scalar_ident(name: &str, symbols: bool) -> Option<Scalar> {
    Some(match name {
        "x" => Scalar::var(Var::X),
        "y" => Scalar::var(Var::Y),
        "q" => Scalar::q(),
        "lam" => Scalar::lambda(),
        "mu" => Scalar::mu(),
        _ if symbols => Scalar::var(Var::Fun(symbol_of(name)?)),
        _ => return None,
    })
}

fn rational_exponent(e: &Scalar, pos: usize) -> Result<BigRational, ParseError> {
    e.as_rational().ok_or_else(|| type_err(pos, format!("exponent must be a rational constant, got {e}")))
}

fn scalar_pow(base: &Scalar, exponent: &Scalar, pos: usize) -> Result<Scalar, ParseError> {
    let r = rational_exponent(exponent, pos)?;
    if r.is_integer() {
        let n = r.to_integer().to_i64().ok_or_else(|| type_err(pos, "exponent too large"))?;
        return base.pow(n).map_err(|e| scalar_err(e, pos));
    }
    if *r.denom() == BigInt::from(2) && *base == Scalar::q() {
        let n = r.numer().to_i64().ok_or_else(|| type_err(pos, "exponent too large"))?;
        return Ok(Scalar::q_half_pow(n));
    }
    Err(type_err(pos, format!("fractional exponent {r} is only allowed on q")))
}

fn scalar_div(a: &Scalar, b: &Scalar, pos: usize) -> Result<Scalar, ParseError> {
    a.checked_div(b).map_err(|e| scalar_err(e, pos))
}

/// Shifted symbol `a(x + k*lam, y + m*mu)`.
fn shifted_symbol(name: &str, args: &[Scalar], pos: usize) -> Result<Scalar, ParseError> {
    let Some(sym) = symbol_of(name) else {
        return Err(err(ParseErrorKind::UnknownIdentifier, pos, format!("unknown function '{name}'")));
    };
    if args.len() != 2 {
        return Err(type_err(pos, format!("'{name}' takes the arguments (x + k*lam, y + m*mu)")));
    }
    let mut f = Scalar::var(Var::Fun(sym));
    for (axis, (arg, (coord, step))) in args.iter().zip([(Var::X, Scalar::lambda()), (Var::Y, Scalar::mu())]).enumerate() {
        let offset = arg - &Scalar::var(coord);
        let k = (&offset / &step).as_rational().filter(|r| r.is_integer());
        if k.is_none() {
            return Err(type_err(pos, format!("argument {arg} is not a lattice shift of {coord}")));
        }
        f = shift(&f, axis, &offset);
    }
    Ok(f)
}

/// Rational functions in `x, y, q, lam, mu`; function symbols such as `a`,
/// `b'`, `a(x+lam,y)` when `symbols` is set.
#[derive(Clone, Copy, Debug, Default)]
pub struct ScalarContext {
    pub symbols: bool,
}

impl Context for ScalarContext {
    type Value = Scalar;

    fn int(&self, n: &BigInt) -> Scalar {
        Scalar::from_rational(&BigRational::from_integer(n.clone()))
    }

    fn ident(&self, name: &str, pos: usize) -> Result<Scalar, ParseError> {
        scalar_ident(name, self.symbols).ok_or_else(|| err(ParseErrorKind::UnknownIdentifier, pos, format!("unknown identifier '{name}'")))
    }

    fn neg(&self, v: Scalar) -> Scalar {
        -v
    }

    fn add(&self, a: Scalar, b: Scalar, _: usize) -> Result<Scalar, ParseError> {
        Ok(&a + &b)
    }

    fn sub(&self, a: Scalar, b: Scalar, _: usize) -> Result<Scalar, ParseError> {
        Ok(&a - &b)
    }

    fn mul(&self, a: Scalar, b: Scalar, _: usize) -> Result<Scalar, ParseError> {
        Ok(&a * &b)
    }

    fn div(&self, a: Scalar, b: Scalar, pos: usize) -> Result<Scalar, ParseError> {
        scalar_div(&a, &b, pos)
    }

    fn pow(&self, base: Scalar, exponent: Scalar, pos: usize) -> Result<Scalar, ParseError> {
        scalar_pow(&base, &exponent, pos)
    }

    fn call(&self, name: &str, args: Vec<Scalar>, pos: usize) -> Result<Scalar, ParseError> {
        if !self.symbols {
            return Err(err(ParseErrorKind::UnknownIdentifier, pos, format!("unknown function '{name}'")));
        }
        shifted_symbol(name, &args, pos)
    }
}

/// Elements of `U_q(su_2)` in `Xp, K, Xm` with coefficients in ℚ(q^{1/2}).
#[derive(Clone, Copy, Debug, Default)]
pub struct UqContext;

fn as_scalar(u: &UqElement) -> Option<Scalar> {
    match u.terms().count() {
        0 => Some(Scalar::zero()),
        1 => {
            let (m, c) = u.terms().next()?;
            m.is_one().then(|| c.clone())
        }
        _ => None,
    }
}

impl Context for UqContext {
    type Value = UqElement;

    fn int(&self, n: &BigInt) -> UqElement {
        UqElement::scalar(ScalarContext::default().int(n))
    }

    fn ident(&self, name: &str, pos: usize) -> Result<UqElement, ParseError> {
        match name {
            "Xp" => Ok(UqElement::x_plus()),
            "Xm" => Ok(UqElement::x_minus()),
            "K" => Ok(UqElement::k()),
            _ => ScalarContext::default().ident(name, pos).map(UqElement::scalar),
        }
    }

    fn neg(&self, v: UqElement) -> UqElement {
        -&v
    }

    fn add(&self, a: UqElement, b: UqElement, _: usize) -> Result<UqElement, ParseError> {
        Ok(&a + &b)
    }

    fn sub(&self, a: UqElement, b: UqElement, _: usize) -> Result<UqElement, ParseError> {
        Ok(&a - &b)
    }

    fn mul(&self, a: UqElement, b: UqElement, _: usize) -> Result<UqElement, ParseError> {
        Ok(a.multiply(&b))
    }

    fn div(&self, a: UqElement, b: UqElement, pos: usize) -> Result<UqElement, ParseError> {
        let d = as_scalar(&b).ok_or_else(|| type_err(pos, "can only divide by scalars"))?;
        Ok(a.scale(&d.inv().map_err(|e| scalar_err(e, pos))?))
    }

    fn pow(&self, base: UqElement, exponent: UqElement, pos: usize) -> Result<UqElement, ParseError> {
        let e = as_scalar(&exponent).ok_or_else(|| type_err(pos, "exponent must be a rational constant"))?;
        if let Some(s) = as_scalar(&base) {
            return Ok(UqElement::scalar(scalar_pow(&s, &e, pos)?));
        }
        let r = rational_exponent(&e, pos)?;
        let n = r.to_integer().to_i64().filter(|_| r.is_integer()).ok_or_else(|| type_err(pos, "exponent must be an integer"))?;
        if n >= 0 {
            return Ok(base.pow(n as u32));
        }
        // only c·K^b is invertible among PBW monomials
        let mut terms = base.terms();
        match (terms.next(), terms.next()) {
            (Some((m, c)), None) if m.plus == 0 && m.minus == 0 => {
                let k = m.k.checked_mul(n as i32).ok_or_else(|| type_err(pos, "exponent too large"))?;
                let coeff = c.pow(n).map_err(|e| scalar_err(e, pos))?;
                Ok(UqElement::term(PbwMonomial::new(0, k, 0), coeff))
            }
            _ => Err(type_err(pos, format!("{base} is not invertible"))),
        }
    }

    fn call(&self, name: &str, _: Vec<UqElement>, pos: usize) -> Result<UqElement, ParseError> {
        Err(err(ParseErrorKind::UnknownIdentifier, pos, format!("unknown function '{name}'")))
    }
}

/// Generator functions in the momenta `p` (and `q` when `nvars = 2`), with
/// `exp(r*p)` for exponential terms.
#[derive(Clone, Copy, Debug)]
pub struct GeneratorContext {
    pub nvars: usize,
}

fn generator_constant(g: &GeneratorFunction) -> Option<Scalar> {
    g.terms().all(|(t, _)| t.is_constant()).then(|| g.value_at_zero())
}

impl Context for GeneratorContext {
    type Value = GeneratorFunction;

    fn int(&self, n: &BigInt) -> GeneratorFunction {
        GeneratorFunction::constant(ScalarContext::default().int(n))
    }

    fn ident(&self, name: &str, pos: usize) -> Result<GeneratorFunction, ParseError> {
        match name {
            "p" => Ok(GeneratorFunction::monomial(0, 1)),
            "q" if self.nvars == 2 => Ok(GeneratorFunction::monomial(1, 1)),
            "x" | "y" => Err(err(ParseErrorKind::UnknownIdentifier, pos, format!("'{name}' is not a momentum variable"))),
            _ => ScalarContext::default().ident(name, pos).map(GeneratorFunction::constant),
        }
    }

    fn neg(&self, v: GeneratorFunction) -> GeneratorFunction {
        v.scale(&Scalar::from_i64(-1))
    }

    fn add(&self, a: GeneratorFunction, b: GeneratorFunction, _: usize) -> Result<GeneratorFunction, ParseError> {
        Ok(a.add(&b))
    }

    fn sub(&self, a: GeneratorFunction, b: GeneratorFunction, _: usize) -> Result<GeneratorFunction, ParseError> {
        Ok(a.sub(&b))
    }

    fn mul(&self, a: GeneratorFunction, b: GeneratorFunction, pos: usize) -> Result<GeneratorFunction, ParseError> {
        a.mul(&b).ok_or_else(|| type_err(pos, "products mixing p and q are not supported"))
    }

    fn div(&self, a: GeneratorFunction, b: GeneratorFunction, pos: usize) -> Result<GeneratorFunction, ParseError> {
        let d = generator_constant(&b).ok_or_else(|| type_err(pos, "can only divide by constants"))?;
        Ok(a.scale(&d.inv().map_err(|e| scalar_err(e, pos))?))
    }

    fn pow(&self, base: GeneratorFunction, exponent: GeneratorFunction, pos: usize) -> Result<GeneratorFunction, ParseError> {
        let e = generator_constant(&exponent).ok_or_else(|| type_err(pos, "exponent must be a rational constant"))?;
        if let Some(s) = generator_constant(&base) {
            return Ok(GeneratorFunction::constant(scalar_pow(&s, &e, pos)?));
        }
        let r = rational_exponent(&e, pos)?;
        let n = r.to_integer().to_u32().filter(|_| r.is_integer()).ok_or_else(|| type_err(pos, "exponent must be a nonnegative integer"))?;
        base.pow(n).ok_or_else(|| type_err(pos, "products mixing p and q are not supported"))
    }

    fn call(&self, name: &str, args: Vec<GeneratorFunction>, pos: usize) -> Result<GeneratorFunction, ParseError> {
        if name != "exp" {
            return Err(err(ParseErrorKind::UnknownIdentifier, pos, format!("unknown function '{name}'")));
        }
        let [arg] = args.as_slice() else {
            return Err(type_err(pos, "exp takes one argument"));
        };
        if arg.is_zero() {
            return Ok(GeneratorFunction::constant(Scalar::one()));
        }
        let mut terms = arg.terms();
        match (terms.next(), terms.next()) {
            (Some((t, c)), None) if t.pow == 1 && t.rate.is_zero() => Ok(GeneratorFunction::exp(t.axis, c.clone())),
            _ => Err(type_err(pos, format!("exp expects rate*p, got {arg}"))),
        }
    }
}

/// Either a coordinate function or a differential form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormValue {
    Function(CoordFunction),
    Form(GradedForm),
}

impl FormValue {
    pub fn into_form(self) -> GradedForm {
        match self {
            FormValue::Function(f) => GradedForm::function(f),
            FormValue::Form(phi) => phi,
        }
    }
}

/// Functions and forms over a calculus: basis 1-forms by name (`dx`, `dy`,
/// `w`), `*` for module actions, `^` for the wedge product and `d(...)` for
/// the exterior derivative.
#[derive(Clone, Copy, Debug)]
pub struct FormContext<'a> {
    pub spec: &'a CalculusSpec,
}

fn rn_err(e: RnError, pos: usize) -> ParseError {
    type_err(pos, e.to_string())
}

impl FormContext<'_> {
    fn combine(&self, a: FormValue, b: FormValue, pos: usize, negate: bool) -> Result<FormValue, ParseError> {
        match (a, b) {
            (FormValue::Function(f), FormValue::Function(g)) => Ok(FormValue::Function(if negate { &f - &g } else { &f + &g })),
            (a, b) => {
                let (fa, fb) = (a.into_form(), b.into_form());
                // a literal 0 adds to forms of any degree
                let fa = if fa.degree == 0 && fa.is_zero() { GradedForm::zero(self.spec, fb.degree).map_err(|e| rn_err(e, pos))? } else { fa };
                let fb = if fb.degree == 0 && fb.is_zero() { GradedForm::zero(self.spec, fa.degree).map_err(|e| rn_err(e, pos))? } else { fb };
                let r = if negate { fa.sub(&fb) } else { fa.add(&fb) };
                r.map(FormValue::Form).map_err(|e| rn_err(e, pos))
            }
        }
    }
}

impl Context for FormContext<'_> {
    type Value = FormValue;

    fn int(&self, n: &BigInt) -> FormValue {
        FormValue::Function(ScalarContext::default().int(n))
    }

    fn ident(&self, name: &str, pos: usize) -> Result<FormValue, ParseError> {
        if let Some(i) = self.spec.form_index(name) {
            let phi = GradedForm::basis(self.spec, 1, i, CoordFunction::one()).map_err(|e| rn_err(e, pos))?;
            return Ok(FormValue::Form(phi));
        }
        ScalarContext { symbols: true }.ident(name, pos).map(FormValue::Function)
    }

    fn neg(&self, v: FormValue) -> FormValue {
        match v {
            FormValue::Function(f) => FormValue::Function(-f),
            FormValue::Form(phi) => FormValue::Form(phi.neg()),
        }
    }

    fn add(&self, a: FormValue, b: FormValue, pos: usize) -> Result<FormValue, ParseError> {
        self.combine(a, b, pos, false)
    }

    fn sub(&self, a: FormValue, b: FormValue, pos: usize) -> Result<FormValue, ParseError> {
        self.combine(a, b, pos, true)
    }

    fn mul(&self, a: FormValue, b: FormValue, pos: usize) -> Result<FormValue, ParseError> {
        match (a, b) {
            (FormValue::Function(f), FormValue::Function(g)) => Ok(FormValue::Function(&f * &g)),
            (FormValue::Function(f), FormValue::Form(phi)) => self.spec.left_mult(&f, &phi).map(FormValue::Form).map_err(|e| rn_err(e, pos)),
            (FormValue::Form(phi), FormValue::Function(f)) => Ok(FormValue::Form(phi.right_mult(&f))),
            (FormValue::Form(_), FormValue::Form(_)) => Err(type_err(pos, "use '^' for the product of two forms")),
        }
    }

    fn div(&self, a: FormValue, b: FormValue, pos: usize) -> Result<FormValue, ParseError> {
        let FormValue::Function(g) = b else {
            return Err(type_err(pos, "cannot divide by a form"));
        };
        let inv = g.inv().map_err(|e| scalar_err(e, pos))?;
        self.mul(a, FormValue::Function(inv), pos)
    }

    fn pow(&self, base: FormValue, exponent: FormValue, pos: usize) -> Result<FormValue, ParseError> {
        match (base, exponent) {
            (FormValue::Function(f), FormValue::Function(e)) => Ok(FormValue::Function(scalar_pow(&f, &e, pos)?)),
            (FormValue::Form(phi), FormValue::Form(chi)) => self.spec.wedge(&phi, &chi).map(FormValue::Form).map_err(|e| rn_err(e, pos)),
            (FormValue::Function(f), FormValue::Form(chi)) => self.spec.left_mult(&f, &chi).map(FormValue::Form).map_err(|e| rn_err(e, pos)),
            (FormValue::Form(phi), FormValue::Function(e)) => {
                let r = rational_exponent(&e, pos)?;
                let n = r.to_integer().to_u32().filter(|n| r.is_integer() && *n >= 1).ok_or_else(|| type_err(pos, "wedge powers must be positive integers"))?;
                let mut acc = phi.clone();
                for _ in 1..n {
                    acc = self.spec.wedge(&acc, &phi).map_err(|e| rn_err(e, pos))?;
                }
                Ok(FormValue::Form(acc))
            }
        }
    }

    fn call(&self, name: &str, args: Vec<FormValue>, pos: usize) -> Result<FormValue, ParseError> {
        if name == "d" {
            let [arg] = <[FormValue; 1]>::try_from(args).map_err(|_| type_err(pos, "d takes one argument"))?;
            let phi = arg.into_form();
            return self.spec.d(&phi).map(FormValue::Form).map_err(|e| rn_err(e, pos));
        }
        let scalars = args
            .into_iter()
            .map(|a| match a {
                FormValue::Function(f) => Ok(f),
                FormValue::Form(_) => Err(type_err(pos, format!("'{name}' takes functions"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        shifted_symbol(name, &scalars, pos).map(FormValue::Function)
    }
}

/// Parses a coordinate function (symbols allowed).
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    parse_in(&ScalarContext { symbols: true }, text)
}

pub fn parse_uq(text: &str) -> Result<UqElement, ParseError> {
    parse_in(&UqContext, text)
}

pub fn parse_generator(text: &str, nvars: usize) -> Result<GeneratorFunction, ParseError> {
    parse_in(&GeneratorContext { nvars }, text)
}

/// Parses a form; plain functions come back as 0-forms.
pub fn parse_form(spec: &CalculusSpec, text: &str) -> Result<GradedForm, ParseError> {
    parse_in(&FormContext { spec }, text).map(FormValue::into_form)
}

/// Splits a comma-separated list at top-level commas.
pub fn split_list(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    out.push(cur.trim().to_string());
    out
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::Int(n) => write!(f, "{n}"),
            Node::Ident(s) => f.write_str(s),
            Node::Neg(a) => write!(f, "(-{a})"),
            Node::Add(a, b) => write!(f, "({a} + {b})"),
            Node::Sub(a, b) => write!(f, "({a} - {b})"),
            Node::Mul(a, b) => write!(f, "({a} * {b})"),
            Node::Div(a, b) => write!(f, "({a} / {b})"),
            Node::Pow(a, b) => write!(f, "({a} ^ {b})"),
            Node::Call(name, args) => {
                let parts: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                write!(f, "{name}({})", parts.join(", "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rn::symbol;

    fn x() -> Scalar {
        Scalar::var(Var::X)
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(parse("1 - 2 - 3").unwrap().to_string(), "((1 - 2) - 3)");
        assert_eq!(parse("-x^2").unwrap().to_string(), "(-(x ^ 2))");
        assert_eq!(parse("2^3^2").unwrap().to_string(), "(2 ^ (3 ^ 2))");
        assert_eq!(parse("a/b*c").unwrap().to_string(), "((a / b) * c)");
    }

    #[test]
    fn scalar_examples() {
        let v = parse_scalar("x^2 + 3/2").unwrap();
        assert_eq!(v, &(&x() * &x()) + &Scalar::from_ratio(3, 2));
        assert_eq!(parse_scalar("q^(1/2)*q^(1/2)").unwrap(), Scalar::q());
        assert_eq!(parse_scalar("q^-2").unwrap(), Scalar::q_pow(-2));
        assert_eq!(parse_scalar("2^3^2").unwrap(), Scalar::from_i64(512));
    }

    #[test]
    fn uq_examples() {
        let v = parse_uq("Xp*K^-1").unwrap();
        assert_eq!(v, UqElement::x_plus().multiply(&UqElement::k_pow(-1)));
        assert_eq!(v.to_string(), "Xp*K^-1");
        // K Xp = q Xp K
        assert_eq!(parse_uq("K*Xp").unwrap(), UqElement::x_plus().multiply(&UqElement::k()).scale(&Scalar::q()));
        assert_eq!(parse_uq("(q*K^2)^-1").unwrap(), UqElement::k_pow(-2).scale(&Scalar::q_pow(-1)));
    }

    #[test]
    fn generator_examples() {
        let c = parse_generator("p^3/6", 1).unwrap();
        assert_eq!(c, GeneratorFunction::monomial(0, 3).scale(&Scalar::from_ratio(1, 6)));
        let spec = CalculusSpec::from_generator(c, 1).unwrap();
        assert_eq!(spec.dimension(), 2);
        let e = parse_generator("lam^-2*exp(lam*p) + mu^-2*exp(mu*q)", 2).unwrap();
        assert_eq!(e, CalculusSpec::finite_difference_2d().unwrap().generator);
    }

    #[test]
    fn form_examples() {
        let spec = CalculusSpec::jet(2).unwrap();
        let lhs = parse_form(&spec, "x*dx").unwrap();
        let rhs = parse_form(&spec, "dx*x + 2*w").unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(parse_form(&spec, "d(w)").unwrap(), parse_form(&spec, "(dx)^2").unwrap());
        assert_eq!(parse_form(&spec, "w^dx").unwrap(), parse_form(&spec, "-dx^w").unwrap());
        assert!(parse_form(&spec, "w^w").unwrap().is_zero());
        let fd = CalculusSpec::finite_difference_2d().unwrap();
        let moved = parse_form(&fd, "a*dx").unwrap();
        assert_eq!(moved.coeffs[0], shift(&symbol('a'), 0, &Scalar::lambda()));
    }

    #[test]
    fn symbols_round_trip() {
        for text in ["a'(x+lam,y)", "b``(x-2*lam,y+mu)", "a*s - s' + t"] {
            let v = parse_scalar(text).unwrap();
            assert_eq!(parse_scalar(&v.to_string()).unwrap(), v, "{text}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_scalar("x + * 2").unwrap_err();
        assert_eq!((e.kind, e.column), (ParseErrorKind::Syntax, 5));
        let e = parse_uq("Xp * Z").unwrap_err();
        assert_eq!((e.kind, e.column), (ParseErrorKind::UnknownIdentifier, 6));
        let e = parse_scalar("x/(1 - 1)").unwrap_err();
        assert_eq!((e.kind, e.column), (ParseErrorKind::DivisionByZero, 2));
        let e = parse_scalar("(x + 1").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Syntax);
        assert!(parse_scalar("x y").is_err());
    }

    #[test]
    fn list_splitting() {
        assert_eq!(split_list("1/x, -2/x^2"), vec!["1/x", "-2/x^2"]);
        assert_eq!(split_list("a(x+lam,y), b"), vec!["a(x+lam,y)", "b"]);
    }
}
