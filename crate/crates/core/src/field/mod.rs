//! Symbolic scalar fields over the coordinates `x, y, z`.
//!
//! A [`ScalarField`] is an immutable expression tree. It supports exact
//! partial differentiation ([`ScalarField::diff`]), evaluation of third-order
//! jets at a point ([`ScalarField::eval_jet`]), exact evaluation at rational
//! points when the expression is rational, and randomized zero testing (see
//! [`crate::sampling`]).

mod diff;
mod eval;
pub mod exact;
mod jet;
mod parse;
mod print;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use eval::{EvalError, EvalErrorKind};
pub use jet::{Jet3, JET_LEN, MAX_ORDER};
pub use parse::{ParseError, ParseErrorKind};

/// Named constants bound for parsing, by name.
pub type Constants = BTreeMap<String, BigRational>;

/// A coordinate variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Expression tree node. Subtrees are shared through `Arc`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(BigRational),
    Var(Var),
    Const(Arc<str>, BigRational),
    Add(Arc<Expr>, Arc<Expr>),
    Sub(Arc<Expr>, Arc<Expr>),
    Mul(Arc<Expr>, Arc<Expr>),
    Div(Arc<Expr>, Arc<Expr>),
    Neg(Arc<Expr>),
    Pow(Arc<Expr>, i32),
    Exp(Arc<Expr>),
    Sqrt(Arc<Expr>),
}

impl Expr {
    fn as_num(&self) -> Option<&BigRational> {
        match self {
            Expr::Num(r) => Some(r),
            _ => None,
        }
    }

    fn is_num(&self, v: i64) -> bool {
        matches!(self, Expr::Num(r) if *r == BigRational::from_integer(BigInt::from(v)))
    }
}

/// Literal folding only; this is what the parser uses so that printed
/// rationals such as `(3/4)` read back as a single literal.
pub(crate) mod raw {
    use super::*;

    pub fn num(r: BigRational) -> Arc<Expr> {
        Arc::new(Expr::Num(r))
    }

    pub fn binary(op: char, a: Arc<Expr>, b: Arc<Expr>) -> Arc<Expr> {
        if let (Some(x), Some(y)) = (a.as_num(), b.as_num()) {
            match op {
                '+' => return num(x + y),
                '-' => return num(x - y),
                '*' => return num(x * y),
                '/' if !y.is_zero() => return num(x / y),
                _ => {}
            }
        }
        Arc::new(match op {
            '+' => Expr::Add(a, b),
            '-' => Expr::Sub(a, b),
            '*' => Expr::Mul(a, b),
            '/' => Expr::Div(a, b),
            _ => unreachable!("unknown binary operator {op}"),
        })
    }

    pub fn neg(a: Arc<Expr>) -> Arc<Expr> {
        match a.as_num() {
            Some(x) => num(-x),
            None => Arc::new(Expr::Neg(a)),
        }
    }

    pub fn pow(a: Arc<Expr>, n: i32) -> Arc<Expr> {
        if let Some(x) = a.as_num() {
            if n >= 0 {
                return num(num_traits::pow::pow(x.clone(), n as usize));
            }
            if !x.is_zero() {
                return num(num_traits::pow::pow(x.recip(), n.unsigned_abs() as usize));
            }
        }
        Arc::new(Expr::Pow(a, n))
    }
}

/// Simplifying constructors used by differentiation and the operator impls.
pub(crate) mod smart {
    use super::*;

    pub fn zero() -> Arc<Expr> {
        raw::num(BigRational::zero())
    }

    pub fn int(v: i64) -> Arc<Expr> {
        raw::num(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn add(a: Arc<Expr>, b: Arc<Expr>) -> Arc<Expr> {
        if a.is_num(0) {
            return b;
        }
        if b.is_num(0) {
            return a;
        }
        raw::binary('+', a, b)
    }

    pub fn sub(a: Arc<Expr>, b: Arc<Expr>) -> Arc<Expr> {
        if b.is_num(0) {
            return a;
        }
        if a.is_num(0) {
            return neg(b);
        }
        raw::binary('-', a, b)
    }

    pub fn mul(a: Arc<Expr>, b: Arc<Expr>) -> Arc<Expr> {
        if a.is_num(0) || b.is_num(0) {
            return zero();
        }
        if a.is_num(1) {
            return b;
        }
        if b.is_num(1) {
            return a;
        }
        if a.is_num(-1) {
            return neg(b);
        }
        if b.is_num(-1) {
            return neg(a);
        }
        raw::binary('*', a, b)
    }

    pub fn div(a: Arc<Expr>, b: Arc<Expr>) -> Arc<Expr> {
        if a.is_num(0) && !b.is_num(0) {
            return zero();
        }
        if b.is_num(1) {
            return a;
        }
        raw::binary('/', a, b)
    }

    pub fn neg(a: Arc<Expr>) -> Arc<Expr> {
        if let Expr::Neg(inner) = a.as_ref() {
            return inner.clone();
        }
        raw::neg(a)
    }

    pub fn pow(a: Arc<Expr>, n: i32) -> Arc<Expr> {
        match n {
            0 => int(1),
            1 => a,
            _ => raw::pow(a, n),
        }
    }
}

/// An immutable symbolic scalar field in `x, y, z`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    root: Arc<Expr>,
}

impl ScalarField {
    pub(crate) fn from_arc(root: Arc<Expr>) -> Self {
        ScalarField { root }
    }

    /// Parses `source` with the given constant bindings.
    pub fn parse(source: &str, constants: &Constants) -> Result<Self, ParseError> {
        parse::parse(source, constants).map(Self::from_arc)
    }

    pub fn expr(&self) -> &Expr {
        &self.root
    }

    pub(crate) fn arc(&self) -> &Arc<Expr> {
        &self.root
    }

    pub fn constant(value: BigRational) -> Self {
        Self::from_arc(raw::num(value))
    }

    pub fn int(v: i64) -> Self {
        Self::from_arc(smart::int(v))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn var(v: Var) -> Self {
        Self::from_arc(Arc::new(Expr::Var(v)))
    }

    pub fn powi(&self, n: i32) -> Self {
        Self::from_arc(smart::pow(self.root.clone(), n))
    }

    pub fn exp(&self) -> Self {
        Self::from_arc(Arc::new(Expr::Exp(self.root.clone())))
    }

    pub fn sqrt(&self) -> Self {
        Self::from_arc(Arc::new(Expr::Sqrt(self.root.clone())))
    }

    /// Literal value if the whole tree is a single rational literal.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.root.as_num()
    }

    pub fn is_literal_zero(&self) -> bool {
        self.root.is_num(0)
    }

    /// True when the tree uses only field operations (no `exp`/`sqrt`), so
    /// exact rational evaluation applies.
    pub fn is_rational(&self) -> bool {
        fn walk(e: &Expr) -> bool {
            match e {
                Expr::Num(_) | Expr::Var(_) | Expr::Const(..) => true,
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => walk(a) && walk(b),
                Expr::Neg(a) | Expr::Pow(a, _) => walk(a),
                Expr::Exp(_) | Expr::Sqrt(_) => false,
            }
        }
        walk(&self.root)
    }

    /// Number of nodes, counting shared subtrees once per reference.
    pub fn size(&self) -> usize {
        fn walk(e: &Expr) -> usize {
            match e {
                Expr::Num(_) | Expr::Var(_) | Expr::Const(..) => 1,
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => 1 + walk(a) + walk(b),
                Expr::Neg(a) | Expr::Pow(a, _) | Expr::Exp(a) | Expr::Sqrt(a) => 1 + walk(a),
            }
        }
        walk(&self.root)
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::write_expr(f, &self.root)
    }
}

macro_rules! field_binop {
    ($trait:ident, $method:ident, $ctor:path) => {
        impl std::ops::$trait<ScalarField> for ScalarField {
            type Output = ScalarField;
            fn $method(self, rhs: ScalarField) -> ScalarField {
                ScalarField::from_arc($ctor(self.root, rhs.root))
            }
        }
        impl std::ops::$trait<&ScalarField> for &ScalarField {
            type Output = ScalarField;
            fn $method(self, rhs: &ScalarField) -> ScalarField {
                ScalarField::from_arc($ctor(self.root.clone(), rhs.root.clone()))
            }
        }
        impl std::ops::$trait<&ScalarField> for ScalarField {
            type Output = ScalarField;
            fn $method(self, rhs: &ScalarField) -> ScalarField {
                ScalarField::from_arc($ctor(self.root, rhs.root.clone()))
            }
        }
        impl std::ops::$trait<ScalarField> for &ScalarField {
            type Output = ScalarField;
            fn $method(self, rhs: ScalarField) -> ScalarField {
                ScalarField::from_arc($ctor(self.root.clone(), rhs.root))
            }
        }
        impl std::ops::$trait<i64> for &ScalarField {
            type Output = ScalarField;
            fn $method(self, rhs: i64) -> ScalarField {
                ScalarField::from_arc($ctor(self.root.clone(), smart::int(rhs)))
            }
        }
        impl std::ops::$trait<i64> for ScalarField {
            type Output = ScalarField;
            fn $method(self, rhs: i64) -> ScalarField {
                ScalarField::from_arc($ctor(self.root, smart::int(rhs)))
            }
        }
        impl std::ops::$trait<&ScalarField> for i64 {
            type Output = ScalarField;
            fn $method(self, rhs: &ScalarField) -> ScalarField {
                ScalarField::from_arc($ctor(smart::int(self), rhs.root.clone()))
            }
        }
        impl std::ops::$trait<ScalarField> for i64 {
            type Output = ScalarField;
            fn $method(self, rhs: ScalarField) -> ScalarField {
                ScalarField::from_arc($ctor(smart::int(self), rhs.root))
            }
        }
    };
}

field_binop!(Add, add, smart::add);
field_binop!(Sub, sub, smart::sub);
field_binop!(Mul, mul, smart::mul);
field_binop!(Div, div, smart::div);

impl std::ops::Neg for ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        ScalarField::from_arc(smart::neg(self.root))
    }
}

impl std::ops::Neg for &ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        ScalarField::from_arc(smart::neg(self.root.clone()))
    }
}

/// Parses a rational literal: an optionally signed integer, decimal, or
/// `p/q` fraction.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p = parse_rational(p)?;
        let q = parse_rational(q)?;
        if q.is_zero() {
            return None;
        }
        return Some(p / q);
    }
    let (neg, body) = match t.strip_prefix('-').or_else(|| t.strip_prefix('\u{2212}')) {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let r = parse::decimal_literal(body)?;
    Some(if neg { -r } else { r })
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| if r.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}
