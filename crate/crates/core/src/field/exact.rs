//! Exact rational evaluation for expressions without `exp` and `sqrt`.

use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};

use super::{Expr, ScalarField};

/// Outcome of an exact evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum Exact {
    Value(BigRational),
    /// A division by zero occurred at this point.
    Undefined,
    /// The expression contains a transcendental function.
    NotRational,
}

fn eval(e: &Expr, p: &[BigRational; 3]) -> Exact {
    use Exact::*;
    let two = |a: &Expr, b: &Expr| -> Result<(BigRational, BigRational), Exact> {
        match (eval(a, p), eval(b, p)) {
            (Value(x), Value(y)) => Ok((x, y)),
            (NotRational, _) | (_, NotRational) => Err(NotRational),
            _ => Err(Undefined),
        }
    };
    match e {
        Expr::Num(r) | Expr::Const(_, r) => Value(r.clone()),
        Expr::Var(v) => Value(p[v.index()].clone()),
        Expr::Add(a, b) => two(a, b).map_or_else(|e| e, |(x, y)| Value(x + y)),
        Expr::Sub(a, b) => two(a, b).map_or_else(|e| e, |(x, y)| Value(x - y)),
        Expr::Mul(a, b) => two(a, b).map_or_else(|e| e, |(x, y)| Value(x * y)),
        Expr::Div(a, b) => match two(a, b) {
            Ok((_, y)) if y.is_zero() => Undefined,
            Ok((x, y)) => Value(x / y),
            Err(e) => e,
        },
        Expr::Neg(a) => match eval(a, p) {
            Value(x) => Value(-x),
            other => other,
        },
        Expr::Pow(a, n) => match eval(a, p) {
            Value(x) if *n < 0 && x.is_zero() => Undefined,
            Value(x) if *n < 0 => Value(num_traits::pow::pow(x.recip(), n.unsigned_abs() as usize)),
            Value(x) => Value(num_traits::pow::pow(x, *n as usize)),
            other => other,
        },
        Expr::Exp(_) | Expr::Sqrt(_) => NotRational,
    }
}

/// Nearest rational with denominator `1024` to `v`.
pub fn dyadic(v: f64) -> BigRational {
    let scaled = (v * 1024.0).round();
    BigRational::from_f64(scaled).unwrap_or_else(BigRational::zero) / BigRational::from_integer(1024.into())
}

impl ScalarField {
    /// Exact value at a rational point.
    pub fn eval_exact(&self, p: &[BigRational; 3]) -> Exact {
        eval(self.expr(), p)
    }
}
