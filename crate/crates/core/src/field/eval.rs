//! Numeric evaluation: plain values, jets, and magnitude estimates.

use std::fmt;
use std::sync::Arc;

use super::{rational_to_f64, Expr, Jet3, ScalarField, Var, MAX_ORDER};
use crate::sampling::Point3;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalErrorKind {
    DivisionByZero,
    SqrtOfNonPositive,
    NonFinite,
}

/// Evaluation failure at a point, naming the offending subexpression.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub subexpression: String,
    pub point: [f64; 3],
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            EvalErrorKind::DivisionByZero => "division by zero",
            EvalErrorKind::SqrtOfNonPositive => "square root of a non-positive value",
            EvalErrorKind::NonFinite => "non-finite value",
        };
        let [x, y, z] = self.point;
        write!(f, "{what} in `{}` at (x, y, z) = ({x}, {y}, {z})", self.subexpression)
    }
}

impl std::error::Error for EvalError {}

struct JetEval<'a, T> {
    point: &'a Point3<T>,
    order: u8,
}

impl<T: Scalar> JetEval<'_, T> {
    fn fail(&self, kind: EvalErrorKind, e: &Arc<Expr>) -> EvalError {
        EvalError { kind, subexpression: ScalarField::from_arc(e.clone()).to_string(), point: self.point.to_f64() }
    }

    fn eval(&self, e: &Arc<Expr>) -> Result<Jet3<T>, EvalError> {
        let out = match e.as_ref() {
            Expr::Num(r) | Expr::Const(_, r) => Jet3::constant(T::lit(rational_to_f64(r)), self.order),
            Expr::Var(v) => Jet3::variable(*v, self.point.coord(*v), self.order),
            Expr::Add(a, b) => self.eval(a)? + self.eval(b)?,
            Expr::Sub(a, b) => self.eval(a)? - self.eval(b)?,
            Expr::Mul(a, b) => self.eval(a)? * self.eval(b)?,
            Expr::Div(a, b) => {
                let num = self.eval(a)?;
                let den = self.eval(b)?;
                if den.value() == T::zero() {
                    return Err(self.fail(EvalErrorKind::DivisionByZero, e));
                }
                num / den
            }
            Expr::Neg(a) => -self.eval(a)?,
            Expr::Pow(a, n) => {
                let base = self.eval(a)?;
                if *n < 0 && base.value() == T::zero() {
                    return Err(self.fail(EvalErrorKind::DivisionByZero, e));
                }
                base.powi(*n)
            }
            Expr::Exp(a) => self.eval(a)?.exp(),
            Expr::Sqrt(a) => {
                let arg = self.eval(a)?;
                // NaN is rejected as well.
                if arg.value().partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
                    return Err(self.fail(EvalErrorKind::SqrtOfNonPositive, e));
                }
                arg.sqrt()
            }
        };
        if !out.is_finite() {
            return Err(self.fail(EvalErrorKind::NonFinite, e));
        }
        Ok(out)
    }
}

/// Value together with a magnitude bound used to scale zero tests: the
/// terms of a sum contribute their magnitudes rather than cancelling.
fn scaled(e: &Expr, p: &[f64; 3]) -> (f64, f64) {
    match e {
        Expr::Num(r) | Expr::Const(_, r) => {
            let v = rational_to_f64(r);
            (v, v.abs())
        }
        Expr::Var(v) => (p[v.index()], p[v.index()].abs()),
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (va, sa) = scaled(a, p);
            let (vb, sb) = scaled(b, p);
            let v = if matches!(e, Expr::Add(..)) { va + vb } else { va - vb };
            (v, sa + sb)
        }
        Expr::Mul(a, b) => {
            let (va, sa) = scaled(a, p);
            let (vb, sb) = scaled(b, p);
            (va * vb, sa * sb)
        }
        Expr::Div(a, b) => {
            let (va, sa) = scaled(a, p);
            let (vb, _) = scaled(b, p);
            (va / vb, sa / vb.abs())
        }
        Expr::Neg(a) => {
            let (v, s) = scaled(a, p);
            (-v, s)
        }
        Expr::Pow(a, n) => {
            let (v, s) = scaled(a, p);
            let s = if *n >= 0 { s.powi(*n) } else { v.abs().powi(*n) };
            (v.powi(*n), s)
        }
        Expr::Exp(a) => {
            let v = scaled(a, p).0.exp();
            (v, v.abs())
        }
        Expr::Sqrt(a) => {
            let v = scaled(a, p).0.sqrt();
            (v, v.abs())
        }
    }
}

impl ScalarField {
    /// Value and partial derivatives up to `order` (clamped to 3) at `p`.
    pub fn eval_jet<T: Scalar>(&self, p: &Point3<T>, order: u8) -> Result<Jet3<T>, EvalError> {
        JetEval { point: p, order: order.min(MAX_ORDER) }.eval(self.arc())
    }

    /// Plain value at `p`.
    pub fn eval<T: Scalar>(&self, p: &Point3<T>) -> Result<T, EvalError> {
        self.eval_jet(p, 0).map(|j| j.value())
    }

    /// Value plus a cancellation-free magnitude, for scaled residual tests.
    /// Domain errors surface as non-finite values.
    pub fn eval_scaled(&self, p: &Point3<f64>) -> (f64, f64) {
        scaled(self.expr(), &p.to_f64())
    }

    /// Symbolic-derivative route used to cross-check jets.
    pub fn eval_partial(&self, p: &Point3<f64>, vars: &[Var]) -> Result<f64, EvalError> {
        self.diff_many(vars).eval(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Constants;
    use num_rational::BigRational;

    fn p(s: &str) -> ScalarField {
        ScalarField::parse(s, &Constants::new()).unwrap()
    }

    #[test]
    fn substitution() {
        let v: f64 = p("x^2 / y^2").eval(&Point3::new(1.0, 2.0, 0.0)).unwrap();
        assert_eq!(v, 0.25);
        let mut c = Constants::new();
        c.insert("C".into(), BigRational::from_integer(1.into()));
        c.insert("C1".into(), BigRational::from_integer(0.into()));
        let e = ScalarField::parse("exp((C*z + C1)/2)", &c).unwrap();
        assert_eq!(e.eval(&Point3::new(0.3, 0.7, 0.0)).unwrap(), 1.0);
    }

    #[test]
    fn jet_of_square() {
        let j = p("x^2").eval_jet(&Point3::new(1.0, 0.0, 0.0), 3).unwrap();
        assert_eq!(j.value(), 1.0);
        assert_eq!(j.d(&[Var::X]), 2.0);
        assert_eq!(j.d(&[Var::X, Var::X]), 2.0);
        assert_eq!(j.d(&[Var::X, Var::X, Var::X]), 0.0);
        assert_eq!(j.d(&[Var::Y]), 0.0);
        assert_eq!(j.d(&[Var::X, Var::Z]), 0.0);
    }

    #[test]
    fn jet_of_quotient() {
        let j = p("x/z").eval_jet(&Point3::new(1.0f64, 0.0, 1.0), 3).unwrap();
        assert!((j.d(&[Var::Z]) + 1.0).abs() < 1e-15);
        assert!((j.d(&[Var::Z, Var::Z]) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn domain_errors_name_subexpression() {
        let err = p("1 + x/(y - 1)").eval(&Point3::new(2.0, 1.0, 0.0)).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::DivisionByZero);
        assert_eq!(err.subexpression, "x / (y - 1)");
        assert_eq!(err.point, [2.0, 1.0, 0.0]);
        let err = p("sqrt(x - 3)").eval(&Point3::new(2.0, 1.0, 0.0)).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::SqrtOfNonPositive);
    }

    #[test]
    fn works_in_single_precision() {
        let j = p("x*y*z").eval_jet(&Point3::new(1.0f32, 2.0, 3.0), 3).unwrap();
        assert_eq!(j.d(&[Var::X, Var::Y, Var::Z]), 1.0f32);
    }
}
