//! Exact symbolic partial differentiation.

use std::sync::Arc;

use super::{smart, Expr, ScalarField, Var};

fn d(e: &Arc<Expr>, v: Var) -> Arc<Expr> {
    use smart::*;
    match e.as_ref() {
        Expr::Num(_) | Expr::Const(..) => zero(),
        Expr::Var(w) => int(i64::from(*w == v)),
        Expr::Add(a, b) => add(d(a, v), d(b, v)),
        Expr::Sub(a, b) => sub(d(a, v), d(b, v)),
        Expr::Mul(a, b) => add(mul(d(a, v), b.clone()), mul(a.clone(), d(b, v))),
        Expr::Div(a, b) => {
            let da = d(a, v);
            let db = d(b, v);
            let first = div(da, b.clone());
            let second = div(mul(a.clone(), db), pow(b.clone(), 2));
            sub(first, second)
        }
        Expr::Neg(a) => neg(d(a, v)),
        Expr::Pow(a, n) => {
            let da = d(a, v);
            mul(mul(int(i64::from(*n)), pow(a.clone(), n - 1)), da)
        }
        Expr::Exp(a) => mul(e.clone(), d(a, v)),
        Expr::Sqrt(a) => div(d(a, v), mul(int(2), e.clone())),
    }
}

impl ScalarField {
    /// Exact partial derivative with respect to `v`.
    pub fn diff(&self, v: Var) -> ScalarField {
        ScalarField::from_arc(d(self.arc(), v))
    }

    /// Iterated partial derivative.
    pub fn diff_many(&self, vars: &[Var]) -> ScalarField {
        vars.iter().fold(self.clone(), |acc, v| acc.diff(*v))
    }
}
