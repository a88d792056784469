//! Precedence-aware printer whose output re-parses to the same tree.

use std::fmt;

use num_traits::{One, Signed};

use super::{format_rational, Expr};

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        // A fraction reads back like a quotient, a negative integer like a
        // negation.
        Expr::Num(r) if !r.denom().is_one() => 2,
        Expr::Num(r) if r.is_negative() => 3,
        _ => 5,
    }
}

fn wrapped(f: &mut fmt::Formatter<'_>, e: &Expr, paren: bool) -> fmt::Result {
    if paren {
        f.write_str("(")?;
        write_expr(f, e)?;
        f.write_str(")")
    } else {
        write_expr(f, e)
    }
}

pub(crate) fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Num(r) => f.write_str(&format_rational(r)),
        Expr::Var(v) => write!(f, "{v}"),
        Expr::Const(name, _) => f.write_str(name),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            let (op, p) = match e {
                Expr::Add(..) => (" + ", 1),
                Expr::Sub(..) => (" - ", 1),
                Expr::Mul(..) => (" * ", 2),
                _ => (" / ", 2),
            };
            wrapped(f, a, precedence(a) < p)?;
            f.write_str(op)?;
            wrapped(f, b, precedence(b) <= p)
        }
        Expr::Neg(a) => {
            f.write_str("-")?;
            wrapped(f, a, precedence(a) < 3)
        }
        Expr::Pow(a, n) => {
            wrapped(f, a, precedence(a) < 5)?;
            write!(f, "^{n}")
        }
        Expr::Exp(a) => {
            f.write_str("exp(")?;
            write_expr(f, a)?;
            f.write_str(")")
        }
        Expr::Sqrt(a) => {
            f.write_str("sqrt(")?;
            write_expr(f, a)?;
            f.write_str(")")
        }
    }
}
