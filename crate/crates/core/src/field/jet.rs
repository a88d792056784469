//! Third-order jets in three variables.
//!
//! A jet stores truncated Taylor coefficients `c_α` for the 20 monomials
//! `x^a y^b z^c` with `a + b + c <= 3`. Partial derivatives are recovered as
//! `∂^α u = α! c_α`, so mixed partials are stored exactly once. Products are
//! Cauchy products truncated at the smaller order of the operands.

use std::fmt;

use super::Var;
use crate::scalar::Scalar;

/// Highest supported derivative order.
pub const MAX_ORDER: u8 = 3;
/// Number of stored coefficients (1 + 3 + 6 + 10).
pub const JET_LEN: usize = 20;

const fn build_monomials() -> [[u8; 3]; JET_LEN] {
    let mut out = [[0u8; 3]; JET_LEN];
    let mut n = 0;
    let mut deg = 0u8;
    while deg <= 3 {
        let mut a = deg as i32;
        while a >= 0 {
            let mut b = deg as i32 - a;
            while b >= 0 {
                let c = deg as i32 - a - b;
                out[n] = [a as u8, b as u8, c as u8];
                n += 1;
                b -= 1;
            }
            a -= 1;
        }
        deg += 1;
    }
    out
}

/// Exponent triples, graded by total degree.
pub(crate) const MONOMIALS: [[u8; 3]; JET_LEN] = build_monomials();

const fn degree(m: [u8; 3]) -> u8 {
    m[0] + m[1] + m[2]
}

const fn index_of(m: [u8; 3]) -> usize {
    let mut i = 0;
    while i < JET_LEN {
        let k = MONOMIALS[i];
        if k[0] == m[0] && k[1] == m[1] && k[2] == m[2] {
            return i;
        }
        i += 1;
    }
    usize::MAX
}

const fn build_products() -> [[u8; JET_LEN]; JET_LEN] {
    let mut out = [[u8::MAX; JET_LEN]; JET_LEN];
    let mut i = 0;
    while i < JET_LEN {
        let mut j = 0;
        while j < JET_LEN {
            let a = MONOMIALS[i];
            let b = MONOMIALS[j];
            let s = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
            if degree(s) <= 3 {
                out[i][j] = index_of(s) as u8;
            }
            j += 1;
        }
        i += 1;
    }
    out
}

/// `PRODUCT[i][j]` is the index of monomial i times monomial j, or `u8::MAX`
/// past degree 3.
const PRODUCT: [[u8; JET_LEN]; JET_LEN] = build_products();

const fn count_upto(order: u8) -> usize {
    match order {
        0 => 1,
        1 => 4,
        2 => 10,
        _ => 20,
    }
}

/// Index of the monomial with exponents `m`.
pub(crate) fn monomial_index(m: [u8; 3]) -> Option<usize> {
    if degree(m) > 3 {
        return None;
    }
    Some(index_of(m))
}

/// Truncated Taylor expansion of a scalar field at a point.
#[derive(Clone, Copy, PartialEq)]
pub struct Jet3<T> {
    order: u8,
    c: [T; JET_LEN],
}

impl<T: Scalar> fmt::Debug for Jet3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Jet3").field("order", &self.order).field("coefficients", &&self.c[..count_upto(self.order)]).finish()
    }
}

impl<T: Scalar> Jet3<T> {
    pub fn constant(value: T, order: u8) -> Self {
        let mut c = [T::zero(); JET_LEN];
        c[0] = value;
        Jet3 { order: order.min(MAX_ORDER), c }
    }

    /// The coordinate function `v` at a point where it takes `value`.
    pub fn variable(v: Var, value: T, order: u8) -> Self {
        let mut j = Self::constant(value, order);
        if j.order >= 1 {
            j.c[1 + v.index()] = T::one();
        }
        j
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn value(&self) -> T {
        self.c[0]
    }

    /// Raw Taylor coefficient of the monomial with exponents `m`.
    pub fn coefficient(&self, m: [u8; 3]) -> T {
        match monomial_index(m) {
            Some(i) if degree(m) <= self.order => self.c[i],
            _ => T::zero(),
        }
    }

    /// Partial derivative along the listed variables (order of the list is
    /// irrelevant). Returns `None` if the jet does not carry that order.
    pub fn partial(&self, vars: &[Var]) -> Option<T> {
        if vars.len() > self.order as usize {
            return None;
        }
        let mut m = [0u8; 3];
        for v in vars {
            m[v.index()] += 1;
        }
        let fact = |k: u8| -> f64 { (1..=k).map(f64::from).product() };
        let scale = fact(m[0]) * fact(m[1]) * fact(m[2]);
        Some(self.c[index_of(m)] * T::lit(scale))
    }

    /// Shorthand for `partial` that panics when the order is missing.
    pub fn d(&self, vars: &[Var]) -> T {
        self.partial(vars).expect("jet order too low for requested partial")
    }

    /// Jet of `∂u/∂v`, one order lower.
    pub fn derivative(&self, v: Var) -> Self {
        let order = self.order.saturating_sub(1);
        let mut c = [T::zero(); JET_LEN];
        if self.order == 0 {
            return Jet3 { order: 0, c };
        }
        for (i, m) in MONOMIALS.iter().enumerate().take(count_upto(order)) {
            let mut up = *m;
            up[v.index()] += 1;
            let k = index_of(up);
            c[i] = self.c[k] * T::lit(f64::from(up[v.index()]));
        }
        Jet3 { order, c }
    }

    /// Drops coefficients above `order`.
    pub fn truncate(&self, order: u8) -> Self {
        let order = order.min(self.order);
        let mut c = self.c;
        for x in c.iter_mut().skip(count_upto(order)) {
            *x = T::zero();
        }
        Jet3 { order, c }
    }

    pub fn scale(&self, s: T) -> Self {
        let mut c = self.c;
        for x in c.iter_mut() {
            *x = *x * s;
        }
        Jet3 { order: self.order, c }
    }

    pub fn add_const(&self, s: T) -> Self {
        let mut out = *self;
        out.c[0] = out.c[0] + s;
        out
    }

    fn zip(&self, other: &Self, op: impl Fn(T, T) -> T) -> Self {
        let order = self.order.min(other.order);
        let mut c = [T::zero(); JET_LEN];
        for (i, x) in c.iter_mut().enumerate().take(count_upto(order)) {
            *x = op(self.c[i], other.c[i]);
        }
        Jet3 { order, c }
    }

    pub fn mul_jet(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let n = count_upto(order);
        let mut c = [T::zero(); JET_LEN];
        for i in 0..n {
            let a = self.c[i];
            if a == T::zero() {
                continue;
            }
            for j in 0..n {
                let k = PRODUCT[i][j];
                if (k as usize) < n {
                    c[k as usize] = c[k as usize] + a * other.c[j];
                }
            }
        }
        Jet3 { order, c }
    }

    /// `g ∘ self` given `g(a), g'(a), g''(a), g'''(a)` at `a = self.value()`.
    pub fn compose(&self, g: [T; 4]) -> Self {
        let mut h = *self;
        h.c[0] = T::zero();
        let mut out = Self::constant(g[0], self.order);
        let mut power = Self::constant(T::one(), self.order);
        let mut fact = 1.0;
        for (k, gk) in g.iter().enumerate().skip(1).take(self.order as usize) {
            power = power.mul_jet(&h);
            fact *= k as f64;
            out = out + power.scale(*gk / T::lit(fact));
        }
        out
    }

    pub fn exp(&self) -> Self {
        let e = self.value().exp();
        self.compose([e, e, e, e])
    }

    /// Square root; the caller must ensure a positive value.
    pub fn sqrt(&self) -> Self {
        let a = self.value();
        let s = a.sqrt();
        let half = T::lit(0.5);
        let d1 = half / s;
        let d2 = -T::lit(0.25) / (a * s);
        let d3 = T::lit(0.375) / (a * a * s);
        self.compose([s, d1, d2, d3])
    }

    /// Reciprocal; the caller must ensure a nonzero value.
    pub fn recip(&self) -> Self {
        let r = self.value().recip();
        let r2 = r * r;
        self.compose([r, -r2, T::lit(2.0) * r2 * r, -T::lit(6.0) * r2 * r2])
    }

    pub fn powi(&self, n: i32) -> Self {
        if n < 0 {
            return self.recip().powi(-n);
        }
        let mut base = *self;
        let mut acc = Self::constant(T::one(), self.order);
        let mut e = n as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_jet(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_jet(&base);
            }
        }
        acc
    }

    pub fn is_finite(&self) -> bool {
        self.c[..count_upto(self.order)].iter().all(|x| x.is_finite())
    }

    /// Largest absolute coefficient among the stored orders.
    pub fn max_abs(&self) -> T {
        self.c[..count_upto(self.order)].iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }

    /// Converts the coefficients to another scalar type.
    pub fn cast<U: Scalar>(&self) -> Jet3<U> {
        let mut c = [U::zero(); JET_LEN];
        for (dst, src) in c.iter_mut().zip(self.c.iter()) {
            *dst = U::lit(src.to_f64_lossy());
        }
        Jet3 { order: self.order, c }
    }
}

impl<T: Scalar> std::ops::Add for Jet3<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.zip(&rhs, |a, b| a + b)
    }
}

impl<T: Scalar> std::ops::Sub for Jet3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.zip(&rhs, |a, b| a - b)
    }
}

impl<T: Scalar> std::ops::Mul for Jet3<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_jet(&rhs)
    }
}

impl<T: Scalar> std::ops::Div for Jet3<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.mul_jet(&rhs.recip())
    }
}

impl<T: Scalar> std::ops::Neg for Jet3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

impl<T: Scalar> std::ops::Mul<T> for Jet3<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        self.scale(rhs)
    }
}
