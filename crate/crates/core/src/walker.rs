//! Walker metrics `g = [[0,0,1],[0,ε,0],[1,0,f]]` in three dimensions:
//! metric, connection, curvature, Ricci data and Segre type.
//!
//! Curvature uses `R(X,Y)Z = ∇_[X,Y]Z − ∇_X∇_YZ + ∇_Y∇_XZ`, the negative of
//! the more common convention. The Ricci tensor is `ρ(Y,Z) = tr(X ↦ R(X,Y)Z)`
//! taken with that sign, so that `ρ₁₃ = ½f_xx`.

use std::fmt;

use serde::Serialize;

use crate::field::{EvalError, Jet3, ScalarField, Var};
use crate::linalg::{self, Mat3, Vec3};
use crate::sampling::{zero_on, Domain, Point3, SampleSet, SamplingConfig, SamplingError, Witness, ZeroVerdict};
use crate::scalar::Scalar;

const X: Var = Var::X;
const Y: Var = Var::Y;
const Z: Var = Var::Z;

#[derive(Debug, Clone, PartialEq)]
pub enum GeometryError {
    /// The operation is only defined for `ε = +1`.
    RequiresPositiveEpsilon,
    OutsideDomain([f64; 3]),
    Eval(EvalError),
    Sampling(SamplingError),
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::RequiresPositiveEpsilon => write!(f, "operation requires epsilon = +1"),
            GeometryError::OutsideDomain(p) => {
                write!(f, "point ({}, {}, {}) lies outside the domain", p[0], p[1], p[2])
            }
            GeometryError::Eval(e) => write!(f, "{e}"),
            GeometryError::Sampling(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for GeometryError {}

impl From<EvalError> for GeometryError {
    fn from(e: EvalError) -> Self {
        GeometryError::Eval(e)
    }
}

impl From<SamplingError> for GeometryError {
    fn from(e: SamplingError) -> Self {
        GeometryError::Sampling(e)
    }
}

/// Metric components and the inverse metric at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metric<T> {
    pub g: Mat3<T>,
    pub inv: Mat3<T>,
}

impl<T: Scalar> Metric<T> {
    pub fn from_f(f: T, epsilon: i8) -> Self {
        let (o, l) = (T::zero(), T::one());
        let e = T::lit(f64::from(epsilon));
        Metric { g: [[o, o, l], [o, e, o], [l, o, f]], inv: [[-f, o, l], [o, e, o], [l, o, o]] }
    }

    pub fn inner(&self, u: &Vec3<T>, v: &Vec3<T>) -> T {
        linalg::form(&self.g, u, v)
    }

    /// Covector `g(v, ·)`.
    pub fn lower(&self, v: &Vec3<T>) -> Vec3<T> {
        linalg::mat_vec(&self.g, v)
    }

    pub fn raise(&self, w: &Vec3<T>) -> Vec3<T> {
        linalg::mat_vec(&self.inv, w)
    }
}

/// Levi-Civita connection: `gamma[k][i][j] = Γ^k_ij`, so that
/// `∇_{∂i} ∂j = Σ_k Γ^k_ij ∂k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Connection<T> {
    pub gamma: [Mat3<T>; 3],
}

impl<T: Scalar> Connection<T> {
    /// Christoffel symbols of the Walker metric from the first jet of `f`.
    pub fn from_f_jet(f: &Jet3<T>) -> Self {
        let half = T::lit(0.5);
        let (fv, fx, fy, fz) = (f.value(), f.d(&[X]), f.d(&[Y]), f.d(&[Z]));
        let mut gamma = [linalg::zero_mat(); 3];
        let mut set = |k: usize, i: usize, j: usize, v: T| {
            gamma[k][i][j] = v;
            gamma[k][j][i] = v;
        };
        set(0, 0, 2, half * fx);
        set(0, 1, 2, half * fy);
        set(0, 2, 2, half * (fv * fx + fz));
        set(1, 2, 2, -half * fy);
        set(2, 2, 2, -half * fx);
        Connection { gamma }
    }

    /// `∇_X Y` for `Y` with constant coefficients.
    pub fn covariant(&self, x: &Vec3<T>, y: &Vec3<T>) -> Vec3<T> {
        let mut out = linalg::zero_vec();
        for (k, slot) in out.iter_mut().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    *slot = *slot + self.gamma[k][i][j] * x[i] * y[j];
                }
            }
        }
        out
    }
}

/// Christoffel symbols as jets (one order below `f`'s jet), for
/// computations that differentiate the connection.
pub fn connection_jets<T: Scalar>(f: &Jet3<T>) -> [[[Jet3<T>; 3]; 3]; 3] {
    let order = f.order().saturating_sub(1);
    let zero = Jet3::constant(T::zero(), order);
    let mut gamma = [[[zero; 3]; 3]; 3];
    let half = T::lit(0.5);
    let (fx, fy, fz) = (f.derivative(X), f.derivative(Y), f.derivative(Z));
    let fv = f.truncate(order);
    let mut set = |k: usize, i: usize, j: usize, v: Jet3<T>| {
        gamma[k][i][j] = v;
        gamma[k][j][i] = v;
    };
    set(0, 0, 2, fx * half);
    set(0, 1, 2, fy * half);
    set(0, 2, 2, (fv * fx + fz) * half);
    set(1, 2, 2, fy * -half);
    set(2, 2, 2, fx * -half);
    gamma
}

/// Curvature: `r[i][j][k][l]` is the `∂l` component of `R(∂i, ∂j)∂k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Curvature<T> {
    pub r: [[[Vec3<T>; 3]; 3]; 3],
}

impl<T: Scalar> Curvature<T> {
    /// Closed-form components from the second jet of `f`.
    pub fn from_f_jet(f: &Jet3<T>) -> Self {
        let half = T::lit(0.5);
        let fv = f.value();
        let fxx = f.d(&[X, X]) * half;
        let fxy = f.d(&[X, Y]) * half;
        let fyy = f.d(&[Y, Y]) * half;
        let o = T::zero();
        let mut r = [[[linalg::zero_vec(); 3]; 3]; 3];
        let mut set = |i: usize, j: usize, k: usize, v: Vec3<T>| {
            r[i][j][k] = v;
            r[j][i][k] = linalg::scale(-T::one(), &v);
        };
        set(0, 2, 0, [-fxx, o, o]);
        set(0, 2, 1, [-fxy, o, o]);
        set(0, 2, 2, [-fv * fxx, fxy, fxx]);
        set(1, 2, 0, [-fxy, o, o]);
        set(1, 2, 1, [-fyy, o, o]);
        set(1, 2, 2, [-fv * fxy, fyy, fxy]);
        Curvature { r }
    }

    /// `R(X, Y)Z`.
    pub fn apply(&self, x: &Vec3<T>, y: &Vec3<T>, z: &Vec3<T>) -> Vec3<T> {
        let mut out = linalg::zero_vec();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let c = x[i] * y[j] * z[k];
                    if c == T::zero() {
                        continue;
                    }
                    out = linalg::add(&out, &linalg::scale(c, &self.r[i][j][k]));
                }
            }
        }
        out
    }

    /// `R(X, Y, Z, W) = g(R(X, Y)Z, W)`.
    pub fn lowered(&self, metric: &Metric<T>, x: &Vec3<T>, y: &Vec3<T>, z: &Vec3<T>, w: &Vec3<T>) -> T {
        metric.inner(&self.apply(x, y, z), w)
    }

    pub fn max_abs(&self) -> T {
        let mut m = T::zero();
        for a in &self.r {
            for b in a {
                for c in b {
                    m = m.max(linalg::max_abs_vec(c));
                }
            }
        }
        m
    }
}

/// Ricci tensor, Ricci operator (`QX = q · X`, `g(QX, Y) = ρ(X, Y)`) and
/// scalar curvature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ricci<T> {
    pub rho: Mat3<T>,
    pub q: Mat3<T>,
    pub scal: T,
}

impl<T: Scalar> Ricci<T> {
    pub fn from_f_jet(f: &Jet3<T>) -> Self {
        let half = T::lit(0.5);
        let o = T::zero();
        let fxx = f.d(&[X, X]) * half;
        let fxy = f.d(&[X, Y]) * half;
        let fyy = f.d(&[Y, Y]) * half;
        let f33 = f.value() * fxx - fyy;
        Ricci { rho: [[o, o, fxx], [o, o, fxy], [fxx, fxy, f33]], q: [[fxx, fxy, -fyy], [o, o, fxy], [o, o, fxx]], scal: fxx + fxx }
    }

    pub fn apply(&self, x: &Vec3<T>) -> Vec3<T> {
        linalg::mat_vec(&self.q, x)
    }
}

/// Ricci-operator type in the Segre classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SegreType {
    Flat,
    #[serde(rename = "Type11_1_degenerate")]
    Type11_1Degenerate,
    Other,
}

/// Eigen-data of `Q` at a point in the degenerate `{11;1}` case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SegreEigen {
    pub point: [f64; 3],
    /// `(λ₁, λ₂ = λ₃)`.
    pub eigenvalues: (f64, f64),
    pub n: Vec3<f64>,
    pub v1: Vec3<f64>,
    pub v2: Vec3<f64>,
    /// Largest of `|QN|`, `|QV_i − λ₂ V_i|`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegreVerdict {
    pub kind: SegreType,
    pub eigen: Option<SegreEigen>,
    /// Point where `f_xy² − f_xx f_yy` fails to vanish, for `Other`.
    pub witness: Option<Witness>,
}

/// Flatness verdict. Curvature depends on `f_xx`, `f_xy`, `f_yy` only;
/// whether `f_zz` also vanishes is recorded separately.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Flatness {
    pub flat: bool,
    pub f_zz_vanishes: bool,
    pub witness: Option<Witness>,
}

/// A 3-dimensional Walker manifold over a sampling domain.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerManifold {
    pub f: ScalarField,
    epsilon: i8,
    pub domain: Domain,
}

impl WalkerManifold {
    /// `epsilon` other than `±1` is rejected.
    pub fn new(f: ScalarField, epsilon: i8, domain: Domain) -> Option<Self> {
        (epsilon == 1 || epsilon == -1).then_some(WalkerManifold { f, epsilon, domain })
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    fn check_point<T: Scalar>(&self, p: &Point3<T>) -> Result<(), GeometryError> {
        let q = Point3::from(p.to_f64());
        if self.domain.contains(&q) {
            Ok(())
        } else {
            Err(GeometryError::OutsideDomain(q.to_f64()))
        }
    }

    fn require_plus(&self) -> Result<(), GeometryError> {
        if self.epsilon == 1 {
            Ok(())
        } else {
            Err(GeometryError::RequiresPositiveEpsilon)
        }
    }

    pub fn f_jet<T: Scalar>(&self, p: &Point3<T>) -> Result<Jet3<T>, GeometryError> {
        self.check_point(p)?;
        Ok(self.f.eval_jet(p, 3)?)
    }

    pub fn metric_at<T: Scalar>(&self, p: &Point3<T>) -> Result<Metric<T>, GeometryError> {
        self.check_point(p)?;
        Ok(Metric::from_f(self.f.eval(p)?, self.epsilon))
    }

    pub fn christoffel_at<T: Scalar>(&self, p: &Point3<T>) -> Result<Connection<T>, GeometryError> {
        self.require_plus()?;
        Ok(Connection::from_f_jet(&self.f_jet(p)?))
    }

    pub fn curvature_at<T: Scalar>(&self, p: &Point3<T>) -> Result<Curvature<T>, GeometryError> {
        self.require_plus()?;
        Ok(Curvature::from_f_jet(&self.f_jet(p)?))
    }

    pub fn ricci_at<T: Scalar>(&self, p: &Point3<T>) -> Result<Ricci<T>, GeometryError> {
        self.require_plus()?;
        Ok(Ricci::from_f_jet(&self.f_jet(p)?))
    }

    pub fn samples(&self, cfg: &SamplingConfig) -> Result<SampleSet, GeometryError> {
        Ok(SampleSet::draw(&self.domain, cfg.samples, cfg.seed, &[&self.f])?)
    }

    fn zero(&self, e: &ScalarField, cfg: &SamplingConfig) -> Result<ZeroVerdict, GeometryError> {
        Ok(zero_on(e, &self.samples(cfg)?, cfg.tol))
    }

    /// Flat iff `f_xx`, `f_xy` and `f_yy` all vanish on the domain.
    pub fn flatness(&self, cfg: &SamplingConfig) -> Result<Flatness, GeometryError> {
        self.require_plus()?;
        let mut witness = None;
        for vars in [[X, X], [X, Y], [Y, Y]] {
            if let ZeroVerdict::NonZero(w) = self.zero(&self.f.diff_many(&vars), cfg)? {
                witness = Some(w);
                break;
            }
        }
        let f_zz_vanishes = self.zero(&self.f.diff_many(&[Z, Z]), cfg)?.is_zero();
        Ok(Flatness { flat: witness.is_none(), f_zz_vanishes, witness })
    }

    /// Segre type of `Q`, with eigen-data at `p` in the degenerate case.
    pub fn segre_type(&self, cfg: &SamplingConfig, p: &Point3<f64>) -> Result<SegreVerdict, GeometryError> {
        if self.flatness(cfg)?.flat {
            return Ok(SegreVerdict { kind: SegreType::Flat, eigen: None, witness: None });
        }
        let fxx = self.f.diff_many(&[X, X]);
        let disc = self.f.diff_many(&[X, Y]).powi(2) - &fxx * self.f.diff_many(&[Y, Y]);
        if let ZeroVerdict::NonZero(w) = self.zero(&disc, cfg)? {
            return Ok(SegreVerdict { kind: SegreType::Other, eigen: None, witness: Some(w) });
        }
        let jet = self.f_jet(p)?;
        let (a, b) = (jet.d(&[X, X]), jet.d(&[X, Y]));
        if a.abs() <= cfg.tol * (1.0 + jet.max_abs()) {
            let w = Witness { point: p.to_f64(), magnitude: a.abs() };
            return Ok(SegreVerdict { kind: SegreType::Other, eigen: None, witness: Some(w) });
        }
        let ricci = Ricci::from_f_jet(&jet);
        let lambda = 0.5 * a;
        let n = [-b / a, 1.0, 0.0];
        let v1 = [1.0, 0.0, 0.0];
        let v2 = [0.0, b / a, 1.0];
        let mut residual = linalg::max_abs_vec(&ricci.apply(&n));
        for v in [v1, v2] {
            let d = linalg::sub(&ricci.apply(&v), &linalg::scale(lambda, &v));
            residual = residual.max(linalg::max_abs_vec(&d));
        }
        Ok(SegreVerdict {
            kind: SegreType::Type11_1Degenerate,
            eigen: Some(SegreEigen { point: p.to_f64(), eigenvalues: (0.0, lambda), n, v1, v2, residual }),
            witness: None,
        })
    }

    /// Strict Walker iff `f_x` vanishes identically.
    pub fn is_strict_walker(&self, cfg: &SamplingConfig) -> Result<ZeroVerdict, GeometryError> {
        self.zero(&self.f.diff(X), cfg)
    }
}
