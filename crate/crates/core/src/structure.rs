//! Almost paracontact metric structures `(φ, ξ, η, g)` on a Walker manifold
//! with `ε = +1`, built from the components `(ξ₁, ξ₂, ξ₃)` of the Reeb field.
//!
//! With `ξ = ξ₁∂x + ξ₂∂y + ξ₃∂z` subject to `ξ₂² + fξ₃² + 2ξ₁ξ₃ = 1`:
//!
//! ```text
//! η = ξ₃ dx + ξ₂ dy + (ξ₁ + fξ₃) dz
//!
//!     | −ξ₂   ξ₁ + fξ₃   −fξ₂ |
//! φ = |  ξ₃      0       −ξ₁  |      φ(∂j) = Σ_i φ[i][j] ∂i
//!     |  0      −ξ₃       ξ₂  |
//! ```

use std::fmt;

use serde::Serialize;

use crate::field::{Jet3, ScalarField, Var};
use crate::linalg::{self, Mat3, Vec3};
use crate::sampling::{zero_on, Point3, Residuals, SampleSet, SamplingConfig, Witness, ZeroVerdict};
use crate::scalar::Scalar;
use crate::walker::{connection_jets, Connection, GeometryError, Metric, WalkerManifold};

/// Tolerance for the pointwise structure axioms.
pub const AXIOM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum StructureError {
    /// No almost paracontact metric structure exists for `ε = −1`.
    NonExistence,
    /// `ξ₂² + fξ₃² + 2ξ₁ξ₃ = 1` fails at the witness.
    UnitConstraint(Witness),
    Geometry(GeometryError),
}

impl fmt::Display for StructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureError::NonExistence => {
                write!(f, "no almost paracontact metric structure of this form exists on a Walker manifold with epsilon = -1")
            }
            StructureError::UnitConstraint(w) => write!(
                f,
                "unit constraint xi2^2 + f*xi3^2 + 2*xi1*xi3 = 1 fails at ({}, {}, {}) with residual {:e}",
                w.point[0], w.point[1], w.point[2], w.magnitude
            ),
            StructureError::Geometry(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for StructureError {}

impl From<GeometryError> for StructureError {
    fn from(e: GeometryError) -> Self {
        StructureError::Geometry(e)
    }
}

/// The structure quadruple as symbolic fields.
#[derive(Debug, Clone, PartialEq)]
pub struct ApctStructure {
    pub manifold: WalkerManifold,
    pub xi: [ScalarField; 3],
    pub eta: [ScalarField; 3],
    pub phi: [[ScalarField; 3]; 3],
}

/// The expression whose vanishing is the unit constraint.
pub fn unit_defect(f: &ScalarField, xi: &[ScalarField; 3]) -> ScalarField {
    xi[1].powi(2) + f * xi[2].powi(2) + 2 * (&xi[0] * &xi[2]) - 1
}

impl ApctStructure {
    /// Builds the structure, rejecting `ε = −1` and Reeb fields that are
    /// not unit on the sampled domain.
    pub fn build(manifold: WalkerManifold, xi: [ScalarField; 3], cfg: &SamplingConfig) -> Result<Self, StructureError> {
        if manifold.epsilon() != 1 {
            return Err(StructureError::NonExistence);
        }
        let s = Self::assemble(manifold, xi);
        if let ZeroVerdict::NonZero(w) = zero_on(&unit_defect(&s.manifold.f, &s.xi), &s.samples(cfg)?, cfg.tol) {
            return Err(StructureError::UnitConstraint(w));
        }
        Ok(s)
    }

    /// Assembles `φ` and `η` without checking anything.
    pub fn assemble(manifold: WalkerManifold, xi: [ScalarField; 3]) -> Self {
        let f = &manifold.f;
        let [x1, x2, x3] = &xi;
        let zero = ScalarField::zero();
        let eta = [x3.clone(), x2.clone(), x1 + f * x3];
        let phi = [[-x2, x1 + f * x3, -(f * x2)], [x3.clone(), zero.clone(), -x1], [zero, -x3, x2.clone()]];
        ApctStructure { manifold, xi, eta, phi }
    }

    /// Copy with one entry of `φ` replaced; used to exercise the validator.
    pub fn with_phi_entry(&self, i: usize, j: usize, value: ScalarField) -> Self {
        let mut s = self.clone();
        s.phi[i][j] = value;
        s
    }

    /// Sample points where `f`, `ξ`, `η` and `φ` all evaluate.
    pub fn samples(&self, cfg: &SamplingConfig) -> Result<SampleSet, GeometryError> {
        let mut fields: Vec<&ScalarField> = vec![&self.manifold.f];
        fields.extend(self.xi.iter());
        fields.extend(self.eta.iter());
        fields.extend(self.phi.iter().flatten());
        Ok(SampleSet::draw(&self.manifold.domain, cfg.samples, cfg.seed, &fields)?)
    }

    pub fn frame<T: Scalar>(&self, p: &Point3<T>) -> Result<Frame<T>, GeometryError> {
        Frame::new(self, p)
    }

    /// `∇_X ξ` at `p`.
    pub fn nabla_xi<T: Scalar>(&self, x: &Vec3<T>, p: &Point3<T>) -> Result<Vec3<T>, GeometryError> {
        Ok(self.frame(p)?.nabla_xi(x))
    }

    /// Checks the structure axioms at every sample point.
    pub fn validate_axioms(&self, cfg: &SamplingConfig) -> Result<AxiomReport, GeometryError> {
        let samples = self.samples(cfg)?;
        let mut acc: Vec<(Axiom, Residuals)> = Axiom::ALL.iter().map(|a| (*a, Residuals::new(AXIOM_TOL))).collect();
        for p in &samples.points {
            let fr = self.frame(p)?;
            for (axiom, res) in acc.iter_mut() {
                let (value, scale) = fr.axiom_defect(*axiom);
                res.push(p, value, scale);
            }
        }
        Ok(AxiomReport {
            checks: acc
                .into_iter()
                .map(|(axiom, r)| AxiomCheck { axiom, statement: axiom.statement(), passed: r.is_zero(), witness: r.verdict().witness() })
                .collect(),
        })
    }
}

/// The pointwise structure axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    PhiSquared,
    EtaOfXi,
    PhiOfXi,
    MetricCompatibility,
    EtaIsDual,
    PhiSkew,
    UnitXi,
    XiTransverse,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::PhiSquared,
        Axiom::EtaOfXi,
        Axiom::PhiOfXi,
        Axiom::MetricCompatibility,
        Axiom::EtaIsDual,
        Axiom::PhiSkew,
        Axiom::UnitXi,
        Axiom::XiTransverse,
    ];

    pub fn statement(self) -> &'static str {
        match self {
            Axiom::PhiSquared => "phi^2 = Id - eta (x) xi",
            Axiom::EtaOfXi => "eta(xi) = 1",
            Axiom::PhiOfXi => "phi xi = 0",
            Axiom::MetricCompatibility => "g(phi X, phi Y) = -g(X, Y) + eta(X) eta(Y)",
            Axiom::EtaIsDual => "eta(X) = g(X, xi)",
            Axiom::PhiSkew => "g(phi X, Y) = -g(X, phi Y)",
            Axiom::UnitXi => "g(xi, xi) = 1",
            Axiom::XiTransverse => "xi2 and xi3 do not vanish together",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub statement: &'static str,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks.iter().find(|c| c.axiom == axiom).expect("every axiom is checked")
    }
}

/// Jets of all structure data at one point.
#[derive(Debug, Clone)]
pub struct Frame<T: Scalar> {
    pub point: Point3<T>,
    pub f: Jet3<T>,
    pub xi: [Jet3<T>; 3],
    pub eta: [Jet3<T>; 3],
    pub phi: [[Jet3<T>; 3]; 3],
    pub metric: Metric<T>,
    pub connection: Connection<T>,
    /// Christoffel symbols as second-order jets.
    pub connection_jets: [[[Jet3<T>; 3]; 3]; 3],
}

fn abs_mat<T: Scalar>(m: &Mat3<T>) -> Mat3<T> {
    m.map(|row| row.map(|v| v.abs()))
}

impl<T: Scalar> Frame<T> {
    pub fn new(s: &ApctStructure, p: &Point3<T>) -> Result<Self, GeometryError> {
        let f = s.manifold.f_jet(p)?;
        let jet = |e: &ScalarField| e.eval_jet(p, 3).map_err(GeometryError::from);
        let xi = [jet(&s.xi[0])?, jet(&s.xi[1])?, jet(&s.xi[2])?];
        let eta = [jet(&s.eta[0])?, jet(&s.eta[1])?, jet(&s.eta[2])?];
        let mut phi = [[Jet3::constant(T::zero(), 3); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                phi[i][j] = jet(&s.phi[i][j])?;
            }
        }
        Ok(Frame {
            point: *p,
            metric: Metric::from_f(f.value(), 1),
            connection: Connection::from_f_jet(&f),
            connection_jets: connection_jets(&f),
            f,
            xi,
            eta,
            phi,
        })
    }

    pub fn xi_val(&self) -> Vec3<T> {
        self.xi.map(|j| j.value())
    }

    pub fn eta_val(&self) -> Vec3<T> {
        self.eta.map(|j| j.value())
    }

    pub fn phi_val(&self) -> Mat3<T> {
        self.phi.map(|row| row.map(|j| j.value()))
    }

    pub fn phi_apply(&self, v: &Vec3<T>) -> Vec3<T> {
        linalg::mat_vec(&self.phi_val(), v)
    }

    pub fn eta_apply(&self, v: &Vec3<T>) -> T {
        let e = self.eta_val();
        e[0] * v[0] + e[1] * v[1] + e[2] * v[2]
    }

    /// `∇_X ξ`.
    pub fn nabla_xi(&self, x: &Vec3<T>) -> Vec3<T> {
        let mut out = self.connection.covariant(x, &self.xi_val());
        for (k, slot) in out.iter_mut().enumerate() {
            for (i, v) in Var::ALL.iter().enumerate() {
                *slot = *slot + x[i] * self.xi[k].d(&[*v]);
            }
        }
        out
    }

    /// `(value, scale)` of the worst entry of the axiom's defect.
    pub fn axiom_defect(&self, axiom: Axiom) -> (T, T) {
        let g = self.metric.g;
        let phi = self.phi_val();
        let xi = self.xi_val();
        let eta = self.eta_val();
        let worst = |d: Mat3<T>, s: Mat3<T>| -> (T, T) {
            let mut best = (T::zero(), T::zero());
            for i in 0..3 {
                for j in 0..3 {
                    let r = d[i][j].abs() / (T::one() + s[i][j]);
                    if r >= best.0.abs() / (T::one() + best.1) {
                        best = (d[i][j], s[i][j]);
                    }
                }
            }
            best
        };
        let outer = |a: &Vec3<T>, b: &Vec3<T>| -> Mat3<T> {
            let mut m = linalg::zero_mat();
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] = a[i] * b[j];
                }
            }
            m
        };
        let transpose = |m: &Mat3<T>| -> Mat3<T> {
            let mut t = linalg::zero_mat();
            for i in 0..3 {
                for j in 0..3 {
                    t[i][j] = m[j][i];
                }
            }
            t
        };
        match axiom {
            Axiom::PhiSquared => {
                let lhs = linalg::mat_mul(&phi, &phi);
                let rhs = linalg::mat_sub(&linalg::identity(), &outer(&xi, &eta));
                let scale = linalg::mat_mul(&abs_mat(&phi), &abs_mat(&phi));
                worst(linalg::mat_sub(&lhs, &rhs), scale)
            }
            Axiom::EtaOfXi => {
                let v = self.eta_apply(&xi);
                let s = eta.iter().zip(xi.iter()).fold(T::zero(), |a, (e, x)| a + (*e * *x).abs());
                (v - T::one(), s)
            }
            Axiom::PhiOfXi => {
                let v = self.phi_apply(&xi);
                let s = linalg::mat_vec(&abs_mat(&phi), &xi.map(|x| x.abs()));
                let k = (0..3).max_by(|a, b| v[*a].abs().partial_cmp(&v[*b].abs()).unwrap()).unwrap();
                (v[k], s[k])
            }
            Axiom::MetricCompatibility => {
                let pt = transpose(&phi);
                let lhs = linalg::mat_mul(&pt, &linalg::mat_mul(&g, &phi));
                let mut d = outer(&eta, &eta);
                d = linalg::mat_sub(&lhs, &linalg::mat_sub(&d, &g));
                let a = abs_mat(&phi);
                let scale = linalg::mat_mul(&transpose(&a), &linalg::mat_mul(&abs_mat(&g), &a));
                worst(d, scale)
            }
            Axiom::EtaIsDual => {
                let d = linalg::sub(&eta, &self.metric.lower(&xi));
                let k = (0..3).max_by(|a, b| d[*a].abs().partial_cmp(&d[*b].abs()).unwrap()).unwrap();
                let s = linalg::mat_vec(&abs_mat(&g), &xi.map(|x| x.abs()));
                (d[k], s[k])
            }
            Axiom::PhiSkew => {
                let a = linalg::mat_mul(&transpose(&phi), &g);
                let b = linalg::mat_mul(&g, &phi);
                let mut d = a;
                for i in 0..3 {
                    for j in 0..3 {
                        d[i][j] = a[i][j] + b[i][j];
                    }
                }
                let s = linalg::mat_mul(&abs_mat(&g), &abs_mat(&phi));
                worst(d, s)
            }
            Axiom::UnitXi => {
                let v = self.metric.inner(&xi, &xi);
                let s = linalg::form(&abs_mat(&g), &xi.map(|x| x.abs()), &xi.map(|x| x.abs()));
                (v - T::one(), s)
            }
            Axiom::XiTransverse => {
                let m = xi[1].abs().max(xi[2].abs());
                // Reported as a defect: zero when the condition holds.
                if m > T::lit(AXIOM_TOL) {
                    (T::zero(), T::zero())
                } else {
                    (T::one(), T::zero())
                }
            }
        }
    }
}
