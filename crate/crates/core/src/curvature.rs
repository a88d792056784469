//! Curvature of the structure: η-Einstein detection, the five-way
//! equivalence for parallel-type curvature, and sectional curvatures.
//!
//! The (0,4) curvature is `R(X,Y,Z,W) = g(R(X,Y)Z, W)` with the sign
//! convention of [`Curvature`], and sectional curvature is
//! `K(X,Y) = R(X,Y,Y,X) / (g(X,X)g(Y,Y) − g(X,Y)²)`. Under this choice the
//! null plane `span{V₁,V₂}` of an η-Einstein structure has `K = −f_xx/2`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{Classification, NamedClass};
use crate::field::{ScalarField, Var};
use crate::linalg::{self, Mat3, Vec3};
use crate::sampling::{zero_on, Point3, Residuals, SampleSet, SamplingConfig, Witness, ZeroVerdict};
use crate::structure::{ApctStructure, Frame};
use crate::walker::{Curvature, GeometryError, Ricci, SegreVerdict};

/// Relative size below which a sectional denominator counts as zero.
pub const DEGENERATE_SECTION_TOL: f64 = 1e-8;

/// Relative size below which `f_xx` counts as vanishing at a point.
pub const DEGENERATE_FXX_TOL: f64 = 1e-8;

const X: Var = Var::X;
const Y: Var = Var::Y;
const Z: Var = Var::Z;

#[derive(Debug, Clone, PartialEq)]
pub enum CurvatureError {
    /// `f_xx` vanishes at some samples but not all, so `−f_xy/f_xx` is
    /// undefined there.
    DegenerateInput {
        what: &'static str,
        witness: Witness,
    },
    DegenerateSection {
        point: [f64; 3],
        denominator: f64,
    },
    /// The report was requested for a structure that is not η-Einstein.
    NotEtaEinstein,
    Geometry(GeometryError),
}

impl fmt::Display for CurvatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvatureError::DegenerateInput { what, witness } => {
                let [x, y, z] = witness.point;
                write!(f, "{what} vanishes at ({x}, {y}, {z}) but not on the whole domain")
            }
            CurvatureError::DegenerateSection { point: [x, y, z], denominator } => {
                write!(f, "degenerate section at ({x}, {y}, {z}): denominator {denominator:e}")
            }
            CurvatureError::NotEtaEinstein => f.write_str("structure is not eta-Einstein"),
            CurvatureError::Geometry(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CurvatureError {}

impl From<GeometryError> for CurvatureError {
    fn from(e: GeometryError) -> Self {
        CurvatureError::Geometry(e)
    }
}

/// Curvature data at one sample point.
#[derive(Debug, Clone)]
struct PointCurvature {
    point: Point3<f64>,
    frame: Frame<f64>,
    curvature: Curvature<f64>,
    ricci: Ricci<f64>,
    /// `(f_xx, f_xy, f_yy)`.
    second: (f64, f64, f64),
    scale: f64,
}

/// Structure, samples and per-point curvature.
#[derive(Debug, Clone)]
pub struct CurvatureSamples<'a> {
    pub structure: &'a ApctStructure,
    pub cfg: SamplingConfig,
    pub samples: SampleSet,
    points: Vec<PointCurvature>,
}

impl<'a> CurvatureSamples<'a> {
    pub fn new(structure: &'a ApctStructure, cfg: &SamplingConfig) -> Result<Self, GeometryError> {
        Self::at(structure, cfg, structure.samples(cfg)?)
    }

    /// Uses the given points instead of drawing samples.
    pub fn at(structure: &'a ApctStructure, cfg: &SamplingConfig, samples: SampleSet) -> Result<Self, GeometryError> {
        let m = &structure.manifold;
        let mut points = Vec::with_capacity(samples.len());
        for p in &samples.points {
            let jet = m.f_jet(p)?;
            let second = (jet.d(&[X, X]), jet.d(&[X, Y]), jet.d(&[Y, Y]));
            points.push(PointCurvature {
                point: *p,
                frame: structure.frame(p)?,
                curvature: m.curvature_at(p)?,
                ricci: m.ricci_at(p)?,
                second,
                scale: 1.0 + jet.max_abs(),
            });
        }
        Ok(CurvatureSamples { structure, cfg: *cfg, samples, points })
    }

    fn zero(&self, e: &ScalarField) -> ZeroVerdict {
        zero_on(e, &self.samples, self.cfg.tol)
    }

    fn zero_by(&self, mut f: impl FnMut(&PointCurvature) -> (f64, f64)) -> ZeroVerdict {
        let mut acc = Residuals::new(self.cfg.tol);
        for d in &self.points {
            let (v, s) = f(d);
            acc.push(&d.point, v, s);
        }
        acc.verdict()
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cfg.seed ^ salt)
    }
}

fn random_vec(rng: &mut ChaCha8Rng) -> Vec3<f64> {
    [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]
}

/// `ρ − (a g + b η⊗η)` with `a = −b = f_xx/2`.
fn eta_einstein_residual(d: &PointCurvature) -> Mat3<f64> {
    let a = 0.5 * d.second.0;
    let g = &d.frame.metric.g;
    let eta = d.frame.eta_val();
    let mut r = d.ricci.rho;
    for i in 0..3 {
        for j in 0..3 {
            r[i][j] -= a * g[i][j] - a * eta[i] * eta[j];
        }
    }
    r
}

fn pointwise_eta_einstein(d: &PointCurvature, tol: f64) -> bool {
    let scale = d.scale * (1.0 + linalg::max_abs_vec(&d.frame.eta_val())).powi(2);
    linalg::max_abs_mat(&eta_einstein_residual(d)) <= tol * scale && d.second.0.abs() > DEGENERATE_FXX_TOL * d.scale
}

fn pointwise_flat(d: &PointCurvature, tol: f64) -> bool {
    let (a, b, c) = d.second;
    a.abs().max(b.abs()).max(c.abs()) <= tol * d.scale
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EtaEinsteinVerdict {
    pub is_eta_einstein: bool,
    /// `a = −b = f_xx/2` pointwise; these are the constant values, present
    /// only when `f_xx` is constant on the domain.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    pub segre: SegreVerdict,
    /// `±1` when `ξ = ±N`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_matches_n: Option<i8>,
    pub residual_route: bool,
    pub condition_route: bool,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Decides `ρ = a g + b η⊗η` by the componentwise residual and by the
/// coordinate conditions `ξ₃ = 0`, `ξ₂ = s`, `ξ₁ f_xx + s f_xy = 0`,
/// `f_xy² = f_xx f_yy`, `f_xx ≠ 0`.
pub fn eta_einstein_check(c: &CurvatureSamples<'_>) -> Result<EtaEinsteinVerdict, CurvatureError> {
    let st = c.structure;
    let f = &st.manifold.f;
    let [x1, x2, x3] = &st.xi;
    let (fxx, fxy, fyy) = (f.diff_many(&[X, X]), f.diff_many(&[X, Y]), f.diff_many(&[Y, Y]));

    // f_xx ≡ 0 rules η-Einstein out; f_xx vanishing on part of the domain is
    // degenerate input for the N-direction.
    let fxx_identically_zero = c.zero(&fxx).is_zero();
    let mut sign = None;
    if c.zero(x3).is_zero() {
        for s in [1i8, -1] {
            if c.zero(&(x2 - i64::from(s))).is_zero() {
                sign = Some(s);
            }
        }
    }
    if sign.is_some() && !fxx_identically_zero {
        if let Some(d) = c.points.iter().find(|d| d.second.0.abs() <= DEGENERATE_FXX_TOL * d.scale) {
            return Err(CurvatureError::DegenerateInput {
                what: "f_xx",
                witness: Witness { point: d.point.to_f64(), magnitude: d.second.0.abs() },
            });
        }
    }

    let tol = c.cfg.tol;
    let residual_witness = c
        .points
        .iter()
        .find(|d| !pointwise_eta_einstein(d, tol))
        .map(|d| Witness { point: d.point.to_f64(), magnitude: linalg::max_abs_mat(&eta_einstein_residual(d)).max(d.second.0.abs()) });
    let residual_route = !fxx_identically_zero && residual_witness.is_none();

    let condition_route = match sign {
        Some(s) if !fxx_identically_zero => {
            c.zero(&(x1 * &fxx + i64::from(s) * &fxy)).is_zero() && c.zero(&(fxy.powi(2) - &fxx * &fyy)).is_zero()
        }
        _ => false,
    };

    let first = &c.points[0];
    let segre = st.manifold.segre_type(&c.cfg, &first.point)?;
    let fxx_constant = [X, Y, Z].iter().all(|v| c.zero(&fxx.diff(*v)).is_zero());
    let a = (residual_route && fxx_constant).then_some(0.5 * first.second.0);
    Ok(EtaEinsteinVerdict {
        is_eta_einstein: residual_route,
        a,
        b: a.map(|a| -a),
        segre,
        xi_matches_n: if condition_route { sign } else { None },
        residual_route,
        condition_route,
        agree: residual_route == condition_route,
        witness: residual_witness,
    })
}

/// Flat or η-Einstein, decided over the whole sampled domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainAlternative {
    Flat,
    EtaEinstein,
    /// Each sample is flat or η-Einstein, but neither holds everywhere.
    Mixed,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceFlag {
    pub statement: &'static str,
    pub value: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EquivalenceState {
    AllTrue,
    AllFalse,
    /// Flat on part of the domain, η-Einstein elsewhere; not asserted.
    Mixed,
    Disagree,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub alternative: DomainAlternative,
    pub flags: Vec<EquivalenceFlag>,
    pub state: EquivalenceState,
}

impl EquivalenceReport {
    pub fn consistent(&self) -> bool {
        self.state != EquivalenceState::Disagree
    }
}

fn flag(statement: &'static str, v: ZeroVerdict) -> EquivalenceFlag {
    EquivalenceFlag { statement, value: v.is_zero(), witness: v.witness() }
}

/// Evaluates the five equivalent conditions independently.
pub fn curvature_equivalences(c: &CurvatureSamples<'_>, ee: &EtaEinsteinVerdict) -> EquivalenceReport {
    let tol = c.cfg.tol;
    let all_flat = c.points.iter().all(|d| pointwise_flat(d, tol));
    let alternative = if all_flat {
        DomainAlternative::Flat
    } else if ee.is_eta_einstein {
        DomainAlternative::EtaEinstein
    } else if c.points.iter().all(|d| pointwise_flat(d, tol) || pointwise_eta_einstein(d, tol)) {
        DomainAlternative::Mixed
    } else {
        DomainAlternative::Neither
    };
    let phi_scale = |d: &PointCurvature| {
        let p = 1.0 + linalg::max_abs_mat(&d.frame.phi_val());
        d.scale * p * p
    };

    let commute = c.zero_by(|d| {
        let (q, phi) = (&d.ricci.q, d.frame.phi_val());
        let diff = linalg::mat_sub(&linalg::mat_mul(q, &phi), &linalg::mat_mul(&phi, q));
        (linalg::max_abs_mat(&diff), phi_scale(d))
    });

    let mut rng = c.rng(0x5eed_0001);
    let mut draws: Vec<[Vec3<f64>; 3]> = Vec::new();
    for _ in 0..c.points.len() * 3 {
        draws.push([random_vec(&mut rng), random_vec(&mut rng), random_vec(&mut rng)]);
    }
    let mut k = 0;
    let parallel = c.zero_by(|d| {
        let mut worst = 0.0f64;
        for [x, y, z] in &draws[k..k + 3] {
            let lhs = d.curvature.apply(x, y, &d.frame.phi_apply(z));
            let rhs = d.frame.phi_apply(&d.curvature.apply(x, y, z));
            worst = worst.max(linalg::max_abs_vec(&linalg::sub(&lhs, &rhs)));
        }
        k += 3;
        (worst, phi_scale(d))
    });

    let anti = c.zero_by(|d| {
        let phi = d.frame.phi_val();
        let mut t = linalg::mat_mul(&linalg::transpose(&phi), &linalg::mat_mul(&d.ricci.rho, &phi));
        for i in 0..3 {
            for j in 0..3 {
                t[i][j] += d.ricci.rho[i][j];
            }
        }
        (linalg::max_abs_mat(&t), phi_scale(d))
    });

    let reeb = c.zero_by(|d| {
        let xi = d.frame.xi_val();
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                let v = d.curvature.apply(&linalg::basis(i), &linalg::basis(j), &xi);
                worst = worst.max(linalg::max_abs_vec(&v));
            }
        }
        (worst, phi_scale(d))
    });

    let alt_flag = EquivalenceFlag {
        statement: "flat or eta-Einstein",
        value: matches!(alternative, DomainAlternative::Flat | DomainAlternative::EtaEinstein),
        witness: if matches!(alternative, DomainAlternative::Neither) { ee.witness } else { None },
    };
    let flags = vec![
        flag("Q phi = phi Q", commute),
        alt_flag,
        flag("R(X,Y) phi Z = phi R(X,Y) Z", parallel),
        flag("rho(phi X, phi Y) = -rho(X,Y)", anti),
        flag("R(X,Y) xi = 0", reeb),
    ];
    let state = if alternative == DomainAlternative::Mixed {
        EquivalenceState::Mixed
    } else if flags.iter().all(|f| f.value) {
        EquivalenceState::AllTrue
    } else if flags.iter().all(|f| !f.value) {
        EquivalenceState::AllFalse
    } else {
        EquivalenceState::Disagree
    };
    EquivalenceReport { alternative, flags, state }
}

/// Sectional curvature of `span{x, y}` at a frame.
pub fn sectional(frame: &Frame<f64>, r: &Curvature<f64>, x: &Vec3<f64>, y: &Vec3<f64>) -> Result<f64, CurvatureError> {
    let m = &frame.metric;
    let (gxx, gyy, gxy) = (m.inner(x, x), m.inner(y, y), m.inner(x, y));
    let den = gxx * gyy - gxy * gxy;
    let norms = linalg::max_abs_vec(x) * linalg::max_abs_vec(y);
    let scale = (gxx * gyy).abs() + gxy * gxy + norms * norms;
    if den.abs() < DEGENERATE_SECTION_TOL * scale {
        return Err(CurvatureError::DegenerateSection { point: frame.point.to_f64(), denominator: den });
    }
    Ok(r.lowered(m, x, y, y, x) / den)
}

/// `K(X,ξ)` and `K(X,φX)` for one vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectionalReport {
    pub point: [f64; 3],
    /// `X` after projection orthogonal to `ξ`.
    pub x: Vec3<f64>,
    pub k_xi: f64,
    pub k_phi: f64,
    pub scal: f64,
}

/// Projects `x` orthogonally to `ξ` and evaluates both sectional curvatures.
pub fn sectional_curvatures(s: &ApctStructure, x: &Vec3<f64>, p: &Point3<f64>) -> Result<SectionalReport, CurvatureError> {
    let frame = s.frame(p)?;
    let r = s.manifold.curvature_at(p)?;
    let ricci = s.manifold.ricci_at(p)?;
    sectional_at(&frame, &r, ricci.scal, x)
}

fn sectional_at(frame: &Frame<f64>, r: &Curvature<f64>, scal: f64, x: &Vec3<f64>) -> Result<SectionalReport, CurvatureError> {
    let xi = frame.xi_val();
    let x = linalg::sub(x, &linalg::scale(frame.metric.inner(x, &xi), &xi));
    let k_xi = sectional(frame, r, &x, &xi)?;
    let k_phi = sectional(frame, r, &x, &frame.phi_apply(&x))?;
    Ok(SectionalReport { point: frame.point.to_f64(), x, k_xi, k_phi, scal })
}

/// Spread of a sampled quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Spread {
    pub min: f64,
    pub max: f64,
    pub variance: f64,
}

impl Spread {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        Some(Spread {
            min: values.iter().cloned().fold(f64::INFINITY, f64::min),
            max: values.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            variance: values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n,
        })
    }

    pub fn width(&self) -> f64 {
        self.max - self.min
    }
}

/// Sectional curvatures over random admissible `X` at each sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectionalSurvey {
    pub draws_per_point: usize,
    pub admissible: usize,
    pub degenerate: usize,
    /// Largest within-point spread of `K(X,ξ)` and `K(X,φX)`.
    pub max_variance_xi: f64,
    pub max_variance_phi: f64,
    /// Largest `|K(X,φX) + scal/2| / (1 + |scal|/2)`, comparing at the
    /// point of each draw.
    pub max_phi_scal_gap: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_xi: Option<Spread>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_phi: Option<Spread>,
}

pub fn sectional_survey(c: &CurvatureSamples<'_>, draws: usize) -> SectionalSurvey {
    let mut rng = c.rng(0x5eed_0002);
    let (mut all_xi, mut all_phi) = (Vec::new(), Vec::new());
    let (mut var_xi, mut var_phi, mut gap, mut degenerate) = (0.0f64, 0.0f64, 0.0f64, 0);
    for d in &c.points {
        let (mut kx, mut kp) = (Vec::new(), Vec::new());
        for _ in 0..draws {
            match sectional_at(&d.frame, &d.curvature, d.ricci.scal, &random_vec(&mut rng)) {
                Ok(r) => {
                    gap = gap.max((r.k_phi + 0.5 * r.scal).abs() / (1.0 + 0.5 * r.scal.abs()));
                    kx.push(r.k_xi);
                    kp.push(r.k_phi);
                }
                Err(_) => degenerate += 1,
            }
        }
        if let (Some(a), Some(b)) = (Spread::of(&kx), Spread::of(&kp)) {
            var_xi = var_xi.max(a.variance);
            var_phi = var_phi.max(b.variance);
        }
        all_xi.extend(kx);
        all_phi.extend(kp);
    }
    SectionalSurvey {
        draws_per_point: draws,
        admissible: all_xi.len(),
        degenerate,
        max_variance_xi: var_xi,
        max_variance_phi: var_phi,
        max_phi_scal_gap: gap,
        k_xi: Spread::of(&all_xi),
        k_phi: Spread::of(&all_phi),
    }
}

/// Consequences of the η-Einstein condition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EtaEinsteinReport {
    /// `scal = f_xx` when it is constant on the domain. η-Einstein alone
    /// does not force this: `f = x^-2 + 1`, `ξ = (0, 1, 0)` is η-Einstein
    /// with `scal = 6/x⁴`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    pub scal_constant: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    pub k_xi: Option<Spread>,
    pub k_phi: Option<Spread>,
    pub k_xi_zero: bool,
    /// `K(X,φX) = −scal/2` at every point for every admissible `X`.
    pub k_phi_matches: bool,
    pub q_xi_zero: bool,
    /// `2f_xyz + f_x f_xy − f_xx f_y ≡ 0`.
    pub discriminant_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminant_witness: Option<Witness>,
    /// Agreement with the classifier on paracosymplectic vs almost
    /// paracosymplectic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classifier_agrees: Option<bool>,
}

impl EtaEinsteinReport {
    pub fn consistent(&self) -> bool {
        self.k_xi_zero && self.k_phi_matches && self.q_xi_zero && self.classifier_agrees != Some(false)
    }
}

pub fn eta_einstein_report(
    c: &CurvatureSamples<'_>,
    ee: &EtaEinsteinVerdict,
    survey: &SectionalSurvey,
    classification: Option<&Classification>,
) -> Result<EtaEinsteinReport, CurvatureError> {
    if !ee.is_eta_einstein {
        return Err(CurvatureError::NotEtaEinstein);
    }
    let f = &c.structure.manifold.f;
    let fxx = f.diff_many(&[X, X]);
    let scal_constant = [X, Y, Z].iter().all(|v| c.zero(&fxx.diff(*v)).is_zero());
    let cc = scal_constant.then_some(c.points[0].ricci.scal);
    let tol = c.cfg.tol;
    let k_xi_zero = survey.k_xi.is_some_and(|s| s.min.abs().max(s.max.abs()) <= tol);
    let k_phi_matches = survey.k_phi.is_some() && survey.max_phi_scal_gap <= tol;
    let q_xi_zero = c.zero_by(|d| (linalg::max_abs_vec(&d.ricci.apply(&d.frame.xi_val())), d.scale)).is_zero();
    // f_xx in place of a constant C; the classifier agrees with this form
    // when f_xx varies too.
    let disc = 2 * f.diff_many(&[X, Y, Z]) + f.diff(X) * f.diff_many(&[X, Y]) - &fxx * f.diff(Y);
    let dv = c.zero(&disc);
    let discriminant_zero = dv.is_zero();
    let classifier_agrees = classification.map(|cl| {
        if discriminant_zero {
            cl.named(NamedClass::Paracosymplectic)
        } else {
            cl.named(NamedClass::AlmostParacosymplectic)
        }
    });
    Ok(EtaEinsteinReport {
        c: cc,
        scal_constant,
        a: cc.map(|c| 0.5 * c),
        b: cc.map(|c| -0.5 * c),
        k_xi: survey.k_xi,
        k_phi: survey.k_phi,
        k_xi_zero,
        k_phi_matches,
        q_xi_zero,
        discriminant_zero,
        discriminant_witness: dv.witness(),
        classifier_agrees,
    })
}

/// Scalar curvature over the samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalarCurvature {
    pub min: f64,
    pub max: f64,
    pub constant: bool,
}

/// Everything the curvature stage reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureAnalysis {
    pub scal: ScalarCurvature,
    pub flat: bool,
    pub eta_einstein: EtaEinsteinVerdict,
    pub equivalences: EquivalenceReport,
    pub sectional: SectionalSurvey,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_einstein_consequences: Option<EtaEinsteinReport>,
}

impl CurvatureAnalysis {
    pub fn consistent(&self) -> bool {
        self.eta_einstein.agree
            && self.equivalences.consistent()
            && self.eta_einstein_consequences.as_ref().is_none_or(EtaEinsteinReport::consistent)
    }
}

/// Random admissible directions drawn per sample point.
pub const SECTIONAL_DRAWS: usize = 50;

pub fn analyze_curvature(
    s: &ApctStructure,
    cfg: &SamplingConfig,
    classification: Option<&Classification>,
) -> Result<CurvatureAnalysis, CurvatureError> {
    let c = CurvatureSamples::new(s, cfg)?;
    let ee = eta_einstein_check(&c)?;
    let equivalences = curvature_equivalences(&c, &ee);
    let sectional = sectional_survey(&c, SECTIONAL_DRAWS);
    let consequences = if ee.is_eta_einstein { Some(eta_einstein_report(&c, &ee, &sectional, classification)?) } else { None };
    let scal: Vec<f64> = c.points.iter().map(|d| d.ricci.scal).collect();
    let spread = Spread::of(&scal).expect("samples are nonempty");
    let fxx = s.manifold.f.diff_many(&[X, X]);
    Ok(CurvatureAnalysis {
        scal: ScalarCurvature { min: spread.min, max: spread.max, constant: [X, Y, Z].iter().all(|v| c.zero(&fxx.diff(*v)).is_zero()) },
        flat: equivalences.alternative == DomainAlternative::Flat,
        eta_einstein: ee,
        equivalences,
        sectional,
        eta_einstein_consequences: consequences,
    })
}
