//! Class membership decisions.
//!
//! The basic classes are read off the projections of `F`: a class is present
//! when its component is not identically zero on the samples. Named classes
//! are decided from the basic classes (ground truth) and re-derived from
//! their definitions and, in the special coordinate settings, from explicit
//! conditions on `ξ` and `f`. Every route is reported and all must agree.
//!
//! "Not identically zero" always means "nonzero at some sample point".

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::field::{ScalarField, Var};
use crate::ftensor::{eval3, tabulate, tensor_max_abs, tensor_sub, BasicClass, FTensorValue, ProjectionBundle, Tensor3};
use crate::linalg::{self, Mat3, Vec3};
use crate::sampling::{zero_on, Domain, Point3, Residuals, SampleSet, SamplingConfig, Witness, ZeroVerdict};
use crate::structure::{ApctStructure, Frame, StructureError};
use crate::walker::{GeometryError, WalkerManifold};

/// Tolerance for agreement between independent routes.
pub const ROUTE_TOL: f64 = 1e-9;

const X: Var = Var::X;
const Y: Var = Var::Y;
const Z: Var = Var::Z;

/// Per-point data shared by all decisions.
#[derive(Debug, Clone)]
pub struct PointData {
    pub point: Point3<f64>,
    pub frame: Frame<f64>,
    pub fv: FTensorValue<f64>,
    pub f_covariant: Tensor3<f64>,
    /// `(θ, θ*)` from the closed coordinate expressions.
    pub theta_closed: (f64, f64),
    /// Gradient of `θ*` from its closed expression.
    pub theta_star_gradient: Vec3<f64>,
    pub projections: ProjectionBundle<f64>,
    pub d_eta: Mat3<f64>,
    pub d_eta_from_f: Mat3<f64>,
    pub d_eta_explicit: Mat3<f64>,
    pub d_phi: Tensor3<f64>,
    pub d_phi_coordinate: Tensor3<f64>,
    pub lie: Mat3<f64>,
    pub lie_nabla: Mat3<f64>,
    pub lie_from_f: Mat3<f64>,
    pub fundamental: Mat3<f64>,
    /// `max |N(∂i,∂j) − 2dη(∂i,∂j)ξ|` and a magnitude for scaling.
    pub normality: (f64, f64),
    pub f_space_defect: f64,
    /// Largest summand in `F` and its projections, used to scale zero tests.
    pub scale: f64,
}

impl PointData {
    pub fn new(frame: Frame<f64>) -> Self {
        let f = frame.f_closed();
        let fv = frame.contract(&f);
        let (t, ts) = frame.theta_closed_jets();
        let projections = frame.project(&fv);
        let d_eta = frame.d_eta_coordinate();
        let defect = frame.normality_defect(&d_eta);
        let mut n_val = 0.0f64;
        for v in defect.iter().flatten() {
            n_val = n_val.max(linalg::max_abs_vec(v));
        }
        let n_scale = linalg::max_abs_mat(&frame.phi_val()).powi(2) * (1.0 + tensor_max_abs(&f));
        let scale = frame.projection_bound(&f);
        PointData {
            point: frame.point,
            f_covariant: frame.f_covariant(),
            theta_closed: (t.value(), ts.value()),
            theta_star_gradient: Var::ALL.map(|v| ts.d(&[v])),
            d_eta_from_f: frame.d_eta_from_f(&f),
            d_eta_explicit: frame.d_eta_explicit(),
            d_phi: frame.d_phi_cyclic(&f),
            d_phi_coordinate: frame.d_phi_coordinate(),
            lie: frame.lie_xi_g_coordinate(),
            lie_nabla: frame.lie_xi_g_nabla(),
            lie_from_f: frame.lie_xi_g_from_f(&f),
            fundamental: frame.fundamental_form(),
            normality: (n_val, n_scale),
            f_space_defect: tensor_max_abs(&frame.f_space_defect(&f)),
            projections,
            d_eta,
            fv,
            scale,
            frame,
        }
    }

    /// `(η∧φ)(X,Y,Z) = η(X)Φ(Y,Z) + η(Y)Φ(Z,X) + η(Z)Φ(X,Y)`.
    pub fn eta_wedge_phi(&self) -> Tensor3<f64> {
        let fr = &self.frame;
        let phi = &self.fundamental;
        tabulate(|x, y, z| {
            fr.eta_apply(x) * linalg::form(phi, y, z)
                + fr.eta_apply(y) * linalg::form(phi, z, x)
                + fr.eta_apply(z) * linalg::form(phi, x, y)
        })
    }
}

/// A structure together with its samples and per-point data.
#[derive(Debug, Clone)]
pub struct SampledStructure<'a> {
    pub structure: &'a ApctStructure,
    pub cfg: SamplingConfig,
    pub samples: SampleSet,
    pub points: Vec<PointData>,
}

fn mat_max(m: &Mat3<f64>) -> f64 {
    linalg::max_abs_mat(m)
}

impl<'a> SampledStructure<'a> {
    pub fn new(structure: &'a ApctStructure, cfg: &SamplingConfig) -> Result<Self, GeometryError> {
        let samples = structure.samples(cfg)?;
        let mut points = Vec::with_capacity(samples.len());
        for p in &samples.points {
            points.push(PointData::new(structure.frame(p)?));
        }
        Ok(SampledStructure { structure, cfg: *cfg, samples, points })
    }

    /// Zero test of a symbolic field on the shared samples.
    pub fn zero(&self, e: &ScalarField) -> ZeroVerdict {
        zero_on(e, &self.samples, self.cfg.tol)
    }

    /// Zero test of a pointwise quantity `(value, scale)`.
    pub fn zero_by(&self, tol: f64, mut f: impl FnMut(&PointData) -> (f64, f64)) -> ZeroVerdict {
        let mut acc = Residuals::new(tol);
        for d in &self.points {
            let (v, s) = f(d);
            acc.push(&d.point, v, s);
        }
        acc.verdict()
    }

    fn tensor_zero(&self, f: impl Fn(&PointData) -> Tensor3<f64>) -> ZeroVerdict {
        self.zero_by(self.cfg.tol, |d| (tensor_max_abs(&f(d)), d.scale))
    }

    fn component_zero(&self, c: BasicClass) -> ZeroVerdict {
        self.tensor_zero(|d| *d.projections.component(c))
    }

    fn theta_is(&self, target: f64) -> ZeroVerdict {
        self.zero_by(self.cfg.tol, |d| (d.fv.theta - target, d.fv.theta.abs()))
    }

    fn d_eta_zero(&self) -> ZeroVerdict {
        self.zero_by(self.cfg.tol, |d| (mat_max(&d.d_eta), d.scale))
    }

    fn d_phi_zero(&self) -> ZeroVerdict {
        self.tensor_zero(|d| d.d_phi)
    }

    fn d_eta_is_fundamental(&self) -> ZeroVerdict {
        self.zero_by(self.cfg.tol, |d| (mat_max(&linalg::mat_sub(&d.d_eta, &d.fundamental)), mat_max(&d.fundamental) + d.scale))
    }

    fn normal_direct(&self) -> ZeroVerdict {
        self.zero_by(self.cfg.tol, |d| d.normality)
    }

    fn killing(&self) -> ZeroVerdict {
        self.zero_by(self.cfg.tol, |d| (mat_max(&d.lie), d.scale))
    }

    /// `dφ − 2α η∧φ` with `α = −θ*/2`.
    fn alpha_structure_defect(&self) -> ZeroVerdict {
        self.tensor_zero(|d| {
            let w = d.eta_wedge_phi();
            let ts = d.fv.theta_star;
            tabulate(|x, y, z| eval3(&d.d_phi, x, y, z) + ts * eval3(&w, x, y, z))
        })
    }

    fn theta_star_constant(&self) -> ZeroVerdict {
        self.zero_by(self.cfg.tol, |d| (linalg::max_abs_vec(&d.theta_star_gradient), d.scale))
    }

    fn f_zero(&self) -> ZeroVerdict {
        self.tensor_zero(|d| d.fv.f)
    }
}

/// Which basic components are present.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasicVerdict {
    pub components: BTreeSet<BasicClass>,
    /// `θ_F(ξ) ≡ 2`, marking the `G5` part as `Ḡ5`.
    pub theta_is_two: bool,
    /// Witness of nonvanishing for each present component.
    pub witnesses: BTreeMap<BasicClass, Witness>,
    /// Whether the four-way split reproduces `F` and the `G10` identities hold.
    pub decomposition_valid: bool,
    pub decomposition_witness: Option<Witness>,
    pub max_residual: f64,
    pub max_g10_identity_defect: f64,
}

impl BasicVerdict {
    pub fn is_g0(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_exactly(&self, classes: &[BasicClass]) -> bool {
        self.components.len() == classes.len() && classes.iter().all(|c| self.components.contains(c))
    }

    pub fn within(&self, classes: &[BasicClass]) -> bool {
        self.components.iter().all(|c| classes.contains(c))
    }

    pub fn has(&self, c: BasicClass) -> bool {
        self.components.contains(&c)
    }

    /// Display label, e.g. `G0`, `G5+G6`, `G5bar+G10`.
    pub fn label(&self) -> String {
        if self.is_g0() {
            return "G0".into();
        }
        let names: Vec<String> = self
            .components
            .iter()
            .map(|c| if *c == BasicClass::G5 && self.theta_is_two { "G5bar".to_string() } else { c.name().to_string() })
            .collect();
        names.join("+")
    }

    pub fn names(&self) -> Vec<String> {
        if self.is_g0() {
            return vec!["G0".into()];
        }
        self.label().split('+').map(str::to_string).collect()
    }
}

/// Decides the basic classes from the projections.
pub fn classify_basic(s: &SampledStructure<'_>) -> BasicVerdict {
    let mut components = BTreeSet::new();
    let mut witnesses = BTreeMap::new();
    for c in BasicClass::ALL {
        if let ZeroVerdict::NonZero(w) = s.component_zero(c) {
            components.insert(c);
            witnesses.insert(c, w);
        }
    }
    let theta_is_two = components.contains(&BasicClass::G5) && s.theta_is(2.0).is_zero();
    let residual = s.zero_by(ROUTE_TOL, |d| (tensor_max_abs(&d.projections.residual), d.scale));
    let g10 = s.zero_by(ROUTE_TOL, |d| (d.projections.g10_identity_defect, d.scale));
    let max_residual = s.points.iter().fold(0.0f64, |m, d| m.max(tensor_max_abs(&d.projections.residual)));
    let max_g10 = s.points.iter().fold(0.0f64, |m, d| m.max(d.projections.g10_identity_defect));
    BasicVerdict {
        components,
        theta_is_two,
        witnesses,
        decomposition_valid: residual.is_zero() && g10.is_zero(),
        decomposition_witness: residual.witness().or(g10.witness()),
        max_residual,
        max_g10_identity_defect: max_g10,
    }
}

/// Named classes of almost paracontact metric manifolds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedClass {
    ParacontactMetric,
    ParaSasakian,
    KParacontact,
    QuasiParaSasakian,
    Normal,
    AlmostAlphaParacosymplectic,
    AlphaParacosymplectic,
    AlmostAlphaParaKenmotsu,
    AlphaParaKenmotsu,
    AlmostParacosymplectic,
    Paracosymplectic,
}

impl NamedClass {
    pub const ALL: [NamedClass; 11] = [
        NamedClass::ParacontactMetric,
        NamedClass::ParaSasakian,
        NamedClass::KParacontact,
        NamedClass::QuasiParaSasakian,
        NamedClass::Normal,
        NamedClass::AlmostAlphaParacosymplectic,
        NamedClass::AlphaParacosymplectic,
        NamedClass::AlmostAlphaParaKenmotsu,
        NamedClass::AlphaParaKenmotsu,
        NamedClass::AlmostParacosymplectic,
        NamedClass::Paracosymplectic,
    ];

    pub fn key(self) -> &'static str {
        match self {
            NamedClass::ParacontactMetric => "paracontact_metric",
            NamedClass::ParaSasakian => "para_sasakian",
            NamedClass::KParacontact => "k_paracontact",
            NamedClass::QuasiParaSasakian => "quasi_para_sasakian",
            NamedClass::Normal => "normal",
            NamedClass::AlmostAlphaParacosymplectic => "almost_alpha_paracosymplectic",
            NamedClass::AlphaParacosymplectic => "alpha_paracosymplectic",
            NamedClass::AlmostAlphaParaKenmotsu => "almost_alpha_para_kenmotsu",
            NamedClass::AlphaParaKenmotsu => "alpha_para_kenmotsu",
            NamedClass::AlmostParacosymplectic => "almost_paracosymplectic",
            NamedClass::Paracosymplectic => "paracosymplectic",
        }
    }
}

impl fmt::Display for NamedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// One way of deciding a named class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RouteVerdict {
    pub route: &'static str,
    pub value: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedVerdict {
    pub value: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub routes: Vec<RouteVerdict>,
    pub agree: bool,
}

impl NamedVerdict {
    fn from_routes(routes: Vec<RouteVerdict>) -> Self {
        let value = routes[0].value;
        let agree = routes.iter().all(|r| r.value == value);
        let witness = if value { None } else { routes.iter().find_map(|r| r.witness) };
        NamedVerdict { value, witness, routes, agree }
    }
}

/// Coordinate settings with dedicated characterisations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Setting {
    General,
    /// `ξ₃ ≡ 0`, `ξ₂ ≡ sign`.
    NullZComponent {
        sign: i8,
    },
    /// `ξ₁ ≡ ξ₂ ≡ 0`, `ξ₃ ≡ 1/√f`.
    InverseRootF,
}

/// A setting-specific statement checked against the class decisions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremCheck {
    pub statement: String,
    pub expected: bool,
    pub actual: bool,
    pub agree: bool,
}

/// A vanishing law implied by the basic classes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawCheck {
    pub law: &'static str,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// `α = −θ*/2` sampled over the domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaReport {
    pub min: f64,
    pub max: f64,
    /// Constancy of `θ*` is only decided on the sampled box.
    pub constant_on_samples: bool,
}

/// Largest disagreement between two routes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RouteDiscrepancy {
    pub quantity: &'static str,
    pub routes: (&'static str, &'static str),
    pub max_abs: f64,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub setting: Setting,
    pub basic: BasicVerdict,
    pub named: BTreeMap<NamedClass, NamedVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<AlphaReport>,
    pub theorem_checks: Vec<TheoremCheck>,
    pub laws: Vec<LawCheck>,
    pub discrepancies: Vec<RouteDiscrepancy>,
    /// Largest violation of the structure-tensor symmetry identity.
    pub max_f_space_defect: f64,
}

impl Classification {
    pub fn named(&self, c: NamedClass) -> bool {
        self.named[&c].value
    }

    /// All routes, theorem checks and laws agree and the decomposition is
    /// valid.
    pub fn consistent(&self) -> bool {
        self.named.values().all(|v| v.agree)
            && self.theorem_checks.iter().all(|t| t.agree)
            && self.laws.iter().all(|l| l.holds)
            && self.discrepancies.iter().all(|d| d.agree)
            && self.basic.decomposition_valid
    }
}

fn route(name: &'static str, v: ZeroVerdict, expect_zero: bool) -> RouteVerdict {
    RouteVerdict { route: name, value: v.is_zero() == expect_zero, witness: v.witness() }
}

fn and(name: &'static str, parts: &[RouteVerdict]) -> RouteVerdict {
    let value = parts.iter().all(|r| r.value);
    let witness = if value { None } else { parts.iter().find(|r| !r.value).and_then(|r| r.witness) };
    RouteVerdict { route: name, value, witness }
}

fn fixed(name: &'static str, value: bool) -> RouteVerdict {
    RouteVerdict { route: name, value, witness: None }
}

/// The three coordinate conditions for `Φ = dη`, as fields that must vanish.
pub fn paracontact_conditions(s: &ApctStructure) -> [ScalarField; 3] {
    let f = &s.manifold.f;
    let [x1, x2, x3] = &s.xi;
    [
        x2.diff(X) - x3.diff(Y) - 2 * x3,
        x1.diff(X) + x3 * f.diff(X) + f * x3.diff(X) - x3.diff(Z) + 2 * x2,
        x1.diff(Y) + x3 * f.diff(Y) + f * x3.diff(Y) - x2.diff(Z) - 2 * x1,
    ]
}

fn detect_setting(s: &SampledStructure<'_>) -> Setting {
    let st = s.structure;
    let [x1, x2, x3] = &st.xi;
    if s.zero(x3).is_zero() {
        for sign in [1i8, -1] {
            if s.zero(&(x2 - i64::from(sign))).is_zero() {
                return Setting::NullZComponent { sign };
            }
        }
    }
    let f = &st.manifold.f;
    let f_positive = s.samples.points.iter().all(|p| matches!(f.eval(p), Ok(v) if v > 0.0));
    if f_positive && s.zero(x1).is_zero() && s.zero(x2).is_zero() && s.zero(&(x3 - f.sqrt().powi(-1))).is_zero() {
        return Setting::InverseRootF;
    }
    Setting::General
}

fn discrepancy<F>(s: &SampledStructure<'_>, quantity: &'static str, routes: (&'static str, &'static str), f: F) -> RouteDiscrepancy
where
    F: Fn(&PointData) -> (f64, f64),
{
    let v = s.zero_by(ROUTE_TOL, &f);
    let max_abs = s.points.iter().fold(0.0f64, |m, d| m.max(f(d).0));
    RouteDiscrepancy { quantity, routes, max_abs, agree: v.is_zero(), witness: v.witness() }
}

fn tensor_gap(a: &Tensor3<f64>, b: &Tensor3<f64>) -> (f64, f64) {
    (tensor_max_abs(&tensor_sub(a, b)), tensor_max_abs(a).max(tensor_max_abs(b)))
}

fn mat_gap(a: &Mat3<f64>, b: &Mat3<f64>) -> (f64, f64) {
    (mat_max(&linalg::mat_sub(a, b)), mat_max(a).max(mat_max(b)))
}

fn scalar_gap(a: f64, b: f64) -> (f64, f64) {
    ((a - b).abs(), a.abs().max(b.abs()))
}

/// Route-equivalence report for every quantity computed more than once.
pub fn route_discrepancies(s: &SampledStructure<'_>) -> Vec<RouteDiscrepancy> {
    vec![
        discrepancy(s, "F", ("closed form", "covariant derivative of phi"), |d| tensor_gap(&d.fv.f, &d.f_covariant)),
        discrepancy(s, "theta", ("closed form", "contraction"), |d| scalar_gap(d.theta_closed.0, d.fv.theta)),
        discrepancy(s, "theta*", ("closed form", "contraction"), |d| scalar_gap(d.theta_closed.1, d.fv.theta_star)),
        discrepancy(s, "d eta", ("exterior derivative", "from F"), |d| mat_gap(&d.d_eta, &d.d_eta_from_f)),
        discrepancy(s, "d eta", ("exterior derivative", "explicit components"), |d| mat_gap(&d.d_eta, &d.d_eta_explicit)),
        discrepancy(s, "d phi", ("cyclic sum of F", "exterior derivative"), |d| tensor_gap(&d.d_phi, &d.d_phi_coordinate)),
        discrepancy(s, "Lie derivative of g", ("coordinate", "nabla eta"), |d| mat_gap(&d.lie, &d.lie_nabla)),
        discrepancy(s, "Lie derivative of g", ("coordinate", "from F"), |d| mat_gap(&d.lie, &d.lie_from_f)),
    ]
}

fn vanishing_laws(s: &SampledStructure<'_>, basic: &BasicVerdict) -> Vec<LawCheck> {
    use BasicClass::*;
    let mut laws = Vec::new();
    let mut push = |law: &'static str, v: ZeroVerdict| laws.push(LawCheck { law, holds: v.is_zero(), witness: v.witness() });
    let tol = s.cfg.tol;
    if basic.within(&[G6, G10, G12]) {
        push("theta(xi) = 0", s.zero_by(tol, |d| (d.fv.theta, d.scale)));
    }
    if basic.within(&[G5, G10, G12]) {
        push("theta*(xi) = 0", s.zero_by(tol, |d| (d.fv.theta_star, d.scale)));
        push("d phi = 0", s.d_phi_zero());
    }
    if basic.within(&[G6, G10]) {
        push("d eta = 0", s.d_eta_zero());
    }
    if basic.is_exactly(&[G5]) {
        push(
            "d eta = (theta(xi)/2) phi",
            s.zero_by(tol, |d| {
                let rhs = d.fundamental.map(|r| r.map(|v| 0.5 * d.fv.theta * v));
                mat_gap(&d.d_eta, &rhs)
            }),
        );
    }
    if basic.is_exactly(&[G12]) {
        push(
            "d eta(X,Y) = (eta(X) F(xi,xi,phi Y) - eta(Y) F(xi,xi,phi X))/2",
            s.zero_by(tol, |d| {
                let fr = &d.frame;
                let xi = fr.xi_val();
                let rhs = crate::ftensor::tabulate2(|x, y| {
                    let (px, py) = (fr.phi_apply(x), fr.phi_apply(y));
                    0.5 * (fr.eta_apply(x) * eval3(&d.fv.f, &xi, &xi, &py) - fr.eta_apply(y) * eval3(&d.fv.f, &xi, &xi, &px))
                });
                mat_gap(&d.d_eta, &rhs)
            }),
        );
    }
    if basic.is_exactly(&[G6]) {
        push("d phi = -theta*(xi) eta ^ phi", s.alpha_structure_defect());
    }
    laws
}

fn theorem_check(checks: &mut Vec<TheoremCheck>, statement: impl Into<String>, expected: bool, actual: bool) {
    checks.push(TheoremCheck { statement: statement.into(), expected, actual, agree: expected == actual });
}

/// Full class decision for a sampled structure.
pub fn classify(s: &SampledStructure<'_>) -> Classification {
    use BasicClass::*;
    let st = s.structure;
    let basic = classify_basic(s);
    let setting = detect_setting(s);
    let zero = |e: &ScalarField| s.zero(e).is_zero();
    let [x1, x2, x3] = &st.xi;
    let f = &st.manifold.f;

    // Definition routes.
    let d_eta_zero = s.d_eta_zero();
    let d_phi_zero = s.d_phi_zero();
    let normal_def = route("nijenhuis", s.normal_direct(), true);
    let paracontact_def = route("d eta = phi", s.d_eta_is_fundamental(), true);
    let f_nonzero = route("F not identically zero", s.f_zero(), false);
    let theta_star_const = s.theta_star_constant();
    let alpha_def = and(
        "d eta = 0 and d phi = 2 alpha eta ^ phi",
        &[
            route("d eta = 0", d_eta_zero, true),
            route("alpha structure", s.alpha_structure_defect(), true),
            route("theta* nonzero", s.zero_by(s.cfg.tol, |d| (d.fv.theta_star, d.scale)), false),
        ],
    );
    let almost_paracosym_def =
        and("d eta = 0 and d phi = 0", &[route("d eta = 0", d_eta_zero, true), route("d phi = 0", d_phi_zero, true)]);

    // Class routes.
    let g5bar = basic.has(G5) && basic.theta_is_two;
    let class_paracontact = g5bar && basic.within(&[G5, G10]);
    let class_normal = basic.within(&[G5, G6]);
    let class_para_sasakian = g5bar && basic.is_exactly(&[G5]);
    let class_almost_alpha = basic.has(G6) && basic.within(&[G6, G10]);
    let class_alpha = basic.is_exactly(&[G6]);
    let th_const = theta_star_const.is_zero();

    let mut named: BTreeMap<NamedClass, Vec<RouteVerdict>> = BTreeMap::new();
    let mut add = |c: NamedClass, r: RouteVerdict| named.entry(c).or_default().push(r);

    add(NamedClass::ParacontactMetric, fixed("class", class_paracontact));
    add(NamedClass::ParacontactMetric, paracontact_def.clone());
    let conds = paracontact_conditions(st);
    let pde: Vec<RouteVerdict> = conds.iter().map(|c| route("coordinate condition", s.zero(c), true)).collect();
    add(NamedClass::ParacontactMetric, and("coordinate conditions", &pde));

    add(NamedClass::Normal, fixed("class", class_normal));
    add(NamedClass::Normal, normal_def.clone());

    add(NamedClass::ParaSasakian, fixed("class", class_para_sasakian));
    add(NamedClass::ParaSasakian, and("normal and paracontact", &[normal_def.clone(), paracontact_def.clone()]));
    add(NamedClass::ParaSasakian, fixed("never on Walker 3-manifolds", false));

    add(NamedClass::KParacontact, fixed("class", class_para_sasakian));
    add(NamedClass::KParacontact, and("paracontact and xi Killing", &[paracontact_def.clone(), route("xi Killing", s.killing(), true)]));
    add(NamedClass::KParacontact, fixed("never on Walker 3-manifolds", false));

    add(NamedClass::QuasiParaSasakian, fixed("class", basic.is_exactly(&[G5])));
    add(
        NamedClass::QuasiParaSasakian,
        and("normal and d phi = 0", &[normal_def.clone(), route("d phi = 0", d_phi_zero, true), f_nonzero.clone()]),
    );

    add(NamedClass::AlmostAlphaParacosymplectic, fixed("class", class_almost_alpha));
    add(NamedClass::AlmostAlphaParacosymplectic, alpha_def.clone());
    add(NamedClass::AlphaParacosymplectic, fixed("class", class_alpha));
    add(NamedClass::AlphaParacosymplectic, and("almost alpha-paracosymplectic and normal", &[alpha_def.clone(), normal_def.clone()]));
    add(NamedClass::AlmostAlphaParaKenmotsu, fixed("class", class_almost_alpha && th_const));
    add(
        NamedClass::AlmostAlphaParaKenmotsu,
        and("alpha structure with constant alpha", &[alpha_def.clone(), route("theta* constant", theta_star_const, true)]),
    );
    add(NamedClass::AlphaParaKenmotsu, fixed("class", class_alpha && th_const));
    add(
        NamedClass::AlphaParaKenmotsu,
        and(
            "normal alpha structure with constant alpha",
            &[alpha_def.clone(), normal_def.clone(), route("theta* constant", theta_star_const, true)],
        ),
    );

    add(NamedClass::AlmostParacosymplectic, fixed("class", basic.is_exactly(&[G10])));
    add(NamedClass::AlmostParacosymplectic, and("d eta = 0, d phi = 0, F nonzero", &[almost_paracosym_def.clone(), f_nonzero.clone()]));
    add(NamedClass::Paracosymplectic, fixed("class", basic.is_g0()));
    add(NamedClass::Paracosymplectic, and("d eta = 0, d phi = 0, normal", &[almost_paracosym_def, normal_def]));

    let mut checks = Vec::new();
    let x3_zero = zero(x3);
    if x3_zero || (zero(x1) && zero(x2)) {
        add(NamedClass::ParacontactMetric, fixed("xi3 = 0 or xi1 = xi2 = 0", false));
    }

    match setting {
        Setting::NullZComponent { sign } => {
            let sf = i64::from(sign);
            let (a, b) = (x1.diff(X), x1.diff(Y));
            let d0 = 2 * x1.diff(Z) + x1 * f.diff(X) + sf * f.diff(Y);
            let (a0, b0) = (zero(&a), zero(&b));
            let paracosym = a0 && b0 && zero(&d0);
            let strict_normal = !a0 && zero(&(&b + sf * (x1 * &a))) && zero(&(&d0 + &a * (x1.powi(2) - f)));
            add(NamedClass::Paracosymplectic, fixed("coordinate conditions", paracosym));
            add(NamedClass::Normal, fixed("coordinate conditions", paracosym || strict_normal));
            add(NamedClass::AlmostParacosymplectic, fixed("coordinate conditions", a0 && b0 && !zero(&d0)));
            for c in [
                NamedClass::QuasiParaSasakian,
                NamedClass::AlmostAlphaParacosymplectic,
                NamedClass::AlphaParacosymplectic,
                NamedClass::AlmostAlphaParaKenmotsu,
                NamedClass::AlphaParaKenmotsu,
            ] {
                add(c, fixed("never with xi3 = 0, xi2 = +-1", false));
            }
            let e = 2 * (x1 * &b) - sf * (2 * x1.diff(Z) + x1 * f.diff(X)) - f.diff(Y);
            theorem_check(
                &mut checks,
                "class is exactly G12 iff (xi1)_x = 0, (xi1)_y != 0 and the z-condition holds",
                a0 && !b0 && zero(&e),
                basic.is_exactly(&[G12]),
            );
            theorem_check(&mut checks, "G5 component present iff G6 component present", basic.has(G5), basic.has(G6));
            let rel = s.zero_by(s.cfg.tol, |d| (d.fv.theta - f64::from(sign) * d.fv.theta_star, d.fv.theta.abs()));
            theorem_check(
                &mut checks,
                format!("theta(xi) = {} theta*(xi)", if sign == 1 { "" } else { "-" }).replace("  ", " "),
                true,
                rel.is_zero(),
            );
        }
        Setting::InverseRootF => {
            for c in [
                NamedClass::Normal,
                NamedClass::Paracosymplectic,
                NamedClass::QuasiParaSasakian,
                NamedClass::AlphaParacosymplectic,
                NamedClass::AlphaParaKenmotsu,
                NamedClass::AlmostParacosymplectic,
                NamedClass::AlmostAlphaParaKenmotsu,
            ] {
                add(c, fixed("never with xi = (0, 0, 1/sqrt f)", false));
            }
            let (fx, fy, fz) = (f.diff(X), f.diff(Y), f.diff(Z));
            let almost_alpha = zero(&fy) && zero(&(&fz + f * &fx)) && !zero(&fz);
            add(NamedClass::AlmostAlphaParacosymplectic, fixed("coordinate conditions", almost_alpha));
            theorem_check(
                &mut checks,
                "class is exactly G12 iff f_y = f_z = 0 and f_x != 0",
                zero(&fy) && zero(&fz) && !zero(&fx),
                basic.is_exactly(&[G12]),
            );
        }
        Setting::General => {}
    }

    let named: BTreeMap<NamedClass, NamedVerdict> = named.into_iter().map(|(k, v)| (k, NamedVerdict::from_routes(v))).collect();

    let alpha = named[&NamedClass::AlmostAlphaParacosymplectic].value.then(|| {
        let vals: Vec<f64> = s.points.iter().map(|d| -0.5 * d.fv.theta_star).collect();
        AlphaReport {
            min: vals.iter().cloned().fold(f64::INFINITY, f64::min),
            max: vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            constant_on_samples: th_const,
        }
    });

    let laws = vanishing_laws(s, &basic);
    Classification {
        setting,
        named,
        alpha,
        theorem_checks: checks,
        laws,
        discrepancies: route_discrepancies(s),
        max_f_space_defect: s.points.iter().fold(0.0f64, |m, d| m.max(d.f_space_defect)),
        basic,
    }
}

/// Samples and classifies in one step.
pub fn classify_structure(s: &ApctStructure, cfg: &SamplingConfig) -> Result<Classification, GeometryError> {
    Ok(classify(&SampledStructure::new(s, cfg)?))
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyError {
    /// The named input depends on `x` or `y`.
    NotAFunctionOfZ(&'static str, Witness),
    Structure(StructureError),
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::NotAFunctionOfZ(name, w) => {
                write!(f, "{name} must depend on z only; it varies at ({}, {}, {})", w.point[0], w.point[1], w.point[2])
            }
            FamilyError::Structure(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FamilyError {}

/// The paracontact family with `ξ₂ = 0`, `ξ₃ = e^{−2y+ψ(z)}`,
/// `f = 2ψ'(z)x + m(z)` and `ξ₁ = (1 − fξ₃²)/(2ξ₃)`.
pub fn exponential_paracontact_family(
    psi: &ScalarField,
    m: &ScalarField,
    domain: Domain,
    cfg: &SamplingConfig,
) -> Result<ApctStructure, FamilyError> {
    let samples = SampleSet::draw(&domain, cfg.samples, cfg.seed, &[psi, m])
        .map_err(|e| FamilyError::Structure(StructureError::Geometry(e.into())))?;
    for (name, e) in [("psi", psi), ("m", m)] {
        for v in [X, Y] {
            if let ZeroVerdict::NonZero(w) = zero_on(&e.diff(v), &samples, cfg.tol) {
                return Err(FamilyError::NotAFunctionOfZ(name, w));
            }
        }
    }
    let f = 2 * psi.diff(Z) * ScalarField::var(X) + m;
    let xi3 = (psi - 2 * ScalarField::var(Y)).exp();
    let xi1 = (1 - &f * xi3.powi(2)) / (2 * &xi3);
    let manifold = WalkerManifold::new(f, 1, domain).expect("epsilon is +1");
    ApctStructure::build(manifold, [xi1, ScalarField::zero(), xi3], cfg).map_err(FamilyError::Structure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Constants;
    use crate::sampling::Interval;

    fn p(s: &str) -> ScalarField {
        ScalarField::parse(s, &Constants::new()).unwrap()
    }

    fn run(f: &str, xi: [&str; 3], domain: Domain) -> Classification {
        let cfg = SamplingConfig::default();
        let m = WalkerManifold::new(p(f), 1, domain).unwrap();
        let s = ApctStructure::build(m, xi.map(p), &cfg).unwrap();
        classify_structure(&s, &cfg).unwrap()
    }

    #[test]
    fn normal_example() {
        let c = run("x^2/y^2", ["x/y", "1", "0"], Domain::cube(0.5, 2.0));
        assert_eq!(c.basic.label(), "G5+G6");
        assert!(c.named(NamedClass::Normal));
        assert!(!c.named(NamedClass::ParacontactMetric));
        assert!(c.consistent(), "{c:#?}");
    }

    #[test]
    fn g10_example() {
        let c = run("2*x", ["exp(z)", "1", "0"], Domain::cube(0.5, 2.0));
        assert_eq!(c.basic.label(), "G10");
        assert!(c.named(NamedClass::AlmostParacosymplectic));
        assert!(!c.named(NamedClass::Normal));
        assert!(c.consistent(), "{c:#?}");
    }

    #[test]
    fn inverse_root_example() {
        let d = Domain::new(Interval::new(0.5, 2.0), Interval::new(-1.0, 1.0), Interval::new(0.5, 2.0));
        let c = run("x/z", ["0", "0", "1/sqrt(x/z)"], d);
        assert_eq!(c.setting, Setting::InverseRootF);
        assert_eq!(c.basic.label(), "G6+G10");
        assert!(c.named(NamedClass::AlmostAlphaParacosymplectic));
        assert!(!c.named(NamedClass::AlmostAlphaParaKenmotsu));
        assert!(!c.alpha.unwrap().constant_on_samples);
        assert!(c.consistent(), "{c:#?}");
    }

    #[test]
    fn paracontact_family() {
        let cfg = SamplingConfig::default();
        let s = exponential_paracontact_family(&p("z"), &p("0"), Domain::cube(0.5, 2.0), &cfg).unwrap();
        let c = classify_structure(&s, &cfg).unwrap();
        assert!(c.named(NamedClass::ParacontactMetric), "{c:#?}");
        assert_eq!(c.basic.label(), "G5bar+G10");
        assert!(c.consistent(), "{c:#?}");
        assert!(matches!(
            exponential_paracontact_family(&p("x"), &p("0"), Domain::cube(0.5, 2.0), &cfg),
            Err(FamilyError::NotAFunctionOfZ("psi", _))
        ));
    }
}
