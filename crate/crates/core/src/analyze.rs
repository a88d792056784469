//! End-to-end analysis of a manifest.

use crate::classify::{classify_structure, Classification};
use crate::curvature::{analyze_curvature, CurvatureAnalysis, CurvatureError, EquivalenceState};
use crate::field::format_rational;
use crate::manifest::Manifest;
use crate::report::{BasicSection, DetailSection, DomainSection, Failure, ManifoldSection, Report, RouteSection, Status, ValiditySection};
use crate::sampling::SamplingConfig;
use crate::structure::{ApctStructure, StructureError};
use crate::walker::WalkerManifold;

/// Command-line overrides of the manifest's sampling settings.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
}

impl Overrides {
    pub fn apply(&self, mut cfg: SamplingConfig) -> SamplingConfig {
        cfg.samples = self.samples.unwrap_or(cfg.samples);
        cfg.seed = self.seed.unwrap_or(cfg.seed);
        cfg.tol = self.tol.unwrap_or(cfg.tol);
        cfg
    }
}

fn manifold_section(m: &Manifest, cfg: SamplingConfig) -> ManifoldSection {
    let iv = |i: usize| [m.domain.intervals[i].lo, m.domain.intervals[i].hi];
    ManifoldSection {
        epsilon: m.epsilon,
        f: m.source.f.clone(),
        xi: m.source.xi.clone(),
        constants: m.constants.iter().map(|(k, v)| (k.clone(), format_rational(v))).collect(),
        domain: DomainSection {
            x: iv(0),
            y: iv(1),
            z: iv(2),
            require_positive: m.source.require_positive.clone(),
            require_nonzero: m.source.require_nonzero.clone(),
        },
        sampling: cfg,
    }
}

fn classification_failures(c: &Classification, out: &mut Vec<Failure>) {
    if !c.basic.decomposition_valid {
        out.push(Failure::new("decomposition", c.basic.decomposition_witness));
    }
    for (class, v) in &c.named {
        if !v.agree {
            let w = v.routes.iter().find_map(|r| r.witness);
            let routes: Vec<String> = v.routes.iter().map(|r| format!("{}={}", r.route, r.value)).collect();
            out.push(Failure::new(format!("named:{class}"), w).with_message(routes.join(", ")));
        }
    }
    for t in c.theorem_checks.iter().filter(|t| !t.agree) {
        out.push(Failure::new("theorem", None).with_message(format!("{}: expected {}, found {}", t.statement, t.expected, t.actual)));
    }
    for l in c.laws.iter().filter(|l| !l.holds) {
        out.push(Failure::new(format!("law:{}", l.law), l.witness));
    }
    for d in c.discrepancies.iter().filter(|d| !d.agree) {
        out.push(Failure::new(format!("route:{}", d.quantity), d.witness).with_message(format!("{} vs {}", d.routes.0, d.routes.1)));
    }
}

fn curvature_failures(a: &CurvatureAnalysis, out: &mut Vec<Failure>) {
    if !a.eta_einstein.agree {
        out.push(
            Failure::new("eta_einstein", a.eta_einstein.witness).with_message(format!(
                "residual route {}, condition route {}",
                a.eta_einstein.residual_route, a.eta_einstein.condition_route
            )),
        );
    }
    if a.equivalences.state == EquivalenceState::Disagree {
        for f in &a.equivalences.flags {
            out.push(Failure::new(format!("equivalence:{}", f.statement), f.witness).with_message(f.value.to_string()));
        }
    }
    if let Some(r) = &a.eta_einstein_consequences {
        if !r.consistent() {
            let failed: Vec<&str> = [
                ("K(X,xi) = 0", r.k_xi_zero),
                ("K(X,phi X) = -scal/2", r.k_phi_matches),
                ("Q xi = 0", r.q_xi_zero),
                ("discriminant matches the classifier", r.classifier_agrees != Some(false)),
            ]
            .into_iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name)
            .collect();
            out.push(Failure::new("eta_einstein_consequences", r.discriminant_witness).with_message(failed.join(", ")));
        }
    }
}

/// Runs every stage and collects the report.
pub fn analyze(m: &Manifest, overrides: Overrides) -> Report {
    let cfg = overrides.apply(m.sampling);
    let mut report = Report {
        name: m.name.clone(),
        description: m.description.clone(),
        status: Status::Clean,
        manifold: manifold_section(m, cfg),
        structure_validity: None,
        basic_classes: None,
        named_classes: None,
        classification_details: None,
        curvature: None,
        route_agreement: None,
        failures: Vec::new(),
    };
    let manifold = WalkerManifold::new(m.f.clone(), m.epsilon, m.domain.clone()).expect("manifest epsilon is +-1");

    let invalid = |report: &mut Report, status: Status, check: &str, e: &StructureError, w| {
        report.status = status;
        report.structure_validity = Some(ValiditySection { valid: false, error: Some(e.to_string()), axioms: Vec::new() });
        report.failures.push(Failure::new(check, w).with_message(e.to_string()));
    };
    let structure = match ApctStructure::build(manifold, m.xi.clone(), &cfg) {
        Ok(s) => s,
        Err(e) => {
            match &e {
                StructureError::NonExistence => invalid(&mut report, Status::Rejected, "existence", &e, None),
                StructureError::UnitConstraint(w) => invalid(&mut report, Status::Rejected, "unit_constraint", &e, Some(*w)),
                StructureError::Geometry(_) => invalid(&mut report, Status::InputError, "input", &e, None),
            }
            return report;
        }
    };

    let fail_input = |report: &mut Report, check: &str, msg: String, w| {
        report.status = Status::InputError;
        report.failures.push(Failure::new(check, w).with_message(msg));
    };

    match structure.validate_axioms(&cfg) {
        Ok(axioms) => {
            for a in axioms.checks.iter().filter(|a| !a.passed) {
                report.failures.push(Failure::new(format!("axiom:{}", a.statement), a.witness));
            }
            report.structure_validity = Some(ValiditySection { valid: axioms.all_passed(), error: None, axioms: axioms.checks });
        }
        Err(e) => {
            fail_input(&mut report, "input", e.to_string(), None);
            return report;
        }
    }

    let classification = match classify_structure(&structure, &cfg) {
        Ok(c) => c,
        Err(e) => {
            fail_input(&mut report, "input", e.to_string(), None);
            return report;
        }
    };
    classification_failures(&classification, &mut report.failures);

    match analyze_curvature(&structure, &cfg, Some(&classification)) {
        Ok(a) => {
            curvature_failures(&a, &mut report.failures);
            report.curvature = Some(a);
        }
        Err(CurvatureError::DegenerateInput { what, witness }) => {
            let msg = CurvatureError::DegenerateInput { what, witness }.to_string();
            fail_input(&mut report, "degenerate_input", msg, Some(witness));
        }
        Err(e) => fail_input(&mut report, "input", e.to_string(), None),
    }

    let b = &classification.basic;
    report.basic_classes = Some(BasicSection {
        classes: b.names(),
        theta_is_two: b.theta_is_two,
        decomposition_valid: b.decomposition_valid,
        max_residual: b.max_residual,
        max_g10_identity_defect: b.max_g10_identity_defect,
        witnesses: b.witnesses.clone(),
    });
    report.route_agreement = Some(RouteSection {
        agree: classification.discrepancies.iter().all(|d| d.agree) && classification.named.values().all(|v| v.agree),
        discrepancies: classification.discrepancies.clone(),
    });
    report.classification_details = Some(DetailSection {
        setting: classification.setting,
        alpha: classification.alpha,
        theorem_checks: classification.theorem_checks.clone(),
        vanishing_laws: classification.laws.clone(),
        max_f_space_defect: classification.max_f_space_defect,
    });
    report.named_classes = Some(classification.named);

    if report.status == Status::Clean && !report.failures.is_empty() {
        report.status = Status::Inconsistent;
    }
    report
}
