mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use walker_apct::classify::{classify_structure, NamedClass};
use walker_apct::corpus::CORPUS;
use walker_apct::curvature::*;
use walker_apct::sampling::{Point3, SamplingConfig};
use walker_apct::walker::SegreType;
use walker_apct::{linalg, ApctStructure, WalkerManifold};

fn analysis(s: &ApctStructure) -> CurvatureAnalysis {
    let cfg = SamplingConfig::default();
    let c = classify_structure(s, &cfg).unwrap();
    analyze_curvature(s, &cfg, Some(&c)).unwrap()
}

#[test]
fn x_squared_both_branches() {
    for (s, sign) in [("1", 1i8), ("-1", -1)] {
        let a = analysis(&structure("x^2", ["0", s, "0"]));
        let ee = &a.eta_einstein;
        assert!(ee.is_eta_einstein && ee.residual_route && ee.condition_route);
        assert_eq!((ee.a, ee.b), (Some(1.0), Some(-1.0)));
        assert_eq!(ee.xi_matches_n, Some(sign));
        let eigen = ee.segre.eigen.unwrap();
        assert_eq!(ee.segre.kind, SegreType::Type11_1Degenerate);
        assert_eq!(eigen.n, [0.0, 1.0, 0.0]);
        assert_eq!(eigen.eigenvalues, (0.0, 1.0));
    }
}

#[test]
fn normal_fixture_is_not_eta_einstein() {
    let s = structure("x^2/y^2", ["x/y", "1", "0"]);
    let a = analysis(&s);
    assert!(!a.eta_einstein.is_eta_einstein && a.eta_einstein.agree);
    let w = a.eta_einstein.witness.unwrap();
    assert!(w.magnitude > 1e-3);
    assert_eq!(a.equivalences.state, EquivalenceState::AllFalse);
    assert!(a.equivalences.flags.iter().all(|f| !f.value && f.witness.is_some()));
}

#[test]
fn shifted_square_is_paracosymplectic() {
    let s = structure("(x + y)^2", ["-1", "1", "0"]);
    let cfg = SamplingConfig::default();
    let c = classify_structure(&s, &cfg).unwrap();
    assert!(c.named(NamedClass::Paracosymplectic));
    let a = analyze_curvature(&s, &cfg, Some(&c)).unwrap();
    assert!(a.eta_einstein.is_eta_einstein);
    let r = a.eta_einstein_consequences.unwrap();
    assert_eq!(r.c, Some(2.0));
    assert!(r.discriminant_zero && r.classifier_agrees == Some(true) && r.consistent());
}

#[test]
fn sectional_on_null_plane() {
    let s = structure("x^2", ["0", "1", "0"]);
    let p = Point3::new(1.3, 0.7, 1.1);
    // V₁ = ∂x, V₂ = ∂z; g(V₁, V₂) = 1, g(V₁, V₁) = 0.
    let (v1, v2) = ([1.0, 0.0, 0.0], [0.0, 0.0, 1.0]);
    let f = s.manifold.f_jet(&p).unwrap();
    let r = oracle_curvature(&f);
    let g = s.manifold.metric_at(&p).unwrap();
    let rv = |x: &[f64; 3], y: &[f64; 3], z: &[f64; 3]| {
        let mut out = [0.0; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        out[l] += x[i] * y[j] * z[k] * r[i][j][k][l];
                    }
                }
            }
        }
        out
    };
    let den = g.inner(&v1, &v1) * g.inner(&v2, &v2) - g.inner(&v1, &v2).powi(2);
    let k_plane = g.inner(&rv(&v1, &v2, &v2), &v1) / den;
    assert!((k_plane + 1.0).abs() < 1e-12);

    let x = linalg::sub(&v1, &v2);
    let rep = sectional_curvatures(&s, &x, &p).unwrap();
    assert!((rep.k_phi - k_plane).abs() < 1e-12);
    assert!(rep.k_xi.abs() < 1e-12);
    assert_eq!(rep.scal, 2.0);
    assert!(matches!(sectional_curvatures(&s, &v1, &p), Err(CurvatureError::DegenerateSection { .. })));
}

#[test]
fn phi_sectional_is_independent_of_direction() {
    let s = structure("x^2", ["0", "1", "0"]);
    let c = CurvatureSamples::new(&s, &SamplingConfig::default()).unwrap();
    let survey = sectional_survey(&c, 50);
    assert!(survey.admissible > 0);
    assert!(survey.max_variance_phi <= 1e-9 && survey.max_variance_xi <= 1e-9);
    let k = survey.k_phi.unwrap();
    assert!((k.min + 1.0).abs() < 1e-9 && (k.max + 1.0).abs() < 1e-9);

    let flat = structure("y*z", ["0", "1", "0"]);
    let c = CurvatureSamples::new(&flat, &SamplingConfig::default()).unwrap();
    let survey = sectional_survey(&c, 50);
    let (kx, kp) = (survey.k_xi.unwrap(), survey.k_phi.unwrap());
    assert_eq!((kx.min, kx.max, kp.min, kp.max), (0.0, 0.0, 0.0, 0.0));
}

#[test]
fn corpus_consequences() {
    for fx in &CORPUS {
        let m = fx.manifest();
        let wm = WalkerManifold::new(m.f.clone(), m.epsilon, m.domain.clone()).unwrap();
        let s = ApctStructure::build(wm, m.xi.clone(), &m.sampling).unwrap();
        let c = classify_structure(&s, &m.sampling).unwrap();
        let a = analyze_curvature(&s, &m.sampling, Some(&c)).unwrap();
        assert!(a.consistent(), "{}", fx.name);
        // Paracosymplectic implies flat or η-Einstein.
        if c.named(NamedClass::Paracosymplectic) {
            assert!(a.flat || a.eta_einstein.is_eta_einstein, "{}", fx.name);
        }
        if a.eta_einstein.is_eta_einstein {
            assert!(a.eta_einstein_consequences.as_ref().unwrap().q_xi_zero);
        }
    }
}

#[test]
fn anti_invariant_ricci_implies_commuting() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let cfg = SamplingConfig { samples: 24, ..Default::default() };
    let mut seen_true = 0;
    for i in 0..40 {
        let s = if i % 4 == 0 {
            // Quadratic in x with a matching Reeb field keeps ρ anti-invariant.
            structure("x^2 + y*z", ["0", "1", "0"])
        } else {
            random_structure(&mut rng)
        };
        let a = analyze_curvature(&s, &cfg, None).unwrap();
        let anti = a.equivalences.flags.iter().find(|f| f.statement.starts_with("rho")).unwrap();
        let commute = a.equivalences.flags.iter().find(|f| f.statement.starts_with("Q phi")).unwrap();
        if anti.value {
            seen_true += 1;
            assert!(commute.value);
        }
        assert!(a.equivalences.consistent(), "{:#?}", a.equivalences);
    }
    assert!(seen_true > 0);
}

/// η-Einstein does not force constant scalar curvature: for `f = x^-2 + 1`,
/// `ξ = (0, 1, 0)` one has `ρ = (3/x⁴)(g − η⊗η)` and `scal = 6/x⁴`.
#[test]
fn eta_einstein_with_varying_scalar_curvature() {
    let s = structure("x^-2 + 1", ["0", "1", "0"]);
    let cfg = SamplingConfig::default();
    let c = classify_structure(&s, &cfg).unwrap();
    let a = analyze_curvature(&s, &cfg, Some(&c)).unwrap();
    assert!(a.eta_einstein.is_eta_einstein && a.eta_einstein.agree);
    assert_eq!((a.eta_einstein.a, a.eta_einstein.b), (None, None));
    assert!(!a.scal.constant);
    let r = a.eta_einstein_consequences.as_ref().unwrap();
    assert!(!r.scal_constant && r.c.is_none());
    assert!(r.k_xi_zero && r.k_phi_matches && r.q_xi_zero, "{r:#?}");
    assert!(a.consistent());

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let p = Point3::new(rng.gen_range(0.5..2.0f64), rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0));
        let want: f64 = -3.0 / p.x.powi(4);
        let rep = sectional_curvatures(&s, &random_vec(&mut rng), &p).unwrap();
        assert!((rep.k_phi - want).abs() <= 1e-9 * want.abs(), "{} vs {want}", rep.k_phi);
        assert!((rep.scal + 2.0 * want).abs() <= 1e-9 * want.abs());
    }
}
