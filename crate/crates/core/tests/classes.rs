mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use walker_apct::classify::{classify, classify_structure, exponential_paracontact_family, NamedClass, SampledStructure, Setting};
use walker_apct::ftensor::{eval3, BasicClass};
use walker_apct::sampling::{Domain, Interval, SamplingConfig};
use walker_apct::ApctStructure;

type Closed = dyn Fn([f64; 3], [f64; 3], [f64; 3], [f64; 3]) -> f64;

/// Compares a tensor of the sampled structure against a closed form in
/// `(point, X, Y, Z)` at random arguments.
fn compare(s: &ApctStructure, pick: impl Fn(&walker_apct::classify::PointData) -> walker_apct::ftensor::Tensor3<f64>, closed: &Closed) {
    let cfg = SamplingConfig { samples: 100, ..Default::default() };
    let ss = SampledStructure::new(s, &cfg).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in &ss.points {
        let p = d.point.to_f64();
        for _ in 0..3 {
            let (x, y, z) = (random_vec(&mut rng), random_vec(&mut rng), random_vec(&mut rng));
            let got = eval3(&pick(d), &x, &y, &z);
            let want = closed(p, x, y, z);
            assert!((got - want).abs() <= 1e-9 * (1.0 + want.abs()), "at {p:?}: {got} vs {want}");
        }
    }
}

fn parallel_z() -> ApctStructure {
    structure("z", ["exp(1/2)", "1", "0"])
}

fn normal_xy() -> ApctStructure {
    structure_in("x^2/y^2", ["x/y", "1", "0"], Domain::new(Interval::new(0.5, 2.0), Interval::new(0.5, 2.0), Interval::new(-1.0, 1.0)))
}

fn almost_paracosymplectic() -> ApctStructure {
    structure("2*x + z^2", ["exp((2*z + 1)/2)", "1", "0"])
}

fn positive_xz() -> Domain {
    Domain::new(Interval::new(0.5, 2.0), Interval::new(-1.0, 1.0), Interval::new(0.5, 2.0))
}

fn inverse_root() -> ApctStructure {
    structure_in("x/z", ["0", "0", "1/sqrt(x/z)"], positive_xz())
}

fn g12_linear() -> ApctStructure {
    structure("2*x", ["y", "1", "0"])
}

#[test]
fn parallel_fixture_is_g0() {
    let c = classify_structure(&parallel_z(), &SamplingConfig::default()).unwrap();
    assert!(c.basic.is_g0());
    assert!(c.named(NamedClass::Paracosymplectic) && c.named(NamedClass::Normal));
    assert!(c.consistent());
    // Nonconstant ψ: ξ₁ = e^{(C − ∫ψ)/2}, f = ψx + m.
    let s = structure("(2*z + 1)*x + z^3", ["exp((1 - z^2 - z)/2)", "1", "0"]);
    let c = classify_structure(&s, &SamplingConfig::default()).unwrap();
    assert!(c.basic.is_g0(), "{:?}", c.basic.label());
}

#[test]
fn normal_fixture_closed_form() {
    compare(&normal_xy(), |d| d.fv.f, &|[x, y, _], a, b, c| {
        (a[0] * b[1] * c[2] - a[0] * b[2] * c[1] + (x / y) * (a[1] * b[2] * c[1] - a[1] * b[1] * c[2])) / y
    });
    let ss_cfg = SamplingConfig { samples: 100, ..Default::default() };
    let s = normal_xy();
    let ss = SampledStructure::new(&s, &ss_cfg).unwrap();
    for d in &ss.points {
        let want = -1.0 / d.point.y;
        assert!((d.fv.theta - want).abs() <= 1e-9 * want.abs());
        assert!((d.fv.theta_star - want).abs() <= 1e-9 * want.abs());
    }
    let c = classify(&ss);
    assert_eq!(c.basic.label(), "G5+G6");
    assert!(c.named(NamedClass::Normal) && !c.named(NamedClass::ParacontactMetric));
}

#[test]
fn g10_fixture_closed_form() {
    compare(&almost_paracosymplectic(), |d| d.fv.f, &|[_, _, z], a, b, c| {
        -2.0 * ((2.0 * z + 1.0) / 2.0).exp() * (a[2] * b[2] * c[1] - a[2] * b[1] * c[2])
    });
    let c = classify_structure(&almost_paracosymplectic(), &SamplingConfig::default()).unwrap();
    assert_eq!(c.basic.label(), "G10");
    let nij = &c.named[&NamedClass::Normal];
    assert!(!nij.value && nij.witness.is_some());
}

#[test]
fn inverse_root_closed_form() {
    compare(&inverse_root(), |d| d.fv.f, &|[x, _, z], a, b, c| {
        let k = -1.0 / (2.0 * z * (x / z).sqrt());
        k * ((z / x) * (a[0] * b[0] * c[1] - a[0] * b[1] * c[0]) + a[0] * b[2] * c[1] - a[0] * b[1] * c[2])
    });
    let c = classify_structure(&inverse_root(), &SamplingConfig::default()).unwrap();
    assert!(c.basic.is_exactly(&[BasicClass::G6, BasicClass::G10]));
    assert!(c.named(NamedClass::AlmostAlphaParacosymplectic) && !c.named(NamedClass::AlphaParaKenmotsu));
}

#[test]
fn g12_fixture_closed_form() {
    compare(&g12_linear(), |d| d.fv.f, &|[_, y, _], a, b, c| {
        (a[1] * b[1] * c[2] - a[1] * b[2] * c[1] + y * (a[2] * b[1] * c[2] - a[2] * b[2] * c[1])) * 1.0
    });
    compare(&g12_linear(), |d| d.projections.f12, &|[_, y, _], a, b, c| {
        a[1] * b[1] * c[2] - a[1] * b[2] * c[1] + y * (a[2] * b[1] * c[2] - a[2] * b[2] * c[1])
    });
    let c = classify_structure(&g12_linear(), &SamplingConfig::default()).unwrap();
    assert_eq!(c.basic.label(), "G12");
    assert!(c.named.values().all(|v| !v.value));
}

/// `f = x + y² + z + 2` makes all four projections nonzero.
fn general_inverse_root() -> ApctStructure {
    structure_in("x + y^2 + z + 2", ["0", "0", "1/sqrt(x + y^2 + z + 2)"], positive_xz())
}

fn jets(s: &ApctStructure, p: [f64; 3]) -> (f64, f64, f64, f64) {
    let j = s.manifold.f.eval_jet(&walker_apct::sampling::Point3::from(p), 1).unwrap();
    use walker_apct::field::Var::*;
    (j.value(), j.d(&[X]), j.d(&[Y]), j.d(&[Z]))
}

#[test]
fn inverse_root_projections() {
    for s in [inverse_root(), general_inverse_root()] {
        let s2 = s.clone();
        compare(&s, |d| d.projections.f5, &move |p, a, b, c| {
            let (f, _, fy, _) = jets(&s2, p);
            let r = f.sqrt();
            fy / (2.0 * f)
                * ((a[0] * b[2] * c[0] + a[1] * b[1] * c[0] - a[0] * b[0] * c[2] - a[1] * b[0] * c[1]) / r
                    + r * (a[1] * b[1] * c[2] - a[1] * b[2] * c[1]))
        });
        let s2 = s.clone();
        compare(&s, |d| d.projections.f6, &move |p, a, b, c| {
            let (f, _, _, fz) = jets(&s2, p);
            -fz / (4.0 * f * f.sqrt())
                * ((a[0] * b[1] * c[0] - a[0] * b[0] * c[1]) / f + a[0] * b[1] * c[2] + a[1] * b[2] * c[0]
                    - a[0] * b[2] * c[1]
                    - a[1] * b[0] * c[2])
        });
        let s2 = s.clone();
        compare(&s, |d| d.projections.f10, &move |p, a, b, c| {
            let (f, _, _, fz) = jets(&s2, p);
            let r = f.sqrt();
            fz / (4.0 * f * f)
                * ((a[0] * b[0] * c[1] - a[0] * b[1] * c[0]) / r
                    + r * (a[0] * b[2] * c[1] + a[1] * b[2] * c[0] - a[0] * b[1] * c[2] - a[1] * b[0] * c[2]))
        });
        let s2 = s.clone();
        compare(&s, |d| d.projections.f12, &move |p, a, b, c| {
            let (f, fx, fy, fz) = jets(&s2, p);
            let k = fz + f * fx;
            (fy * (a[0] * b[0] * c[2] - a[0] * b[2] * c[0] + f * (a[2] * b[0] * c[2] - a[2] * b[2] * c[0]))
                + k / f
                    * (a[0] * b[1] * c[0] - a[0] * b[0] * c[1]
                        + f * (a[0] * b[1] * c[2] - a[0] * b[2] * c[1] - a[2] * b[0] * c[1] + a[2] * b[1] * c[0])
                        + f * f * (a[2] * b[1] * c[2] - a[2] * b[2] * c[1])))
                / (2.0 * f * f.sqrt())
        });
    }
}

fn paracontact_routes(s: &ApctStructure) -> (bool, Vec<(&'static str, bool)>) {
    let c = classify_structure(s, &SamplingConfig::default()).unwrap();
    let v = &c.named[&NamedClass::ParacontactMetric];
    assert!(v.agree, "{v:#?}");
    (v.value, v.routes.iter().map(|r| (r.route, r.value)).collect())
}

#[test]
fn exponential_family_is_paracontact() {
    let cfg = SamplingConfig::default();
    for (psi, m) in [("z", "0"), ("0", "1"), ("z^2/4", "z - 1")] {
        let s = exponential_paracontact_family(&parse(psi), &parse(m), Domain::cube(0.5, 2.0), &cfg).unwrap();
        let (value, routes) = paracontact_routes(&s);
        assert!(value, "psi = {psi}, m = {m}: {routes:?}");
        assert!(routes.iter().any(|r| r.0 == "d eta = phi") && routes.iter().any(|r| r.0 == "coordinate conditions"));
        let c = classify_structure(&s, &cfg).unwrap();
        assert!(!c.named(NamedClass::Normal) && !c.named(NamedClass::ParaSasakian));
        assert!(c.basic.theta_is_two);
    }
}

#[test]
fn perturbed_family_is_not_paracontact() {
    // ξ₁ re-solved from the unit constraint for f = 2x + x².
    let xi3 = "exp(-2*y + z)";
    let f = "2*x + x^2";
    let s = structure(f, [&format!("(1 - ({f})*({xi3})^2)/(2*{xi3})"), "0", xi3]);
    let c = classify_structure(&s, &SamplingConfig::default()).unwrap();
    let v = &c.named[&NamedClass::ParacontactMetric];
    assert!(!v.value && v.agree);
    let w = v.witness.expect("witness");
    assert!(s.manifold.domain.contains(&w.point.into()));
    // Only the second coordinate condition fails.
    let conds = walker_apct::classify::paracontact_conditions(&s);
    let ss = SampledStructure::new(&s, &SamplingConfig::default()).unwrap();
    let zeros: Vec<bool> = conds.iter().map(|e| ss.zero(e).is_zero()).collect();
    assert_eq!(zeros, [true, false, true]);
}

#[test]
fn null_z_fast_paths() {
    for s in [structure("x^2 + z", ["0", "1", "0"]), inverse_root(), normal_xy()] {
        let (value, routes) = paracontact_routes(&s);
        assert!(!value);
        assert!(routes.iter().any(|r| r.0 == "xi3 = 0 or xi1 = xi2 = 0"), "{routes:?}");
    }
}

#[test]
fn inverse_root_setting() {
    let cfg = SamplingConfig::default();
    let cases = [
        // f_y = 0, f_z = −f f_x ≠ 0.
        ("x/(z + 1)", "G6+G10", true),
        // f_y = f_z = 0, f_x ≠ 0.
        ("x + 1", "G12", false),
        ("x + y^2 + z + 2", "G5+G6+G10+G12", false),
    ];
    for (f, label, almost_alpha) in cases {
        let s = structure_in(f, ["0", "0", &format!("1/sqrt({f})")], positive_xz());
        let c = classify_structure(&s, &cfg).unwrap();
        assert_eq!(c.setting, Setting::InverseRootF);
        assert_eq!(c.basic.label(), label, "{f}");
        assert_eq!(c.named(NamedClass::AlmostAlphaParacosymplectic), almost_alpha);
        assert!(!c.named(NamedClass::AlmostAlphaParaKenmotsu));
        assert!(c.consistent(), "{f}: {c:#?}");
        if almost_alpha {
            assert!(!c.alpha.unwrap().constant_on_samples);
        }
    }
}

#[test]
fn negative_reeb_branch() {
    let cfg = SamplingConfig::default();
    let s = structure_in(
        "x^2/y^2",
        ["-x/y", "-1", "0"],
        Domain::new(Interval::new(0.5, 2.0), Interval::new(0.5, 2.0), Interval::new(-1.0, 1.0)),
    );
    let c = classify_structure(&s, &cfg).unwrap();
    assert_eq!(c.setting, Setting::NullZComponent { sign: -1 });
    assert!(c.named(NamedClass::Normal));
    assert_eq!(c.basic.label(), "G5+G6");
    assert!(c.consistent(), "{c:#?}");
    let ss = SampledStructure::new(&s, &cfg).unwrap();
    for d in &ss.points {
        assert!((d.fv.theta + d.fv.theta_star).abs() < 1e-12);
    }

    let g12 = structure("-2*x", ["y", "-1", "0"]);
    let c = classify_structure(&g12, &cfg).unwrap();
    assert_eq!(c.basic.label(), "G12");
    assert!(c.consistent());
}

#[test]
fn exact_g10_requires_nonzero_d0() {
    let cfg = SamplingConfig::default();
    // (ξ₁)_x = (ξ₁)_y = 0 and D0 = 2(ξ₁)_z + ξ₁ f_x + f_y ≡ 0: parallel.
    let c = classify_structure(&structure("2*z*x", ["exp(-z^2/2)", "1", "0"]), &cfg).unwrap();
    assert!(c.basic.is_g0() && c.named(NamedClass::Paracosymplectic));
    assert!(c.consistent(), "{c:#?}");
    let c = classify_structure(&structure("y*z", ["0", "1", "0"]), &cfg).unwrap();
    assert_eq!(c.basic.label(), "G10");
    assert!(c.named(NamedClass::AlmostParacosymplectic));
}

#[test]
fn random_structures_are_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cfg = SamplingConfig { samples: 32, ..Default::default() };
    for _ in 0..40 {
        let s = random_structure(&mut rng);
        let c = classify_structure(&s, &cfg).unwrap();
        assert!(c.consistent(), "f = {}, xi = {:?}: {c:#?}", s.manifold.f, s.xi.iter().map(|e| e.to_string()).collect::<Vec<_>>());
        assert!(!(c.named(NamedClass::Normal) && c.named(NamedClass::ParacontactMetric)));
    }
}
