mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use walker_apct::classify::{classify_structure, NamedClass, SampledStructure};
use walker_apct::field::exact::{dyadic, Exact};
use walker_apct::field::Var;
use walker_apct::ftensor::eval3;
use walker_apct::sampling::{Point3, SamplingConfig};

fn expr_source() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("x".to_string()),
        Just("y".to_string()),
        Just("z".to_string()),
        (-5i32..=5).prop_map(|k| k.to_string()),
        (1i32..=7, 2i32..=5).prop_map(|(p, q)| format!("{p}/{q}")),
        (0i32..100).prop_map(|k| format!("{}.{}", k / 10, k % 10)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) + ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) - ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) * ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) / (2 + ({b})^2)")),
            inner.clone().prop_map(|a| format!("-({a})")),
            (inner.clone(), -3i32..=3).prop_map(|(a, n)| format!("({a})^({n})")),
            inner.clone().prop_map(|a| format!("exp(({a})/8)")),
            inner.clone().prop_map(|a| format!("sqrt(1 + ({a})^2)")),
        ]
    })
}

fn rational_source() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("x".to_string()),
        Just("y".to_string()),
        Just("z".to_string()),
        (-5i32..=5).prop_map(|k| k.to_string()),
        (1i32..=7, 2i32..=5).prop_map(|(p, q)| format!("{p}/{q}")),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) + ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) * ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) / (3 + ({b})^2)")),
            (inner.clone(), 0i32..=3).prop_map(|(a, n)| format!("({a})^{n}")),
        ]
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs())) || (a.is_nan() && b.is_nan())
}

proptest! {
    #![proptest_config(proptest_config(256))]

    #[test]
    fn print_parse_fixed_point(src in expr_source()) {
        let e = parse(&src);
        let printed = e.to_string();
        let again = parse(&printed);
        prop_assert_eq!(again.to_string(), printed.clone());
        let p = Point3::new(0.7, 1.3, -0.4);
        if let (Ok(a), Ok(b)) = (e.eval(&p), again.eval(&p)) {
            prop_assert!(close(a, b, 1e-12), "{} vs {} for {}", a, b, printed);
        }
    }

    #[test]
    fn mixed_partials_commute(src in expr_source(), i in 0usize..3, j in 0usize..3) {
        let e = parse(&src);
        let (u, v) = (Var::from_index(i), Var::from_index(j));
        let p = Point3::new(0.9, 1.1, 0.6);
        let ab = e.diff(u).diff(v);
        let ba = e.diff(v).diff(u);
        if let (Ok(a), Ok(b), Ok(jet)) = (ab.eval(&p), ba.eval(&p), e.eval_jet(&p, 2)) {
            prop_assert!(close(a, b, 1e-9));
            prop_assert!(close(a, jet.d(&[u, v]), 1e-9));
        }
    }

    #[test]
    fn symbolic_and_jet_derivatives_agree(src in expr_source()) {
        let e = parse(&src);
        let p = Point3::new(1.2, 0.8, 1.5);
        if let Ok(jet) = e.eval_jet(&p, 3) {
            for vars in [&[Var::X][..], &[Var::Y, Var::Z], &[Var::X, Var::Y, Var::Z], &[Var::Z, Var::Z, Var::Z]] {
                if let Ok(v) = e.diff_many(vars).eval(&p) {
                    prop_assert!(close(v, jet.d(vars), 1e-8), "{:?}: {} vs {}", vars, v, jet.d(vars));
                }
            }
        }
    }

    #[test]
    fn exact_matches_float(src in rational_source(), a in -8i32..8, b in -8i32..8, c in -8i32..8) {
        let e = parse(&src);
        let pt = [a as f64 / 4.0, b as f64 / 4.0, c as f64 / 4.0];
        let exact = e.eval_exact(&pt.map(dyadic));
        if let Exact::Value(r) = exact {
            let f = e.eval(&Point3::from(pt)).unwrap();
            let num: f64 = r.numer().to_string().parse().unwrap();
            let den: f64 = r.denom().to_string().parse().unwrap();
            prop_assert!(close(f, num / den, 1e-9));
        }
    }

    #[test]
    fn structure_tensor_invariants(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_structure(&mut rng);
        let cfg = SamplingConfig { samples: 6, seed, ..Default::default() };
        let axioms = s.validate_axioms(&cfg).unwrap();
        prop_assert!(axioms.all_passed(), "{:?}", axioms);
        let ss = SampledStructure::new(&s, &cfg).unwrap();
        for d in &ss.points {
            let f = &d.fv.f;
            let fr = &d.frame;
            let xi = fr.xi_val();
            let scale = 1.0 + d.scale;
            for _ in 0..4 {
                let (x, y, z) = (random_vec(&mut rng), random_vec(&mut rng), random_vec(&mut rng));
                // F(X,Y,Z) = −F(X,Z,Y).
                prop_assert!((eval3(f, &x, &y, &z) + eval3(f, &x, &z, &y)).abs() <= 1e-10 * scale);
                // F(X,φY,φZ) = F(X,Y,Z) + η(Y)F(X,Z,ξ) − η(Z)F(X,Y,ξ).
                let lhs = eval3(f, &x, &fr.phi_apply(&y), &fr.phi_apply(&z));
                let rhs = eval3(f, &x, &y, &z) + fr.eta_apply(&y) * eval3(f, &x, &z, &xi) - fr.eta_apply(&z) * eval3(f, &x, &y, &xi);
                prop_assert!((lhs - rhs).abs() <= 1e-9 * scale);
            }
        }
    }
}

#[test]
fn never_normal_and_paracontact() {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    let cfg = SamplingConfig { samples: 24, ..Default::default() };
    let mut paracontact = 0;
    for i in 0..60 {
        let s = if i % 3 == 0 {
            let (psi, m) = random_family_sources(&mut rng);
            walker_apct::classify::exponential_paracontact_family(&parse(&psi), &parse(&m), walker_apct::Domain::cube(0.5, 2.0), &cfg)
                .unwrap()
        } else {
            random_structure(&mut rng)
        };
        let c = classify_structure(&s, &cfg).unwrap();
        let p = c.named(NamedClass::ParacontactMetric);
        paracontact += usize::from(p);
        assert!(!(p && c.named(NamedClass::Normal)));
        assert!(!c.named(NamedClass::ParaSasakian) && !c.named(NamedClass::KParacontact));
        assert!(c.consistent(), "{c:#?}");
    }
    assert!(paracontact >= 20);
}
