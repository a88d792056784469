mod common;

use common::*;
use proptest::prelude::*;
use walker_apct::corpus::CORPUS;
use walker_apct::field::Var;
use walker_apct::sampling::{Domain, Point3, SamplingConfig};
use walker_apct::WalkerManifold;

fn corpus_points() -> Vec<(String, WalkerManifold, Vec<Point3<f64>>)> {
    CORPUS
        .iter()
        .map(|fx| {
            let m = fx.manifest();
            let wm = WalkerManifold::new(m.f.clone(), 1, m.domain.clone()).unwrap();
            let cfg = SamplingConfig { samples: 16, ..Default::default() };
            let pts = wm.samples(&cfg).unwrap().points;
            (fx.name.to_string(), wm, pts)
        })
        .collect()
}

#[test]
fn christoffel_matches_finite_differences() {
    for (name, m, pts) in corpus_points() {
        for p in &pts {
            let fd = fd_christoffel(&m, p, 1e-3);
            let g = m.christoffel_at(p).unwrap().gamma;
            for k in 0..3 {
                for i in 0..3 {
                    for j in 0..3 {
                        let err = (fd[k][i][j] - g[k][i][j]).abs();
                        assert!(err <= 1e-6 * (1.0 + g[k][i][j].abs()), "{name} Γ^{k}_{i}{j} at {p:?}: {err}");
                    }
                }
            }
        }
    }
}

#[test]
fn curvature_matches_connection_oracle() {
    for (name, m, pts) in corpus_points() {
        for p in &pts {
            let f = m.f_jet(p).unwrap();
            let oracle = oracle_curvature(&f);
            let r = m.curvature_at(p).unwrap().r;
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        for l in 0..3 {
                            let (a, b) = (oracle[i][j][k][l], r[i][j][k][l]);
                            assert!((a - b).abs() <= 1e-10 * (1.0 + a.abs()), "{name} R[{i}{j}{k}{l}]: {a} vs {b}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn closed_connection_matches_generic_jets() {
    let m = WalkerManifold::new(parse("x^2*y + exp(z)*x"), 1, Domain::cube(0.5, 2.0)).unwrap();
    let p = Point3::new(0.7, 1.3, 1.1);
    let g = m.christoffel_at(&p).unwrap().gamma;
    let lc = levi_civita_jets(&m.f_jet(&p).unwrap());
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                assert!((g[k][i][j] - lc[k][i][j].value()).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn bianchi_and_pair_symmetry() {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7);
    for (name, m, pts) in corpus_points() {
        for p in &pts {
            let r = m.curvature_at(p).unwrap();
            let g = m.metric_at(p).unwrap();
            for _ in 0..5 {
                let [x, y, z, w] = [0; 4].map(|_| random_vec(&mut rng));
                let s = [r.apply(&x, &y, &z), r.apply(&y, &z, &x), r.apply(&z, &x, &y)];
                let scale = 1.0 + r.max_abs() * (1.0 + g.g[2][2].abs());
                for c in 0..3 {
                    assert!((s[0][c] + s[1][c] + s[2][c]).abs() <= 1e-10 * scale, "{name}: first Bianchi");
                }
                let a = r.lowered(&g, &x, &y, &z, &w);
                let checks = [a - r.lowered(&g, &z, &w, &x, &y), a + r.lowered(&g, &y, &x, &z, &w), a + r.lowered(&g, &x, &y, &w, &z)];
                for d in checks {
                    assert!(d.abs() <= 1e-10 * scale, "{name}: pair symmetry {d}");
                }
            }
        }
    }
}

#[test]
fn ricci_is_a_contraction_of_curvature() {
    // ρ(Y, Z) = tr(X ↦ R(X, Y)Z) with the negated curvature sign.
    for (name, m, pts) in corpus_points() {
        for p in &pts {
            let r = m.curvature_at(p).unwrap().r;
            let ric = m.ricci_at(p).unwrap();
            let g = m.metric_at(p).unwrap();
            for j in 0..3 {
                for k in 0..3 {
                    let tr: f64 = (0..3).map(|i| r[i][j][k][i]).sum();
                    assert!((tr + ric.rho[j][k]).abs() < 1e-10 * (1.0 + tr.abs()), "{name} rho[{j}][{k}]");
                }
            }
            // g(QX, Y) = ρ(X, Y) and scal = tr Q.
            for i in 0..3 {
                for j in 0..3 {
                    let lhs = g.inner(&ric.apply(&walker_apct::linalg::basis(i)), &walker_apct::linalg::basis(j));
                    assert!((lhs - ric.rho[i][j]).abs() < 1e-10 * (1.0 + lhs.abs()));
                }
            }
            let tr_q = ric.q[0][0] + ric.q[1][1] + ric.q[2][2];
            assert!((tr_q - ric.scal).abs() < 1e-12 * (1.0 + tr_q.abs()));
        }
    }
}

#[test]
fn walker_parallel_null_field() {
    // ∇∂x = 0 is not true in general, but ∇_X ∂x is proportional to ∂x.
    let m = WalkerManifold::new(parse("x^2*y + z"), 1, Domain::cube(0.5, 2.0)).unwrap();
    let c = m.christoffel_at(&Point3::new(1.0, 1.5, 0.8)).unwrap();
    for i in 0..3 {
        let v = c.covariant(&walker_apct::linalg::basis(i), &walker_apct::linalg::basis(0));
        assert_eq!((v[1], v[2]), (0.0, 0.0));
    }
}

fn fd_partial(f: &walker_apct::ScalarField, p: &Point3<f64>, v: Var, h: f64) -> f64 {
    let mut a = *p;
    let mut b = *p;
    match v {
        Var::X => {
            a.x -= h;
            b.x += h
        }
        Var::Y => {
            a.y -= h;
            b.y += h
        }
        Var::Z => {
            a.z -= h;
            b.z += h
        }
    }
    (f.eval(&b).unwrap() - f.eval(&a).unwrap()) / (2.0 * h)
}

proptest! {
    #![proptest_config(proptest_config(64))]

    #[test]
    fn jets_match_finite_differences(
        a in -2i32..=2, b in -2i32..=2, c in 1i32..=3,
        x in 0.5f64..2.0, y in 0.5f64..2.0, z in 0.5f64..2.0,
    ) {
        let f = parse(&format!("({a})*x^3*y + exp(({b})*z/4)*x/y + sqrt({c} + x*z)"));
        let p = Point3::new(x, y, z);
        let jet = f.eval_jet(&p, 3).unwrap();
        for v in Var::ALL {
            let fd = fd_partial(&f, &p, v, 1e-5);
            prop_assert!((jet.d(&[v]) - fd).abs() <= 1e-6 * (1.0 + fd.abs()));
        }
        // Third derivatives against differences of the exact second-order field.
        for v in Var::ALL {
            let fxx = f.diff_many(&[Var::X, Var::X]);
            let fd = fd_partial(&fxx, &p, v, 1e-4);
            let exact = jet.d(&[Var::X, Var::X, v]);
            prop_assert!((exact - fd).abs() <= 1e-4 * (1.0 + fd.abs()), "{} vs {}", exact, fd);
        }
    }
}

/// The seed space is small enough to sweep whole.
#[test]
fn christoffel_fd_on_random_f() {
    for seed in 0u64..1000 {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let f = random_poly(&mut rng);
        let m = WalkerManifold::new(parse(&f), 1, Domain::cube(0.5, 2.0)).unwrap();
        let p = Point3::new(1.0 + 0.5 * rng.gen_range(-1.0..1.0), 1.2, 0.9);
        let fd = fd_christoffel(&m, &p, 1e-3);
        let g = m.christoffel_at(&p).unwrap().gamma;
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    assert!((fd[k][i][j] - g[k][i][j]).abs() <= 1e-6 * (1.0 + g[k][i][j].abs()), "seed {seed}, f = {f}");
                }
            }
        }
    }
}

use rand::Rng;
