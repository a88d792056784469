//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use walker_apct::field::{Constants, Jet3, Var};
use walker_apct::sampling::{Domain, Interval, Point3, SamplingConfig};
use walker_apct::{ApctStructure, ScalarField, WalkerManifold};

pub type Gamma = [[[f64; 3]; 3]; 3];

pub fn parse(s: &str) -> ScalarField {
    ScalarField::parse(s, &Constants::new()).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn structure_in(f: &str, xi: [&str; 3], domain: Domain) -> ApctStructure {
    let m = WalkerManifold::new(parse(f), 1, domain).unwrap();
    ApctStructure::build(m, xi.map(parse), &SamplingConfig::default()).unwrap()
}

pub fn structure(f: &str, xi: [&str; 3]) -> ApctStructure {
    structure_in(f, xi, Domain::cube(0.5, 2.0))
}

fn shifted(p: &Point3<f64>, l: usize, t: f64) -> Point3<f64> {
    let mut q = *p;
    match l {
        0 => q.x += t,
        1 => q.y += t,
        _ => q.z += t,
    }
    q
}

/// `Γ^k_ij` from the Levi-Civita formula with metric derivatives taken by
/// a five-point stencil on `metric_at`.
pub fn fd_christoffel(m: &WalkerManifold, p: &Point3<f64>, h: f64) -> Gamma {
    // The stencil may step past the sampling box.
    let mut domain = m.domain.clone();
    for iv in &mut domain.intervals {
        *iv = Interval::new(iv.lo - 1.0, iv.hi + 1.0);
    }
    let m = &WalkerManifold::new(m.f.clone(), m.epsilon(), domain).unwrap();
    let g = |q: &Point3<f64>| m.metric_at(q).unwrap().g;
    let mut dg = [[[0.0; 3]; 3]; 3];
    for (l, slot) in dg.iter_mut().enumerate() {
        let (a, b, c, d) = (g(&shifted(p, l, -2.0 * h)), g(&shifted(p, l, -h)), g(&shifted(p, l, h)), g(&shifted(p, l, 2.0 * h)));
        for i in 0..3 {
            for j in 0..3 {
                slot[i][j] = (a[i][j] - 8.0 * b[i][j] + 8.0 * c[i][j] - d[i][j]) / (12.0 * h);
            }
        }
    }
    let inv = m.metric_at(p).unwrap().inv;
    let mut gamma = [[[0.0; 3]; 3]; 3];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for l in 0..3 {
                    gamma[k][i][j] += 0.5 * inv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                }
            }
        }
    }
    gamma
}

type JetMat = [[Jet3<f64>; 3]; 3];

fn jet_inverse(g: &JetMat) -> JetMat {
    let c = |i: usize, j: usize| {
        let (i1, i2) = ((i + 1) % 3, (i + 2) % 3);
        let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
        g[i1][j1] * g[i2][j2] - g[i1][j2] * g[i2][j1]
    };
    let cof: JetMat = [0, 1, 2].map(|i| [0, 1, 2].map(|j| c(i, j)));
    let det = g[0][0] * cof[0][0] + g[0][1] * cof[0][1] + g[0][2] * cof[0][2];
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| cof[j][i] / det))
}

/// Christoffel jets from metric jets through the generic Levi-Civita
/// formula; nothing specific to Walker metrics beyond `g` itself.
pub fn levi_civita_jets(f: &Jet3<f64>) -> [[[Jet3<f64>; 3]; 3]; 3] {
    let order = f.order();
    let c = |v: f64| Jet3::constant(v, order);
    let g: JetMat = [[c(0.0), c(0.0), c(1.0)], [c(0.0), c(1.0), c(0.0)], [c(1.0), c(0.0), *f]];
    let inv = jet_inverse(&g);
    let low = order - 1;
    let dg = |l: usize, i: usize, j: usize| g[i][j].derivative(Var::from_index(l));
    let zero = Jet3::constant(0.0, low);
    let mut gamma = [[[zero; 3]; 3]; 3];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = zero;
                for l in 0..3 {
                    acc = acc + inv[k][l].truncate(low) * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
                }
                gamma[k][i][j] = acc * 0.5;
            }
        }
    }
    gamma
}

/// `r[i][j][k][l]`: the `∂l` component of `R(∂i,∂j)∂k` with
/// `R(X,Y) = [∇_Y, ∇_X] + ∇_[X,Y]`, the negative of `∇_X∇_Y − ∇_Y∇_X − ∇_[X,Y]`.
pub fn oracle_curvature(f: &Jet3<f64>) -> [[[[f64; 3]; 3]; 3]; 3] {
    let gj = levi_civita_jets(f);
    let d = |k: usize, i: usize, j: usize, v: usize| gj[k][i][j].d(&[Var::from_index(v)]);
    let v = |k: usize, i: usize, j: usize| gj[k][i][j].value();
    let mut r = [[[[0.0; 3]; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let mut s = d(l, j, k, i) - d(l, i, k, j);
                    for m in 0..3 {
                        s += v(m, j, k) * v(l, i, m) - v(m, i, k) * v(l, j, m);
                    }
                    r[i][j][k][l] = -s;
                }
            }
        }
    }
    r
}

/// Euclidean-random vector in `[-1, 1]³`.
pub fn proptest_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config { cases, failure_persistence: None, ..Default::default() }
}

pub fn random_vec(rng: &mut impl Rng) -> [f64; 3] {
    [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]
}

const MONOMIALS: [&str; 10] = ["1", "x", "y", "z", "x*y", "y*z", "x*z", "x^2", "y^2", "z^2"];

fn quarter(rng: &mut impl Rng) -> String {
    let k: i32 = rng.gen_range(-4..=4);
    format!("({k}/4)")
}

/// Random polynomial of degree ≤ 2 with coefficients in `{k/4}`.
pub fn random_poly(rng: &mut impl Rng) -> String {
    let mut terms = Vec::new();
    for m in MONOMIALS {
        if rng.gen_bool(0.4) {
            terms.push(format!("{}*{m}", quarter(rng)));
        }
    }
    if terms.is_empty() {
        quarter(rng)
    } else {
        terms.join(" + ")
    }
}

/// A random valid structure on `[0.5, 2]³`, as `(f, ξ)` sources.
///
/// Either `ξ₃` is a linear function bounded below by `1/2` with `ξ₂`
/// random and `ξ₁` solved from the unit constraint, or `ξ₃ = 0`,
/// `ξ₂ = ±1` with `ξ₁` random.
pub fn random_structure_sources(rng: &mut impl Rng) -> (String, [String; 3]) {
    let f = random_poly(rng);
    if rng.gen_bool(0.7) {
        let xi2 = random_poly(rng);
        let xi3 = format!("2 + ({}*x + {}*y + {}*z)/4", quarter(rng), quarter(rng), quarter(rng));
        let xi1 = format!("(1 - ({xi2})^2 - ({f})*({xi3})^2)/(2*({xi3}))");
        (f, [xi1, xi2, xi3])
    } else {
        let s = if rng.gen_bool(0.5) { "1" } else { "-1" };
        let xi1 = if rng.gen_bool(0.5) { random_poly(rng) } else { format!("({})*exp(z/2)", random_poly(rng)) };
        (f, [xi1, s.to_string(), "0".to_string()])
    }
}

pub fn random_structure(rng: &mut impl Rng) -> ApctStructure {
    let (f, xi) = random_structure_sources(rng);
    let m = WalkerManifold::new(parse(&f), 1, Domain::cube(0.5, 2.0)).unwrap();
    ApctStructure::build(m, xi.clone().map(|s| parse(&s)), &SamplingConfig::default())
        .unwrap_or_else(|e| panic!("f = {f}, xi = {xi:?}: {e}"))
}

/// Random paracontact structure from the exponential family with `ψ`, `m`
/// random polynomials in `z`.
pub fn random_family_sources(rng: &mut impl Rng) -> (String, String) {
    let mut p = || format!("{}*z^2 + {}*z + {}", quarter(rng), quarter(rng), quarter(rng));
    (p(), p())
}
