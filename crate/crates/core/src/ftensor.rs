//! The structure tensor `F(X,Y,Z) = g((∇_X φ)Y, Z)` and the objects derived
//! from it, each computed by at least two independent routes.
//!
//! Index convention: `t[i][j][k] = T(∂i, ∂j, ∂k)` with `0, 1, 2 = x, y, z`.
//! `dη` uses the normalisation `dη(X,Y) = ½((∇_X η)Y − (∇_Y η)X)`.

use serde::Serialize;

use crate::field::{Jet3, Var};
use crate::linalg::{self, basis, Mat3, Vec3};
use crate::scalar::Scalar;
use crate::structure::Frame;

pub type Tensor3<T> = [[[T; 3]; 3]; 3];

const X: Var = Var::X;
const Y: Var = Var::Y;
const Z: Var = Var::Z;

pub fn zero_tensor<T: Scalar>() -> Tensor3<T> {
    [[[T::zero(); 3]; 3]; 3]
}

/// `T(u, v, w)` for a trilinear form.
pub fn eval3<T: Scalar>(t: &Tensor3<T>, u: &Vec3<T>, v: &Vec3<T>, w: &Vec3<T>) -> T {
    let mut s = T::zero();
    for i in 0..3 {
        if u[i] == T::zero() {
            continue;
        }
        for j in 0..3 {
            if v[j] == T::zero() {
                continue;
            }
            for k in 0..3 {
                s = s + t[i][j][k] * u[i] * v[j] * w[k];
            }
        }
    }
    s
}

/// Tensor built componentwise from a trilinear function.
pub fn tabulate<T: Scalar>(mut f: impl FnMut(&Vec3<T>, &Vec3<T>, &Vec3<T>) -> T) -> Tensor3<T> {
    let mut t = zero_tensor();
    for (i, a) in t.iter_mut().enumerate() {
        for (j, b) in a.iter_mut().enumerate() {
            for (k, c) in b.iter_mut().enumerate() {
                *c = f(&basis(i), &basis(j), &basis(k));
            }
        }
    }
    t
}

pub fn tabulate2<T: Scalar>(mut f: impl FnMut(&Vec3<T>, &Vec3<T>) -> T) -> Mat3<T> {
    let mut m = linalg::zero_mat();
    for (i, row) in m.iter_mut().enumerate() {
        for (j, c) in row.iter_mut().enumerate() {
            *c = f(&basis(i), &basis(j));
        }
    }
    m
}

pub fn tensor_sub<T: Scalar>(a: &Tensor3<T>, b: &Tensor3<T>) -> Tensor3<T> {
    let mut t = *a;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                t[i][j][k] = t[i][j][k] - b[i][j][k];
            }
        }
    }
    t
}

pub fn tensor_max_abs<T: Scalar>(t: &Tensor3<T>) -> T {
    t.iter().flatten().flatten().fold(T::zero(), |m, v| m.max(v.abs()))
}

pub fn tensor_values<T: Scalar>(t: &Tensor3<Jet3<T>>) -> Tensor3<T> {
    t.map(|a| a.map(|b| b.map(|c| c.value())))
}

/// `F` at a point with its cached contractions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FTensorValue<T> {
    pub f: Tensor3<T>,
    /// `θ_F(ξ) = g^{ij} F(e_i, e_j, ξ)`.
    pub theta: T,
    /// `θ*_F(ξ) = g^{ij} F(e_i, φe_j, ξ)`.
    pub theta_star: T,
    /// `F(ξ, ξ, ·)`.
    pub f_xi_xi: Vec3<T>,
}

/// The four projections of `F` and what is left over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionBundle<T> {
    pub f5: Tensor3<T>,
    pub f6: Tensor3<T>,
    pub f10: Tensor3<T>,
    pub f12: Tensor3<T>,
    /// `F − (F5 + F6 + F10 + F12)`.
    pub residual: Tensor3<T>,
    /// Largest violation of `F10(X,Y,ξ) = F10(Y,X,ξ) = F10(φX,φY,ξ)`.
    pub g10_identity_defect: T,
}

/// Basic classes realisable in dimension three.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BasicClass {
    G5,
    G6,
    G10,
    G12,
}

impl BasicClass {
    pub const ALL: [BasicClass; 4] = [BasicClass::G5, BasicClass::G6, BasicClass::G10, BasicClass::G12];

    pub fn name(self) -> &'static str {
        match self {
            BasicClass::G5 => "G5",
            BasicClass::G6 => "G6",
            BasicClass::G10 => "G10",
            BasicClass::G12 => "G12",
        }
    }
}

impl<T: Scalar> ProjectionBundle<T> {
    pub fn component(&self, c: BasicClass) -> &Tensor3<T> {
        match c {
            BasicClass::G5 => &self.f5,
            BasicClass::G6 => &self.f6,
            BasicClass::G10 => &self.f10,
            BasicClass::G12 => &self.f12,
        }
    }
}

impl<T: Scalar> Frame<T> {
    fn dxi(&self, k: usize, v: Var) -> Jet3<T> {
        self.xi[k].derivative(v)
    }

    /// `F` from the closed coordinate expansion, as second-order jets.
    pub fn f_closed_jets(&self) -> Tensor3<Jet3<T>> {
        let half = T::lit(0.5);
        let f = self.f.truncate(2);
        let (fx, fy, fz) = (self.f.derivative(X), self.f.derivative(Y), self.f.derivative(Z));
        let [x1, x2, x3] = self.xi.map(|j| j.truncate(2));
        let zero = Jet3::constant(T::zero(), 2);
        let mut t = [[[zero; 3]; 3]; 3];
        let mut set = |i: usize, j: usize, k: usize, v: Jet3<T>| {
            t[i][j][k] = v;
            t[i][k][j] = -v;
        };
        for (i, v) in Var::ALL.iter().enumerate() {
            set(i, 0, 1, self.dxi(2, *v));
            set(i, 0, 2, -self.dxi(1, *v));
        }
        set(0, 1, 2, self.dxi(0, X) + x3 * fx * half);
        set(1, 1, 2, self.dxi(0, Y) + x3 * fy * half);
        set(2, 0, 1, self.dxi(2, Z) - x3 * fx * half);
        set(2, 0, 2, -self.dxi(1, Z) + x3 * fy * half);
        set(2, 1, 2, self.dxi(0, Z) + (x1 * fx + x2 * fy + x3 * fz + x3 * f * fx) * half);
        t
    }

    pub fn f_closed(&self) -> Tensor3<T> {
        tensor_values(&self.f_closed_jets())
    }

    /// `F_ijl = g_lk (∂_i φ^k_j + Γ^k_im φ^m_j − φ^k_m Γ^m_ij)`, the
    /// definition evaluated directly.
    pub fn f_covariant(&self) -> Tensor3<T> {
        let gamma = &self.connection.gamma;
        let phi = self.phi_val();
        let g = &self.metric.g;
        let mut t = zero_tensor();
        for i in 0..3 {
            for j in 0..3 {
                // (∇_i φ)(∂j) as a vector.
                let mut v = [T::zero(); 3];
                for (k, vk) in v.iter_mut().enumerate() {
                    let mut s = self.phi[k][j].d(&[Var::from_index(i)]);
                    for m in 0..3 {
                        s = s + gamma[k][i][m] * phi[m][j] - phi[k][m] * gamma[m][i][j];
                    }
                    *vk = s;
                }
                for l in 0..3 {
                    t[i][j][l] = (0..3).fold(T::zero(), |a, k| a + g[l][k] * v[k]);
                }
            }
        }
        t
    }

    /// Contractions of a given `F`.
    pub fn contract(&self, f: &Tensor3<T>) -> FTensorValue<T> {
        let xi = self.xi_val();
        let phi = self.phi_val();
        let inv = &self.metric.inv;
        let mut theta = T::zero();
        let mut theta_star = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                if inv[i][j] == T::zero() {
                    continue;
                }
                let ei = basis(i);
                let ej = basis(j);
                theta = theta + inv[i][j] * eval3(f, &ei, &ej, &xi);
                let phej = linalg::mat_vec(&phi, &ej);
                theta_star = theta_star + inv[i][j] * eval3(f, &ei, &phej, &xi);
            }
        }
        let f_xi_xi = [0, 1, 2].map(|k| eval3(f, &xi, &xi, &basis(k)));
        FTensorValue { f: *f, theta, theta_star, f_xi_xi }
    }

    /// `F` from the closed form, with contractions.
    pub fn f_tensor(&self) -> FTensorValue<T> {
        self.contract(&self.f_closed())
    }

    /// `θ_F(ξ)` and `θ*_F(ξ)` from their closed coordinate expressions, as
    /// second-order jets.
    pub fn theta_closed_jets(&self) -> (Jet3<T>, Jet3<T>) {
        let half = T::lit(0.5);
        let f = self.f.truncate(2);
        let (fx, fy, fz) = (self.f.derivative(X), self.f.derivative(Y), self.f.derivative(Z));
        let [x1, x2, x3] = self.xi.map(|j| j.truncate(2));
        let d = |k: usize, v: Var| self.dxi(k, v);
        let theta =
            x1 * (d(1, X) - d(2, Y)) - x2 * (f * d(2, X) + d(0, X) + x3 * fx - d(2, Z)) + x3 * (f * d(1, X) + d(0, Y) + x3 * fy - d(1, Z));
        let a = f * x3 + x1;
        let theta_star = x1 * (a * d(2, X) + x2 * d(1, X) - x3 * d(1, Y) - x3 * (d(2, Z) - x3 * fx * half))
            + x2 * (a * d(2, Y) - x2 * d(0, X) - x2 * d(2, Z) + x3 * (d(0, Y) + x3 * fy * half))
            + x3 * (-(a * (d(0, X) + d(1, Y))) + x2 * d(1, Z) + x3 * (d(0, Z) + x3 * fz * half));
        (theta, theta_star)
    }

    /// `Φ(X, Y) = g(φX, Y)` as first-order jets: `Φ_jk = Σ_i φ[i][j] g_ik`.
    pub fn fundamental_form_jets(&self) -> [[Jet3<T>; 3]; 3] {
        let one = Jet3::constant(T::one(), 3);
        let zero = Jet3::constant(T::zero(), 3);
        let g = [[zero, zero, one], [zero, one, zero], [one, zero, self.f]];
        let mut out = [[zero; 3]; 3];
        for j in 0..3 {
            for k in 0..3 {
                let mut s = zero;
                for (i, gi) in g.iter().enumerate() {
                    s = s + self.phi[i][j] * gi[k];
                }
                out[j][k] = s;
            }
        }
        out
    }

    pub fn fundamental_form(&self) -> Mat3<T> {
        self.fundamental_form_jets().map(|r| r.map(|j| j.value()))
    }

    /// `dη` as the coordinate exterior derivative of `η`.
    pub fn d_eta_coordinate(&self) -> Mat3<T> {
        let half = T::lit(0.5);
        let mut m = linalg::zero_mat();
        for i in 0..3 {
            for j in 0..3 {
                let a = self.eta[j].d(&[Var::from_index(i)]);
                let b = self.eta[i].d(&[Var::from_index(j)]);
                m[i][j] = half * (a - b);
            }
        }
        m
    }

    /// `dη(X,Y) = ½(−F(X,φY,ξ) + F(Y,φX,ξ))`.
    pub fn d_eta_from_f(&self, f: &Tensor3<T>) -> Mat3<T> {
        let xi = self.xi_val();
        let half = T::lit(0.5);
        tabulate2(|x, y| {
            let py = self.phi_apply(y);
            let px = self.phi_apply(x);
            half * (eval3(f, y, &px, &xi) - eval3(f, x, &py, &xi))
        })
    }

    /// `dη` from its explicit components in terms of `ξ` and `f`.
    pub fn d_eta_explicit(&self) -> Mat3<T> {
        let half = T::lit(0.5);
        let f = self.f.value();
        let (fx, fy) = (self.f.d(&[X]), self.f.d(&[Y]));
        let x3 = self.xi[2].value();
        let d = |k: usize, v: Var| self.xi[k].d(&[v]);
        let xy = half * (d(1, X) - d(2, Y));
        let xz = half * (d(0, X) + x3 * fx + f * d(2, X) - d(2, Z));
        let yz = half * (d(0, Y) + x3 * fy + f * d(2, Y) - d(1, Z));
        let o = T::zero();
        [[o, xy, xz], [-xy, o, yz], [-xz, -yz, o]]
    }

    /// `dφ(X,Y,Z) = F(X,Y,Z) + F(Y,Z,X) + F(Z,X,Y)`.
    pub fn d_phi_cyclic(&self, f: &Tensor3<T>) -> Tensor3<T> {
        tabulate(|x, y, z| eval3(f, x, y, z) + eval3(f, y, z, x) + eval3(f, z, x, y))
    }

    /// Coordinate exterior derivative of `Φ`, without any normalising factor:
    /// `∂_iΦ_jk + ∂_jΦ_ki + ∂_kΦ_ij`.
    pub fn d_phi_coordinate(&self) -> Tensor3<T> {
        let phi = self.fundamental_form_jets();
        let d = |a: usize, b: usize, c: usize| phi[b][c].d(&[Var::from_index(a)]);
        let mut t = zero_tensor();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    t[i][j][k] = d(i, j, k) + d(j, k, i) + d(k, i, j);
                }
            }
        }
        t
    }

    /// `(∇_X η)Y = g(∇_X ξ, Y)`.
    pub fn nabla_eta(&self) -> Mat3<T> {
        let mut m = linalg::zero_mat();
        for (i, row) in m.iter_mut().enumerate() {
            let n = self.nabla_xi(&basis(i));
            for (j, c) in row.iter_mut().enumerate() {
                *c = self.metric.inner(&n, &basis(j));
            }
        }
        m
    }

    /// Coordinate Lie derivative `ξ^k ∂_k g_ij + g_kj ∂_i ξ^k + g_ik ∂_j ξ^k`.
    pub fn lie_xi_g_coordinate(&self) -> Mat3<T> {
        let g = &self.metric.g;
        let xi = self.xi_val();
        let mut m = linalg::zero_mat();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = T::zero();
                if i == 2 && j == 2 {
                    for (k, v) in Var::ALL.iter().enumerate() {
                        s = s + xi[k] * self.f.d(&[*v]);
                    }
                }
                for k in 0..3 {
                    s = s + g[k][j] * self.xi[k].d(&[Var::from_index(i)]);
                    s = s + g[i][k] * self.xi[k].d(&[Var::from_index(j)]);
                }
                m[i][j] = s;
            }
        }
        m
    }

    /// `(∇_X η)Y + (∇_Y η)X`.
    pub fn lie_xi_g_nabla(&self) -> Mat3<T> {
        let a = self.nabla_eta();
        tabulate2(|x, y| linalg::form(&a, x, y) + linalg::form(&a, y, x))
    }

    /// `−F(X,φY,ξ) − F(Y,φX,ξ)`.
    pub fn lie_xi_g_from_f(&self, f: &Tensor3<T>) -> Mat3<T> {
        let xi = self.xi_val();
        tabulate2(|x, y| {
            let py = self.phi_apply(y);
            let px = self.phi_apply(x);
            -eval3(f, x, &py, &xi) - eval3(f, y, &px, &xi)
        })
    }

    /// Nijenhuis torsion `N(X,Y) = φ²[X,Y] + [φX,φY] − φ[φX,Y] − φ[X,φY]`
    /// for constant-coefficient `X`, `Y`.
    pub fn nijenhuis(&self, x: &Vec3<T>, y: &Vec3<T>) -> Vec3<T> {
        let phi = self.phi_val();
        // Directional derivative along u of the field p ↦ φ(p) v.
        let dphi = |u: &Vec3<T>, v: &Vec3<T>| -> Vec3<T> {
            let mut out = [T::zero(); 3];
            for (k, o) in out.iter_mut().enumerate() {
                for (i, var) in Var::ALL.iter().enumerate() {
                    if u[i] == T::zero() {
                        continue;
                    }
                    for j in 0..3 {
                        *o = *o + u[i] * self.phi[k][j].d(&[*var]) * v[j];
                    }
                }
            }
            out
        };
        let px = linalg::mat_vec(&phi, x);
        let py = linalg::mat_vec(&phi, y);
        let bracket_pp = linalg::sub(&dphi(&px, y), &dphi(&py, x));
        let bracket_px_y = linalg::scale(-T::one(), &dphi(y, x));
        let bracket_x_py = dphi(x, y);
        let n = linalg::sub(&bracket_pp, &linalg::mat_vec(&phi, &bracket_px_y));
        linalg::sub(&n, &linalg::mat_vec(&phi, &bracket_x_py))
    }

    /// `N(∂i, ∂j) − 2dη(∂i, ∂j)ξ`; zero for all pairs iff normal.
    pub fn normality_defect(&self, d_eta: &Mat3<T>) -> [[Vec3<T>; 3]; 3] {
        let xi = self.xi_val();
        let two = T::lit(2.0);
        let mut out = [[[T::zero(); 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let n = self.nijenhuis(&basis(i), &basis(j));
                out[i][j] = linalg::sub(&n, &linalg::scale(two * d_eta[i][j], &xi));
            }
        }
        out
    }

    /// `F(X,φY,φZ) − F(X,Y,Z) − η(Y)F(X,Z,ξ) + η(Z)F(X,Y,ξ)`, which vanishes
    /// for every admissible structure tensor.
    pub fn f_space_defect(&self, f: &Tensor3<T>) -> Tensor3<T> {
        let xi = self.xi_val();
        tabulate(|x, y, z| {
            let (py, pz) = (self.phi_apply(y), self.phi_apply(z));
            eval3(f, x, &py, &pz) - eval3(f, x, y, z) - self.eta_apply(y) * eval3(f, x, z, &xi) + self.eta_apply(z) * eval3(f, x, y, &xi)
        })
    }

    /// Projections of `F` onto `G5`, `G6`, `G12` and `G10`.
    pub fn project(&self, fv: &FTensorValue<T>) -> ProjectionBundle<T> {
        let half = T::lit(0.5);
        let f = &fv.f;
        let xi = self.xi_val();
        let g = |u: &Vec3<T>, v: &Vec3<T>| self.metric.inner(u, v);
        let f5 = tabulate(|x, y, z| {
            let px = self.phi_apply(x);
            fv.theta * half * (self.eta_apply(y) * g(&px, &self.phi_apply(z)) - self.eta_apply(z) * g(&px, &self.phi_apply(y)))
        });
        let f6 = tabulate(|x, y, z| {
            -fv.theta_star * half * (self.eta_apply(y) * g(x, &self.phi_apply(z)) - self.eta_apply(z) * g(x, &self.phi_apply(y)))
        });
        let fxx = |v: &Vec3<T>| (0..3).fold(T::zero(), |a, k| a + fv.f_xi_xi[k] * v[k]);
        let f12 = tabulate(|x, y, z| self.eta_apply(x) * (self.eta_apply(y) * fxx(z) - self.eta_apply(z) * fxx(y)));
        let rest = tensor_sub(&tensor_sub(&tensor_sub(f, &f5), &f6), &f12);
        let k = tabulate2(|x, y| eval3(&rest, x, y, &xi));
        let f10 = tabulate(|x, y, z| -self.eta_apply(y) * linalg::form(&k, x, z) + self.eta_apply(z) * linalg::form(&k, x, y));
        let residual = tensor_sub(&rest, &f10);
        let phi = self.phi_val();
        let mut defect = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                let (pi, pj) = (linalg::mat_vec(&phi, &basis(i)), linalg::mat_vec(&phi, &basis(j)));
                defect = defect.max((k[i][j] - k[j][i]).abs());
                defect = defect.max((k[i][j] - linalg::form(&k, &pi, &pj)).abs());
            }
        }
        ProjectionBundle { f5, f6, f10, f12, residual, g10_identity_defect: defect }
    }

    /// Size of the largest summand that enters the projections of `f`.
    /// Round-off in the projections is relative to this, not to `|F|`.
    pub fn projection_bound(&self, f: &Tensor3<T>) -> T {
        let a = |m: &Mat3<T>| m.map(|r| r.map(|v| v.abs()));
        let fa = f.map(|p| p.map(|r| r.map(|v| v.abs())));
        let xi = self.xi_val().map(|v| v.abs());
        let eta = self.eta_val().map(|v| v.abs());
        let (phi, g, inv) = (a(&self.phi_val()), a(&self.metric.g), a(&self.metric.inv));
        let mut theta = T::zero();
        let mut theta_star = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    theta = theta + inv[i][j] * fa[i][j][k] * xi[k];
                    for l in 0..3 {
                        theta_star = theta_star + inv[i][j] * fa[i][l][k] * phi[l][j] * xi[k];
                    }
                }
            }
        }
        let fxx = [0, 1, 2].map(|k| eval3(&fa, &xi, &xi, &basis(k)));
        let gp = linalg::mat_mul(&g, &phi);
        let pgp = linalg::mat_mul(&linalg::transpose(&phi), &gp);
        let mut b = tensor_max_abs(f);
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    let b5 = theta * (eta[y] * pgp[x][z] + eta[z] * pgp[x][y]);
                    let b6 = theta_star * (eta[y] * gp[x][z] + eta[z] * gp[x][y]);
                    let b12 = eta[x] * (eta[y] * fxx[z] + eta[z] * fxx[y]);
                    b = b.max(b5).max(b6).max(b12);
                }
            }
        }
        let reach = xi[0] + xi[1] + xi[2];
        let eta_max = linalg::max_abs_vec(&eta);
        b.max(T::lit(8.0) * b * reach * eta_max)
    }
}
