//! Small fixed-size vector and matrix helpers.

use crate::scalar::Scalar;

pub type Vec3<T> = [T; 3];
pub type Mat3<T> = [[T; 3]; 3];

pub fn zero_vec<T: Scalar>() -> Vec3<T> {
    [T::zero(); 3]
}

pub fn zero_mat<T: Scalar>() -> Mat3<T> {
    [[T::zero(); 3]; 3]
}

pub fn identity<T: Scalar>() -> Mat3<T> {
    let mut m = zero_mat();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

/// Basis vector `∂_i`.
pub fn basis<T: Scalar>(i: usize) -> Vec3<T> {
    let mut v = zero_vec();
    v[i] = T::one();
    v
}

pub fn mat_vec<T: Scalar>(m: &Mat3<T>, v: &Vec3<T>) -> Vec3<T> {
    let mut out = zero_vec();
    for i in 0..3 {
        for j in 0..3 {
            out[i] = out[i] + m[i][j] * v[j];
        }
    }
    out
}

pub fn mat_mul<T: Scalar>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    let mut out = zero_mat();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[i][j] = out[i][j] + a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn transpose<T: Scalar>(a: &Mat3<T>) -> Mat3<T> {
    let mut out = *a;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

pub fn mat_sub<T: Scalar>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    let mut out = *a;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = out[i][j] - b[i][j];
        }
    }
    out
}

pub fn add<T: Scalar>(a: &Vec3<T>, b: &Vec3<T>) -> Vec3<T> {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub<T: Scalar>(a: &Vec3<T>, b: &Vec3<T>) -> Vec3<T> {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale<T: Scalar>(s: T, a: &Vec3<T>) -> Vec3<T> {
    [s * a[0], s * a[1], s * a[2]]
}

/// Bilinear form `u^T m v`.
pub fn form<T: Scalar>(m: &Mat3<T>, u: &Vec3<T>, v: &Vec3<T>) -> T {
    let mv = mat_vec(m, v);
    u[0] * mv[0] + u[1] * mv[1] + u[2] * mv[2]
}

pub fn det<T: Scalar>(m: &Mat3<T>) -> T {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn max_abs_vec<T: Scalar>(v: &Vec3<T>) -> T {
    v.iter().fold(T::zero(), |m, x| m.max(x.abs()))
}

pub fn max_abs_mat<T: Scalar>(m: &Mat3<T>) -> T {
    m.iter().fold(T::zero(), |acc, row| acc.max(max_abs_vec(row)))
}
