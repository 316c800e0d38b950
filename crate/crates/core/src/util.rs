//! Small numeric helpers shared by the modules.

use alloc::vec::Vec;
use nalgebra::DMatrix;
use num_traits::Float;

/// Sign of the determinant from a partially pivoted LU factorization.
///
/// Returns 0 when a pivot is exactly zero. The determinant value itself is
/// never formed.
pub fn det_sign(m: &DMatrix<f64>) -> i8 {
    det_sign_tol(m, 0.0)
}

/// As [`det_sign`], but a pivot with `|u_ii| <= rel * max |u_kk|` counts as
/// zero.
pub fn det_sign_tol(m: &DMatrix<f64>, rel: f64) -> i8 {
    let lu = m.clone().lu();
    let mut s: i8 = lu.p().determinant::<f64>().signum() as i8;
    let u = lu.u();
    let n = u.nrows();
    let cut = rel * (0..n).map(|i| u[(i, i)].abs()).fold(0.0, f64::max);
    for i in 0..n {
        let d = u[(i, i)];
        if d == 0.0 || d.abs() <= cut {
            return 0;
        }
        if d < 0.0 {
            s = -s;
        }
    }
    s
}

/// `sign det Z` with pivots at roundoff level treated as zero, matching the
/// rank threshold of the single-particle energies.
pub fn z_det_sign(z: &DMatrix<f64>) -> i8 {
    det_sign_tol(z, z.nrows() as f64 * f64::EPSILON)
}

/// `ln |det m|` and the sign, from LU.
pub fn log_abs_det(m: &DMatrix<f64>) -> (f64, i8) {
    let lu = m.clone().lu();
    let mut s: i8 = lu.p().determinant::<f64>().signum() as i8;
    let u = lu.u();
    let mut acc = 0.0;
    for i in 0..u.nrows() {
        let d = u[(i, i)];
        if d == 0.0 {
            return (f64::NEG_INFINITY, 0);
        }
        if d < 0.0 {
            s = -s;
        }
        acc += d.abs().ln();
    }
    (acc, s)
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

/// Compare two lists as multisets after sorting.
#[cfg(test)]
pub fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

/// `asinh(x) / x`, finite at the origin.
pub fn asinh_over_x(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.asinh() / x
    }
}

/// `asin(x) / x`, finite at the origin.
pub fn asin_over_x(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 + x * x / 6.0
    } else {
        x.asin() / x
    }
}
