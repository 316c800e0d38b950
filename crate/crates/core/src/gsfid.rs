//! Ground-state representation and ground-state fidelity.
//!
//! For `det T = +1` and `-1` not in the spectrum of `T`, the ground state is
//! `N exp(1/2 sum G_jk c_j^+ c_k^+)|0>` with `G` the Cayley transform of `T`.
//! The fidelity between two ground states only depends on the polar factors:
//! `F = sqrt|det((T + T~)/2)|`.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_traits::Float;

use crate::solver::{PolarForm, SpectralList};
use crate::linalg::{eigenvalues, singular_values};
use crate::util::{det_sign, log_abs_det};
use crate::{Error, Matrix, Result};

/// Classification threshold for unpaired phase differences (0 vs pi).
pub const TAU_ANGLE: f64 = 1e-6;

/// Smallest admissible singular value of `T + 1` for the Cayley transform.
pub const CAYLEY_TOL: f64 = 1e-10;

// eigenvalues of T closer than this to the real axis are treated as real
const REAL_AXIS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityValue {
    pub f: f64,
    /// `ln F`; finite even when `F` underflows.
    pub ln_f: f64,
    pub parity_mismatch: bool,
    pub degenerate: bool,
}

impl FidelityValue {
    pub(crate) fn from_ln(ln_f: f64) -> Self {
        let ln_f = ln_f.min(0.0);
        FidelityValue { f: ln_f.exp(), ln_f, parity_mismatch: false, degenerate: false }
    }

    pub(crate) fn orthogonal() -> Self {
        FidelityValue { f: 0.0, ln_f: f64::NEG_INFINITY, parity_mismatch: true, degenerate: false }
    }

    /// Placeholder for a pair with an ill-defined endpoint.
    pub fn degenerate() -> Self {
        FidelityValue { f: f64::NAN, ln_f: f64::NAN, parity_mismatch: false, degenerate: true }
    }

    /// `F - 1` without cancellation.
    pub fn minus_one(&self) -> f64 {
        self.ln_f.exp_m1()
    }
}

#[derive(Debug, Clone)]
pub struct GroundStateForm {
    /// Cayley matrix; `None` when `-1` is in the spectrum of `T` or `det T = -1`.
    pub g: Option<Matrix>,
    /// Pair angles `theta_nu` in `[0, pi]`, ascending.
    pub angles: Vec<f64>,
    /// Unpaired real eigenvalues of `T` (each `+1` or `-1`).
    pub unpaired: Vec<f64>,
    pub parity: i8,
}

/// `G = (T - 1)(T + 1)^-1`, antisymmetrized.
pub fn cayley_g(t: &Matrix) -> Result<Matrix> {
    let l = t.nrows();
    if det_sign(t) < 0 {
        return Err(Error::OddParity);
    }
    let id = Matrix::identity(l, l);
    let plus = t + &id;
    let smin = singular_values(&plus).last().copied().unwrap_or(0.0);
    if smin <= CAYLEY_TOL {
        return Err(Error::NotCayleyRepresentable);
    }
    // G (T + 1) = T - 1  <=>  (T + 1)^T G^T = (T - 1)^T
    let minus = t - &id;
    let gt = plus
        .transpose()
        .lu()
        .solve(&minus.transpose())
        .ok_or(Error::NotCayleyRepresentable)?;
    let g = gt.transpose();
    Ok((&g - g.transpose()) * 0.5)
}

/// `T = (1 + G)(1 - G)^-1`
pub fn inverse_cayley(g: &Matrix) -> Result<Matrix> {
    let l = g.nrows();
    let id = Matrix::identity(l, l);
    // T (1 - G) = 1 + G  <=>  (1 - G)^T T^T = (1 + G)^T
    let tt = (&id - g)
        .transpose()
        .lu()
        .solve(&(&id + g).transpose())
        .ok_or(Error::Consistency("1 - G is singular"))?;
    Ok(tt.transpose())
}

/// Pair angles, unpaired eigenvalues and parity of an orthogonal `T`.
pub fn state_angles(t: &Matrix) -> GroundStateForm {
    let eig = eigenvalues(t);
    let mut angles = Vec::new();
    let (mut plus, mut minus) = (0usize, 0usize);
    for z in eig.iter() {
        if z.im > REAL_AXIS_TOL {
            angles.push(z.im.atan2(z.re));
        } else if z.im.abs() <= REAL_AXIS_TOL {
            if z.re > 0.0 {
                plus += 1;
            } else {
                minus += 1;
            }
        }
    }
    angles.extend(core::iter::repeat(0.0).take(plus / 2));
    angles.extend(core::iter::repeat(PI).take(minus / 2));
    angles.sort_by(|a, b| a.total_cmp(b));
    let mut unpaired = Vec::new();
    if plus % 2 == 1 {
        unpaired.push(1.0);
    }
    if minus % 2 == 1 {
        unpaired.push(-1.0);
    }
    let parity = if minus % 2 == 1 { -1 } else { 1 };
    GroundStateForm { g: cayley_g(t).ok(), angles, unpaired, parity }
}

/// Phases of a circulant spectrum grouped as the pair angles `|theta_j|`.
pub fn circulant_angles(s: &SpectralList) -> Vec<f64> {
    let mut v: Vec<f64> = (1..=s.pair_count()).map(|j| s.theta[j].abs()).collect();
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

/// `F = sqrt|det((T + T~)/2)|` between two well-defined polar forms.
pub fn fidelity(a: &PolarForm, b: &PolarForm) -> Result<FidelityValue> {
    if !a.well_defined || !b.well_defined {
        return Err(Error::DegenerateEndpoint);
    }
    if a.t.nrows() != b.t.nrows() {
        return Err(Error::Parameter("fidelity between different sizes"));
    }
    if a.parity != b.parity {
        return Ok(FidelityValue::orthogonal());
    }
    Ok(fidelity_same_parity(&a.t, &b.t))
}

/// Fidelity from two orthogonal matrices; the parities are read off `det T`.
pub fn fidelity_matrices(t: &Matrix, t_tilde: &Matrix) -> FidelityValue {
    if det_sign(t) != det_sign(t_tilde) {
        return FidelityValue::orthogonal();
    }
    fidelity_same_parity(t, t_tilde)
}

pub(crate) fn fidelity_same_parity(t: &Matrix, t_tilde: &Matrix) -> FidelityValue {
    let mid = (t + t_tilde) * 0.5;
    let sv = singular_values(&mid);
    let ln: f64 = sv.iter().map(|s| s.ln()).sum::<f64>() * 0.5;
    FidelityValue::from_ln(ln)
}

/// Circulant fidelity `delta_Theta prod |cos(Theta_j / 2)|` over conjugate pairs.
pub fn fidelity_circulant(s1: &SpectralList, s2: &SpectralList) -> Result<FidelityValue> {
    if s1.l() != s2.l() {
        return Err(Error::Parameter("fidelity between different sizes"));
    }
    if !s1.well_defined() || !s2.well_defined() {
        return Err(Error::DegenerateEndpoint);
    }
    let mut flipped = false;
    for j in s1.unpaired() {
        let d = wrap(s2.theta[j] - s1.theta[j]).abs();
        if d < TAU_ANGLE {
            continue;
        }
        if (PI - d) < TAU_ANGLE {
            flipped = true;
        } else {
            return Err(Error::Consistency("unpaired phase difference is neither 0 nor pi"));
        }
    }
    if flipped {
        return Ok(FidelityValue::orthogonal());
    }
    let ln: f64 = (1..=s1.pair_count())
        .map(|j| (0.5 * (s2.theta[j] - s1.theta[j])).cos().abs().ln())
        .sum();
    Ok(FidelityValue::from_ln(ln))
}

// to (-pi, pi]
fn wrap(x: f64) -> f64 {
    let mut y = x % (2.0 * PI);
    if y <= -PI {
        y += 2.0 * PI;
    } else if y > PI {
        y -= 2.0 * PI;
    }
    y
}

/// Coherent-state overlap
/// `det(1 + G^T G~)^1/2 / (det(1 + G^T G)^1/4 det(1 + G~^T G~)^1/4)`.
pub fn fidelity_from_g(g: &Matrix, g_tilde: &Matrix) -> Result<FidelityValue> {
    let l = g.nrows();
    if g_tilde.nrows() != l {
        return Err(Error::Parameter("fidelity between different sizes"));
    }
    let id = Matrix::identity(l, l);
    let (cross, _) = log_abs_det(&(&id + g.transpose() * g_tilde));
    let (n1, _) = log_abs_det(&(&id + g.transpose() * g));
    let (n2, _) = log_abs_det(&(&id + g_tilde.transpose() * g_tilde));
    Ok(FidelityValue::from_ln(0.5 * cross - 0.25 * (n1 + n2)))
}

/// `prod |cos(Theta_nu / 2)|` over the pair angles of `T^-1 T~`.
///
/// Only valid for even `L` with `det(T^-1 T~) = +1`.
pub fn fidelity_cosine_product(t: &Matrix, t_tilde: &Matrix) -> Result<FidelityValue> {
    if t.nrows() % 2 == 1 {
        return Err(Error::Parameter("cosine product form needs even L"));
    }
    let rel = t.transpose() * t_tilde;
    let form = state_angles(&rel);
    if form.parity < 0 {
        return Err(Error::OddParity);
    }
    let ln: f64 = form.angles.iter().map(|a| (0.5 * a).cos().abs().ln()).sum();
    Ok(FidelityValue::from_ln(ln))
}
