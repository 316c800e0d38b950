use alloc::vec::Vec;
use num_traits::Float;

use super::HessianAtZero;
use crate::family::{EvalPath, ModelFamily};
use crate::model::{Boundary, ModelParams, Range, SignConvention};
use crate::solver::{self, SpectralList};
use crate::{Error, Matrix, Result};

/// Hessian from one decomposition, via the derivative of the polar factor.
///
/// With `Z = U S V^T` and `M_a = U^T (dZ/da) V`, the polar factor moves as
/// `dT_a = U W_a V^T` with `W_a,ij = (M_ij - M_ji) / (s_i + s_j)`, and
/// `H_ab = -(1/8) sum_ij W_a,ij W_b,ij`.
pub fn hessian_polar(family: &ModelFamily, mu: f64, gamma: f64) -> Result<HessianAtZero> {
    let model = family.model(mu, gamma)?;
    let spec = solver::canonical_decompose(&model);
    if spec.gap() <= spec.eps_sing() {
        return Err(Error::DegenerateEndpoint);
    }
    let (dmu, dgamma) = family.z_derivatives()?;
    let u = spec.phi.transpose();
    let v = spec.psi.transpose();
    let w = |dz: &Matrix| -> Matrix {
        let m = crate::linalg::transpose_triple(&u, dz, &v);
        let l = m.nrows();
        Matrix::from_fn(l, l, |i, j| (m[(i, j)] - m[(j, i)]) / (spec.lambda[i] + spec.lambda[j]))
    };
    let wm = w(&dmu);
    let wg = w(&dgamma);
    Ok(HessianAtZero::from_entries(
        -0.125 * wm.dot(&wm),
        -0.125 * wg.dot(&wg),
        -0.125 * wm.dot(&wg),
    ))
}

/// Hessian of a cyclic family from its circulant spectrum.
///
/// `H_ab = -(1/8) sum_j d_a theta_j d_b theta_j` with
/// `d_a theta_j = Im(d_a zeta_j / zeta_j)`.
pub fn hessian_spectral(family: &ModelFamily, mu: f64, gamma: f64) -> Result<HessianAtZero> {
    let s = family.spectral(mu, gamma)?;
    if !s.well_defined() {
        return Err(Error::DegenerateEndpoint);
    }
    let z0 = family.spectral(0.0, 0.0)?;
    let zm = family.spectral(1.0, 0.0)?;
    let zg = family.spectral(0.0, 1.0)?;
    let (mut hmm, mut hgg, mut hmg) = (0.0, 0.0, 0.0);
    for j in 0..s.l() {
        let z = s.zeta[j];
        let tm = ((zm.zeta[j] - z0.zeta[j]) / z).im;
        let tg = ((zg.zeta[j] - z0.zeta[j]) / z).im;
        hmm += tm * tm;
        hgg += tg * tg;
        hmg += tm * tg;
    }
    Ok(HessianAtZero::from_entries(-0.125 * hmm, -0.125 * hgg, -0.125 * hmg))
}

/// Spectral Hessian for cyclic families, polar-derivative Hessian otherwise.
pub fn hessian_analytic(
    family: &ModelFamily,
    mu: f64,
    gamma: f64,
    path: EvalPath,
) -> Result<HessianAtZero> {
    match (path, family.boundary) {
        (EvalPath::Dense, _) | (_, Boundary::FreeEnds) => hessian_polar(family, mu, gamma),
        _ => hessian_spectral(family, mu, gamma),
    }
}

fn fully_connected_cyclic(l: usize, mu: f64, gamma: f64) -> Result<SpectralList> {
    let p = ModelParams::new(l, l / 2, mu, gamma, Boundary::Cyclic, SignConvention::Flipped);
    debug_assert_eq!(Range::Full.resolve(l, Boundary::Cyclic), l / 2);
    solver::zeta_fully_connected(&p)
}

// pair terms c_j^2 / |zeta_j|^4, j = 1..=M (0-based)
fn pair_terms(l: usize, mu: f64, gamma: f64) -> Result<Vec<f64>> {
    if mu == 1.0 && gamma == 0.0 {
        return Err(Error::SingularPoint);
    }
    let s = fully_connected_cyclic(l, mu, gamma)?;
    let c = fully_connected_cyclic(l, 1.0, 1.0)?;
    let m = (l - 1) / 2;
    Ok((1..=m)
        .map(|j| {
            let cj = c.zeta[j].im;
            let a2 = s.zeta[j].norm_sqr();
            cj * cj / (a2 * a2)
        })
        .collect())
}

/// `(h_crit, S)` for the fully connected cyclic model,
/// `h_crit = -(1/4)[(mu - 1)^2 + gamma^2] S`.
pub fn h_analytic_cyclic(l: usize, mu: f64, gamma: f64) -> Result<(f64, f64)> {
    let s: f64 = pair_terms(l, mu, gamma)?.iter().sum();
    let m1 = mu - 1.0;
    Ok((-0.25 * (m1 * m1 + gamma * gamma) * s, s))
}

/// Full closed-form Hessian of the fully connected cyclic model.
///
/// One eigenvalue vanishes, with eigenvector along `(mu - 1, gamma)`.
pub fn hessian_analytic_cyclic(l: usize, mu: f64, gamma: f64) -> Result<HessianAtZero> {
    let (_, s) = h_analytic_cyclic(l, mu, gamma)?;
    let m1 = mu - 1.0;
    let q = -0.25 * s;
    let mut h = HessianAtZero::from_entries(q * gamma * gamma, q * m1 * m1, -q * gamma * m1);
    let n = m1.hypot(gamma);
    h.h_crit = q * n * n;
    h.other = 0.0;
    h.zero_eigvec = Some([m1 / n, gamma / n]);
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Generic,
    /// `mu = 1`, `gamma != 0`
    CriticalMu,
    /// `gamma = 0`, `mu != 1`
    CriticalGamma,
}

impl Regime {
    pub fn classify(mu: f64, gamma: f64) -> Result<Self> {
        match (mu == 1.0, gamma == 0.0) {
            (true, true) => Err(Error::SingularPoint),
            (true, false) => Ok(Regime::CriticalMu),
            (false, true) => Ok(Regime::CriticalGamma),
            (false, false) => Ok(Regime::Generic),
        }
    }
}

/// Large-`L` form of `h_crit` for the fully connected cyclic model.
pub fn h_asymptotic(l: usize, mu: f64, gamma: f64) -> Result<f64> {
    let l = l as f64;
    let m1 = mu - 1.0;
    Ok(match Regime::classify(mu, gamma)? {
        Regime::Generic => {
            let (a, g) = (m1.abs(), gamma.abs());
            -(l / 16.0) * (m1 * m1 + gamma * gamma) / (a * g * (a + g) * (a + g))
        }
        Regime::CriticalMu => -(l / gamma) * (l / gamma) / 24.0,
        Regime::CriticalGamma => -(l / m1) * (l / m1) / 8.0,
    })
}
