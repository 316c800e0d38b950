use num_traits::Float;

use crate::family::{self, EvalPath, GroundState, ModelFamily};
use crate::gsfid::FidelityValue;
use crate::{Error, Result};

/// Hessian of `F_Z(X)` at `X = 0` in the `(mu, gamma)` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HessianAtZero {
    pub d2_mumu: f64,
    pub d2_gammagamma: f64,
    pub d2_mugamma: f64,
    /// Minimum eigenvalue.
    pub h_crit: f64,
    /// Maximum eigenvalue.
    pub other: f64,
    /// Unit eigenvector of the maximum eigenvalue; `None` when both coincide.
    pub zero_eigvec: Option<[f64; 2]>,
}

impl HessianAtZero {
    pub fn from_entries(d2_mumu: f64, d2_gammagamma: f64, d2_mugamma: f64) -> Self {
        let tr = d2_mumu + d2_gammagamma;
        let disc = (d2_mumu - d2_gammagamma).hypot(2.0 * d2_mugamma);
        let h_crit = 0.5 * (tr - disc);
        let other = 0.5 * (tr + disc);
        let zero_eigvec = if disc == 0.0 {
            None
        } else {
            let v1 = [d2_mugamma, other - d2_mumu];
            let v2 = [other - d2_gammagamma, d2_mugamma];
            let v = if v1[0].hypot(v1[1]) >= v2[0].hypot(v2[1]) { v1 } else { v2 };
            let n = v[0].hypot(v[1]);
            Some([v[0] / n, v[1] / n])
        };
        HessianAtZero { d2_mumu, d2_gammagamma, d2_mugamma, h_crit, other, zero_eigvec }
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        [[self.d2_mumu, self.d2_mugamma], [self.d2_mugamma, self.d2_gammagamma]]
    }

    fn combine(a: &Self, wa: f64, b: &Self, wb: f64) -> Self {
        Self::from_entries(
            wa * a.d2_mumu + wb * b.d2_mumu,
            wa * a.d2_gammagamma + wb * b.d2_gammagamma,
            wa * a.d2_mugamma + wb * b.d2_mugamma,
        )
    }
}

/// `1e-4 max(1, |mu| + |gamma|)`
pub fn default_step(mu: f64, gamma: f64) -> f64 {
    1e-4 * (mu.abs() + gamma.abs()).max(1.0)
}

/// Second differences of `F` from a callback returning the fidelity between
/// the centre and the point displaced by `(dmu, dgamma)`.
pub fn hessian_from_stencil(
    delta: f64,
    mut fid: impl FnMut(f64, f64) -> Result<FidelityValue>,
) -> Result<HessianAtZero> {
    let mut m = |a: f64, b: f64| -> Result<f64> {
        let v = fid(a * delta, b * delta)?;
        if v.parity_mismatch {
            return Err(Error::StencilCrossesTransition);
        }
        Ok(v.minus_one())
    };
    let d2 = delta * delta;
    let d_mm = (m(1.0, 0.0)? + m(-1.0, 0.0)?) / d2;
    let d_gg = (m(0.0, 1.0)? + m(0.0, -1.0)?) / d2;
    let d_mg = (m(1.0, 1.0)? + m(-1.0, -1.0)? - m(1.0, -1.0)? - m(-1.0, 1.0)?) / (4.0 * d2);
    Ok(HessianAtZero::from_entries(d_mm, d_gg, d_mg))
}

/// Central-difference Hessian; `delta` defaults to [`default_step`].
///
/// Fails with `StencilCrossesTransition` when any stencil point has a
/// different `sign det Z` from the centre.
pub fn hessian_fd(
    family: &ModelFamily,
    mu: f64,
    gamma: f64,
    delta: Option<f64>,
    path: EvalPath,
) -> Result<HessianAtZero> {
    let delta = delta.unwrap_or_else(|| default_step(mu, gamma));
    if !(delta > 0.0) {
        return Err(Error::Parameter("finite-difference step must be positive"));
    }
    let centre = family.ground_state(mu, gamma, path)?;
    if !centre.well_defined {
        return Err(Error::DegenerateEndpoint);
    }
    hessian_from_stencil(delta, |a, b| {
        let other: GroundState = family.ground_state(mu + a, gamma + b, path)?;
        if other.parity != centre.parity {
            return Err(Error::StencilCrossesTransition);
        }
        family::fidelity(&centre, &other)
    })
}

/// Richardson combination `(4 H(delta/2) - H(delta)) / 3`.
pub fn hessian_fd_richardson(
    family: &ModelFamily,
    mu: f64,
    gamma: f64,
    delta: Option<f64>,
    path: EvalPath,
) -> Result<HessianAtZero> {
    let delta = delta.unwrap_or_else(|| default_step(mu, gamma));
    let coarse = hessian_fd(family, mu, gamma, Some(delta), path)?;
    let fine = hessian_fd(family, mu, gamma, Some(0.5 * delta), path)?;
    Ok(HessianAtZero::combine(&fine, 4.0 / 3.0, &coarse, -1.0 / 3.0))
}
