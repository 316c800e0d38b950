use crate::family::{EvalPath, ModelFamily};
use crate::{Error, Result};

/// Second derivatives of the ground-state energy density `E0 / L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyDerivatives {
    pub d2_mumu: f64,
    pub d2_gammagamma: f64,
    pub d2_mugamma: f64,
}

/// Central differences of `E0 / L` on a 3x3 stencil of half-width `step`.
pub fn energy_derivatives(
    family: &ModelFamily,
    mu: f64,
    gamma: f64,
    step: f64,
    path: EvalPath,
) -> Result<EnergyDerivatives> {
    if !(step > 0.0) {
        return Err(Error::Parameter("finite-difference step must be positive"));
    }
    let centre_sign = family.det_sign(mu, gamma, path)?;
    let mut e = [[0.0; 3]; 3];
    for (i, a) in [-1.0, 0.0, 1.0].into_iter().enumerate() {
        for (j, b) in [-1.0, 0.0, 1.0].into_iter().enumerate() {
            let (m, g) = (mu + a * step, gamma + b * step);
            if family.det_sign(m, g, path)? != centre_sign {
                return Err(Error::StencilCrossesTransition);
            }
            e[i][j] = family.energy_density(m, g, path)?;
        }
    }
    let h2 = step * step;
    Ok(EnergyDerivatives {
        d2_mumu: (e[2][1] - 2.0 * e[1][1] + e[0][1]) / h2,
        d2_gammagamma: (e[1][2] - 2.0 * e[1][1] + e[1][0]) / h2,
        d2_mugamma: (e[2][2] + e[0][0] - e[2][0] - e[0][2]) / (4.0 * h2),
    })
}
