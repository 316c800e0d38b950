//! Single-site entanglement of the cyclic fully connected model.
//!
//! Every site has the same reduced density matrix, fixed by the occupation
//! `n = (1 - T_ii) / 2`. The entropy is in bits.

use core::f64::consts::{LN_2, PI};
use num_traits::Float;

use crate::solver::SpectralList;
use crate::util::{asin_over_x, asinh_over_x};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleSiteRecord {
    pub tii: f64,
    pub n: f64,
    pub si: f64,
}

impl SingleSiteRecord {
    pub fn from_tii(tii: f64) -> Self {
        let n = 0.5 * (1.0 - tii);
        SingleSiteRecord { tii, n, si: binary_entropy(n) }
    }
}

/// `-n log2 n - (1 - n) log2(1 - n)` with `0 log 0 = 0`.
pub fn binary_entropy(n: f64) -> f64 {
    let n = n.clamp(0.0, 1.0);
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.ln() };
    (term(n) + term(1.0 - n)) / LN_2
}

/// `T_ii = (1/L) sum_j Re zeta_j / |zeta_j|`.
pub fn single_site(spectral: &SpectralList) -> Result<SingleSiteRecord> {
    let eps = spectral.eps_sing();
    if spectral.moduli.iter().any(|&m| m <= eps) {
        return Err(Error::DegeneratePoint);
    }
    Ok(SingleSiteRecord::from_tii(spectral.t_diagonal()))
}

/// Thermodynamic limit of `T_ii`.
///
/// With `m = mu - 1` and `x = sqrt|gamma^2 - m^2| / |m|`, this is
/// `(2/pi) sign(m) asinh(x)/x` for `|gamma| > |m|` and
/// `(2/pi) sign(m) asin(x)/x` for `|gamma| < |m|`.
pub fn tii_tdl(mu: f64, gamma: f64) -> Result<f64> {
    let m = mu - 1.0;
    let g = gamma.abs();
    if m == 0.0 {
        return if g == 0.0 { Err(Error::SingularPoint) } else { Ok(0.0) };
    }
    let a = m.abs();
    let x = ((g - a) * (g + a)).abs().sqrt() / a;
    let shape = if g > a { asinh_over_x(x) } else { asin_over_x(x) };
    Ok(2.0 / PI * m.signum() * shape)
}

pub fn single_site_tdl(mu: f64, gamma: f64) -> Result<SingleSiteRecord> {
    Ok(SingleSiteRecord::from_tii(tii_tdl(mu, gamma)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyDerivatives {
    pub dsi_dmu: f64,
    pub d2si_dmu2: f64,
    pub dsi_dgamma: f64,
    pub dtii_dgamma: f64,
}

/// Central differences of the limiting `S_i` and `T_ii`.
pub fn entropy_derivative_diag(mu: f64, gamma: f64, step: f64) -> Result<EntropyDerivatives> {
    if !(step > 0.0) {
        return Err(Error::Parameter("finite-difference step must be positive"));
    }
    let si = |m: f64, g: f64| Ok::<f64, Error>(single_site_tdl(m, g)?.si);
    let (sp, s0, sm) = (si(mu + step, gamma)?, si(mu, gamma)?, si(mu - step, gamma)?);
    let (gp, gm) = (si(mu, gamma + step)?, si(mu, gamma - step)?);
    let tp = tii_tdl(mu, gamma + step)?;
    let tm = tii_tdl(mu, gamma - step)?;
    Ok(EntropyDerivatives {
        dsi_dmu: (sp - sm) / (2.0 * step),
        d2si_dmu2: (sp - 2.0 * s0 + sm) / (step * step),
        dsi_dgamma: (gp - gm) / (2.0 * step),
        dtii_dgamma: (tp - tm) / (2.0 * step),
    })
}

/// `-ln^2|mu - 1|`, the divergence shape of `d2 S_i / d mu^2` near `mu = 1`.
pub fn law_d2si_dmu2(mu: f64) -> f64 {
    let l = (mu - 1.0).abs().ln();
    -l * l
}

/// `-sign(gamma) ln(|gamma| / (pi |mu - 1|)) / |mu - 1|`, the divergence
/// shape of `d S_i / d gamma` near `gamma = 0`.
pub fn law_dsi_dgamma(mu: f64, gamma: f64) -> f64 {
    let a = (mu - 1.0).abs();
    -gamma.signum() * (gamma.abs() / (PI * a)).ln() / a
}
