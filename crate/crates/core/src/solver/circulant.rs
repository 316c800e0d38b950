use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::Float;

use crate::model::{Boundary, ModelParams, SignConvention};
use crate::{Error, Result};

/// Eigenvalues of a real circulant `Z`, kept in DFT index order
/// (`kappa_j = 2 pi (j - 1) / L`).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralList {
    pub zeta: Vec<Complex64>,
    /// `arg zeta_j` in `(-pi, pi]`.
    pub theta: Vec<f64>,
    pub moduli: Vec<f64>,
}

impl SpectralList {
    pub fn from_zeta(zeta: Vec<Complex64>) -> Self {
        let theta = zeta.iter().map(|z| principal_arg(*z)).collect();
        let moduli = zeta.iter().map(|z| z.norm()).collect();
        SpectralList { zeta, theta, moduli }
    }

    pub fn l(&self) -> usize {
        self.zeta.len()
    }

    /// Number of complex-conjugate pairs, `floor((L - 1) / 2)`.
    pub fn pair_count(&self) -> usize {
        (self.l() - 1) / 2
    }

    /// Indices (0-based) of the eigenvalues without a conjugate partner.
    pub fn unpaired(&self) -> Vec<usize> {
        let l = self.l();
        if l % 2 == 0 {
            alloc::vec![0, l / 2]
        } else {
            alloc::vec![0]
        }
    }

    pub fn moduli_descending(&self) -> Vec<f64> {
        let mut v = self.moduli.clone();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    pub fn gap(&self) -> f64 {
        self.moduli.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn lambda_max(&self) -> f64 {
        self.moduli.iter().copied().fold(0.0, f64::max)
    }

    pub fn eps_sing(&self) -> f64 {
        super::singular_threshold(self.l(), self.lambda_max())
    }

    pub fn well_defined(&self) -> bool {
        let g = self.gap();
        g > 0.0 && g > self.eps_sing()
    }

    /// `sign det Z`: the product of the signs of the unpaired real eigenvalues,
    /// or 0 when any modulus is below the rank threshold.
    pub fn parity(&self) -> i8 {
        if self.gap() <= self.eps_sing() {
            return 0;
        }
        let mut s = 1i8;
        for j in self.unpaired() {
            let re = self.zeta[j].re;
            if re == 0.0 {
                return 0;
            }
            if re < 0.0 {
                s = -s;
            }
        }
        s
    }

    /// `ln |det Z| = sum ln |zeta_j|`
    pub fn log_abs_det(&self) -> f64 {
        self.moduli.iter().map(|m| m.ln()).sum()
    }

    /// `E0 = sum (Re zeta_j - |zeta_j|) / 2`
    pub fn ground_energy(&self) -> f64 {
        self.zeta.iter().zip(&self.moduli).map(|(z, m)| z.re - m).sum::<f64>() / 2.0
    }

    /// Diagonal element of the circulant polar factor, `(1/L) sum Re tau_j`.
    pub fn t_diagonal(&self) -> f64 {
        let s: f64 = self.zeta.iter().zip(&self.moduli).map(|(z, m)| z.re / m).sum();
        s / self.l() as f64
    }
}

/// Principal argument in `(-pi, pi]`.
pub fn principal_arg(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a == -PI {
        PI
    } else {
        a
    }
}

/// DFT of the first row of a circulant matrix,
/// `zeta_j = sum_k m_k exp(-i 2 pi j k / L)`.
pub fn circulant_eigvals(first_row: &[f64]) -> SpectralList {
    let l = first_row.len();
    let twiddle: Vec<Complex64> = (0..l)
        .map(|k| {
            let a = -2.0 * PI * k as f64 / l as f64;
            Complex64::new(a.cos(), a.sin())
        })
        .collect();
    let zeta = (0..l)
        .map(|j| {
            first_row
                .iter()
                .enumerate()
                .map(|(k, m)| twiddle[(j * k) % l] * *m)
                .sum()
        })
        .collect();
    SpectralList::from_zeta(zeta)
}

fn check_cyclic(params: &ModelParams) -> Result<()> {
    if params.boundary != Boundary::Cyclic {
        return Err(Error::Parameter("closed-form eigenvalues need a cyclic model"));
    }
    params.validate()
}

/// Closed-form eigenvalues of the cyclic variable-range `Z`.
///
/// `-zeta_j = mu + (-1)^j [r = L/2] + 2 sin(r k/2)/sin(k/2) [cos((1+r)k/2) + i gamma sin((1+r)k/2)]`
/// in the `Unflipped` convention, negated for `Flipped`.
pub fn zeta_variable_range(params: &ModelParams) -> Result<SpectralList> {
    check_cyclic(params)?;
    let l = params.l;
    let r = params.r as f64;
    let antipodal = l % 2 == 0 && params.r == (l + 1) / 2;
    let zeta = (0..l)
        .map(|idx| {
            // idx = j - 1
            let kappa = 2.0 * PI * idx as f64 / l as f64;
            let ratio = if idx == 0 { r } else { (r * kappa / 2.0).sin() / (kappa / 2.0).sin() };
            let phase = (1.0 + r) * kappa / 2.0;
            let mut minus = Complex64::new(params.mu, 0.0)
                + Complex64::new(phase.cos(), params.gamma * phase.sin()) * (2.0 * ratio);
            if antipodal {
                minus.re += if (idx + 1) % 2 == 0 { 1.0 } else { -1.0 };
            }
            if idx == 0 {
                minus.im = 0.0;
            }
            match params.sign {
                SignConvention::Unflipped => -minus,
                SignConvention::Flipped => minus,
            }
        })
        .collect();
    Ok(SpectralList::from_zeta(zeta))
}

/// Eigenvalues of the fully connected cyclic `Z` in the `Flipped` sign.
pub fn zeta_fully_connected(params: &ModelParams) -> Result<SpectralList> {
    check_cyclic(params)?;
    if !params.is_fully_connected() || params.sign != SignConvention::Flipped {
        return Err(Error::Parameter("needs the fully connected cyclic model in Flipped sign"));
    }
    let l = params.l;
    let (mu, gamma) = (params.mu, params.gamma);
    let mut zeta = Vec::with_capacity(l);
    zeta.push(Complex64::new(mu + l as f64 - 1.0, 0.0));
    for j in 2..=l {
        let kappa = 2.0 * PI * (j - 1) as f64 / l as f64;
        let even_j = j % 2 == 0;
        let im = if l % 2 == 0 {
            if even_j {
                2.0 * gamma / (kappa / 2.0).tan()
            } else {
                0.0
            }
        } else if even_j {
            gamma / (kappa / 4.0).tan()
        } else {
            -gamma * (kappa / 4.0).tan()
        };
        zeta.push(Complex64::new(mu - 1.0, im));
    }
    Ok(SpectralList::from_zeta(zeta))
}
