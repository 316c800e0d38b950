//! Canonical decomposition `Phi Z Psi^T = Lambda` and the polar factor `T`.
//!
//! `Phi` and `Psi` come out of one singular value decomposition of `Z`, so
//! they are consistent with each other by construction. Computing them from
//! separate eigendecompositions of `Z Z^T` and `Z^T Z` would leave their
//! relative signs and degenerate rotations undetermined.

mod circulant;

pub use circulant::{circulant_eigvals, zeta_fully_connected, zeta_variable_range, SpectralList};

use alloc::vec::Vec;
use num_traits::Float;

use crate::model::CouplingModel;
use crate::util::{max_abs, z_det_sign};
use crate::Matrix;

/// Orthogonality / reconstruction tolerance for a matrix of size `l` and
/// largest entry `zmax`.
pub fn tolerance(zmax: f64, l: usize) -> f64 {
    1e-10 * (zmax * l as f64).max(1.0)
}

/// Rank threshold for single-particle energies.
pub fn singular_threshold(l: usize, lambda_max: f64) -> f64 {
    l as f64 * f64::EPSILON * lambda_max
}

#[derive(Debug, Clone)]
pub struct CanonicalSpectrum {
    /// Single-particle energies, descending.
    pub lambda: Vec<f64>,
    pub phi: Matrix,
    pub psi: Matrix,
    /// `(Phi + Psi) / 2`
    pub g: Matrix,
    /// `(Phi - Psi) / 2`
    pub h_pair: Matrix,
}

impl CanonicalSpectrum {
    pub fn l(&self) -> usize {
        self.lambda.len()
    }

    pub fn gap(&self) -> f64 {
        self.lambda.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda.first().copied().unwrap_or(0.0)
    }

    pub fn eps_sing(&self) -> f64 {
        singular_threshold(self.l(), self.lambda_max())
    }

    /// `max |Phi Z Psi^T - diag(Lambda)|`
    pub fn reconstruction_error(&self, z: &Matrix) -> f64 {
        let mut d = &self.phi * z * self.psi.transpose();
        for (i, l) in self.lambda.iter().enumerate() {
            d[(i, i)] -= l;
        }
        max_abs(&d)
    }

    /// Worst deviation from orthogonality of `Phi`, `Psi` and of the canonical
    /// conditions `g g^T + h h^T = 1`, `g h^T + h g^T = 0`.
    pub fn orthogonality_error(&self) -> f64 {
        let l = self.l();
        let id = Matrix::identity(l, l);
        let e1 = max_abs(&(&self.phi * self.phi.transpose() - &id));
        let e2 = max_abs(&(&self.psi * self.psi.transpose() - &id));
        let e3 = max_abs(&(&self.g * self.g.transpose() + &self.h_pair * self.h_pair.transpose() - &id));
        let gh = &self.g * self.h_pair.transpose();
        let e4 = max_abs(&(&gh + gh.transpose()));
        e1.max(e2).max(e3).max(e4)
    }
}

/// Real singular value decomposition of `Z` in the canonical form.
///
/// `Z = Phi^T Lambda Psi` with `Lambda` nonincreasing. Rows of `Phi` and `Psi`
/// belonging to vanishing energies span the null spaces and are orthonormal
/// completions.
pub fn canonical_decompose(model: &CouplingModel) -> CanonicalSpectrum {
    decompose_matrix(&model.z)
}

pub fn decompose_matrix(z: &Matrix) -> CanonicalSpectrum {
    let svd = crate::linalg::svd(z);
    let phi = svd.u.transpose();
    let psi = svd.v.transpose();
    let lambda = svd.s;
    let g = (&phi + &psi) * 0.5;
    let h_pair = (&phi - &psi) * 0.5;
    CanonicalSpectrum { lambda, phi, psi, g, h_pair }
}

/// Orthogonal polar factor `T` with `Z = |Z| T`.
#[derive(Debug, Clone)]
pub struct PolarForm {
    pub t: Matrix,
    /// `det T`, from the sign of `det Z`; 0 when `Z` is numerically singular.
    pub parity: i8,
    pub gap: f64,
    /// False at level crossings (`det Z = 0`), where `T` is undefined.
    pub well_defined: bool,
}

/// `T = Phi^T Psi` and the parity `sign det Z` from a pivoted LU factorization.
pub fn polar_t(spec: &CanonicalSpectrum, model: &CouplingModel) -> PolarForm {
    polar_from_matrix(spec, &model.z)
}

pub fn polar_from_matrix(spec: &CanonicalSpectrum, z: &Matrix) -> PolarForm {
    let t = spec.phi.transpose() * &spec.psi;
    let gap = spec.gap();
    let well_defined = gap > spec.eps_sing() && gap > 0.0;
    PolarForm { t, parity: z_det_sign(z), gap, well_defined }
}

/// Ground-state energy `E0 = Tr(A - Lambda) / 2` and the gap `min Lambda`.
pub fn ground_energy_and_gap(model: &CouplingModel, spec: &CanonicalSpectrum) -> (f64, f64) {
    let tr_a = model.a.trace();
    let sum: f64 = spec.lambda.iter().sum();
    ((tr_a - sum) / 2.0, spec.gap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Boundary, ModelParams, SignConvention};
    use crate::util::sorted;
    use core::f64::consts::PI;

    fn model(l: usize, r: usize, mu: f64, g: f64, b: Boundary, s: SignConvention) -> CouplingModel {
        CouplingModel::build(ModelParams::new(l, r, mu, g, b, s)).unwrap()
    }

    #[test]
    fn xy_chain_spectrum() {
        let (l, mu, gamma) = (12, 0.8, 0.6);
        let m = model(l, 1, mu, gamma, Boundary::Cyclic, SignConvention::Unflipped);
        let spec = canonical_decompose(&m);
        let expect: Vec<f64> = (0..l)
            .map(|j| {
                let k = 2.0 * PI * j as f64 / l as f64;
                2.0 * ((k.cos() + mu / 2.0).powi(2) + gamma * gamma * k.sin().powi(2)).sqrt()
            })
            .collect();
        for (a, b) in sorted(spec.lambda.clone()).iter().zip(sorted(expect)) {
            assert!((a - b).abs() < 1e-12);
        }
        let tol = tolerance(max_abs(&m.z), l);
        assert!(spec.reconstruction_error(&m.z) < tol);
        assert!(spec.orthogonality_error() < tol);
    }

    #[test]
    fn triangular_point_spectrum() {
        let l = 4;
        let m = model(l, 3, 0.0, 1.0, Boundary::FreeEnds, SignConvention::Flipped);
        let spec = canonical_decompose(&m);
        let mut expect = alloc::vec![0.0];
        for j in 1..l {
            expect.push(1.0 + (j as f64 * PI / (2 * l - 1) as f64).tan().powi(2));
        }
        let got: Vec<f64> = spec.lambda.iter().map(|x| x * x).collect();
        for (a, b) in sorted(got).iter().zip(sorted(expect)) {
            assert!((a - b).abs() < 1e-12, "{a} {b}");
        }
        // the null row of Psi was completed and everything stays orthogonal
        assert!(spec.orthogonality_error() < 1e-12);
        assert!(spec.reconstruction_error(&m.z) < 1e-12);
        let pf = polar_t(&spec, &m);
        assert!(!pf.well_defined);
    }

    #[test]
    fn symmetric_z_has_involutive_polar_factor() {
        let m = model(7, 2, -0.4, 0.0, Boundary::FreeEnds, SignConvention::Flipped);
        let spec = canonical_decompose(&m);
        let pf = polar_t(&spec, &m);
        let (values, _) = crate::linalg::symmetric_eigen(&pf.t);
        for e in &values {
            assert!((e.abs() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn identity_polar_factor() {
        let z = Matrix::identity(5, 5) * 2.5;
        let spec = decompose_matrix(&z);
        let pf = polar_from_matrix(&spec, &z);
        assert!(max_abs(&(&pf.t - Matrix::identity(5, 5))) < 1e-14);
        assert_eq!(pf.parity, 1);
        assert!(pf.well_defined);
    }

    #[test]
    fn fully_connected_energy_on_mu_axis() {
        let l = 9;
        for &mu in &[1.0, 1.7, 4.0] {
            let m = model(l, 4, mu, 0.0, Boundary::Cyclic, SignConvention::Flipped);
            let (e0, _) = ground_energy_and_gap(&m, &canonical_decompose(&m));
            assert!(e0.abs() < 1e-12, "{e0}");
        }
        for &mu in &[0.5, -2.0, -7.5] {
            let m = model(l, 4, mu, 0.0, Boundary::Cyclic, SignConvention::Flipped);
            let (e0, _) = ground_energy_and_gap(&m, &canonical_decompose(&m));
            assert!((e0 - (l as f64 - 1.0) * (mu - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn gamma_reflection_transposes_t() {
        let (l, mu, g) = (9, 0.6, 0.8);
        let mp = model(l, 8, mu, g, Boundary::FreeEnds, SignConvention::Flipped);
        let mm = model(l, 8, mu, -g, Boundary::FreeEnds, SignConvention::Flipped);
        assert_eq!(mp.z.transpose(), mm.z);
        let (sp, sm) = (canonical_decompose(&mp), canonical_decompose(&mm));
        for (a, b) in sp.lambda.iter().zip(&sm.lambda) {
            assert!((a - b).abs() < 1e-12);
        }
        let tp = polar_t(&sp, &mp).t;
        let tm = polar_t(&sm, &mm).t;
        assert!(max_abs(&(tp.transpose() - tm)) < 1e-10);
    }

    #[test]
    fn parity_flips_across_mu_one_for_even_complete_graph() {
        let l = 8;
        let below = model(l, 4, 0.9, 0.5, Boundary::Cyclic, SignConvention::Flipped);
        let above = model(l, 4, 1.1, 0.5, Boundary::Cyclic, SignConvention::Flipped);
        let pb = polar_t(&canonical_decompose(&below), &below).parity;
        let pa = polar_t(&canonical_decompose(&above), &above).parity;
        assert_eq!(pb, -pa);
    }
}
