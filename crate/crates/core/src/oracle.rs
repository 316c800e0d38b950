//! Brute-force Fock-space reference for small systems.
//!
//! Basis states are occupation bitmasks, bit `j` for mode `j`. A creation or
//! annihilation operator on mode `j` carries the sign `(-1)^k`, `k` the number
//! of occupied modes with index below `j`.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use crate::gsfid;
use crate::model::CouplingModel;
use crate::solver::{self, PolarForm};
use crate::{Error, Matrix, Result};

/// Largest mode count the oracle accepts.
pub const MAX_ORACLE_L: usize = 12;
/// Ground states closer than this to the next level are flagged.
pub const DEGENERACY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    pub l: usize,
    /// Real amplitudes indexed by occupation bitmask; real couplings give
    /// real eigenvectors.
    pub amplitudes: Vec<f64>,
}

impl FockState {
    pub fn vacuum(l: usize) -> Self {
        let mut amplitudes = vec![0.0; 1 << l];
        amplitudes[0] = 1.0;
        FockState { l, amplitudes }
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    fn normalized(mut self) -> Self {
        let n = self.norm();
        self.amplitudes.iter_mut().for_each(|a| *a /= n);
        self
    }

    /// `+1` or `-1` if the support has a single fermion-number parity, else 0.
    pub fn parity(&self) -> i8 {
        let (mut even, mut odd) = (0.0, 0.0);
        for (m, a) in self.amplitudes.iter().enumerate() {
            if m.count_ones() % 2 == 0 {
                even += a * a;
            } else {
                odd += a * a;
            }
        }
        let tot = even + odd;
        if odd <= 1e-20 * tot {
            1
        } else if even <= 1e-20 * tot {
            -1
        } else {
            0
        }
    }

    /// `<c_i^+ c_i>` for every mode.
    pub fn densities(&self) -> Vec<f64> {
        let mut n = vec![0.0; self.l];
        for (m, a) in self.amplitudes.iter().enumerate() {
            for (i, ni) in n.iter_mut().enumerate() {
                if m >> i & 1 == 1 {
                    *ni += a * a;
                }
            }
        }
        n
    }
}

#[inline]
fn sign_below(mask: usize, j: usize) -> f64 {
    if (mask & ((1 << j) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

// c_j^+ |mask>
#[inline]
fn create(mask: usize, j: usize) -> Option<(usize, f64)> {
    (mask >> j & 1 == 0).then(|| (mask | 1 << j, sign_below(mask, j)))
}

// c_j |mask>
#[inline]
fn annihilate(mask: usize, j: usize) -> Option<(usize, f64)> {
    (mask >> j & 1 == 1).then(|| (mask ^ 1 << j, sign_below(mask, j)))
}

/// Nonzero matrix elements `<out| H |mask>` for
/// `H = sum c_i^+ A_ij c_j + (1/2) sum (c_i^+ B_ij c_j^+ + h.c.)`.
fn apply_h(a: &Matrix, b: &Matrix, mask: usize, mut emit: impl FnMut(usize, f64)) {
    let l = a.nrows();
    for j in 0..l {
        for i in 0..l {
            if let Some((m1, s1)) = annihilate(mask, j) {
                if let Some((m2, s2)) = create(m1, i) {
                    emit(m2, a[(i, j)] * s1 * s2);
                }
            }
            let bij = b[(i, j)];
            if bij == 0.0 {
                continue;
            }
            if let Some((m1, s1)) = create(mask, j) {
                if let Some((m2, s2)) = create(m1, i) {
                    emit(m2, 0.5 * bij * s1 * s2);
                }
            }
            // (c_i^+ c_j^+)^+ = c_j c_i
            if let Some((m1, s1)) = annihilate(mask, i) {
                if let Some((m2, s2)) = annihilate(m1, j) {
                    emit(m2, 0.5 * bij * s1 * s2);
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub e0: f64,
    pub gs: FockState,
    pub parity: i8,
    pub degenerate: bool,
    pub densities: Vec<f64>,
    /// Full many-body spectrum, ascending.
    pub spectrum: Vec<f64>,
}

fn check_size(l: usize) -> Result<()> {
    if l > MAX_ORACLE_L {
        return Err(Error::SizeGuard { l, max: MAX_ORACLE_L });
    }
    if l == 0 {
        return Err(Error::Parameter("L must be at least 1"));
    }
    Ok(())
}

/// Exact diagonalization of the Hamiltonian of `model`, one parity block
/// at a time (the Hamiltonian conserves fermion-number parity).
pub fn fock_hamiltonian_gs(model: &CouplingModel) -> Result<OracleResult> {
    let l = model.l();
    check_size(l)?;
    let dim = 1usize << l;
    let mut index = vec![0usize; dim];
    let mut spectrum = Vec::with_capacity(dim);
    let mut best: Option<(f64, FockState, i8)> = None;
    for parity_bit in 0..2u32 {
        let masks: Vec<usize> = (0..dim).filter(|m| m.count_ones() % 2 == parity_bit).collect();
        for (k, &m) in masks.iter().enumerate() {
            index[m] = k;
        }
        let n = masks.len();
        let mut h = Matrix::zeros(n, n);
        for (col, &m) in masks.iter().enumerate() {
            apply_h(&model.a, &model.b, m, |out, v| h[(index[out], col)] += v);
        }
        let asym = (&h - h.transpose()).abs().max();
        if asym > 1e-12 * h.abs().max().max(1.0) {
            return Err(Error::Consistency("Fock Hamiltonian is not symmetric"));
        }
        let (values, vectors) = crate::linalg::symmetric_eigen(&h);
        let (k, e) = (0, values[0]);
        spectrum.extend(values.iter().copied());
        if best.as_ref().map_or(true, |b| e < b.0) {
            let mut amplitudes = vec![0.0; dim];
            for (r, &m) in masks.iter().enumerate() {
                amplitudes[m] = vectors[(r, k)];
            }
            let sign = if parity_bit == 0 { 1 } else { -1 };
            best = Some((e, FockState { l, amplitudes }.normalized(), sign));
        }
    }
    spectrum.sort_by(|a, b| a.total_cmp(b));
    let (e0, gs, parity) = best.expect("two parity blocks");
    let scale = spectrum.iter().fold(1.0f64, |m, e| m.max(e.abs()));
    let degenerate = spectrum.len() > 1 && spectrum[1] - spectrum[0] < DEGENERACY_TOL * scale;
    let densities = gs.densities();
    Ok(OracleResult { e0, gs, parity, degenerate, densities, spectrum })
}

/// `|<a|b>|`
pub fn overlap(a: &FockState, b: &FockState) -> Result<f64> {
    if a.l != b.l {
        return Err(Error::Parameter("overlap between different mode counts"));
    }
    Ok(a.amplitudes.iter().zip(&b.amplitudes).map(|(x, y)| x * y).sum::<f64>().abs())
}

/// `N exp((1/2) sum_jk G_jk c_j^+ c_k^+) |0>` by repeated application of the
/// pair operator to the vacuum.
pub fn gs_from_g(g: &Matrix) -> Result<FockState> {
    let l = g.nrows();
    check_size(l)?;
    let dim = 1usize << l;
    let apply_pair = |v: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; dim];
        for (mask, &amp) in v.iter().enumerate() {
            if amp == 0.0 {
                continue;
            }
            for j in 0..l {
                for k in 0..l {
                    let gjk = g[(j, k)];
                    if gjk == 0.0 {
                        continue;
                    }
                    if let Some((m1, s1)) = create(mask, k) {
                        if let Some((m2, s2)) = create(m1, j) {
                            out[m2] += 0.5 * gjk * s1 * s2 * amp;
                        }
                    }
                }
            }
        }
        out
    };
    let mut total = FockState::vacuum(l).amplitudes;
    let mut term = total.clone();
    for n in 1..=l / 2 {
        term = apply_pair(&term);
        term.iter_mut().for_each(|a| *a /= n as f64);
        total.iter_mut().zip(&term).for_each(|(t, x)| *t += x);
    }
    Ok(FockState { l, amplitudes: total }.normalized())
}

/// `|| eta_j |psi> ||` for `eta_j = sum_k (g_jk c_k + h_jk c_k^+)`.
pub fn annihilation_residuals(g: &Matrix, h: &Matrix, psi: &FockState) -> Result<Vec<f64>> {
    let l = psi.l;
    if g.nrows() != l || h.nrows() != l {
        return Err(Error::Parameter("mode count mismatch"));
    }
    let dim = 1usize << l;
    let mut out = Vec::with_capacity(l);
    for j in 0..l {
        let mut v = vec![0.0; dim];
        for (mask, &amp) in psi.amplitudes.iter().enumerate() {
            if amp == 0.0 {
                continue;
            }
            for k in 0..l {
                if let Some((m, s)) = annihilate(mask, k) {
                    v[m] += g[(j, k)] * s * amp;
                }
                if let Some((m, s)) = create(mask, k) {
                    v[m] += h[(j, k)] * s * amp;
                }
            }
        }
        out.push(v.iter().map(|x| x * x).sum::<f64>().sqrt());
    }
    Ok(out)
}

/// `{E0 + sum_j b_j lambda_j : b in {0,1}^L}`, ascending.
pub fn free_spectrum(e0: f64, lambda: &[f64]) -> Result<Vec<f64>> {
    check_size(lambda.len())?;
    let mut out: Vec<f64> = (0..1usize << lambda.len())
        .map(|b| e0 + lambda.iter().enumerate().filter(|(j, _)| b >> j & 1 == 1).map(|(_, x)| x).sum::<f64>())
        .collect();
    out.sort_by(|a, b| a.total_cmp(b));
    Ok(out)
}

/// Solver and oracle evaluated at one model.
#[derive(Debug, Clone)]
pub struct PointCheck {
    pub oracle: OracleResult,
    pub polar: PolarForm,
    /// `Tr(A - Lambda) / 2`
    pub e0: f64,
    pub lambda: Vec<f64>,
    /// Overlap of the Cayley-ansatz state with the oracle ground state;
    /// `None` when the Cayley matrix is undefined.
    pub ansatz_overlap: Option<f64>,
    /// `|| eta_j |psi_oracle> ||` for the solver's `eta_j`.
    pub annihilation: Vec<f64>,
}

pub fn check_point(model: &CouplingModel) -> Result<PointCheck> {
    let oracle = fock_hamiltonian_gs(model)?;
    let spec = solver::canonical_decompose(model);
    let polar = solver::polar_t(&spec, model);
    let (e0, _) = solver::ground_energy_and_gap(model, &spec);
    let ansatz_overlap = match gsfid::cayley_g(&polar.t) {
        Ok(g) => Some(overlap(&gs_from_g(&g)?, &oracle.gs)?),
        Err(_) => None,
    };
    let annihilation = annihilation_residuals(&spec.g, &spec.h_pair, &oracle.gs)?;
    Ok(PointCheck { oracle, polar, e0, lambda: spec.lambda, ansatz_overlap, annihilation })
}
