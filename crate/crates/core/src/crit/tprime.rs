use crate::family::{EvalPath, GroundState, ModelFamily, StateData};
use crate::model::Boundary;
use crate::{Error, Matrix, Result};

/// `dT/dgamma` at `gamma = 0` for the free-ends fully connected model.
#[derive(Debug, Clone, PartialEq)]
pub struct TPrimeZero {
    pub matrix: Matrix,
    /// Closed form of `Tr[T'(0)]^2`.
    pub trace_sq: f64,
    /// `Tr[T'(0)]^2` evaluated from `matrix`.
    pub trace_sq_matrix: f64,
    /// `h_crit(gamma = 0) = Tr[T'(0)]^2 / 8`
    pub h_crit: f64,
}

/// Elementwise `T'_jk = [(k - j)/(L/2 + mu - 1) - sign(k - j)] / (mu - 1)`.
pub fn t_prime_zero(l: usize, mu: f64) -> Result<TPrimeZero> {
    if !(mu > 1.0) {
        return Err(Error::Domain("T'(0) needs mu > 1"));
    }
    if l < 2 {
        return Err(Error::Parameter("L must be at least 2"));
    }
    let m1 = mu - 1.0;
    let c = 0.5 * l as f64 + m1;
    let matrix = Matrix::from_fn(l, l, |j, k| {
        let d = k as f64 - j as f64;
        let s = if k > j { 1.0 } else if k < j { -1.0 } else { 0.0 };
        (d / c - s) / m1
    });
    let trace_sq_matrix = matrix.component_mul(&matrix.transpose()).sum();
    let trace_sq = trace_sq_closed(l, mu);
    Ok(TPrimeZero { matrix, trace_sq, trace_sq_matrix, h_crit: trace_sq / 8.0 })
}

/// `-(1/(mu-1)^2) L(L-1)/(3[L+2(mu-1)]^2) [L^2 + 2L(2mu-3) + 4(mu-1)(3mu-5)]`
pub fn trace_sq_closed(l: usize, mu: f64) -> f64 {
    let l = l as f64;
    let m1 = mu - 1.0;
    let d = l + 2.0 * m1;
    -(1.0 / (m1 * m1)) * (l * (l - 1.0) / (3.0 * d * d))
        * (l * l + 2.0 * l * (2.0 * mu - 3.0) + 4.0 * m1 * (3.0 * mu - 5.0))
}

/// `-(1/24) [L / (mu - 1)]^2`
pub fn h_gamma_zero_tdl(l: usize, mu: f64) -> f64 {
    let x = l as f64 / (mu - 1.0);
    -x * x / 24.0
}

/// `[T(gamma = delta) - T(gamma = -delta)] / (2 delta)` from the dense solver.
pub fn t_prime_numeric(family: &ModelFamily, mu: f64, delta: f64) -> Result<Matrix> {
    if family.boundary != Boundary::FreeEnds {
        return Err(Error::Parameter("T'(0) is defined for the free-ends model"));
    }
    let t = |g: f64| -> Result<Matrix> {
        let s: GroundState = family.ground_state(mu, g, EvalPath::Dense)?;
        match s.data {
            StateData::Dense { t, .. } => Ok(t),
            StateData::Circulant(_) => unreachable!(),
        }
    };
    Ok((t(delta)? - t(-delta)?) / (2.0 * delta))
}
