//! Variable-range coupling matrices.
//!
//! For a range `r` every mode couples to the modes within distance `r`; the
//! hopping is uniform and the pairing carries the orientation `sign(k - j)`.
//! With free ends `A` and `B` are Toeplitz, with periodic boundaries they are
//! circulant.

use crate::{Error, Matrix, Result};

/// Largest number of modes accepted by default; dense factorizations are O(L^3).
pub const DEFAULT_MAX_L: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    FreeEnds,
    Cyclic,
}

/// Overall sign of the Hamiltonian.
///
/// `Unflipped` is the ferromagnetic convention `H = -sum(...) - mu N`;
/// `Flipped` negates both `A` and `B`. The ground-state phase diagram is the
/// same, but every formula that mentions `zeta`, `E0` or the parity depends
/// on the choice. On the command line these are `s3` and `s4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignConvention {
    Unflipped,
    Flipped,
}

impl SignConvention {
    pub fn factor(self) -> f64 {
        match self {
            SignConvention::Unflipped => 1.0,
            SignConvention::Flipped => -1.0,
        }
    }
}

/// Coupling range rule, resolved against `L` and the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Range {
    Fixed(usize),
    /// Every mode couples to every other: `L - 1` with free ends, `floor(L/2)` cyclic.
    Full,
}

impl Range {
    pub fn resolve(self, l: usize, boundary: Boundary) -> usize {
        match self {
            Range::Fixed(r) => r,
            Range::Full => max_range(l, boundary),
        }
    }
}

/// Largest legal range for the given size and boundary.
pub fn max_range(l: usize, boundary: Boundary) -> usize {
    match boundary {
        Boundary::FreeEnds => l.saturating_sub(1),
        Boundary::Cyclic => l / 2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub l: usize,
    pub r: usize,
    pub mu: f64,
    pub gamma: f64,
    pub boundary: Boundary,
    pub sign: SignConvention,
}

impl ModelParams {
    pub fn new(
        l: usize,
        r: usize,
        mu: f64,
        gamma: f64,
        boundary: Boundary,
        sign: SignConvention,
    ) -> Self {
        ModelParams { l, r, mu, gamma, boundary, sign }
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_with_limit(DEFAULT_MAX_L)
    }

    pub fn validate_with_limit(&self, max_l: usize) -> Result<()> {
        if self.l < 2 {
            return Err(Error::Parameter("L must be at least 2"));
        }
        if self.l > max_l {
            return Err(Error::SizeGuard { l: self.l, max: max_l });
        }
        let max = max_range(self.l, self.boundary);
        if self.r > max {
            return Err(Error::RangeOutOfBounds { l: self.l, range: self.r, max });
        }
        if !self.mu.is_finite() || !self.gamma.is_finite() {
            return Err(Error::Parameter("mu and gamma must be finite"));
        }
        Ok(())
    }

    /// True when every mode couples to every other mode.
    pub fn is_fully_connected(&self) -> bool {
        match self.boundary {
            Boundary::FreeEnds => self.r + 1 == self.l,
            Boundary::Cyclic => self.r == self.l / 2,
        }
    }

    pub fn with_point(&self, mu: f64, gamma: f64) -> Self {
        ModelParams { mu, gamma, ..*self }
    }
}

/// Coupling matrices of one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingModel {
    pub params: ModelParams,
    pub a: Matrix,
    pub b: Matrix,
    pub z: Matrix,
}

impl CouplingModel {
    pub fn build(params: ModelParams) -> Result<Self> {
        match params.boundary {
            Boundary::FreeEnds => build_free_ends(params),
            Boundary::Cyclic => build_cyclic(params),
        }
    }

    pub fn l(&self) -> usize {
        self.params.l
    }

    /// First row of `Z`; for cyclic models it determines the whole matrix.
    pub fn first_row(&self) -> alloc::vec::Vec<f64> {
        self.z.row(0).iter().copied().collect()
    }
}

// theta(0) = 1
fn step(x: i64) -> f64 {
    if x >= 0 {
        1.0
    } else {
        0.0
    }
}

// sign(0) = 0
fn sign(x: i64) -> f64 {
    match x {
        0 => 0.0,
        x if x > 0 => 1.0,
        _ => -1.0,
    }
}

fn assemble(params: ModelParams, entry: impl Fn(i64, i64) -> (f64, f64)) -> CouplingModel {
    let l = params.l;
    let s = params.sign.factor();
    let mut a = Matrix::zeros(l, l);
    let mut b = Matrix::zeros(l, l);
    for j in 0..l {
        for k in 0..l {
            let (ajk, bjk) = entry(j as i64, k as i64);
            a[(j, k)] = s * ajk;
            b[(j, k)] = s * bjk;
        }
    }
    let z = &a - &b;
    CouplingModel { params, a, b, z }
}

/// Toeplitz matrices of the free-ends graph.
pub fn build_free_ends(params: ModelParams) -> Result<CouplingModel> {
    if params.boundary != Boundary::FreeEnds {
        return Err(Error::Parameter("build_free_ends needs a free-ends boundary"));
    }
    params.validate()?;
    let r = params.r as i64;
    let (mu, gamma) = (params.mu, params.gamma);
    Ok(assemble(params, |j, k| {
        let d = (j - k).abs();
        let delta = if j == k { 1.0 } else { 0.0 };
        let a = -((mu - 1.0) * delta + step(r - d));
        let b = -gamma * sign(k - j) * step(r - d);
        (a, b)
    }))
}

/// Circulant matrices of the cyclic graph.
///
/// For `L` even and `r = L/2` the antipodal hopping is counted once and the
/// antipodal pairing vanishes, since `c_1^+ c_{L/2+1}^+` and its periodic
/// image cancel.
pub fn build_cyclic(params: ModelParams) -> Result<CouplingModel> {
    if params.boundary != Boundary::Cyclic {
        return Err(Error::Parameter("build_cyclic needs a cyclic boundary"));
    }
    params.validate()?;
    let l = params.l as i64;
    let r = params.r as i64;
    let (mu, gamma) = (params.mu, params.gamma);
    let antipodal = l % 2 == 0 && r == l / 2;

    let pairing = move |j: i64, k: i64, r: i64| {
        let d = (j - k).abs();
        -gamma * sign(k - j) * (step(r - d) - step(d - l + r))
    };

    Ok(assemble(params, |j, k| {
        let d = (j - k).abs();
        let delta = if j == k { 1.0 } else { 0.0 };
        if antipodal {
            let a = -((mu - 1.0) * delta + 1.0);
            (a, pairing(j, k, r - 1))
        } else {
            let a = -((mu - 1.0) * delta + step(r - d) + step(d - l + r));
            (a, pairing(j, k, r))
        }
    }))
}
