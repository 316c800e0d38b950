//! Two-parameter model families `Z(mu, gamma)` and their ground states.
//!
//! A [`ModelFamily`] fixes the size, range rule, boundary and sign; a point
//! `(mu, gamma)` then determines the model. Cyclic families are evaluated
//! through the closed-form circulant spectrum in O(L); free-ends families go
//! through the dense decomposition.

use alloc::vec::Vec;

use crate::gsfid::{self, FidelityValue};
use crate::model::{Boundary, CouplingModel, ModelParams, Range, SignConvention};
use crate::solver::{self, CanonicalSpectrum, SpectralList};
use crate::{Error, Matrix, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EvalPath {
    /// Circulant fast path for cyclic families, dense otherwise.
    #[default]
    Auto,
    Dense,
    Circulant,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelFamily {
    pub l: usize,
    pub range: Range,
    pub boundary: Boundary,
    pub sign: SignConvention,
}

impl ModelFamily {
    pub fn new(l: usize, range: Range, boundary: Boundary, sign: SignConvention) -> Self {
        ModelFamily { l, range, boundary, sign }
    }

    /// Fully connected family in the `Flipped` sign.
    pub fn fully_connected(l: usize, boundary: Boundary) -> Self {
        ModelFamily::new(l, Range::Full, boundary, SignConvention::Flipped)
    }

    pub fn r(&self) -> usize {
        self.range.resolve(self.l, self.boundary)
    }

    pub fn params(&self, mu: f64, gamma: f64) -> ModelParams {
        ModelParams::new(self.l, self.r(), mu, gamma, self.boundary, self.sign)
    }

    pub fn validate(&self) -> Result<()> {
        self.params(0.0, 0.0).validate()
    }

    pub fn model(&self, mu: f64, gamma: f64) -> Result<CouplingModel> {
        CouplingModel::build(self.params(mu, gamma))
    }

    fn resolve(&self, path: EvalPath) -> Result<EvalPath> {
        match (path, self.boundary) {
            (EvalPath::Auto, Boundary::Cyclic) => Ok(EvalPath::Circulant),
            (EvalPath::Auto, Boundary::FreeEnds) => Ok(EvalPath::Dense),
            (EvalPath::Circulant, Boundary::FreeEnds) => {
                Err(Error::Parameter("the circulant path needs a cyclic boundary"))
            }
            (p, _) => Ok(p),
        }
    }

    pub fn spectral(&self, mu: f64, gamma: f64) -> Result<SpectralList> {
        solver::zeta_variable_range(&self.params(mu, gamma))
    }

    pub fn ground_state(&self, mu: f64, gamma: f64, path: EvalPath) -> Result<GroundState> {
        match self.resolve(path)? {
            EvalPath::Circulant => Ok(GroundState::from_spectral(mu, gamma, self.spectral(mu, gamma)?)),
            _ => Ok(GroundState::from_model(&self.model(mu, gamma)?)),
        }
    }

    /// `sign det Z`; 0 on an exact zero.
    pub fn det_sign(&self, mu: f64, gamma: f64, path: EvalPath) -> Result<i8> {
        match self.resolve(path)? {
            EvalPath::Circulant => Ok(self.spectral(mu, gamma)?.parity()),
            _ => Ok(crate::util::z_det_sign(&self.model(mu, gamma)?.z)),
        }
    }

    /// `E0 / L`
    pub fn energy_density(&self, mu: f64, gamma: f64, path: EvalPath) -> Result<f64> {
        let e0 = match self.resolve(path)? {
            EvalPath::Circulant => self.spectral(mu, gamma)?.ground_energy(),
            _ => {
                let m = self.model(mu, gamma)?;
                solver::ground_energy_and_gap(&m, &solver::canonical_decompose(&m)).0
            }
        };
        Ok(e0 / self.l as f64)
    }

    /// `dZ/dmu` and `dZ/dgamma`; `Z` is affine in both parameters.
    pub fn z_derivatives(&self) -> Result<(Matrix, Matrix)> {
        let z0 = self.model(0.0, 0.0)?.z;
        let dmu = self.model(1.0, 0.0)?.z - &z0;
        let dgamma = self.model(0.0, 1.0)?.z - &z0;
        Ok((dmu, dgamma))
    }
}

#[derive(Debug, Clone)]
pub enum StateData {
    Dense { t: Matrix, spec: CanonicalSpectrum },
    Circulant(SpectralList),
}

/// Everything the fidelity machinery needs about one ground state.
#[derive(Debug, Clone)]
pub struct GroundState {
    pub mu: f64,
    pub gamma: f64,
    pub parity: i8,
    pub gap: f64,
    pub e0: f64,
    pub log_abs_det: f64,
    pub well_defined: bool,
    pub data: StateData,
}

impl GroundState {
    pub fn from_model(model: &CouplingModel) -> Self {
        let spec = solver::canonical_decompose(model);
        let polar = solver::polar_t(&spec, model);
        let (e0, gap) = solver::ground_energy_and_gap(model, &spec);
        let log_abs_det = spec.lambda.iter().map(|x| num_traits::Float::ln(*x)).sum();
        GroundState {
            mu: model.params.mu,
            gamma: model.params.gamma,
            parity: polar.parity,
            gap,
            e0,
            log_abs_det,
            well_defined: polar.well_defined,
            data: StateData::Dense { t: polar.t, spec },
        }
    }

    pub fn from_spectral(mu: f64, gamma: f64, s: SpectralList) -> Self {
        GroundState {
            mu,
            gamma,
            parity: s.parity(),
            gap: s.gap(),
            e0: s.ground_energy(),
            log_abs_det: s.log_abs_det(),
            well_defined: s.well_defined(),
            data: StateData::Circulant(s),
        }
    }

    pub fn l(&self) -> usize {
        match &self.data {
            StateData::Dense { t, .. } => t.nrows(),
            StateData::Circulant(s) => s.l(),
        }
    }

    /// `T_ii` at `site`; every site is equivalent on the circulant path.
    pub fn t_diagonal(&self, site: usize) -> f64 {
        match &self.data {
            StateData::Dense { t, .. } => t[(site, site)],
            StateData::Circulant(s) => s.t_diagonal(),
        }
    }

    /// Single-particle energies, descending.
    pub fn lambda(&self) -> Vec<f64> {
        match &self.data {
            StateData::Dense { spec, .. } => spec.lambda.clone(),
            StateData::Circulant(s) => s.moduli_descending(),
        }
    }
}

/// Fidelity between two ground states evaluated on the same path.
pub fn fidelity(a: &GroundState, b: &GroundState) -> Result<FidelityValue> {
    if !a.well_defined || !b.well_defined {
        return Err(Error::DegenerateEndpoint);
    }
    match (&a.data, &b.data) {
        (StateData::Circulant(s1), StateData::Circulant(s2)) => gsfid::fidelity_circulant(s1, s2),
        (StateData::Dense { t: t1, .. }, StateData::Dense { t: t2, .. }) => {
            if t1.nrows() != t2.nrows() {
                return Err(Error::Parameter("fidelity between different sizes"));
            }
            if a.parity != b.parity {
                return Ok(FidelityValue::orthogonal());
            }
            Ok(gsfid::fidelity_same_parity(t1, t2))
        }
        _ => Err(Error::Parameter("fidelity between states from different paths")),
    }
}

/// `F_min = min[F(Z, Z(mu + dmu, gamma)), F(Z, Z(mu, gamma + dgamma))]`.
pub fn fidelity_min(
    family: &ModelFamily,
    mu: f64,
    gamma: f64,
    dmu: f64,
    dgamma: f64,
    path: EvalPath,
) -> Result<f64> {
    let c = family.ground_state(mu, gamma, path)?;
    let a = family.ground_state(mu + dmu, gamma, path)?;
    let b = family.ground_state(mu, gamma + dgamma, path)?;
    let fa = fidelity(&c, &a)?;
    let fb = fidelity(&c, &b)?;
    Ok(fa.f.min(fb.f))
}
