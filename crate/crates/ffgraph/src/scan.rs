//! Grid evaluation over the `(mu, gamma)` plane.

use std::fmt;
use std::str::FromStr;

use ffgraph_core::crit::{hessian_analytic, hessian_fd};
use ffgraph_core::family::{self, EvalPath, ModelFamily};
use ffgraph_core::{ent, Boundary, Error, Range, SignConvention};
use rayon::prelude::*;

use crate::error::{AppError, AppResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    FMin,
    HCrit,
    Log10H,
    DetZ,
    Gap,
    E0,
    N,
    Si,
    Parity,
}

impl Quantity {
    pub const ALL: [Quantity; 9] = [
        Quantity::FMin,
        Quantity::HCrit,
        Quantity::Log10H,
        Quantity::DetZ,
        Quantity::Gap,
        Quantity::E0,
        Quantity::N,
        Quantity::Si,
        Quantity::Parity,
    ];

    /// Column name in every output format.
    pub fn name(self) -> &'static str {
        match self {
            Quantity::FMin => "F_min",
            Quantity::HCrit => "h_crit",
            Quantity::Log10H => "log10_h",
            Quantity::DetZ => "detZ",
            Quantity::Gap => "gap",
            Quantity::E0 => "E0",
            Quantity::N => "n",
            Quantity::Si => "Si",
            Quantity::Parity => "parity",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = AppError;

    fn from_str(s: &str) -> AppResult<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| AppError::Parameter(format!("unknown quantity '{s}'")))
    }
}

/// `count` evenly spaced values from `start` to `end`; a single value when
/// `count == 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl Axis {
    pub fn single(x: f64) -> Self {
        Axis { start: x, end: x, count: 1 }
    }

    pub fn new(start: f64, end: f64, count: usize) -> Self {
        Axis { start, end, count }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.end - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.end } else { self.start + step * i as f64 })
            .collect()
    }

    pub fn spacing(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            (self.end - self.start).abs() / (self.count - 1) as f64
        }
    }

    pub fn validate(&self, name: &str) -> AppResult<()> {
        if self.count == 0 || !self.start.is_finite() || !self.end.is_finite() {
            return Err(AppError::Parameter(format!("--{name}: needs finite bounds and count >= 1")));
        }
        if self.count == 1 && self.start != self.end {
            return Err(AppError::Parameter(format!("--{name}: a swept axis needs count >= 2")));
        }
        Ok(())
    }
}

impl FromStr for Axis {
    type Err = AppError;

    /// `a:b:n` or a single value `a`.
    fn from_str(s: &str) -> AppResult<Self> {
        let bad = || AppError::Parameter(format!("cannot parse axis '{s}', expected a:b:n or a number"));
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [x] => Ok(Axis::single(x.trim().parse().map_err(|_| bad())?)),
            [a, b, n] => Ok(Axis::new(
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
                n.trim().parse().map_err(|_| bad())?,
            )),
            _ => Err(bad()),
        }
    }
}

/// How `h_crit` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HMethod {
    /// Spectral (cyclic) or polar-derivative (dense) Hessian.
    #[default]
    Analytic,
    /// Central finite differences of the fidelity.
    FiniteDifference,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub sizes: Vec<usize>,
    pub range: Range,
    pub boundary: Boundary,
    pub sign: SignConvention,
    pub mu: Axis,
    pub gamma: Axis,
    pub dmu: f64,
    pub dgamma: f64,
    pub quantities: Vec<Quantity>,
    pub fd_step: Option<f64>,
    pub h_method: HMethod,
    pub path: EvalPath,
    pub seed: u64,
    /// Evaluate `h_crit` next to the line `mu = 1 - L` as well.
    pub include_trivial_line: bool,
}

impl ScanSpec {
    pub fn new(sizes: Vec<usize>, boundary: Boundary, mu: Axis, gamma: Axis, quantities: Vec<Quantity>) -> Self {
        ScanSpec {
            sizes,
            range: Range::Full,
            boundary,
            sign: SignConvention::Flipped,
            mu,
            gamma,
            dmu: 0.1,
            dgamma: 0.1,
            quantities,
            fd_step: None,
            h_method: HMethod::Analytic,
            path: EvalPath::Auto,
            seed: 0,
            include_trivial_line: false,
        }
    }

    pub fn family(&self, l: usize) -> ModelFamily {
        ModelFamily::new(l, self.range, self.boundary, self.sign)
    }

    pub fn validate(&self) -> AppResult<()> {
        if self.sizes.is_empty() {
            return Err(AppError::Parameter("at least one size L is required".into()));
        }
        self.mu.validate("mu")?;
        self.gamma.validate("gamma")?;
        if self.quantities.contains(&Quantity::FMin) && !(self.dmu > 0.0 && self.dgamma > 0.0) {
            return Err(AppError::Parameter("F_min needs --dmu > 0 and --dgamma > 0".into()));
        }
        if let Some(d) = self.fd_step {
            if !(d > 0.0) {
                return Err(AppError::Parameter("--fd-step must be positive".into()));
            }
        }
        for &l in &self.sizes {
            self.family(l).validate()?;
            if self.path == EvalPath::Circulant && self.boundary != Boundary::Cyclic {
                return Err(AppError::Parameter("the circulant path needs --boundary cyclic".into()));
            }
        }
        Ok(())
    }

    /// Grid points in output order: sizes outermost, then gamma, with mu
    /// fastest.
    pub fn points(&self) -> Vec<(usize, f64, f64)> {
        let (mus, gammas) = (self.mu.values(), self.gamma.values());
        let mut out = Vec::with_capacity(self.sizes.len() * mus.len() * gammas.len());
        for &l in &self.sizes {
            for &g in &gammas {
                for &m in &mus {
                    out.push((l, m, g));
                }
            }
        }
        out
    }
}

/// Per-point condition attached to a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    /// `det Z = 0` or a vanishing single-particle energy.
    Degenerate,
    /// A finite-difference stencil crosses a first-order line.
    StencilCrossing,
    /// The point `mu = 1, gamma = 0`.
    Singular,
    /// Next to the line `mu = 1 - L`, skipped by default.
    TrivialLine,
    /// Quantity not defined for this model (entanglement off the cyclic graph).
    NotApplicable,
    /// Any other per-point failure.
    Error,
}

impl Flag {
    pub fn name(self) -> &'static str {
        match self {
            Flag::Degenerate => "degenerate",
            Flag::StencilCrossing => "stencil-crossing",
            Flag::Singular => "singular",
            Flag::TrivialLine => "trivial-line",
            Flag::NotApplicable => "not-applicable",
            Flag::Error => "error",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            Flag::Degenerate,
            Flag::StencilCrossing,
            Flag::Singular,
            Flag::TrivialLine,
            Flag::NotApplicable,
            Flag::Error,
        ]
        .into_iter()
        .find(|f| f.name() == s)
    }

    pub fn from_error(e: &Error) -> Self {
        match e {
            Error::DegenerateEndpoint | Error::DegeneratePoint | Error::NotCayleyRepresentable => Flag::Degenerate,
            Error::StencilCrossesTransition => Flag::StencilCrossing,
            Error::SingularPoint => Flag::Singular,
            _ => Flag::Error,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub l: usize,
    pub mu: f64,
    pub gamma: f64,
    /// One entry per requested quantity; NaN exactly when a flag explains it.
    pub values: Vec<f64>,
    /// Sorted, without duplicates; empty means `ok`.
    pub flags: Vec<Flag>,
}

impl ScanRow {
    pub fn status(&self) -> String {
        if self.flags.is_empty() {
            "ok".to_string()
        } else {
            self.flags.iter().map(|f| f.name()).collect::<Vec<_>>().join(";")
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub quantities: Vec<String>,
    pub rows: Vec<ScanRow>,
}

impl Table {
    pub fn new(quantities: Vec<String>) -> Self {
        Table { quantities, rows: Vec::new() }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.quantities.iter().position(|q| q == name)
    }
}

/// Evaluate every grid point. Work is spread over `threads` workers (all
/// cores when `None`); rows come back in grid order regardless.
pub fn run_scan(spec: &ScanSpec, threads: Option<usize>) -> AppResult<Table> {
    spec.validate()?;
    let points = spec.points();
    let eval = || points.par_iter().map(|&(l, mu, g)| evaluate_point(spec, l, mu, g)).collect::<Vec<_>>();
    let rows = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| AppError::Parameter(format!("cannot start {n} worker threads: {e}")))?
            .install(eval),
        None => eval(),
    };
    Ok(Table { quantities: spec.quantities.iter().map(|q| q.name().to_string()).collect(), rows })
}

/// All requested quantities at one point.
pub fn evaluate_point(spec: &ScanSpec, l: usize, mu: f64, gamma: f64) -> ScanRow {
    let fam = spec.family(l);
    let mut flags = Vec::new();
    let mut values = Vec::with_capacity(spec.quantities.len());
    let state = fam.ground_state(mu, gamma, spec.path);
    let mut h_cache: Option<Result<f64, Flag>> = None;
    for &q in &spec.quantities {
        let v: Result<f64, Flag> = match q {
            Quantity::FMin => family::fidelity_min(&fam, mu, gamma, spec.dmu, spec.dgamma, spec.path)
                .map_err(|e| Flag::from_error(&e)),
            Quantity::HCrit | Quantity::Log10H => {
                let h = *h_cache.get_or_insert_with(|| h_crit(spec, &fam, mu, gamma));
                if q == Quantity::HCrit { h } else { h.map(|x| x.abs().log10()) }
            }
            Quantity::DetZ => fam.det_sign(mu, gamma, spec.path).map(f64::from).map_err(|e| Flag::from_error(&e)),
            Quantity::Gap => state.as_ref().map(|s| s.gap).map_err(Flag::from_error),
            Quantity::E0 => state.as_ref().map(|s| s.e0).map_err(Flag::from_error),
            Quantity::Parity => match &state {
                Ok(s) if s.well_defined => Ok(f64::from(s.parity)),
                Ok(_) => Err(Flag::Degenerate),
                Err(e) => Err(Flag::from_error(e)),
            },
            Quantity::N | Quantity::Si => single_site(spec, &fam, mu, gamma)
                .map(|r| if q == Quantity::N { r.n } else { r.si }),
        };
        match v {
            Ok(x) => values.push(x),
            Err(f) => {
                values.push(f64::NAN);
                flags.push(f);
            }
        }
    }
    flags.sort();
    flags.dedup();
    ScanRow { l, mu, gamma, values, flags }
}

fn h_crit(spec: &ScanSpec, fam: &ModelFamily, mu: f64, gamma: f64) -> Result<f64, Flag> {
    if !spec.include_trivial_line && fam.boundary == Boundary::Cyclic && fam.r() == fam.l / 2 {
        let line = 1.0 - fam.l as f64;
        let reach = spec.mu.spacing().max(spec.fd_step.unwrap_or(0.0));
        if (mu - line).abs() <= reach {
            return Err(Flag::TrivialLine);
        }
    }
    let h = match spec.h_method {
        HMethod::Analytic => hessian_analytic(fam, mu, gamma, spec.path),
        HMethod::FiniteDifference => hessian_fd(fam, mu, gamma, spec.fd_step, spec.path),
    };
    h.map(|h| h.h_crit).map_err(|e| Flag::from_error(&e))
}

fn single_site(spec: &ScanSpec, fam: &ModelFamily, mu: f64, gamma: f64) -> Result<ent::SingleSiteRecord, Flag> {
    if fam.boundary != Boundary::Cyclic {
        return Err(Flag::NotApplicable);
    }
    match spec.path {
        EvalPath::Dense => {
            let s = fam.ground_state(mu, gamma, EvalPath::Dense).map_err(|e| Flag::from_error(&e))?;
            if !s.well_defined {
                return Err(Flag::Degenerate);
            }
            Ok(ent::SingleSiteRecord::from_tii(s.t_diagonal(0)))
        }
        _ => {
            let s = fam.spectral(mu, gamma).map_err(|e| Flag::from_error(&e))?;
            ent::single_site(&s).map_err(|e| Flag::from_error(&e))
        }
    }
}
