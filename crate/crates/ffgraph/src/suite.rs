//! Randomized solver-versus-oracle cross-check.

use ffgraph_core::gsfid;
use ffgraph_core::oracle::{check_point, overlap, PointCheck};
use ffgraph_core::{Boundary, CouplingModel, ModelParams, Range, SignConvention};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::AppResult;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub sizes: (usize, usize),
    pub samples: usize,
    pub seed: u64,
    pub mu: (f64, f64),
    pub gamma: (f64, f64),
    pub sign: SignConvention,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { sizes: (2, 8), samples: 50, seed: 0, mu: (-3.0, 3.0), gamma: (-2.0, 2.0), sign: SignConvention::Flipped }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SuiteReport {
    pub points: usize,
    pub pairs: usize,
    pub skipped_degenerate: usize,
    pub skipped_parity: usize,
    pub max_fidelity_error: f64,
    pub max_energy_error: f64,
    pub parity_mismatches: usize,
    pub ansatz_points: usize,
    pub min_ansatz_overlap: f64,
    pub max_annihilation: f64,
}

impl SuiteReport {
    fn merge(mut self, o: SuiteReport) -> Self {
        self.points += o.points;
        self.pairs += o.pairs;
        self.skipped_degenerate += o.skipped_degenerate;
        self.skipped_parity += o.skipped_parity;
        self.max_fidelity_error = self.max_fidelity_error.max(o.max_fidelity_error);
        self.max_energy_error = self.max_energy_error.max(o.max_energy_error);
        self.parity_mismatches += o.parity_mismatches;
        self.ansatz_points += o.ansatz_points;
        self.min_ansatz_overlap = self.min_ansatz_overlap.min(o.min_ansatz_overlap);
        self.max_annihilation = self.max_annihilation.max(o.max_annihilation);
        self
    }

    fn empty() -> Self {
        SuiteReport { min_ansatz_overlap: 1.0, ..Default::default() }
    }
}

/// One configuration: size, boundary and range rule.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Case {
    l: usize,
    boundary: Boundary,
    range: Range,
    seed: u64,
}

/// For every `L` in the range, both boundaries and `r` in `{1, full}`:
/// `samples` random pairs of points, each compared against exact
/// diagonalization.
pub fn run_oracle_suite(opts: &SuiteOptions) -> AppResult<SuiteReport> {
    let mut cases = Vec::new();
    let mut seeder = ChaCha8Rng::seed_from_u64(opts.seed);
    for l in opts.sizes.0..=opts.sizes.1 {
        for boundary in [Boundary::FreeEnds, Boundary::Cyclic] {
            for range in [Range::Fixed(1), Range::Full] {
                cases.push(Case { l, boundary, range, seed: seeder.random() });
            }
        }
    }
    let reports = cases.par_iter().map(|c| run_case(c, opts)).collect::<AppResult<Vec<_>>>()?;
    Ok(reports.into_iter().fold(SuiteReport::empty(), SuiteReport::merge))
}

fn run_case(case: &Case, opts: &SuiteOptions) -> AppResult<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(case.seed);
    let r = case.range.resolve(case.l, case.boundary);
    let mut rep = SuiteReport::empty();
    let point = |rng: &mut ChaCha8Rng| -> AppResult<PointCheck> {
        let mu = rng.random_range(opts.mu.0..opts.mu.1);
        let gamma = rng.random_range(opts.gamma.0..opts.gamma.1);
        let m = CouplingModel::build(ModelParams::new(case.l, r, mu, gamma, case.boundary, opts.sign))?;
        Ok(check_point(&m)?)
    };
    for _ in 0..opts.samples {
        let a = point(&mut rng)?;
        let b = point(&mut rng)?;
        for c in [&a, &b] {
            rep.points += 1;
            if c.oracle.degenerate || !c.polar.well_defined {
                continue;
            }
            rep.max_energy_error = rep.max_energy_error.max((c.e0 - c.oracle.e0).abs());
            if c.polar.parity != c.oracle.parity {
                rep.parity_mismatches += 1;
            }
            if let Some(o) = c.ansatz_overlap {
                rep.ansatz_points += 1;
                rep.min_ansatz_overlap = rep.min_ansatz_overlap.min(o);
            }
            let worst = c.annihilation.iter().copied().fold(0.0, f64::max);
            rep.max_annihilation = rep.max_annihilation.max(worst);
        }
        if a.oracle.degenerate || b.oracle.degenerate || !a.polar.well_defined || !b.polar.well_defined {
            rep.skipped_degenerate += 1;
            continue;
        }
        if a.polar.parity != b.polar.parity {
            rep.skipped_parity += 1;
            continue;
        }
        let f = gsfid::fidelity(&a.polar, &b.polar)?.f;
        let o = overlap(&a.oracle.gs, &b.oracle.gs)?;
        rep.pairs += 1;
        rep.max_fidelity_error = rep.max_fidelity_error.max((f - o).abs());
    }
    Ok(rep)
}
