use alloc::vec::Vec;

use crate::family::{EvalPath, ModelFamily};
use crate::{Error, Result};

/// Bisection stops once the bracket is narrower than this.
pub const BOUNDARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Mu,
    Gamma,
}

/// One-dimensional sweep: `axis` runs over `count` evenly spaced values in
/// `[start, end]` while the other parameter stays at `fixed`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub axis: SweepAxis,
    pub fixed: f64,
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl Sweep {
    pub fn along_mu(gamma: f64, start: f64, end: f64, count: usize) -> Self {
        Sweep { axis: SweepAxis::Mu, fixed: gamma, start, end, count }
    }

    pub fn along_gamma(mu: f64, start: f64, end: f64, count: usize) -> Self {
        Sweep { axis: SweepAxis::Gamma, fixed: mu, start, end, count }
    }

    pub fn point(&self, x: f64) -> (f64, f64) {
        match self.axis {
            SweepAxis::Mu => (x, self.fixed),
            SweepAxis::Gamma => (self.fixed, x),
        }
    }

    fn value(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            return self.end;
        }
        self.start + (self.end - self.start) * i as f64 / (self.count - 1) as f64
    }
}

/// A zero of `det Z` on the sweep, with the parity on either side
/// (`before` is the side of smaller swept parameter).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub mu: f64,
    pub gamma: f64,
    pub parity_before: i8,
    pub parity_after: i8,
}

/// Sign changes of `det Z` along a sweep, refined by bisection.
///
/// A grid value where `det Z` is exactly zero is reported as is.
pub fn first_order_boundary(
    family: &ModelFamily,
    sweep: &Sweep,
    path: EvalPath,
) -> Result<Vec<BoundaryPoint>> {
    if sweep.count < 2 || !(sweep.end > sweep.start) {
        return Err(Error::Parameter("a sweep needs count >= 2 and start < end"));
    }
    let sign = |x: f64| -> Result<i8> {
        let (mu, gamma) = sweep.point(x);
        family.det_sign(mu, gamma, path)
    };
    let xs: Vec<f64> = (0..sweep.count).map(|i| sweep.value(i)).collect();
    let signs = xs.iter().map(|&x| sign(x)).collect::<Result<Vec<i8>>>()?;
    let mut out = Vec::new();
    let mut push = |x: f64, before: i8, after: i8| {
        let (mu, gamma) = sweep.point(x);
        out.push(BoundaryPoint { mu, gamma, parity_before: before, parity_after: after });
    };
    for i in 0..xs.len() {
        if signs[i] == 0 {
            let before = if i > 0 { signs[i - 1] } else { 0 };
            let after = if i + 1 < xs.len() { signs[i + 1] } else { 0 };
            push(xs[i], before, after);
            continue;
        }
        if i + 1 < xs.len() && signs[i + 1] != 0 && signs[i + 1] != signs[i] {
            let (mut a, mut b) = (xs[i], xs[i + 1]);
            let sa = signs[i];
            while b - a > BOUNDARY_TOL {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                match sign(m)? {
                    0 => {
                        a = m;
                        b = m;
                    }
                    s if s == sa => a = m,
                    _ => b = m,
                }
            }
            push(0.5 * (a + b), sa, signs[i + 1]);
        }
    }
    Ok(out)
}
