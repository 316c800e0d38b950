use alloc::vec::Vec;
use num_traits::Float;

use crate::{Error, Result};

/// Default number of bracketing grid points.
pub const BRACKET_POINTS: usize = 201;
/// Default golden-section tolerance on the position.
pub const GOLDEN_TOL: f64 = 1e-8;

/// Minimum of `f` on `[lo, hi]`: grid bracketing, then golden section.
///
/// Grid points where `f` fails are skipped. Ties go to the smaller abscissa.
/// A minimum on the window edge is a `WindowError`.
pub fn locate_minimum(
    mut f: impl FnMut(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    grid: usize,
    tol: f64,
) -> Result<(f64, f64)> {
    if grid < 3 || !(hi > lo) {
        return Err(Error::Parameter("bracketing needs at least 3 points on a non-empty window"));
    }
    let step = (hi - lo) / (grid - 1) as f64;
    let xs: Vec<f64> = (0..grid).map(|i| if i + 1 == grid { hi } else { lo + step * i as f64 }).collect();
    let mut best: Option<(usize, f64)> = None;
    for (i, &x) in xs.iter().enumerate() {
        if let Ok(v) = f(x) {
            if v.is_finite() && best.map_or(true, |(_, b)| v < b) {
                best = Some((i, v));
            }
        }
    }
    let (i, _) = best.ok_or(Error::WindowError)?;
    if i == 0 || i + 1 == grid {
        return Err(Error::WindowError);
    }
    golden(&mut f, xs[i - 1], xs[i + 1], tol)
}

fn golden(f: &mut impl FnMut(f64) -> Result<f64>, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)> {
    let r = 0.5 * (5.0f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc <= fd { (c, fc) } else { (d, fd) })
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScalingSeries {
    pub sizes: Vec<usize>,
    pub peak_positions: Vec<f64>,
    pub peak_depths: Vec<f64>,
    /// Per size, points `((mu - 1) L, h_crit / L^2)`.
    pub collapsed: Vec<Vec<(f64, f64)>>,
}

/// Peak of `h(L, mu)` in `window(L)` for each size, plus collapsed curves
/// sampled at the rescaled abscissae `collapse_x`.
pub fn peak_scan(
    sizes: &[usize],
    window: impl Fn(usize) -> (f64, f64),
    grid: usize,
    tol: f64,
    collapse_x: &[f64],
    mut h: impl FnMut(usize, f64) -> Result<f64>,
) -> Result<ScalingSeries> {
    if sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Parameter("sizes must be strictly increasing"));
    }
    let mut out = ScalingSeries::default();
    for &l in sizes {
        let (lo, hi) = window(l);
        let (x, v) = locate_minimum(|mu| h(l, mu), lo, hi, grid, tol)?;
        out.sizes.push(l);
        out.peak_positions.push(x);
        out.peak_depths.push(v);
        out.collapsed.push(collapse_curve(l, collapse_x, |mu| h(l, mu))?);
    }
    Ok(out)
}

/// `((mu - 1) L, h(mu) / L^2)` at `mu = 1 + x / L`.
pub fn collapse_curve(
    l: usize,
    xs: &[f64],
    mut h: impl FnMut(f64) -> Result<f64>,
) -> Result<Vec<(f64, f64)>> {
    let lf = l as f64;
    xs.iter().map(|&x| Ok((x, h(1.0 + x / lf)? / (lf * lf)))).collect()
}

/// Largest sup-norm distance of a curve from `curves[reference]`, relative to
/// the sup norm of the reference, over `|x| <= xmax`.
pub fn collapse_deviation(curves: &[Vec<(f64, f64)>], reference: usize, xmax: f64) -> f64 {
    let r = &curves[reference];
    let norm = r.iter().filter(|p| p.0.abs() <= xmax).fold(0.0f64, |m, p| m.max(p.1.abs()));
    let mut worst = 0.0f64;
    for c in curves {
        for (p, q) in c.iter().zip(r) {
            if p.0.abs() <= xmax {
                worst = worst.max((p.1 - q.1).abs());
            }
        }
    }
    worst / norm
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Ordinary least squares `y = slope x + intercept`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> LinearFit {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    LinearFit { slope, intercept: my - slope * mx, r2 }
}

/// Fit of `ln|y|` against `ln x`.
pub fn loglog_fit(xs: &[f64], ys: &[f64]) -> LinearFit {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.abs().ln()).collect();
    linear_fit(&lx, &ly)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseLFit {
    pub c: f64,
    /// `max |y_L - c/L| / (c/L)`
    pub max_relative_residual: f64,
}

/// Least-squares fit `y = c / L`.
pub fn inverse_l_fit(sizes: &[usize], ys: &[f64]) -> InverseLFit {
    let (mut num, mut den) = (0.0, 0.0);
    for (&l, &y) in sizes.iter().zip(ys) {
        let u = 1.0 / l as f64;
        num += u * y;
        den += u * u;
    }
    let c = num / den;
    let max_relative_residual = sizes
        .iter()
        .zip(ys)
        .map(|(&l, &y)| {
            let p = c / l as f64;
            ((y - p) / p).abs()
        })
        .fold(0.0, f64::max);
    InverseLFit { c, max_relative_residual }
}
