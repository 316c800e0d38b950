//! One line per acceptance criterion; exits nonzero when any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use ffgraph::core::crit::{
    self, energy_derivatives, first_order_boundary, h_analytic_cyclic, h_asymptotic, hessian_fd, hessian_polar,
    loglog_fit, t_prime_numeric, t_prime_zero, Sweep,
};
use ffgraph::core::family::EvalPath;
use ffgraph::core::oracle::fock_hamiltonian_gs;
use ffgraph::core::{ent, solver, Boundary, CouplingModel, ModelFamily, ModelParams, Range, SignConvention};
use ffgraph::format::{write_table, Format};
use ffgraph::scan::{run_scan, Axis, Quantity, ScanSpec};
use ffgraph::suite::{run_oracle_suite, SuiteOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn cyclic(l: usize) -> ModelFamily {
    ModelFamily::new(l, Range::Full, Boundary::Cyclic, SignConvention::Flipped)
}

fn free(l: usize) -> ModelFamily {
    ModelFamily::new(l, Range::Full, Boundary::FreeEnds, SignConvention::Flipped)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn oracle_suite() -> ffgraph::suite::SuiteReport {
    run_oracle_suite(&SuiteOptions::default()).expect("oracle suite runs")
}

fn oracle_fidelity(r: &ffgraph::suite::SuiteReport, secs: f64) -> Outcome {
    check(
        r.max_fidelity_error < 1e-9 && r.pairs > 0 && secs < 120.0,
        format!("{} same-parity pairs, max |F - overlap| = {:.2e}, {secs:.1} s", r.pairs, r.max_fidelity_error),
    )
}

fn oracle_energy_parity(r: &ffgraph::suite::SuiteReport) -> Outcome {
    check(
        r.max_energy_error < 1e-9 && r.parity_mismatches == 0,
        format!(
            "{} points ({} degenerate skipped), max |dE0| = {:.2e}, parity mismatches {}",
            r.points, r.skipped_degenerate, r.max_energy_error, r.parity_mismatches
        ),
    )
}

fn ansatz(r: &ffgraph::suite::SuiteReport) -> Outcome {
    check(
        r.ansatz_points > 0 && r.min_ansatz_overlap > 1.0 - 1e-10 && r.max_annihilation < 1e-9,
        format!(
            "{} points, min overlap 1 - {:.2e}, max |eta|psi>| = {:.2e}",
            r.ansatz_points,
            1.0 - r.min_ansatz_overlap,
            r.max_annihilation
        ),
    )
}

fn xy_spectrum() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for l in 4..=64usize {
        for _ in 0..3 {
            let (mu, gamma) = (rng.random_range(-3.0..3.0), rng.random_range(-2.0..2.0));
            let m = CouplingModel::build(ModelParams::new(l, 1, mu, gamma, Boundary::Cyclic, SignConvention::Unflipped))
                .map_err(|e| e.to_string())?;
            let mut got = solver::canonical_decompose(&m).lambda;
            let mut want: Vec<f64> = (0..l)
                .map(|j| {
                    let k = 2.0 * PI * j as f64 / l as f64;
                    2.0 * ((k.cos() + mu / 2.0).powi(2) + gamma * gamma * k.sin().powi(2)).sqrt()
                })
                .collect();
            got.sort_by(f64::total_cmp);
            want.sort_by(f64::total_cmp);
            for (a, b) in got.iter().zip(&want) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    check(worst < 1e-10, format!("L = 4..64, 3 points each, max |dLambda| = {worst:.2e}"))
}

fn analytic_h() -> Outcome {
    let t = Instant::now();
    let gamma = 1.5;
    let crit_err = |l: usize| -> f64 {
        let (h, _) = h_analytic_cyclic(l, 1.0, gamma).unwrap();
        let lf = l as f64 / gamma;
        rel(h, -lf * lf / 24.0)
    };
    let e1001 = crit_err(1001);
    let (h2, _) = h_analytic_cyclic(1001, 2.0, gamma).map_err(|e| e.to_string())?;
    let e_gen = rel(h2, h_asymptotic(1001, 2.0, gamma).unwrap());
    let seq: Vec<f64> = [101, 401, 1601].iter().map(|&l| crit_err(l)).collect();
    let mono = seq.windows(2).all(|w| w[1] < w[0]);
    let secs = t.elapsed().as_secs_f64();
    check(
        e1001 < 0.02 && e_gen < 0.02 && mono && secs < 10.0,
        format!(
            "mu = 1: {:.3}%; (2, 1.5): {:.2e}%; L = 101, 401, 1601: {:.3}%, {:.3}%, {:.3}%; {secs:.2} s",
            100.0 * e1001,
            100.0 * e_gen,
            100.0 * seq[0],
            100.0 * seq[1],
            100.0 * seq[2]
        ),
    )
}

fn fd_consistency() -> Outcome {
    let fam = cyclic(101);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < 20 {
        let (mu, gamma): (f64, f64) = (rng.random_range(-1.0..3.0), rng.random_range(-2.0..2.0));
        if (mu - 1.0).abs() < 0.2 || gamma.abs() < 0.2 {
            continue;
        }
        let fd = hessian_fd(&fam, mu, gamma, None, EvalPath::Auto).map_err(|e| format!("({mu}, {gamma}): {e}"))?;
        let (h, _) = h_analytic_cyclic(101, mu, gamma).map_err(|e| e.to_string())?;
        worst = worst.max(rel(fd.h_crit, h));
        n += 1;
    }
    check(worst < 1e-4, format!("20 points at L = 101, max relative error {worst:.2e}"))
}

fn free_peak_window(l: usize) -> (f64, f64) {
    (1.0 - 4.0 / l as f64, 1.0 + 2.0 / l as f64)
}

// bracketing grid for the dense free-ends search; see README
const FREE_GRID: usize = 13;

fn scaling() -> Outcome {
    let t = Instant::now();
    let gamma = 1.5;
    let cyc_sizes: Vec<usize> = (101..=1001).step_by(100).collect();
    let cyc = crit::peak_scan(
        &cyc_sizes,
        |l| (1.0 - 5.0 / l as f64, 1.0 + 5.0 / l as f64),
        crit::BRACKET_POINTS,
        crit::GOLDEN_TOL,
        &[],
        |l, mu| h_analytic_cyclic(l, mu, gamma).map(|r| r.0),
    )
    .map_err(|e| e.to_string())?;
    let lf = |s: &[usize]| s.iter().map(|&l| l as f64).collect::<Vec<_>>();
    let cyc_fit = loglog_fit(&lf(&cyc_sizes), &cyc.peak_depths);
    let off: Vec<f64> = cyc_sizes.iter().map(|&l| h_analytic_cyclic(l, 2.0, gamma).unwrap().0).collect();
    let off_fit = loglog_fit(&lf(&cyc_sizes), &off);

    let free_sizes: Vec<usize> = (100..=1000).step_by(100).collect();
    let fre = crit::peak_scan(&free_sizes, free_peak_window, FREE_GRID, crit::GOLDEN_TOL, &[], |l, mu| {
        hessian_polar(&free(l), mu, gamma).map(|h| h.h_crit)
    })
    .map_err(|e| e.to_string())?;
    let free_fit = loglog_fit(&lf(&free_sizes), &fre.peak_depths);
    let offsets: Vec<f64> = fre.peak_positions.iter().map(|m| 1.0 - m).collect();
    let inv = crit::inverse_l_fit(&free_sizes, &offsets);
    let secs = t.elapsed().as_secs_f64();
    for (l, (m, h)) in free_sizes.iter().zip(fre.peak_positions.iter().zip(&fre.peak_depths)) {
        println!("      free ends L = {l}: mu_min = {m:.9}, h_min / L^2 = {:.5}", h / (*l as f64 * *l as f64));
    }
    check(
        (cyc_fit.slope - 2.0).abs() <= 0.05
            && (free_fit.slope - 2.0).abs() <= 0.05
            && (off_fit.slope - 1.0).abs() <= 0.05
            && inv.max_relative_residual < 0.1
            && secs < 1800.0,
        format!(
            "slopes: cyclic mu = 1 {:.4}, free ends {:.4}, off-critical {:.4}; 1 - mu_min = {:.4}/L, max residual {:.2}%; {secs:.0} s",
            cyc_fit.slope,
            free_fit.slope,
            off_fit.slope,
            inv.c,
            100.0 * inv.max_relative_residual
        ),
    )
}

fn collapse() -> Outcome {
    let gamma = 1.5;
    let sizes: Vec<usize> = (101..=1001).step_by(100).collect();
    let xs = Axis::new(-20.0, 20.0, 401).values();
    let curves: Vec<Vec<(f64, f64)>> = sizes
        .iter()
        .map(|&l| crit::collapse_curve(l, &xs, |mu| h_analytic_cyclic(l, mu, gamma).map(|r| r.0)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let reference = curves.len() - 1;
    let per: Vec<String> = sizes
        .iter()
        .zip(&curves)
        .map(|(l, c)| {
            let d = crit::collapse_deviation(&[c.clone(), curves[reference].clone()], 1, 20.0);
            format!("{l}: {:.2}%", 100.0 * d)
        })
        .collect();
    let worst = crit::collapse_deviation(&curves, reference, 20.0);
    check(worst <= 0.01, format!("max sup-norm deviation {:.2}% (per L: {})", 100.0 * worst, per.join(", ")))
}

fn boundaries() -> Outcome {
    let mut worst = 0.0f64;
    let mut fail = Vec::new();
    let mut compare = |label: &str, got: Vec<f64>, mut want: Vec<f64>| {
        want.sort_by(f64::total_cmp);
        if got.len() != want.len() {
            fail.push(format!("{label}: found {got:?}, expected {want:?}"));
            return;
        }
        for (a, b) in got.iter().zip(&want) {
            worst = worst.max((a - b).abs());
        }
    };
    for &gamma in &[0.0, 0.3, 0.6, 0.9] {
        let zs = first_order_boundary(&free(2), &Sweep::along_mu(gamma, -1.7, 1.9, 361), EvalPath::Auto).unwrap();
        let r = (1.0f64 - gamma * gamma).sqrt();
        compare("L=2", zs.iter().map(|p| p.mu).collect(), vec![-r, r]);
    }
    for &mu in &[-1.5, -1.0, 0.0, 0.3, 0.5] {
        let zs = first_order_boundary(&free(3), &Sweep::along_gamma(mu, -3.1, 2.9, 601), EvalPath::Auto).unwrap();
        let g = (-(mu - 1.0f64).powi(2) * (mu + 2.0) / (3.0 * mu - 2.0)).sqrt();
        compare("L=3", zs.iter().map(|p| p.gamma).collect(), vec![-g, g]);
    }
    for &l in &[4usize, 8, 12] {
        for &gamma in &[0.4, 1.3] {
            let lo = -(l as f64) - 0.7;
            let zs = first_order_boundary(&cyclic(l), &Sweep::along_mu(gamma, lo, 3.3, 1201), EvalPath::Auto).unwrap();
            compare("cyclic", zs.iter().map(|p| p.mu).collect(), vec![1.0 - l as f64, 1.0]);
        }
    }
    if !fail.is_empty() {
        return Err(fail.join("; "));
    }
    check(worst < 1e-8, format!("L = 2, 3 free ends and L = 4, 8, 12 cyclic; max position error {worst:.2e}"))
}

fn t_prime() -> Outcome {
    let mut fd_err = 0.0f64;
    for &l in &[2usize, 3, 7, 16, 25, 40] {
        for &mu in &[1.5, 2.0, 5.0] {
            let closed = t_prime_zero(l, mu).map_err(|e| e.to_string())?;
            let num = t_prime_numeric(&free(l), mu, 1e-5).map_err(|e| e.to_string())?;
            fd_err = fd_err.max((closed.matrix - num).abs().max());
        }
    }
    let mut tr_err = 0.0f64;
    for l in 2..=60 {
        for &mu in &[1.5, 2.0, 5.0] {
            let t = t_prime_zero(l, mu).unwrap();
            tr_err = tr_err.max(rel(t.trace_sq_matrix, t.trace_sq));
        }
    }
    let two = t_prime_zero(2, 2.0).unwrap();
    check(
        fd_err < 1e-6 && tr_err < 1e-10 && (two.trace_sq + 0.5).abs() < 1e-14 && (two.trace_sq_matrix + 0.5).abs() < 1e-14,
        format!(
            "max |T'(0) - dT| = {fd_err:.2e} (L <= 40), trace identity {tr_err:.2e} relative, L = 2: {}",
            two.trace_sq
        ),
    )
}

fn entanglement() -> Outcome {
    let l = 4001;
    let fam = cyclic(l);
    let pts = [(2.0, 3.0), (0.5, 1.0), (1.5, 0.2), (3.0, 1.0), (-0.5, 2.0), (0.8, -0.7), (1.2, 1.5), (2.5, -0.4), (0.2, 0.1), (1.05, 0.5)];
    let mut tdl_err = 0.0f64;
    for &(mu, g) in &pts {
        let s = ent::single_site(&fam.spectral(mu, g).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        tdl_err = tdl_err.max((s.tii - ent::tii_tdl(mu, g).unwrap()).abs());
    }
    let si_crit = ent::single_site(&fam.spectral(1.0, 1.0).unwrap()).map_err(|e| e.to_string())?.si;
    let mut factorized = true;
    for &mu in &[1.5, 2.0, 4.0] {
        let s = ent::single_site(&fam.spectral(mu, 0.0).unwrap()).map_err(|e| e.to_string())?;
        factorized &= s.si == 0.0 && s.n == 0.0;
    }
    let mut dens_err = 0.0f64;
    for &l in &[5usize, 7] {
        for &(mu, g) in &[(2.0, 1.0), (0.3, 0.8), (-1.0, 1.4)] {
            let fam = cyclic(l);
            let o = fock_hamiltonian_gs(&fam.model(mu, g).unwrap()).map_err(|e| e.to_string())?;
            if o.degenerate {
                return Err(format!("oracle degenerate at L = {l}, ({mu}, {g})"));
            }
            let s = ent::single_site(&fam.spectral(mu, g).unwrap()).map_err(|e| e.to_string())?;
            for d in &o.densities {
                dens_err = dens_err.max((d - s.n).abs());
            }
        }
    }
    check(
        tdl_err < 1e-2 && (si_crit - 1.0).abs() < 1e-2 && factorized && dens_err < 1e-9,
        format!(
            "max |Tii - TDL| = {tdl_err:.2e} at L = 4001; Si(mu = 1) = {si_crit:.8}; gamma = 0 factorized: {factorized}; oracle density error {dens_err:.2e}"
        ),
    )
}

fn energy() -> Outcome {
    let fam = cyclic(2001);
    let target = 1.0 / (PI * 2.0);
    let mut errs = Vec::new();
    for &g in &[0.05, -0.05] {
        let d = energy_derivatives(&fam, 3.0, g, 1e-4, EvalPath::Auto).map_err(|e| e.to_string())?;
        errs.push((d.d2_mugamma, rel(d.d2_mugamma, g.signum() * target)));
    }
    let sizes = [101usize, 201, 401, 801];
    let mut ys = Vec::new();
    for &l in &sizes {
        let d = energy_derivatives(&cyclic(l), 1.0, 1.5, 1e-4, EvalPath::Auto).map_err(|e| e.to_string())?;
        ys.push(d.d2_mumu);
    }
    let xs: Vec<f64> = sizes.iter().map(|&l| (l as f64).ln()).collect();
    let fit = crit::linear_fit(&xs, &ys);
    check(
        errs.iter().all(|e| e.1 < 0.05) && fit.r2 > 0.99,
        format!(
            "d2E/dmu dgamma = {:+.5} / {:+.5} vs +/-{target:.5} ({:.2}%, {:.2}%); d2E/dmu2 = {ys:.4?}, R^2 vs ln L = {:.6}",
            errs[0].0,
            errs[1].0,
            100.0 * errs[0].1,
            100.0 * errs[1].1,
            fit.r2
        ),
    )
}

fn determinism_fast_path() -> Outcome {
    let all = vec![
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
    let csv = |spec: &ScanSpec, threads| {
        let mut buf = Vec::new();
        write_table(&run_scan(spec, Some(threads)).unwrap(), Format::Csv, &mut buf).unwrap();
        buf
    };
    let spec = ScanSpec::new(vec![101, 64], Boundary::Cyclic, Axis::new(-1.0, 3.0, 21), Axis::new(-2.0, 2.0, 21), all.clone());
    let identical = csv(&spec, 1) == csv(&spec, 4) && csv(&spec, 2) == csv(&spec, 7);
    let mut worst = 0.0f64;
    let mut flag_mismatch = 0;
    for &l in &[8usize, 33, 128, 256] {
        let mut spec = ScanSpec::new(vec![l], Boundary::Cyclic, Axis::new(-1.0, 3.0, 9), Axis::new(-2.0, 2.0, 5), all.clone());
        spec.path = EvalPath::Circulant;
        let a = run_scan(&spec, None).unwrap();
        spec.path = EvalPath::Dense;
        let b = run_scan(&spec, None).unwrap();
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            if ra.flags != rb.flags {
                flag_mismatch += 1;
            }
            for (x, y) in ra.values.iter().zip(&rb.values) {
                if x.is_finite() && y.is_finite() {
                    worst = worst.max((x - y).abs() / x.abs().max(1.0));
                } else if x.is_nan() != y.is_nan() {
                    flag_mismatch += 1;
                }
            }
        }
    }
    check(
        identical && worst < 1e-9 && flag_mismatch == 0,
        format!("CSV identical over 1, 2, 4, 7 threads: {identical}; circulant vs dense max deviation {worst:.2e}, status mismatches {flag_mismatch}"),
    )
}

fn main() -> ExitCode {
    let t = Instant::now();
    let suite = oracle_suite();
    let suite_secs = t.elapsed().as_secs_f64();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("oracle fidelity equivalence", Box::new(move || oracle_fidelity(&suite, suite_secs))),
        ("oracle energy and parity", Box::new(move || oracle_energy_parity(&suite))),
        ("coherent-state ansatz", Box::new(move || ansatz(&suite))),
        ("XY chain spectrum", Box::new(xy_spectrum)),
        ("analytic h_crit", Box::new(analytic_h)),
        ("finite-difference consistency", Box::new(fd_consistency)),
        ("scaling exponents", Box::new(scaling)),
        ("data collapse", Box::new(collapse)),
        ("first-order boundaries", Box::new(boundaries)),
        ("gamma derivative of T at gamma = 0", Box::new(t_prime)),
        ("single-site entanglement", Box::new(entanglement)),
        ("energy derivatives", Box::new(energy)),
        ("determinism and fast path", Box::new(determinism_fast_path)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = f();
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(d) => println!("PASS {:>2} {name}: {d} [{secs:.1} s]", i + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {d} [{secs:.1} s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
