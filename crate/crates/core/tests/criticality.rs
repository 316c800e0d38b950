use ffgraph_core::crit::*;
use ffgraph_core::*;

fn free(l: usize) -> ModelFamily {
    ModelFamily::fully_connected(l, Boundary::FreeEnds)
}

fn cyclic(l: usize) -> ModelFamily {
    ModelFamily::fully_connected(l, Boundary::Cyclic)
}

#[test]
fn finite_differences_match_the_closed_form_off_the_critical_lines() {
    let fam = cyclic(101);
    let h_fd = hessian_fd(&fam, 1.5, 1.0, Some(1e-4), EvalPath::Auto).unwrap();
    let (h, _) = h_analytic_cyclic(101, 1.5, 1.0).unwrap();
    assert!((h_fd.h_crit - h).abs() < 1e-4 * h.abs());
}

#[test]
fn generic_point_follows_the_asymptotic_form() {
    let fam = cyclic(1001);
    let h = hessian_fd(&fam, 2.0, 1.5, None, EvalPath::Auto).unwrap().h_crit;
    let a = h_asymptotic(1001, 2.0, 1.5).unwrap();
    assert!((h - a).abs() < 1e-2 * a.abs());
}

#[test]
fn ratio_to_the_asymptotic_form_approaches_one() {
    let errs: Vec<f64> = [101, 401, 1601]
        .iter()
        .map(|&l| {
            let (h, _) = h_analytic_cyclic(l, 1.0, 1.5).unwrap();
            (h / h_asymptotic(l, 1.0, 1.5).unwrap() - 1.0).abs()
        })
        .collect();
    assert!(errs[0] > errs[1] && errs[1] > errs[2]);
}

#[test]
fn singular_point_is_rejected() {
    assert_eq!(h_analytic_cyclic(11, 1.0, 0.0), Err(Error::SingularPoint));
}

#[test]
fn two_site_boundary_is_the_unit_circle() {
    let fam = ModelFamily::new(2, Range::Full, Boundary::FreeEnds, SignConvention::Flipped);
    for gamma in [0.0, 0.3, 0.9] {
        let pts = first_order_boundary(&fam, &Sweep::along_mu(gamma, -1.5, 1.5, 31), EvalPath::Dense).unwrap();
        let want = (1.0 - gamma * gamma).sqrt();
        assert_eq!(pts.len(), 2);
        assert!((pts[0].mu + want).abs() < 1e-8);
        assert!((pts[1].mu - want).abs() < 1e-8);
    }
}

#[test]
fn three_site_boundary() {
    let fam = free(3);
    for mu in [-1.5, -0.5, 0.3] {
        let pts = first_order_boundary(&fam, &Sweep::along_gamma(mu, 0.01, 4.0, 81), EvalPath::Dense).unwrap();
        let want = (-(mu - 1.0) * (mu - 1.0) * (mu + 2.0) / (3.0 * mu - 2.0)).sqrt();
        assert_eq!(pts.len(), 1, "{mu} {pts:?}");
        assert!((pts[0].gamma - want).abs() < 1e-8);
    }
}

#[test]
fn even_cyclic_lines() {
    for l in [4usize, 10] {
        let pts = first_order_boundary(&cyclic(l), &Sweep::along_mu(0.8, -15.3, 4.7, 201), EvalPath::Auto).unwrap();
        let mus: Vec<f64> = pts.iter().map(|p| p.mu).collect();
        assert_eq!(mus.len(), 2);
        assert!((mus[0] - (1.0 - l as f64)).abs() < 1e-8);
        assert!((mus[1] - 1.0).abs() < 1e-8);
        let dense = first_order_boundary(&cyclic(l), &Sweep::along_mu(0.8, -15.3, 4.7, 201), EvalPath::Dense).unwrap();
        assert_eq!(dense.len(), 2);
    }
}

#[test]
fn closed_form_trace_matches_the_matrix() {
    for l in 2..=60 {
        for mu in [1.5, 2.0, 5.0] {
            let t = t_prime_zero(l, mu).unwrap();
            assert!((t.trace_sq - t.trace_sq_matrix).abs() < 1e-10 * t.trace_sq.abs());
        }
    }
}

#[test]
fn closed_form_derivative_matches_the_solver() {
    let t = t_prime_zero(40, 2.0).unwrap();
    let n = t_prime_numeric(&free(40), 2.0, 1e-5).unwrap();
    assert!((t.matrix - n).abs().max() < 1e-6);
}

#[test]
fn gamma_zero_hessian_is_the_derivative_trace() {
    let fam = free(30);
    let t = t_prime_zero(30, 2.5).unwrap();
    let h = hessian_polar(&fam, 2.5, 0.0).unwrap();
    assert!((h.h_crit - t.h_crit).abs() < 1e-9 * t.h_crit.abs());
    let big = t_prime_zero(4000, 2.5).unwrap();
    assert!((big.h_crit / h_gamma_zero_tdl(4000, 2.5) - 1.0).abs() < 5e-3);
}

#[test]
fn cyclic_peak_sits_at_mu_one() {
    let series = peak_scan(
        &[51, 101],
        |l| (1.0 - 5.0 / l as f64, 1.0 + 5.0 / l as f64 + 0.01 / l as f64),
        41,
        GOLDEN_TOL,
        &[-2.0, 0.0, 2.0],
        |l, mu| Ok(h_analytic_cyclic(l, mu, 1.5)?.0),
    )
    .unwrap();
    for x in &series.peak_positions {
        assert!((x - 1.0).abs() < 1e-6);
    }
    assert_eq!(series.collapsed.len(), 2);
}

#[test]
fn energy_is_flat_on_the_factorized_line() {
    let d = energy_derivatives(&cyclic(201), 3.0, 0.0, 1e-3, EvalPath::Auto).unwrap();
    assert_eq!(d.d2_mumu, 0.0);
}

#[test]
fn energy_mixed_derivative_changes_sign_across_gamma_zero() {
    let fam = cyclic(801);
    let up = energy_derivatives(&fam, 3.0, 0.05, 1e-4, EvalPath::Auto).unwrap().d2_mugamma;
    let down = energy_derivatives(&fam, 3.0, -0.05, 1e-4, EvalPath::Auto).unwrap().d2_mugamma;
    assert!(up > 0.0 && down < 0.0);
    assert!((up + down).abs() < 1e-6);
}
