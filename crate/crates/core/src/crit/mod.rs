//! Criticality measure `h_crit`, the minimum eigenvalue of the fidelity
//! Hessian at zero displacement, and the diagnostics built around it.

mod analytic;
mod boundary;
mod energy;
mod hessian;
mod scaling;
mod tprime;

pub use analytic::{
    h_analytic_cyclic, h_asymptotic, hessian_analytic, hessian_analytic_cyclic, hessian_polar,
    hessian_spectral, Regime,
};
pub use boundary::{first_order_boundary, BoundaryPoint, Sweep, SweepAxis, BOUNDARY_TOL};
pub use energy::{energy_derivatives, EnergyDerivatives};
pub use hessian::{
    default_step, hessian_fd, hessian_fd_richardson, hessian_from_stencil, HessianAtZero,
};
pub use scaling::{
    collapse_curve, collapse_deviation, inverse_l_fit, linear_fit, locate_minimum, loglog_fit,
    peak_scan, InverseLFit, LinearFit, ScalingSeries, BRACKET_POINTS, GOLDEN_TOL,
};
pub use tprime::{h_gamma_zero_tdl, t_prime_numeric, t_prime_zero, trace_sq_closed, TPrimeZero};
