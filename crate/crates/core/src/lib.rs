//! Ground-state fidelity and criticality for quadratic fermionic Hamiltonians.
//!
//! The crate works entirely at the level of the coupling matrices: a model is
//! given by a hopping matrix `A` (symmetric) and a pairing matrix `B`
//! (antisymmetric), and everything about the ground state follows from
//! `Z = A - B`, its singular value decomposition and its orthogonal polar
//! factor `T`.
//!
//! Modules:
//!
//! * [`model`]: variable-range coupling matrices (free ends and cyclic).
//! * [`solver`]: canonical decomposition, polar factor, energies and the
//!   circulant fast path.
//! * [`gsfid`]: Cayley matrix, pair angles and ground-state fidelity.
//! * [`family`]: a two-parameter family `Z(mu, gamma)` with dense and
//!   circulant evaluation paths.
//! * [`crit`]: fidelity Hessian, analytic and asymptotic criticality, phase
//!   boundaries, finite-size scaling.
//! * [`ent`]: single-site entanglement.
//! * [`oracle`]: brute-force Fock-space reference.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// Float math is inherent in `core` on recent toolchains; `num_traits::Float`
// supplies it on older ones.
#![allow(unused_imports)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod crit;
pub mod ent;
mod error;
pub mod family;
pub mod gsfid;
mod linalg;
pub mod model;
pub mod oracle;
pub mod solver;
mod util;

pub use error::{Error, Result};
pub use family::{EvalPath, GroundState, ModelFamily};
pub use gsfid::FidelityValue;
pub use model::{Boundary, CouplingModel, ModelParams, Range, SignConvention};
pub use solver::{CanonicalSpectrum, PolarForm, SpectralList};

/// Dense real matrix used throughout the crate.
pub type Matrix = nalgebra::DMatrix<f64>;
