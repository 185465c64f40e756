//! Second-kind Fredholm integral equations with complex kernels, solved via
//! the Fredholm determinant and resolvent, by Nyström discretization, and by
//! Neumann iteration; plus the Coulomb/Podolsky scattering layer built on
//! them.
//!
//! ```
//! use fredholm_core::{fredholm::*, quadrature::Interval};
//! use num_complex::Complex64;
//!
//! // u(x) = x + ∫_0^1 x t u(t) dt  has the solution u(x) = 1.5 x
//! let kernel = KernelSpec::separable(Interval::new(0.0, 1.0)?, |x| x.into(), |t| t.into());
//! let u = solve_resolvent(&kernel, |x| x.into(), Complex64::new(1.0, 0.0), &[0.5], &SolverConfig::default())?;
//! assert!((u.values()[0].re - 0.75).abs() < 1e-12);
//! # Ok::<(), fredholm_core::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fredholm;
pub mod linalg;
pub mod quadrature;
pub mod scattering;
pub mod selftest;
pub mod special;

pub use error::{Error, Result};
pub use fredholm::{
    fredholm_determinant, fredholm_first_minor, resolvent, solve_neumann, solve_nystrom,
    solve_resolvent, FredholmSystem, KernelSpec, NodalSolution, RuleKind, SampledFunction,
    SeriesEstimate, SolverConfig,
};
pub use num_complex::Complex64;
pub use quadrature::{Interval, QuadratureRule};
pub use scattering::{PhysicalParams, PotentialSpec, ReducedKernelChoice, WaveKind};
