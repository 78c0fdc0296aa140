//! Solvable dynamics of the zeros of complex monic polynomials that keep one
//! double root.
//!
//! A monic polynomial of degree `N + 1` with one double zero `x_1` and simple
//! zeros `x_2 ..= x_N` ties the motion of its zeros to the motion of its
//! coefficients `y_1 ..= y_{N+1}`. When `N` of the coefficients follow
//! closed-form solvable second-order laws (the remaining one is pinned by the
//! double-root constraint), the zeros obey nonlinear Newtonian systems that
//! can be solved by algebraic operations:
//!
//! 1. map the initial zero data to coefficient data,
//! 2. evolve the coefficients in closed form,
//! 3. recover the double zero for all time from a polynomial constraint by
//!    continuity tracking,
//! 4. reconstruct the left-out coefficient,
//! 5. recover all zeros as polynomial roots with consistent labels.
//!
//! The crate implements that pipeline ([`solver`]), the explicit nonlinear
//! systems and an independent adaptive Runge-Kutta integrator for them
//! ([`dynamics`], [`integrate`]), period / isochrony analysis ([`analysis`]),
//! and a catalog of ready-made example models ([`catalog`]). The two
//! pipelines are mutually independent, so their agreement is a working
//! estimate of the numerical precision of both.

pub mod analysis;
pub mod catalog;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod export;
pub mod integrate;
pub mod laws;
pub mod poly;
pub mod solver;
pub mod trajectory;

pub use error::{Error, Result};
pub use laws::{CoefficientLaw, LawKind, ModelSpec, Rate};
pub use poly::{
    coefficient_velocities_from_zeros, coefficients_from_zeros, identify_double_root, C64,
    MonicPolynomial, RootSet, ZeroState,
};
pub use trajectory::{Provenance, SampleDiagnostics, TrackedTrajectory};
