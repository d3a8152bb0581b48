//! quadft: quadratic-phase Fourier-type transforms and an empirical
//! verification harness for their norm inequalities.
//!
//! The library implements five integral operators on sampled functions of
//! one variable — the unitary Fourier transform, the windowed
//! quadratic-phase transform `T_λ`, two linear-in-x phase families
//! `F₁`/`F₂`, the quadratic Hartley-type operator `H_Q`, and the
//! oscillatory operator with homogeneous polynomial phase — together with
//! the machinery needed to check the Hausdorff–Young-type bounds those
//! operators satisfy: grid L_p norms, Riesz–Thorin interpolation constants,
//! the sharp (Babenko–Beckner) Fourier constant, discretized kernel
//! matrices, and operator-norm estimation by power iteration.
//!
//! Every transform has a direct-quadrature reference path; fast chirp +
//! Fourier-sum paths exist where the kernel factors, and agree with the
//! reference to rounding error. The `verify` module turns the inequalities
//! into structured pass/fail reports; the `cli` module drives batch runs.
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod norms;
pub mod phases;
pub mod sampling;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
