//! Numerical fractional calculus of variations with Riemann–Liouville
//! derivatives.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: gamma, digamma and the Grünwald–Letnikov weights.
//! * [`fracops`]: grids, sampled functions and the left/right derivatives.
//! * [`lagrangian`]: a small expression language for integrands
//!   `L(x, y, u, v)` with symbolic partial derivatives.
//! * [`variational`]: functionals and the residual fields of their
//!   Euler–Lagrange, isoperimetric, extended-section and order-stationarity
//!   conditions.
//! * [`solver`]: a direct discretise-then-optimise solver for constrained and
//!   unconstrained problems, and a search over the derivative order.
//! * [`cli`]: problem files, CSV output and the `fracvar` subcommands.
//!
//! ```
//! use fracvar::{builtin, solver};
//!
//! let problem = builtin::eq_ex(1.0).unwrap();
//! let opts = solver::SolverOptions { n: 128, ..Default::default() };
//! let sol = solver::solve_isoperimetric(&problem, &opts).unwrap();
//! assert!((sol.lambda - 2.0).abs() < 0.05);
//! ```

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod builtin;
pub mod cli;
pub mod error;
pub mod fracops;
pub mod lagrangian;
pub mod solver;
pub mod specfun;
pub mod variational;

pub use error::{Error, Result};
pub use fracops::{Grid, SampledFunction, Side};
pub use lagrangian::{parse, Environment, Expr, Var};
pub use variational::{Functional, IsoProblem, ResidualReport};
