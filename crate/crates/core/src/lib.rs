//! Exact-arithmetic toolkit for Fubini-type polynomial families and the
//! sequence transforms they generate.
//!
//! Everything runs over arbitrary-precision rationals; no floating point
//! enters any exact pipeline. The crate is organized as:
//!
//! - [`kernel`]: rational scalars, sparse bivariate polynomials, binomials;
//! - [`stirling`]: the four Stirling-type triangles (signed first kind,
//!   second kind, r-Stirling, degenerate);
//! - [`polyfam`]: Fubini, two-variable Fubini, Bell, Eulerian,
//!   Frobenius-Euler, and degenerate Fubini families;
//! - [`transform`]: the transform grid linking an initial row to a final
//!   column, its closed forms, the classical Fubini transform pair, and
//!   Bernoulli generation;
//! - [`fps`]: truncated formal power series used as an independent
//!   generating-function oracle;
//! - [`stochastic`]: geometric-moment representations, exact partial sums
//!   with rigorous tail bounds, and seeded Monte Carlo;
//! - [`verify`]: a registry of named identity checks with machine-readable
//!   reports.

pub mod kernel;

pub mod fps;
pub mod polyfam;
pub mod stirling;
pub mod stochastic;
pub mod transform;
pub mod verify;

mod error;

pub use error::Error;
pub use kernel::{binomial, fmt_rat, parse_rat, rat, rat_i, BiPoly, Rat, Ring};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
