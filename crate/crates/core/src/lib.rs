//! Dirichlet Laplacian eigenvalues of triangles.
//!
//! The crate combines three independent sources of eigenvalue information:
//!
//! * [`equilateral`]: the closed-form spectrum of the equilateral triangle,
//!   handled in exact integer arithmetic, together with lattice-point
//!   counting bounds for its counting function.
//! * [`fem`]: a conforming piecewise-linear finite element eigensolver on
//!   uniformly refined triangles, with Richardson extrapolation.
//! * [`certify`]: a posteriori eigenvalue enclosures built from explicit
//!   Helmholtz solutions (fractional-order Bessel functions on a sector).
//!
//! [`transplant`] and [`isosceles`] orchestrate these into verification
//! pipelines for the lower bounds on `lambda_n D^2` over triangles and the
//! aperture sweeps of isosceles triangles.

// `!(x > 0.0)` rejects NaN along with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certify;
pub mod equilateral;
mod error;
pub mod fem;
pub mod geometry;
pub mod isosceles;
pub mod report;
pub mod transplant;

pub use error::{Error, Result};
pub use geometry::{FanTriangle, IsoscelesAperture, Point, Triangle};
pub use report::Verdict;
