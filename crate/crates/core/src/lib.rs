//! Verification lab for a catalog of affine-homogeneous strictly pseudoconvex
//! hypersurfaces of C^3 and the matrix Lie algebras of affine vector fields
//! attached to them.
//!
//! The crate is organized around the data it checks:
//!
//! * [`field`] — arithmetic of affine vector fields as 4x4 complex matrices
//!   with zero last row: brackets, real spans, conjugation, evaluation.
//! * [`catalog`] — the bundled algebra catalog: the template basis, the nine
//!   five-dimensional families (ids `3.1`..`3.9`), the seven-dimensional
//!   algebra `2.16`, the reduced bases (`5.2`, `5.4`, ...), and the named
//!   similarity transforms.
//! * [`surfaces`] — the hypersurface catalog (`2.1`..`2.10`, `2.15`, `5.12`,
//!   `5.21`, `cubic`, `5.25`) with analytic defining functions, Wirtinger
//!   jets, domains, base points and samplers.
//! * [`geometry`] — Levi form and signature, Takagi factorization, and the
//!   `(eps1, eps2)` affine type invariant.
//! * [`verify`] — campaign-level checks: tangency, transitivity, similarity
//!   reductions, ODE residuals, parameter fitting, and the quadratic
//!   closure system with a Gauss-Newton local solver.
//! * [`campaign`] — the batch runner producing deterministic, byte-stable
//!   reports consumed by the `verify` CLI.
//!
//! Core math is generic over the scalar via [`scalar::Scalar`]; the aliases
//! below fix `f64` for everyday use.

pub mod campaign;
pub mod catalog;
pub mod error;
pub mod field;
pub mod geometry;
pub mod linalg;
pub mod rng;
pub mod scalar;
pub mod surfaces;
pub mod verify;

pub use error::Error;
pub use scalar::Scalar;

/// Complex scalar used by the concrete aliases.
pub type C64 = num_complex::Complex<f64>;
/// Affine vector field over `f64`.
pub type Field = field::AffineField<f64>;
/// Ordered basis of affine vector fields over `f64`.
pub type Basis = field::FieldBasis<f64>;
/// Catalog surface over `f64`.
pub type Surf = surfaces::Surface<f64>;
/// Point of C^3 over `f64`.
pub type Pt = surfaces::Point<f64>;




