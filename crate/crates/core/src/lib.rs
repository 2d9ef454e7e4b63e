//! Numerical laboratory for the fourth-order prescribed Q-curvature problem
//!
//!   P u + 2 Q0 = 2 f e^{4u}
//!
//! on the flat 4-torus `[0, 2*pi)^4` with the normalized measure (total volume 1),
//! in the negative regime `Q0 < 0`. `P` is the Paneitz operator, which on the flat
//! model reduces to the bilaplacian. The crate provides:
//!
//! * a periodic spectral grid plus a radial 1-D quadrature engine ([`grid`],
//!   [`spectral`], [`radial`]),
//! * the Paneitz operator and its quadratic form ([`paneitz`]),
//! * the energy functional, its gradient and Hessian action ([`energy`]),
//! * a damped-Newton minimizer and warm-started branch continuation with
//!   extremal-eigenvalue verification ([`minimizer`]),
//! * the logarithmic-cutoff comparison functions and the annulus integrals behind
//!   the minimax upper bound ([`comparison`]),
//! * a string-method minimax optimizer and indefinite saddle refinement
//!   ([`mountainpass`]),
//! * bubble-profile diagnostics for concentration/blow-up analysis ([`blowup`]),
//! * a small binary snapshot format for fields ([`snapshot`]).
//!
//! All integrals over the torus are means: `int u dV = mean(u)`; the Euclidean
//! chart volume element `dx` relates to the normalized one by `dV = dx/(2 pi)^4`.
//! Radial integrals in the chart use the 3-sphere area `|S^3| = 2 pi^2`.

pub mod blowup;
pub mod comparison;
pub mod energy;
pub mod error;
pub mod grid;
pub mod krylov;
pub mod minimizer;
pub mod mountainpass;
pub mod paneitz;
pub mod radial;
pub mod snapshot;
pub mod spectral;

pub use error::{QcError, Result};
pub use grid::{GridSpec, ScalarField};

/// Normalizing volume of the torus chart, `(2 pi)^4`.
pub const TORUS_VOLUME: f64 = 1558.5454565440386; // (2*pi)^4

/// Area of the unit 3-sphere, `2 pi^2`.
pub const S3_AREA: f64 = 2.0 * std::f64::consts::PI * std::f64::consts::PI;
