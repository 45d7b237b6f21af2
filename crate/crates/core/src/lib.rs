//! Exact CR invariants of Sasakian η-Einstein manifolds.
//!
//! On a Sasakian η-Einstein manifold the CR invariant powers of the
//! sub-Laplacian factor into first-order shifts of `Δ_b` and the Reeb
//! field, so on each joint eigenspace they reduce to products of rationals.
//! This crate evaluates those products exactly, classifies the sign of the
//! second variation of the total Q′-curvature mode by mode, and computes the
//! total Q′-curvature of a catalog of explicit examples as exact multiples
//! of powers of π over ℚ(√d).
//!
//! Modules:
//! - [`exact`]: rationals, quadratic surds and π-graded scalars
//! - [`spectral`]: `L_μ`, `P_{w,w′}` and `P′` eigenvalues, kernel tests
//! - [`variation`]: `P_{1,1}` classification, scans, counterexamples
//! - [`catalog`]: Q′-curvature of spheres, `Y^{p,q}`, projective links
//! - [`sphere`]: bigraded spherical-harmonic fixtures on `S^{2n+1}`
//! - [`cli`]: the `crinv` command-line front end

pub mod catalog;
pub mod cli;
pub mod error;
pub mod exact;
pub mod spectral;
pub mod sphere;
pub mod variation;

pub use error::{Error, Result};
pub use exact::{ExactScalar, QuadRational, Rational};
pub use spectral::{Geometry, Mode, Weight};
