//! Curvature computations for a family of complete Kähler metrics built
//! from a single radial potential: the metric on complex space minus the
//! origin, the hyperbolic metric of the unit ball, and their combination
//! on the ball minus a coordinate subspace.
//!
//! The crate is organized as:
//!
//! * [`radial`] — the radial coefficient u, its antiderivative-based
//!   companion v, the potential derivatives, and the sign function
//!   eta = t^2 u^2 - v with its threshold radius.
//! * [`geometry`] — points, tangent vectors, the metrics themselves, the
//!   diagonal holomorphic vector field, its flow, and samplers for the
//!   locus where the field is orthogonal to the radial direction.
//! * [`profiles`] — one-variable leafwise-curvature profiles: the
//!   standard-field profile on punctured space, its slice analogue on the
//!   ball complement, and the one-dimensional punctured-plane profile.
//! * [`curvature`] — leaf densities and gradients, closed-form leafwise
//!   curvature on the orthogonality locus, a finite-difference Gaussian
//!   curvature oracle, the curvature tensor with holomorphic sectional
//!   curvature, and the extremal-direction search.
//! * [`claims`] — the registry of twelve audited claims with pass/fail
//!   results.
//! * [`tables`] — row builders for profile tables, extremal scans, and
//!   leaf traces, shared by the command-line front end.
//!
//! Numerical work is deterministic: quadrature is adaptive with fixed
//! order, random sampling is seeded, and parallel evaluation (feature
//! `parallel`, on by default) never changes results relative to the
//! sequential fallback.

pub mod claims;
pub mod curvature;
pub mod error;
pub mod geometry;
pub mod par;
pub mod profiles;
pub mod quad;
pub mod radial;
pub mod rootfind;
pub mod tables;

pub use error::{Error, Result};
