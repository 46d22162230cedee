//! Finite-difference Gaussian-curvature oracle.
//!
//! For a positive density h on a neighbourhood of 0 in the leaf-time
//! plane, the Gaussian curvature of h |dT|^2 is
//! kappa = -2 h^{-1} ddbar log h, and ddbar is a quarter of the real
//! Laplacian. The oracle approximates the Laplacian of log h by the
//! 5-point stencil at two step sizes {s, s/2} and Richardson-extrapolates,
//! leaving an O(s^4) truncation error.
//!
//! `kappa_fd` applies this to the leaf density of a metric; the nominal
//! step is divided by the leaf speed |X(z)| so the stencil size is
//! intrinsic, and the density is evaluated at a tolerance two orders
//! tighter than the step-induced noise floor requires.

use crate::error::{Error, Result};
use crate::geometry::{field_eval, norm_sq, Cx, DiagonalField, MetricKind};

use super::leafwise::leaf_density_tol;

/// Default nominal finite-difference step (before leaf-speed scaling).
pub const DEFAULT_FD_STEP: f64 = 1e-3;

/// Quadrature tolerance used inside the stencil; second differences of
/// log h divide absolute density noise by s^2, so the density must be
/// much tighter than the curvature target.
const STENCIL_QUAD_TOL: f64 = 1e-12;

/// Gaussian curvature at T = 0 of the density `h` by Richardson-
/// extrapolated 5-point Laplacian of log h.
pub fn gaussian_curvature_fd<F: Fn(Cx) -> Result<f64>>(h: F, step: f64) -> Result<f64> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::domain(format!("step must be positive, got {step}")));
    }
    let h0 = h(Cx::new(0.0, 0.0))?;
    if !(h0.is_finite() && h0 > 0.0) {
        return Err(Error::Numeric(format!("density at the base point is not positive: {h0}")));
    }
    let log_h0 = h0.ln();
    let lap = |s: f64| -> Result<f64> {
        let mut acc = -4.0 * log_h0;
        for p in [
            Cx::new(s, 0.0),
            Cx::new(-s, 0.0),
            Cx::new(0.0, s),
            Cx::new(0.0, -s),
        ] {
            let val = h(p)?;
            if !(val.is_finite() && val > 0.0) {
                return Err(Error::Numeric(format!("density is not positive on the stencil: {val}")));
            }
            acc += val.ln();
        }
        Ok(acc / (s * s))
    };
    let coarse = lap(step)?;
    let fine = lap(0.5 * step)?;
    let laplacian = (4.0 * fine - coarse) / 3.0;
    // ddbar = Laplacian / 4, and kappa = -2 h^{-1} ddbar log h.
    Ok(-0.5 * laplacian / h0)
}

/// Finite-difference Gaussian curvature of the leaf through z at T = 0.
/// `step` is the nominal stencil size; it is scaled by 1/|X(z)| so the
/// stencil covers a comparable metric neighbourhood at every base point.
pub fn kappa_fd(kind: &MetricKind, field: &DiagonalField, z: &[Cx], step: f64) -> Result<f64> {
    let base = match kind {
        MetricKind::BallComplement { n_base, .. } => &z[..(*n_base).min(z.len())],
        _ => z,
    };
    let (x, _) = field_eval(field, base)?;
    let speed = norm_sq(&x).sqrt();
    if speed <= 0.0 {
        return Err(Error::domain("vector field vanishes at the base point"));
    }
    let scaled = step / speed;
    gaussian_curvature_fd(
        |t_time| leaf_density_tol(kind, field, z, t_time, STENCIL_QUAD_TOL),
        scaled,
    )
}
