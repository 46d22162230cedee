//! Curvature three ways.
//!
//! * `leafwise` — the pullback density of a metric along a leaf of the
//!   diagonal field, its holomorphic gradient split into three named
//!   pieces, and the closed-form Gaussian curvature valid where the field
//!   is orthogonal to the radial direction.
//! * `fd` — a finite-difference Gaussian-curvature oracle for any
//!   positive leaf density, used to audit the closed forms and to probe
//!   points where no closed form exists.
//! * `tensor` — the full curvature tensor of each metric from analytic
//!   derivatives of its components, holomorphic sectional curvature, and
//!   seeded extremal-direction search.

pub mod fd;
pub mod leafwise;
pub mod tensor;

pub use fd::{gaussian_curvature_fd, kappa_fd, DEFAULT_FD_STEP};
pub use leafwise::{
    kappa_closed_on_s, kappa_closed_on_s_tol, leaf_density, leaf_density_gradient,
    leaf_density_gradient_tol, leaf_density_tol, GradientParts,
};
pub use tensor::{
    extremal_hsc, hsc, ExtremalHsc, HscEngine, DEFAULT_REFINE_ITERS, DEFAULT_SAMPLES,
};

use crate::error::Result;
use crate::geometry::{field_eval, DiagonalField, MetricKind, PointC, TangentC};

/// Bundle of curvature values at one point, with agreement diagnostics.
#[derive(Debug, Clone)]
pub struct CurvatureReport {
    pub point: PointC,
    pub direction: Option<TangentC>,
    pub kappa_closed: Option<f64>,
    pub kappa_fd: f64,
    pub hsc: Option<f64>,
    /// Named diagnostics, e.g. relative closed-form/oracle disagreement.
    pub residuals: Vec<(String, f64)>,
}

impl CurvatureReport {
    /// Full report at a point of the orthogonality locus: closed-form
    /// leafwise curvature, its finite-difference audit, and the sectional
    /// curvature along the leaf direction.
    pub fn at_s_point(
        kind: &MetricKind,
        field: &DiagonalField,
        z: &[crate::geometry::Cx],
        step: f64,
    ) -> Result<Self> {
        let closed = kappa_closed_on_s(kind, field, z)?;
        let fd_value = kappa_fd(kind, field, z, step)?;
        let (x, _) = match kind {
            MetricKind::BallComplement { n_base, .. } => {
                let (x_t, dxx_t) = field_eval(field, &z[..*n_base])?;
                let n_amb = z.len();
                (
                    crate::geometry::embed_tangent(&x_t, n_amb)?,
                    crate::geometry::embed_tangent(&dxx_t, n_amb)?,
                )
            }
            _ => field_eval(field, z)?,
        };
        let sec = hsc(kind, z, &x)?;
        let rel = (fd_value - closed).abs() / closed.abs().max(1e-300);
        Ok(CurvatureReport {
            point: z.to_vec(),
            direction: Some(x),
            kappa_closed: Some(closed),
            kappa_fd: fd_value,
            hsc: Some(sec),
            residuals: vec![("closed_vs_fd_rel".into(), rel)],
        })
    }
}
