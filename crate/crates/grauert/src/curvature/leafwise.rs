//! Pullback density along a leaf and closed-form leafwise curvature.
//!
//! A leaf of the diagonal field is a complex curve T -> Z(T) with
//! dZ/dT = X(Z). The metric pulls back to h(T) |dT|^2 with
//! h(T) = g(Z(T), X(Z(T))), and the Gaussian curvature of that density is
//! kappa = -2 h^{-3} (h ddbar h - |dh|^2).
//!
//! The holomorphic derivative of h splits into three pieces f1 + f2 + f3
//! (grouped by which inner products they carry); on the locus where
//! <z, X(z)> = 0 the first and third vanish and the mixed second
//! derivative collapses, leaving the closed forms implemented in
//! `kappa_closed_on_s`. Off that locus no closed form is attempted — the
//! finite-difference oracle in `super::fd` stands in.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::geometry::{
    self, embed_in_slice, embed_tangent, field_eval, flow, hermitian_inner, metric_norm_tol,
    norm_sq, wedge_norm_sq, Cx, DiagonalField, MetricKind,
};
use crate::radial;

/// Relative orthogonality slack accepted by the closed-form curvature.
pub const S_LOCUS_TOL: f64 = 1e-8;

fn check_base(kind: &MetricKind, field: &DiagonalField, z: &[Cx]) -> Result<()> {
    kind.validate()?;
    match kind {
        MetricKind::GrauertPunctured { n } | MetricKind::BergmanBall { n_ambient: n } => {
            if field.n != *n || z.len() != *n {
                return Err(Error::domain(
                    "field, point, and metric dimensions must all agree",
                ));
            }
        }
        MetricKind::BallComplement { n_ambient, n_base, w } => {
            if field.n != *n_base || z.len() != *n_ambient {
                return Err(Error::domain(
                    "field must act on the base block and the point must be ambient-dimensional",
                ));
            }
            for (a, b) in z[*n_base..].iter().zip(&w[*n_base..]) {
                if (a - b).norm() > 1e-12 {
                    return Err(Error::domain("base point does not lie on the slice"));
                }
            }
        }
    }
    Ok(())
}

/// Density h(T) of the pullback of the metric along the leaf through z,
/// at leaf time T.
pub fn leaf_density(
    kind: &MetricKind,
    field: &DiagonalField,
    z: &[Cx],
    t_time: Cx,
) -> Result<f64> {
    leaf_density_tol(kind, field, z, t_time, radial::DEFAULT_QUAD_TOL)
}

pub fn leaf_density_tol(
    kind: &MetricKind,
    field: &DiagonalField,
    z: &[Cx],
    t_time: Cx,
    tol: f64,
) -> Result<f64> {
    check_base(kind, field, z)?;
    match kind {
        MetricKind::BallComplement { n_ambient, n_base, w } => {
            let z_tilde = &z[..*n_base];
            let moved = flow(field, z_tilde, t_time)?;
            let (x_tilde, _) = field_eval(field, &moved)?;
            let full_z = embed_in_slice(&moved, w)?;
            let full_x = embed_tangent(&x_tilde, *n_ambient)?;
            metric_norm_tol(kind, &full_z, &full_x, tol)
        }
        _ => {
            let moved = flow(field, z, t_time)?;
            let (x, _) = field_eval(field, &moved)?;
            metric_norm_tol(kind, &moved, &x, tol)
        }
    }
}

/// The three pieces of the holomorphic derivative of the leaf density at
/// T = 0 (punctured-space metric).
#[derive(Debug, Clone, Copy)]
pub struct GradientParts {
    /// (u^2 - v/t^2) (2 |X|^2 <X, z> + <DX(X), z> <z, X>)
    pub f1: Complex<f64>,
    /// (1 + v/t) <DX(X), X>
    pub f2: Complex<f64>,
    /// (2 u u' - u^2/t + 2 v/t^3) <X, z> |<X, z>|^2
    pub f3: Complex<f64>,
}

impl GradientParts {
    /// The holomorphic derivative dh(0); its conjugate is the
    /// antiholomorphic one.
    pub fn sum(&self) -> Complex<f64> {
        self.f1 + self.f2 + self.f3
    }
}

/// Holomorphic derivative of the leaf density at T = 0 for the
/// punctured-space metric, split into its three pieces.
pub fn leaf_density_gradient(field: &DiagonalField, z: &[Cx]) -> Result<GradientParts> {
    leaf_density_gradient_tol(field, z, radial::DEFAULT_QUAD_TOL)
}

pub fn leaf_density_gradient_tol(
    field: &DiagonalField,
    z: &[Cx],
    tol: f64,
) -> Result<GradientParts> {
    if z.len() != field.n {
        return Err(Error::domain("point dimension does not match the field"));
    }
    let t = norm_sq(z);
    if t < geometry::BOUNDARY_GUARD * geometry::BOUNDARY_GUARD {
        return Err(Error::domain("base point too close to the origin"));
    }
    let (x, dxx) = field_eval(field, z)?;
    let (u, du, _) = radial::eval_u_derivs(t)?;
    let v = radial::eval_v_tol(t, tol)?;

    let xz = hermitian_inner(&x, z); // <X, z>
    let zx = xz.conj(); // <z, X>
    let dxx_z = hermitian_inner(&dxx, z); // <DX(X), z>
    let dxx_x = hermitian_inner(&dxx, &x); // <DX(X), X>

    let c1 = u * u - v / (t * t);
    let c2 = 1.0 + v / t;
    let c3 = 2.0 * u * du - u * u / t + 2.0 * v / (t * t * t);

    Ok(GradientParts {
        f1: (2.0 * norm_sq(&x) * xz + dxx_z * zx) * c1,
        f2: dxx_x * c2,
        f3: xz * xz.norm_sqr() * c3,
    })
}

/// Closed-form Gaussian curvature of the leaf through a point of the
/// orthogonality locus.
///
/// Punctured space: kappa = -2 (A + B) / D with
///   A = (t^2 u^2 - v) (2 |X|^6 + |<DX(X), z>|^2 |X|^2),
///   B = (t + v) t |X wedge DX(X)|^2,
///   D = (t + v)^2 |X|^6, t = |z|^2.
///
/// Ball complement (point given in ambient coordinates on the slice):
/// kappa = -2 I J / h0^3 with
///   I = (t + v + (dim+1) t / (r2 - t)) |X|^6 / t^3,
///   J = 3 t^2 u^2 - 2 v + t + (dim+1) t (r2 + 2t) / (r2 - t)^2,
///   h0 = (1 + v/t + (dim+1)/(r2 - t)) |X|^2, t = |z~|^2,
/// which also equals the scalar profile at t — the two code paths are
/// kept independent so they can audit each other.
pub fn kappa_closed_on_s(kind: &MetricKind, field: &DiagonalField, z: &[Cx]) -> Result<f64> {
    kappa_closed_on_s_tol(kind, field, z, radial::DEFAULT_QUAD_TOL)
}

pub fn kappa_closed_on_s_tol(
    kind: &MetricKind,
    field: &DiagonalField,
    z: &[Cx],
    tol: f64,
) -> Result<f64> {
    check_base(kind, field, z)?;
    match kind {
        MetricKind::GrauertPunctured { .. } => {
            let (x, dxx) = field_eval(field, z)?;
            require_orthogonal(z, &x)?;
            let t = norm_sq(z);
            let u = radial::eval_u(t)?;
            let v = radial::eval_v_tol(t, tol)?;
            let x6 = norm_sq(&x).powi(3);
            let dxx_z = hermitian_inner(&dxx, z).norm_sqr();
            let a_term = (t * t * u * u - v) * (2.0 * x6 + dxx_z * norm_sq(&x));
            let b_term = (t + v) * t * wedge_norm_sq(&x, &dxx)?;
            let d_term = (t + v) * (t + v) * x6;
            Ok(-2.0 * (a_term + b_term) / d_term)
        }
        MetricKind::BallComplement { n_ambient, n_base, .. } => {
            let r2 = kind.r2().expect("ball-complement kind has a slice radius");
            let z_tilde = &z[..*n_base];
            let (x_tilde, _) = field_eval(field, z_tilde)?;
            require_orthogonal(z_tilde, &x_tilde)?;
            let t = norm_sq(z_tilde);
            if t >= r2 {
                return Err(Error::domain(format!(
                    "squared base radius {t} outside the slice domain (0, {r2})"
                )));
            }
            let u = radial::eval_u(t)?;
            let v = radial::eval_v_tol(t, tol)?;
            let np1 = *n_ambient as f64 + 1.0;
            let gap = r2 - t;
            let x2 = norm_sq(&x_tilde);
            let i_term = (t + v + np1 * t / gap) * x2.powi(3) / t.powi(3);
            let j_term = 3.0 * t * t * u * u - 2.0 * v + t + np1 * t * (r2 + 2.0 * t) / (gap * gap);
            let h0 = (1.0 + v / t + np1 / gap) * x2;
            Ok(-2.0 * i_term * j_term / h0.powi(3))
        }
        MetricKind::BergmanBall { .. } => Err(Error::domain(
            "closed-form leafwise curvature applies to the punctured-space and ball-complement metrics",
        )),
    }
}

fn require_orthogonal(z: &[Cx], x: &[Cx]) -> Result<()> {
    let ip = hermitian_inner(z, x).norm();
    let bound = S_LOCUS_TOL * norm_sq(z).sqrt() * norm_sq(x).sqrt();
    if ip >= bound {
        return Err(Error::domain(format!(
            "point is not on the orthogonality locus: |<z, X>| = {ip:.3e} exceeds {bound:.3e}"
        )));
    }
    Ok(())
}
