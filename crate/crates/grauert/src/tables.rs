//! Table builders behind the command-line front end: profile tables on
//! log grids, per-radius extremal-curvature scans, and leaf traces.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::curvature::{extremal_hsc, kappa_fd};
use crate::error::{Error, Result};
use crate::geometry::{embed_in_slice, flow, sample_s, Cx, DiagonalField, MetricKind};
use crate::profiles;
use crate::radial;
use crate::rootfind;

/// One row of the radial-profile table.
#[derive(Debug, Clone)]
pub struct ProfileRow {
    pub t: f64,
    pub u: f64,
    pub v: f64,
    pub eta: f64,
    pub f_cn: f64,
    pub f_cstar: f64,
    /// Slice profile; absent where t is not below the slice squared
    /// radius.
    pub f_ball: Option<f64>,
}

/// Profile table over a log grid. The slice-profile column uses the
/// given ambient dimension and slice squared radius and is left empty on
/// rows at or beyond that radius.
pub fn profile_rows(
    t_min: f64,
    t_max: f64,
    steps: usize,
    n_ambient: usize,
    r2: f64,
    tol: f64,
) -> Result<Vec<ProfileRow>> {
    if !(t_min.is_finite() && t_max.is_finite()) || t_min <= 0.0 || t_min >= t_max {
        return Err(Error::domain("need 0 < t_min < t_max"));
    }
    if steps < 2 {
        return Err(Error::domain("need at least 2 grid rows"));
    }
    let grid = rootfind::log_grid(t_min, t_max, steps)?;
    let rows = crate::par::map_collect(grid, move |t| -> Result<ProfileRow> {
        let p = radial::profile_values_tol(t, tol)?;
        let f_cn = profiles::kappa_profile_cn_tol(t, tol)?;
        let f_cstar = profiles::kappa_profile_cstar(t)?.f;
        let f_ball = if t < r2 * (1.0 - 1e-9) {
            Some(profiles::kappa_profile_ball_tol(n_ambient, r2, t, tol)?)
        } else {
            None
        };
        let finite = p.u.is_finite()
            && p.v.is_finite()
            && p.eta.is_finite()
            && f_cn.is_finite()
            && f_cstar.is_finite()
            && f_ball.map_or(true, f64::is_finite);
        if !finite {
            return Err(Error::numeric(format!("profile values overflow at t = {t:.3e}")));
        }
        Ok(ProfileRow { t, u: p.u, v: p.v, eta: p.eta, f_cn, f_cstar, f_ball })
    });
    rows.into_iter().collect()
}

/// One row of the extremal-curvature scan.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub t: f64,
    pub k_minus: f64,
    pub k_plus: f64,
}

/// For each squared radius, sample one orthogonality-locus point (or a
/// slice point for the ball complement) and estimate the extreme
/// sectional curvatures over directions there. Rows are independent;
/// each derives its randomness from the seed and its index, so the
/// output does not depend on evaluation order.
pub fn scan_rows(
    kind: &MetricKind,
    field: &DiagonalField,
    radii: &[f64],
    samples: usize,
    refine_iters: usize,
    seed: u64,
) -> Result<Vec<ScanRow>> {
    if radii.is_empty() {
        return Err(Error::domain("radius list must be nonempty"));
    }
    kind.validate()?;
    let jobs: Vec<(usize, f64)> = radii.iter().cloned().enumerate().collect();
    let kind = kind.clone();
    let field = field.clone();
    let rows = crate::par::map_collect(jobs, move |(i, t)| -> Result<ScanRow> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::domain("scan radii must be positive"));
        }
        let row_seed = seed.wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut rng = ChaCha8Rng::seed_from_u64(row_seed);
        let z = match &kind {
            MetricKind::BallComplement { w, .. } => {
                let base = sample_s(&field, t, &mut rng)?;
                embed_in_slice(&base, w)?
            }
            _ => sample_s(&field, t, &mut rng)?,
        };
        let ext = extremal_hsc(&kind, &z, samples, refine_iters, row_seed)?;
        Ok(ScanRow { t, k_minus: ext.k_minus, k_plus: ext.k_plus })
    });
    rows.into_iter().collect()
}

/// Row status for leaf traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowStatus {
    Ok,
    ExitedDomain,
}

impl fmt::Display for FlowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowStatus::Ok => write!(f, "ok"),
            FlowStatus::ExitedDomain => write!(f, "exited-domain"),
        }
    }
}

/// One row of a leaf trace: leaf parameter, ambient position, metric
/// leaf density, and the finite-difference leafwise curvature.
#[derive(Debug, Clone)]
pub struct FlowRow {
    pub t_param: f64,
    pub z: Vec<Cx>,
    pub h: f64,
    pub kappa_fd: f64,
    pub status: FlowStatus,
}

/// Trace the leaf through `base` over a uniform parameter grid. If the
/// leaf leaves the metric's domain, the trace is truncated at a final
/// warning row carrying the offending position with NaN values.
pub fn flow_rows(
    kind: &MetricKind,
    field: &DiagonalField,
    base: &[Cx],
    t_min: f64,
    t_max: f64,
    steps: usize,
    fd_step: f64,
    tol: f64,
) -> Result<Vec<FlowRow>> {
    if !(t_min.is_finite() && t_max.is_finite()) || t_min > t_max {
        return Err(Error::domain("need t_min <= t_max for the trace range"));
    }
    if steps < 1 {
        return Err(Error::domain("need at least one trace row"));
    }
    kind.validate()?;
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let frac = if steps == 1 { 0.0 } else { i as f64 / (steps - 1) as f64 };
        let t_param = t_min + frac * (t_max - t_min);
        let t_cx = Cx::new(t_param, 0.0);
        let z = match kind {
            MetricKind::BallComplement { n_base, w, .. } => {
                let moved = flow(field, &base[..*n_base], t_cx)?;
                embed_in_slice(&moved, w)?
            }
            _ => flow(field, base, t_cx)?,
        };
        let outcome = (|| -> Result<(f64, f64)> {
            let h = leaf_density_at(kind, field, base, t_param, tol)?;
            let kappa = kappa_fd(kind, field, &z, fd_step)?;
            Ok((h, kappa))
        })();
        match outcome {
            Ok((h, kappa)) => {
                rows.push(FlowRow { t_param, z, h, kappa_fd: kappa, status: FlowStatus::Ok });
            }
            Err(Error::Domain(_)) => {
                rows.push(FlowRow {
                    t_param,
                    z,
                    h: f64::NAN,
                    kappa_fd: f64::NAN,
                    status: FlowStatus::ExitedDomain,
                });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(rows)
}

fn leaf_density_at(
    kind: &MetricKind,
    field: &DiagonalField,
    base: &[Cx],
    t_param: f64,
    tol: f64,
) -> Result<f64> {
    crate::curvature::leaf_density_tol(kind, field, base, Cx::new(t_param, 0.0), tol)
}
