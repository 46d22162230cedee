//! One-variable curvature profiles.
//!
//! On the orthogonality locus of the diagonal field, the leafwise Gaussian
//! curvature of each metric depends only on the squared radius `t`, so each
//! case collapses to a scalar profile:
//!
//! * `kappa_profile_cn` — punctured n-space (n >= 2),
//!   `f(t) = -2 (3 t^2 u^2 - 2v + t) / (t + v)^2`;
//! * `kappa_profile_ball` — ball-complement slice of squared radius `r2`,
//!   same shape plus three `(dim + 1)` correction terms, defined on
//!   `(0, r2)`;
//! * `kappa_profile_cstar` — the one-variable conformal case, where the
//!   metric is `(1 + t u^2)|dz|^2` and the curvature is `-P/Q` with
//!   `Q = (1 + t u^2)^3`; `P` splits as `2 (M1 + M2)`, each piece with an
//!   equivalent rational form used as a cross-check.
//!
//! `find_min_zero_a` locates the least zero of the first profile in (0, 1):
//! below it the leafwise curvature is positive, which is what forces the
//! holomorphic sectional curvature to blow up toward the puncture.

use crate::error::{Error, Result};
use crate::radial;
use crate::rootfind;

/// Which profile family a scalar curvature profile belongs to.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileFamily {
    /// Punctured n-space, n >= 2; domain (0, infinity).
    PuncturedCn,
    /// Ball-complement slice; domain (0, r2).
    BallComplement { n_ambient: usize, r2: f64 },
    /// Punctured plane conformal case; domain (0, infinity).
    CStar,
}

impl ProfileFamily {
    pub fn validate(&self) -> Result<()> {
        if let ProfileFamily::BallComplement { n_ambient, r2 } = self {
            if *n_ambient < 2 {
                return Err(Error::domain("ball profile needs ambient dimension >= 2"));
            }
            if !(0.0 < *r2 && *r2 <= 1.0) {
                return Err(Error::domain(format!(
                    "squared slice radius must lie in (0, 1], got {r2}"
                )));
            }
        }
        Ok(())
    }

    /// Evaluate the profile at squared radius t.
    pub fn eval(&self, t: f64) -> Result<f64> {
        self.validate()?;
        match self {
            ProfileFamily::PuncturedCn => kappa_profile_cn(t),
            ProfileFamily::BallComplement { n_ambient, r2 } => {
                kappa_profile_ball(*n_ambient, *r2, t)
            }
            ProfileFamily::CStar => Ok(kappa_profile_cstar(t)?.f),
        }
    }
}

/// Leafwise-curvature profile on punctured n-space (n >= 2):
/// f(t) = -2 (3 t^2 u^2 - 2 v + t) / (t + v)^2.
pub fn kappa_profile_cn(t: f64) -> Result<f64> {
    kappa_profile_cn_tol(t, radial::DEFAULT_QUAD_TOL)
}

pub fn kappa_profile_cn_tol(t: f64, tol: f64) -> Result<f64> {
    let u = radial::eval_u(t)?;
    let v = radial::eval_v_tol(t, tol)?;
    let num = 3.0 * t * t * u * u - 2.0 * v + t;
    let den = t + v;
    Ok(-2.0 * num / (den * den))
}

const ZERO_SCAN_POINTS: usize = 1024;
const ZERO_SCAN_LO: f64 = 1e-8;
const ZERO_BISECT_TOL: f64 = 1e-9;
const ZERO_VERIFY_POINTS: usize = 64;

/// Least zero of `kappa_profile_cn` in (0, 1).
///
/// Sign-change scan on a 1024-point log grid over [1e-8, 1], bisection to
/// 1e-9, then positivity of the profile is verified on a 64-point log grid
/// over (0, a). Finding no sign change is an error: the profile is
/// positive near 0 and negative at 1, so a zero must exist.
pub fn find_min_zero_a() -> Result<f64> {
    find_min_zero_a_tol(radial::DEFAULT_QUAD_TOL)
}

pub fn find_min_zero_a_tol(tol: f64) -> Result<f64> {
    let grid = rootfind::log_grid(ZERO_SCAN_LO, 1.0, ZERO_SCAN_POINTS)?;
    let brackets = rootfind::sign_changes(|t| kappa_profile_cn_tol(t, tol), &grid)?;
    let &(lo, hi) = brackets
        .first()
        .ok_or_else(|| Error::Search("no sign change of the radial profile in (0, 1)".into()))?;
    let a = rootfind::bisect(|t| kappa_profile_cn_tol(t, tol), lo, hi, ZERO_BISECT_TOL)?;
    let check = rootfind::log_grid(ZERO_SCAN_LO, a * (1.0 - 1e-3), ZERO_VERIFY_POINTS)?;
    let values = crate::par::map_collect(check, |t| (t, kappa_profile_cn_tol(t, tol)));
    for (t, f) in values {
        let f = f?;
        if f <= 0.0 {
            return Err(Error::Search(format!(
                "profile({t}) = {f:.3e} <= 0 below the located least zero {a}"
            )));
        }
    }
    Ok(a)
}

/// Ball-complement slice profile on (0, r2); `scale` multiplies the three
/// correction terms so the algebraic degeneration to the punctured-space
/// profile can be checked by setting it to zero.
fn ball_profile_with_scale(n_ambient: usize, r2: f64, t: f64, scale: f64, tol: f64) -> Result<f64> {
    if n_ambient < 2 {
        return Err(Error::domain("ball profile needs ambient dimension >= 2"));
    }
    if !(0.0 < r2 && r2 <= 1.0) {
        return Err(Error::domain(format!("squared slice radius must lie in (0, 1], got {r2}")));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::domain(format!("squared radius must be positive, got {t}")));
    }
    if t >= r2 {
        return Err(Error::domain(format!(
            "squared radius {t} outside the slice domain (0, {r2})"
        )));
    }
    let u = radial::eval_u(t)?;
    let v = radial::eval_v_tol(t, tol)?;
    let np1 = n_ambient as f64 + 1.0;
    let gap = r2 - t;
    let num = 3.0 * t * t * u * u - 2.0 * v + t + scale * np1 * t * (r2 + 2.0 * t) / (gap * gap);
    let den = t + v + scale * np1 * t / gap;
    Ok(-2.0 * num / (den * den))
}

/// Leafwise-curvature profile along a ball-complement slice:
/// f(t) = -2 (3t^2 u^2 - 2v + t + (dim+1) t (r2 + 2t)/(r2 - t)^2)
///        / (t + v + (dim+1) t/(r2 - t))^2, for t in (0, r2).
pub fn kappa_profile_ball(n_ambient: usize, r2: f64, t: f64) -> Result<f64> {
    kappa_profile_ball_tol(n_ambient, r2, t, radial::DEFAULT_QUAD_TOL)
}

pub fn kappa_profile_ball_tol(n_ambient: usize, r2: f64, t: f64, tol: f64) -> Result<f64> {
    ball_profile_with_scale(n_ambient, r2, t, 1.0, tol)
}

/// Value and decomposition of the one-variable conformal profile.
#[derive(Debug, Clone, Copy)]
pub struct CstarProfile {
    /// Curvature f = -p/q.
    pub f: f64,
    /// Numerator p = 2 (m1 + m2).
    pub p: f64,
    /// Denominator q = (1 + t u^2)^3.
    pub q: f64,
    /// m1 = 2 t^3 u^3 u'' + 2 t^2 u^3 u' - 2 t^3 u^2 (u')^2.
    pub m1: f64,
    /// m2 = u^2 + 2 t^2 (u')^2 + 2 t^2 u u'' + 6 t u u'.
    pub m2: f64,
}

/// Gaussian-curvature profile of the conformal metric (1 + t u^2)|dz|^2 on
/// the punctured plane, with its numerator decomposition.
pub fn kappa_profile_cstar(t: f64) -> Result<CstarProfile> {
    let (u, du, d2u) = radial::eval_u_derivs(t)?;
    let t2 = t * t;
    let t3 = t2 * t;
    let u2 = u * u;
    let u3 = u2 * u;
    let m1 = 2.0 * t3 * u3 * d2u + 2.0 * t2 * u3 * du - 2.0 * t3 * u2 * du * du;
    let m2 = u2 + 2.0 * t2 * du * du + 2.0 * t2 * u * d2u + 6.0 * t * u * du;
    let p = 2.0 * (m1 + m2);
    let q = (1.0 + t * u2).powi(3);
    Ok(CstarProfile { f: -p / q, p, q, m1, m2 })
}

/// Rational form of m1: 2 t^3 (t-1)^2 ((t-1)^2 - t (log t)^2) / (t log t)^6.
/// Used only as an independent cross-check; it cancels badly near t = 1.
pub fn cstar_m1_rational(t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::domain(format!("squared radius must be positive, got {t}")));
    }
    let l = t.ln();
    if l == 0.0 {
        return Err(Error::domain("rational form undefined at t = 1"));
    }
    let tm1 = t - 1.0;
    Ok(2.0 * t.powi(3) * tm1 * tm1 * (tm1 * tm1 - t * l * l) / (t * l).powi(6))
}

/// Rational form of m2: ((t-1)^2 (log t)^2 + 2 (log t)^2 + 6 (t-1)^2
/// - 8 (t-1) log t + 2 (t-1) (log t)^2 - 4 (t-1)^2 log t) / (t^2 (log t)^4).
pub fn cstar_m2_rational(t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::domain(format!("squared radius must be positive, got {t}")));
    }
    let l = t.ln();
    if l == 0.0 {
        return Err(Error::domain("rational form undefined at t = 1"));
    }
    let d = t - 1.0;
    let num = d * d * l * l + 2.0 * l * l + 6.0 * d * d - 8.0 * d * l + 2.0 * d * l * l
        - 4.0 * d * d * l;
    Ok(num / (t * t * l.powi(4)))
}

/// (t - 1)^2 - t (log t)^2: nonnegative on (0, infinity), which is the
/// inequality sinh^2(x/2) >= (x/2)^2 in disguise (t = e^x, factor 4t).
/// Its sign makes log of the conformal density subharmonic.
pub fn log_u_hessian_sign(t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::domain(format!("squared radius must be positive, got {t}")));
    }
    let l = t.ln();
    Ok((t - 1.0) * (t - 1.0) - t * l * l)
}
