//! Radial building blocks of the punctured-space metric.
//!
//! Everything here is a function of the squared radius `t = |z|^2`:
//!
//! * `u(t) = (t - 1) / (t ln t)`, extended by `u(1) = 1` across the
//!   removable singularity;
//! * `v(t)`, the integral of `tau * u(tau)^2` from 0 to `t`;
//! * the radial potential `U` with `U'(t) = v(t) / t`, anchored at
//!   `U(1) = 0`, together with its derivatives up to fourth order;
//! * `eta(t) = t^2 u(t)^2 - v(t)`, whose largest zero `t_R` marks the
//!   radius beyond which leafwise curvature turns negative.
//!
//! Near `t = 1` the closed forms for `u` and its derivatives lose digits to
//! cancellation, so for `|ln t| < 0.25` they are evaluated through the
//! series of `phi(x) = (1 - e^{-x}) / x` at `x = ln t`; the two branches
//! agree to machine precision well inside either side of the switch.
//!
//! `v` is computed by adaptive quadrature. For `t <= 1` the substitution
//! `tau = e^{-x}` turns the integrand into the bounded function
//! `((1 - e^{-x}) / x)^2` on `[-ln t, infinity)`; the tail beyond
//! `X = max(45, -ln t + 45)` contributes `1/X` up to terms below 1e-22 and
//! is added in closed form. Tolerances are absolute with a relative floor
//! near machine precision, so very large values (e.g. `v(1e6) ~ 2.6e9`)
//! still converge.

use crate::error::{Error, Result};
use crate::quad;
use crate::rootfind;

/// Default absolute quadrature tolerance for `v` and the potential.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Switch radius in `x = ln t` between series and closed-form evaluation.
const X_SERIES_SWITCH: f64 = 0.25;

/// Terms kept in the `phi` series; at `|x| = 0.25` the first dropped term
/// is below 1e-28.
const SERIES_TERMS: usize = 18;

/// Everything downstream geometry needs at one squared radius.
#[derive(Debug, Clone, Copy)]
pub struct ProfileValues {
    pub t: f64,
    pub u: f64,
    pub du: f64,
    pub d2u: f64,
    pub v: f64,
    /// U'(t)
    pub dpot: f64,
    /// U''(t)
    pub d2pot: f64,
    /// U'''(t)
    pub d3pot: f64,
    /// U''''(t)
    pub d4pot: f64,
    pub eta: f64,
}

fn check_t(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::domain(format!("squared radius must be finite and positive, got {t}")));
    }
    Ok(())
}

/// phi(x) = (1 - e^{-x}) / x with phi(0) = 1, by series; valid for small x.
fn phi_series(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=SERIES_TERMS {
        term *= -x / (k as f64 + 1.0);
        sum += term;
    }
    sum
}

/// phi'(x) by series.
fn dphi_series(x: f64) -> f64 {
    let mut term = -0.5;
    let mut sum = term;
    for k in 1..=SERIES_TERMS {
        let kf = k as f64;
        term *= -x * (kf + 1.0) / (kf * (kf + 2.0));
        sum += term;
    }
    sum
}

/// phi''(x) by series.
fn d2phi_series(x: f64) -> f64 {
    let mut term = 1.0 / 3.0;
    let mut sum = term;
    for k in 1..=SERIES_TERMS {
        let kf = k as f64;
        term *= -x * (kf + 2.0) / (kf * (kf + 3.0));
        sum += term;
    }
    sum
}

/// u(t) = (t - 1) / (t ln t), with the removable singularity filled in.
pub fn eval_u(t: f64) -> Result<f64> {
    check_t(t)?;
    let x = t.ln();
    if x.abs() < X_SERIES_SWITCH {
        Ok(phi_series(x))
    } else {
        Ok((t - 1.0) / (t * x))
    }
}

/// (u, u', u'') at `t`.
///
/// The closed forms for u' and u'' cancel catastrophically near t = 1
/// (their numerators vanish to second and third order), hence the series
/// branch; see the module docs.
pub fn eval_u_derivs(t: f64) -> Result<(f64, f64, f64)> {
    check_t(t)?;
    let x = t.ln();
    if x.abs() < X_SERIES_SWITCH {
        let p = phi_series(x);
        let dp = dphi_series(x);
        let ddp = d2phi_series(x);
        Ok((p, dp / t, (ddp - dp) / (t * t)))
    } else {
        let u = (t - 1.0) / (t * x);
        let du = (x - t + 1.0) / (t * t * x * x);
        let d2u = (2.0 * (t - 1.0) + (t - 3.0) * x - 2.0 * x * x) / (t * t * t * x * x * x);
        Ok((u, du, d2u))
    }
}

/// Substituted integrand ((1 - e^{-x}) / x)^2; bounded on (0, inf).
fn v_integrand_sub(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let r = -f64::exp_m1(-x) / x;
    r * r
}

/// Direct integrand tau * u(tau)^2 for the range tau > 1.
fn v_integrand_direct(tau: f64) -> f64 {
    let u = eval_u(tau).expect("tau > 1 inside quadrature");
    tau * u * u
}

fn v_below_one(t: f64, tol: f64) -> Result<f64> {
    let x_lo = -t.ln(); // >= 0
    let x_cut = if x_lo + 45.0 > 45.0 { x_lo + 45.0 } else { 45.0 };
    let q = quad::integrate(v_integrand_sub, x_lo, x_cut, tol)?;
    Ok(q.value + 1.0 / x_cut)
}

/// v(t) to absolute tolerance `tol` (with the module's relative floor).
pub fn eval_v_tol(t: f64, tol: f64) -> Result<f64> {
    check_t(t)?;
    if t <= 1.0 {
        v_below_one(t, tol)
    } else {
        let head = v_below_one(1.0, 0.5 * tol)?;
        let tail = quad::integrate(v_integrand_direct, 1.0, t, 0.5 * tol)?;
        Ok(head + tail.value)
    }
}

/// v(t) at the default tolerance.
pub fn eval_v(t: f64) -> Result<f64> {
    eval_v_tol(t, DEFAULT_QUAD_TOL)
}

/// (U', U'', U''', U'''') at `t`, using v' = t u^2 to eliminate all
/// integrals beyond v itself:
///
/// U'   = v / t
/// U''  = u^2 - v / t^2
/// U''' = 2 u u' - u^2 / t + 2 v / t^3
/// U'''' = 2 u'^2 + 2 u u'' - 2 u u' / t + 3 u^2 / t^2 - 6 v / t^4
pub fn eval_potential_derivs_tol(t: f64, tol: f64) -> Result<(f64, f64, f64, f64)> {
    let (u, du, d2u) = eval_u_derivs(t)?;
    let v = eval_v_tol(t, tol)?;
    let d1 = v / t;
    let d2 = u * u - v / (t * t);
    let d3 = 2.0 * u * du - u * u / t + 2.0 * v / (t * t * t);
    let d4 = 2.0 * du * du + 2.0 * u * d2u - 2.0 * u * du / t + 3.0 * u * u / (t * t)
        - 6.0 * v / (t * t * t * t);
    Ok((d1, d2, d3, d4))
}

pub fn eval_potential_derivs(t: f64) -> Result<(f64, f64, f64, f64)> {
    eval_potential_derivs_tol(t, DEFAULT_QUAD_TOL)
}

/// eta(t) = t^2 u(t)^2 - v(t). Positive iff the leading curvature
/// coefficient A is positive at squared radius t.
pub fn eval_eta_tol(t: f64, tol: f64) -> Result<f64> {
    let u = eval_u(t)?;
    let v = eval_v_tol(t, tol)?;
    Ok(t * t * u * u - v)
}

pub fn eval_eta(t: f64) -> Result<f64> {
    eval_eta_tol(t, DEFAULT_QUAD_TOL)
}

/// Radial potential U(t) relative to the anchor U(1) = 0, by quadrature of
/// U' = v / tau.
pub fn eval_potential_tol(t: f64, tol: f64) -> Result<f64> {
    check_t(t)?;
    let inner = (0.1 * tol).max(1e-13);
    let q = quad::integrate(
        |tau| eval_v_tol(tau, inner).expect("tau > 0 inside quadrature") / tau,
        1.0,
        t,
        tol,
    )?;
    Ok(q.value)
}

pub fn eval_potential(t: f64) -> Result<f64> {
    eval_potential_tol(t, DEFAULT_QUAD_TOL)
}

/// Search bounds for the eta threshold.
const ETA_BRACKET: (f64, f64) = (1e-6, 1e6);
const ETA_SCAN_POINTS: usize = 1024;
const ETA_BISECT_TOL: f64 = 1e-8;
const ETA_VERIFY_POINTS: usize = 256;

/// Largest zero `t_R` of eta in [1e-6, 1e6].
///
/// Scans a 1024-point log grid for sign changes, bisects the last bracket
/// to 1e-8, then verifies eta > 0 on a 256-point log grid from just above
/// `t_R` to 1e6. Fails with a search error if no bracket exists or the
/// verification finds a non-positive sample.
pub fn find_eta_threshold() -> Result<f64> {
    find_eta_threshold_tol(DEFAULT_QUAD_TOL)
}

pub fn find_eta_threshold_tol(tol: f64) -> Result<f64> {
    let grid = rootfind::log_grid(ETA_BRACKET.0, ETA_BRACKET.1, ETA_SCAN_POINTS)?;
    let brackets = rootfind::sign_changes(|t| eval_eta_tol(t, tol), &grid)?;
    let &(lo, hi) = brackets.last().ok_or_else(|| {
        Error::Search(format!(
            "no sign change of eta on [{}, {}]",
            ETA_BRACKET.0, ETA_BRACKET.1
        ))
    })?;
    let t_r = rootfind::bisect(|t| eval_eta_tol(t, tol), lo, hi, ETA_BISECT_TOL)?;

    let check = rootfind::log_grid(t_r * (1.0 + 1e-3), ETA_BRACKET.1, ETA_VERIFY_POINTS)?;
    let values = crate::par::map_collect(check, |t| (t, eval_eta_tol(t, tol)));
    for (t, e) in values {
        let e = e?;
        if e <= 0.0 {
            return Err(Error::Search(format!(
                "eta({t}) = {e:.3e} <= 0 beyond the located threshold {t_r}"
            )));
        }
    }
    Ok(t_r)
}

/// Bundle of all radial quantities at one squared radius.
pub fn profile_values_tol(t: f64, tol: f64) -> Result<ProfileValues> {
    let (u, du, d2u) = eval_u_derivs(t)?;
    let v = eval_v_tol(t, tol)?;
    let dpot = v / t;
    let d2pot = u * u - v / (t * t);
    let d3pot = 2.0 * u * du - u * u / t + 2.0 * v / (t * t * t);
    let d4pot = 2.0 * du * du + 2.0 * u * d2u - 2.0 * u * du / t + 3.0 * u * u / (t * t)
        - 6.0 * v / (t * t * t * t);
    Ok(ProfileValues {
        t,
        u,
        du,
        d2u,
        v,
        dpot,
        d2pot,
        d3pot,
        d4pot,
        eta: t * t * u * u - v,
    })
}

pub fn profile_values(t: f64) -> Result<ProfileValues> {
    profile_values_tol(t, DEFAULT_QUAD_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_LN_2: f64 = 1.3862943611198906;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    /// Composite-Simpson oracle for v(1), independent of the production
    /// Gauss-Kronrod path.
    fn v1_oracle() -> f64 {
        let (a, b, panels) = (0.0_f64, 60.0_f64, 60_000_usize);
        let h = (b - a) / panels as f64;
        let mut sum = v_integrand_sub(a) + v_integrand_sub(b);
        for k in 1..panels {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            sum += w * v_integrand_sub(a + h * k as f64);
        }
        sum * h / 3.0 + 1.0 / 60.0
    }

    #[test]
    fn u_at_one_is_exactly_one() {
        assert_eq!(eval_u(1.0).unwrap(), 1.0);
    }

    #[test]
    fn u_at_e() {
        let e = std::f64::consts::E;
        assert!(rel(eval_u(e).unwrap(), (e - 1.0) / e) < 1e-14);
    }

    #[test]
    fn u_continuous_across_one() {
        for t in [1.0 - 1e-7, 1.0 + 1e-7] {
            assert!((eval_u(t).unwrap() - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn u_series_and_closed_form_agree() {
        // Both branches are accurate at |t - 1| ~ 1e-3 .. 0.3; compare them
        // across the switch region.
        for &t in &[0.72f64, 0.7789, 0.999, 1.001, 1.2839, 1.30] {
            let x = t.ln();
            let series = (phi_series(x), dphi_series(x) / t, (d2phi_series(x) - dphi_series(x)) / (t * t));
            let u = (t - 1.0) / (t * x);
            let du = (x - t + 1.0) / (t * t * x * x);
            let d2u = (2.0 * (t - 1.0) + (t - 3.0) * x - 2.0 * x * x) / (t.powi(3) * x.powi(3));
            assert!(rel(series.0, u) < 1e-12, "u mismatch at {t}");
            assert!(rel(series.1, du) < 1e-9, "u' mismatch at {t}");
            assert!(rel(series.2, d2u) < 1e-7, "u'' mismatch at {t}: {} vs {d2u}", series.2);
        }
    }

    #[test]
    fn u_derivative_matches_finite_differences() {
        let t = 0.5;
        let s = 1e-6;
        let fd = (eval_u(t + s).unwrap() - eval_u(t - s).unwrap()) / (2.0 * s);
        let (_, du, _) = eval_u_derivs(t).unwrap();
        assert!(rel(du, fd) < 1e-6, "du {du} vs fd {fd}");
    }

    #[test]
    fn u_second_derivative_matches_finite_differences() {
        for &t in &[0.4, 1.0, 3.0] {
            let s = 1e-4;
            let fd = (eval_u(t + s).unwrap() - 2.0 * eval_u(t).unwrap() + eval_u(t - s).unwrap())
                / (s * s);
            let (_, _, d2u) = eval_u_derivs(t).unwrap();
            assert!(rel(d2u, fd) < 1e-5, "d2u {d2u} vs fd {fd} at {t}");
        }
    }

    #[test]
    fn u_signs() {
        // u > 0, u' <= 0, u'' >= 0 on (0, inf).
        for t in rootfind::log_grid(1e-6, 1e6, 200).unwrap() {
            let (u, du, d2u) = eval_u_derivs(t).unwrap();
            assert!(u > 0.0, "u({t}) = {u}");
            assert!(du <= 1e-15, "u'({t}) = {du}");
            assert!(d2u >= -1e-15, "u''({t}) = {d2u}");
        }
    }

    #[test]
    fn v_at_one_is_two_ln_two() {
        // Oracle first: the independent Simpson integration pins 2 ln 2,
        // then the production quadrature must match both.
        let oracle = v1_oracle();
        assert!((oracle - TWO_LN_2).abs() < 1e-9, "oracle {oracle}");
        let v1 = eval_v(1.0).unwrap();
        assert!((v1 - TWO_LN_2).abs() < 1e-9, "v(1) = {v1}");
        assert!((v1 - oracle).abs() < 1e-9);
        assert!(v1 < 2.0);
    }

    #[test]
    fn v_vanishes_at_zero() {
        let v = eval_v(1e-12).unwrap();
        assert!(v > 0.0 && v < 0.04, "v(1e-12) = {v}");
    }

    #[test]
    fn v_monotone_increasing() {
        let grid = rootfind::log_grid(1e-8, 1e8, 120).unwrap();
        let mut prev = 0.0;
        for t in grid {
            let v = eval_v(t).unwrap();
            assert!(v > prev, "v not increasing at {t}");
            prev = v;
        }
    }

    #[test]
    fn v_derivative_identity() {
        // v' = t u^2.
        for &t in &[0.01, 0.3, 1.0, 2.0, 47.0] {
            let s = t * 1e-5;
            let fd = (eval_v_tol(t + s, 1e-12).unwrap() - eval_v_tol(t - s, 1e-12).unwrap())
                / (2.0 * s);
            let u = eval_u(t).unwrap();
            assert!(rel(fd, t * u * u) < 1e-5, "v' mismatch at {t}: {fd} vs {}", t * u * u);
        }
    }

    #[test]
    fn potential_derivatives_match_finite_differences() {
        for &t in &[0.7, 2.3] {
            let s = 1e-5;
            let tol = 1e-12;
            let (d1, d2, d3, d4) = eval_potential_derivs_tol(t, tol).unwrap();
            let at = |x: f64| eval_potential_derivs_tol(x, tol).unwrap();
            let fd2 = (at(t + s).0 - at(t - s).0) / (2.0 * s);
            let fd3 = (at(t + s).1 - at(t - s).1) / (2.0 * s);
            let fd4 = (at(t + s).2 - at(t - s).2) / (2.0 * s);
            assert!(rel(d2, fd2) < 1e-5, "U'' at {t}: {d2} vs {fd2}");
            assert!(rel(d3, fd3) < 1e-5, "U''' at {t}: {d3} vs {fd3}");
            assert!(rel(d4, fd4) < 1e-4, "U'''' at {t}: {d4} vs {fd4}");
            let _ = d1;
        }
    }

    #[test]
    fn potential_anchor_and_growth() {
        assert_eq!(eval_potential(1.0).unwrap(), 0.0);
        let p_half = eval_potential(0.5).unwrap();
        let p2 = eval_potential(2.0).unwrap();
        let p3 = eval_potential(3.0).unwrap();
        assert!(p_half < 0.0 && p2 > 0.0 && p3 > p2);
    }

    #[test]
    fn potential_derivative_is_v_over_t() {
        let t = 2.0;
        let s = 3e-3;
        let tol = 1e-11;
        let fd = (eval_potential_tol(t + s, tol).unwrap() - eval_potential_tol(t - s, tol).unwrap())
            / (2.0 * s);
        let expect = eval_v(t).unwrap() / t;
        assert!(rel(fd, expect) < 1e-6, "{fd} vs {expect}");
    }

    #[test]
    fn potential_second_derivative_consistent() {
        // U'' from the closed form vs a 5-point second difference of U.
        let t = 2.0;
        let s = 0.05;
        let tol = 1e-11;
        let p = |x: f64| eval_potential_tol(x, tol).unwrap();
        let fd = (-p(t + 2.0 * s) + 16.0 * p(t + s) - 30.0 * p(t) + 16.0 * p(t - s)
            - p(t - 2.0 * s))
            / (12.0 * s * s);
        let (_, d2, _, _) = eval_potential_derivs(t).unwrap();
        assert!(rel(fd, d2) < 1e-4, "{fd} vs {d2}");
    }

    #[test]
    fn eta_negative_at_one_positive_at_ten() {
        let e1 = eval_eta(1.0).unwrap();
        assert!((e1 - (1.0 - TWO_LN_2)).abs() < 1e-8, "eta(1) = {e1}");
        assert!(e1 < 0.0);
        assert!(eval_eta(10.0).unwrap() > 0.0);
    }

    #[test]
    fn eta_grows_at_large_radius() {
        let grid = rootfind::log_grid(100.0, 1e6, 50).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for t in grid {
            let e = eval_eta(t).unwrap();
            assert!(e > prev, "eta not growing at {t}");
            prev = e;
        }
    }

    #[test]
    fn eta_threshold() {
        let t_r = find_eta_threshold().unwrap();
        assert!(t_r > 1.0 && t_r < 10.0, "t_R = {t_r}");
        // Frozen from an independent high-precision run.
        assert!((t_r - 3.7205254691).abs() < 1e-6, "t_R = {t_r}");
        assert!(eval_eta(t_r).unwrap().abs() < 1e-6);
        assert!(eval_eta(2.0 * t_r).unwrap() > 0.0);
    }

    #[test]
    fn rejects_bad_radii() {
        assert!(eval_u(0.0).is_err());
        assert!(eval_u(-1.0).is_err());
        assert!(eval_u(f64::NAN).is_err());
        assert!(eval_v(f64::INFINITY).is_err());
    }

    #[test]
    fn profile_bundle_consistent() {
        let t = 2.5;
        let p = profile_values(t).unwrap();
        assert_eq!(p.t, t);
        assert!(rel(p.u, eval_u(t).unwrap()) < 1e-15);
        assert!(rel(p.v, eval_v(t).unwrap()) < 1e-12);
        let (d1, d2, d3, d4) = eval_potential_derivs(t).unwrap();
        assert!(rel(p.dpot, d1) < 1e-14);
        assert!(rel(p.d2pot, d2) < 1e-12);
        assert!(rel(p.d3pot, d3) < 1e-12);
        assert!(rel(p.d4pot, d4) < 1e-12);
        assert!(rel(p.eta, eval_eta(t).unwrap()) < 1e-10);
    }
}
