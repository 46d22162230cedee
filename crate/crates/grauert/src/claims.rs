//! Registry of the twelve verifiable claims the suite audits, with
//! machine-checkable pass/fail results.
//!
//! Each claim recomputes its quantities from the library primitives at
//! run time; nothing is cached between claims. The registry is the
//! backing store for the command-line `claims` subcommand.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::curvature::{hsc, kappa_closed_on_s, kappa_closed_on_s_tol};
use crate::error::Result;
use crate::geometry::{
    apply_matrix, field_eval, grauert_metric_tol, hermitian_inner, norm_sq, random_unitary,
    sample_s, Cx, DiagonalField, MetricKind,
};
use crate::profiles;
use crate::radial;
use crate::rootfind;

/// Verdict of a single claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimStatus {
    Pass,
    Fail,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimStatus::Pass => write!(f, "pass"),
            ClaimStatus::Fail => write!(f, "fail"),
        }
    }
}

/// Outcome of one audited claim: the checked quantities and the verdict.
#[derive(Debug, Clone)]
pub struct ClaimResult {
    pub id: String,
    pub description: String,
    pub computed: BTreeMap<String, f64>,
    pub threshold: f64,
    pub status: ClaimStatus,
}

fn verdict(ok: bool) -> ClaimStatus {
    if ok {
        ClaimStatus::Pass
    } else {
        ClaimStatus::Fail
    }
}

fn result(
    id: &str,
    description: &str,
    computed: Vec<(&str, f64)>,
    threshold: f64,
    ok: bool,
) -> ClaimResult {
    ClaimResult {
        id: id.to_string(),
        description: description.to_string(),
        computed: computed
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        threshold,
        status: verdict(ok),
    }
}

fn claim_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

fn gaussian_vec<R: Rng>(dim: usize, rng: &mut R) -> Vec<Cx> {
    (0..dim)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Cx::new(re, im)
        })
        .collect()
}

fn sphere_point<R: Rng>(dim: usize, t: f64, rng: &mut R) -> Vec<Cx> {
    let mut z = gaussian_vec(dim, rng);
    let scale = (t / norm_sq(&z)).sqrt();
    for c in &mut z {
        *c *= scale;
    }
    z
}

/// C1: the radial integral at t = 1 agrees with its closed value
/// 2 log 2 and stays below 2.
fn c1(tol: f64) -> Result<ClaimResult> {
    let v1 = radial::eval_v_tol(1.0, tol)?;
    let closed = 2.0 * std::f64::consts::LN_2;
    let ok = (1.386_293..=1.386_296).contains(&v1) && (v1 - closed).abs() < 1e-6 && v1 < 2.0;
    Ok(result(
        "C1",
        "radial integral v(1) matches 2 log 2 and is below 2",
        vec![("v1", v1), ("closed", closed), ("abs_err", (v1 - closed).abs())],
        1e-6,
        ok,
    ))
}

/// C2: the leafwise curvature profile at t = 1 is negative with the
/// expected value.
fn c2(tol: f64) -> Result<ClaimResult> {
    let f1 = profiles::kappa_profile_cn_tol(1.0, tol)?;
    let ok = f1 < 0.0 && (f1 + 0.4311).abs() < 1e-4;
    Ok(result(
        "C2",
        "curvature profile at t = 1 is negative (about -0.4311)",
        vec![("f1", f1)],
        1e-4,
        ok,
    ))
}

/// C3: the profile grows without bound toward the puncture, evidenced
/// by strictly monotone growth along t = 10^-k.
fn c3(tol: f64) -> Result<ClaimResult> {
    let mut values = Vec::new();
    for k in 2..=8 {
        values.push(profiles::kappa_profile_cn_tol(10f64.powi(-k), tol)?);
    }
    let all_positive = values.iter().all(|&f| f > 0.0);
    let min_gap = values
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    let ok = all_positive && min_gap > 0.0;
    Ok(result(
        "C3",
        "profile is positive and strictly increasing along t = 10^-k, k = 2..8",
        vec![
            ("f_1e-2", values[0]),
            ("f_1e-8", *values.last().unwrap()),
            ("min_gap", min_gap),
        ],
        0.0,
        ok,
    ))
}

/// C4: the smallest zero of the profile lies in (0, 1) and the profile
/// is positive below it.
fn c4(tol: f64) -> Result<ClaimResult> {
    let a = profiles::find_min_zero_a_tol(tol)?;
    let f_at_a = profiles::kappa_profile_cn_tol(a, tol)?;
    let mut min_below = f64::INFINITY;
    for t in rootfind::log_grid(1e-7, a * 0.999, 64)? {
        min_below = min_below.min(profiles::kappa_profile_cn_tol(t, tol)?);
    }
    let ok = a > 0.0 && a < 1.0 && f_at_a.abs() < 1e-6 && min_below > 0.0;
    Ok(result(
        "C4",
        "smallest profile zero lies in (0, 1) with positivity below it",
        vec![("a", a), ("f_at_a", f_at_a), ("min_below", min_below)],
        1e-6,
        ok,
    ))
}

/// C5: the sign threshold exists, the sign function stays positive
/// beyond it, and the on-locus curvature is negative past it.
fn c5(seed: u64, tol: f64) -> Result<ClaimResult> {
    let t_r = radial::find_eta_threshold_tol(tol)?;
    let eta_at = radial::eval_eta_tol(t_r, tol)?;
    let mut min_eta = f64::INFINITY;
    for t in rootfind::log_grid(t_r * 1.001, 1e6, 256)? {
        min_eta = min_eta.min(radial::eval_eta_tol(t, tol)?);
    }
    let mut rng = claim_rng(seed, 5);
    let field = DiagonalField::new(2, -1.0)?;
    let kind = MetricKind::GrauertPunctured { n: 2 };
    let z1 = sample_s(&field, 2.0 * t_r, &mut rng)?;
    let z2 = sample_s(&field, 10.0 * t_r, &mut rng)?;
    let k1 = kappa_closed_on_s(&kind, &field, &z1)?;
    let k2 = kappa_closed_on_s(&kind, &field, &z2)?;
    let ok = eta_at.abs() < 1e-6 && min_eta > 0.0 && k1 < 0.0 && k2 < 0.0;
    Ok(result(
        "C5",
        "sign threshold exists; beyond it the sign function is positive and on-locus curvature negative",
        vec![
            ("t_r", t_r),
            ("eta_at_t_r", eta_at),
            ("min_eta_beyond", min_eta),
            ("kappa_2tr", k1),
            ("kappa_10tr", k2),
        ],
        1e-6,
        ok,
    ))
}

/// C6: the on-locus curvature depends only on the radius, not on the
/// field exponent.
fn c6(seed: u64, tol: f64) -> Result<ClaimResult> {
    let kind = MetricKind::GrauertPunctured { n: 2 };
    let mut worst_spread = 0.0f64;
    let mut rng = claim_rng(seed, 6);
    for &t in &[0.3, 1.0, 7.0] {
        let mut values = Vec::new();
        for &alpha in &[-0.5, -1.0, -2.0, -7.0] {
            let field = DiagonalField::new(2, alpha)?;
            let z = sample_s(&field, t, &mut rng)?;
            values.push(kappa_closed_on_s_tol(&kind, &field, &z, tol)?);
        }
        let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let scale = values.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        worst_spread = worst_spread.max((max - min) / scale);
    }
    let ok = worst_spread < 1e-10;
    Ok(result(
        "C6",
        "on-locus curvature is independent of the field exponent at fixed radius",
        vec![("worst_relative_spread", worst_spread)],
        1e-10,
        ok,
    ))
}

/// C7: ball-complement slice profile, over both slice radii and both
/// ambient dimensions: negative mid-slice, the boundary limit
/// -6/(N+1), and unbounded growth toward the removed subspace
/// (evidenced by strictly monotone growth along t = 10^-k).
fn c7(tol: f64) -> Result<ClaimResult> {
    let mut worst_mid = f64::NEG_INFINITY;
    let mut worst_limit_err = 0.0f64;
    let mut min_growth_gap = f64::INFINITY;
    let mut f_small = f64::INFINITY;
    for &n_amb in &[2usize, 3] {
        for &r2 in &[1.0, 0.64] {
            let mid = profiles::kappa_profile_ball_tol(n_amb, r2, r2 / 2.0, tol)?;
            worst_mid = worst_mid.max(mid);
            let near = profiles::kappa_profile_ball_tol(n_amb, r2, r2 - 1e-6, tol)?;
            worst_limit_err = worst_limit_err.max((near + 6.0 / (n_amb as f64 + 1.0)).abs());
            let mut prev = f64::NEG_INFINITY;
            for k in 2..=7 {
                let f = profiles::kappa_profile_ball_tol(n_amb, r2, 10f64.powi(-k), tol)?;
                min_growth_gap = min_growth_gap.min(f - prev);
                prev = f;
                f_small = f_small.min(f);
            }
        }
    }
    let ok = worst_mid < 0.0 && worst_limit_err < 1e-3 && min_growth_gap > 0.0 && f_small > 0.0;
    Ok(result(
        "C7",
        "slice profile: negative mid-slice, boundary limit -6/(N+1), unbounded growth at the subspace",
        vec![
            ("worst_mid", worst_mid),
            ("worst_limit_err", worst_limit_err),
            ("min_growth_gap", min_growth_gap),
            ("min_f_small_t", f_small),
        ],
        1e-3,
        ok,
    ))
}

/// C8: punctured-plane profile: nonpositive everywhere, with limits -4
/// at the puncture and 0 at infinity, and nonnegative log-convexity
/// combination.
fn c8(_tol: f64) -> Result<ClaimResult> {
    let f_small = profiles::kappa_profile_cstar(1e-8)?.f;
    let f_large = profiles::kappa_profile_cstar(1e6)?.f;
    let mut max_f = f64::NEG_INFINITY;
    let mut min_sign = f64::INFINITY;
    for t in rootfind::log_grid(1e-6, 1e6, 256)? {
        max_f = max_f.max(profiles::kappa_profile_cstar(t)?.f);
        min_sign = min_sign.min(profiles::log_u_hessian_sign(t)?);
    }
    let ok = (f_small + 4.0).abs() < 1e-2
        && f_large.abs() < 1e-2
        && max_f <= 1e-12
        && min_sign >= -1e-12;
    Ok(result(
        "C8",
        "one-dimensional profile: limits -4 and 0, nonpositive, with (t-1)^2 >= t (log t)^2",
        vec![
            ("f_1e-8", f_small),
            ("f_1e6", f_large),
            ("max_f_on_grid", max_f),
            ("min_hessian_sign", min_sign),
        ],
        1e-2,
        ok,
    ))
}

/// C9: the ball metric has constant holomorphic sectional curvature
/// -4/(N+1).
fn c9(seed: u64) -> Result<ClaimResult> {
    let mut rng = claim_rng(seed, 9);
    let mut worst = 0.0f64;
    for n_amb in 1..=3usize {
        let kind = MetricKind::BergmanBall { n_ambient: n_amb };
        let expect = -4.0 / (n_amb as f64 + 1.0);
        for _ in 0..20 {
            let radius: f64 = rng.gen_range(0.05..0.9);
            let z = sphere_point(n_amb, radius * radius, &mut rng);
            let x = gaussian_vec(n_amb, &mut rng);
            worst = worst.max((hsc(&kind, &z, &x)? - expect).abs());
        }
    }
    let ok = worst < 1e-6;
    Ok(result(
        "C9",
        "ball metric has constant sectional curvature -4/(N+1)",
        vec![("worst_abs_err", worst)],
        1e-6,
        ok,
    ))
}

/// C10: the metric and its sectional curvature are invariant under
/// unitary rotations.
fn c10(seed: u64, tol: f64) -> Result<ClaimResult> {
    let mut rng = claim_rng(seed, 10);
    let kind = MetricKind::GrauertPunctured { n: 2 };
    let mut worst_g = 0.0f64;
    let mut worst_h = 0.0f64;
    for _ in 0..100 {
        let t = 10f64.powf(rng.gen_range(-2.0..2.0));
        let z = sphere_point(2, t, &mut rng);
        let x = gaussian_vec(2, &mut rng);
        let u = random_unitary(2, &mut rng);
        let zu = apply_matrix(&u, &z);
        let xu = apply_matrix(&u, &x);
        let g1 = grauert_metric_tol(&z, &x, tol)?;
        let g2 = grauert_metric_tol(&zu, &xu, tol)?;
        worst_g = worst_g.max((g1 - g2).abs() / g1.abs());
        let h1 = hsc(&kind, &z, &x)?;
        let h2 = hsc(&kind, &zu, &xu)?;
        worst_h = worst_h.max((h1 - h2).abs() / h1.abs().max(1e-300));
    }
    let ok = worst_g < 1e-10 && worst_h < 1e-10;
    Ok(result(
        "C10",
        "metric and sectional curvature are unitary-rotation invariant",
        vec![("worst_metric_rel", worst_g), ("worst_hsc_rel", worst_h)],
        1e-10,
        ok,
    ))
}

/// C11: the sectional curvature along the leaf direction dominates the
/// leafwise Gaussian curvature (the leaf disk is one competitor for the
/// supremum).
fn c11(seed: u64) -> Result<ClaimResult> {
    let mut rng = claim_rng(seed, 11);
    let kind = MetricKind::GrauertPunctured { n: 2 };
    let field = DiagonalField::new(2, -1.0)?;
    let mut min_gap = f64::INFINITY;
    for _ in 0..50 {
        let t = 10f64.powf(rng.gen_range(-2.0..2.0));
        let z = sample_s(&field, t, &mut rng)?;
        let (x, _) = field_eval(&field, &z)?;
        let sec = hsc(&kind, &z, &x)?;
        let leaf = kappa_closed_on_s(&kind, &field, &z)?;
        min_gap = min_gap.min(sec - leaf);
    }
    let ok = min_gap >= -1e-6;
    Ok(result(
        "C11",
        "leaf-direction sectional curvature dominates the leafwise curvature",
        vec![("min_gap", min_gap)],
        1e-6,
        ok,
    ))
}

/// C12: beyond the sign threshold, directions orthogonal to the base
/// point have negative sectional curvature.
fn c12(seed: u64, tol: f64) -> Result<ClaimResult> {
    let mut rng = claim_rng(seed, 12);
    let kind = MetricKind::GrauertPunctured { n: 2 };
    let t_r = radial::find_eta_threshold_tol(tol)?;
    let mut max_val = f64::NEG_INFINITY;
    for &factor in &[2.0, 10.0] {
        for _ in 0..25 {
            let z = sphere_point(2, factor * t_r, &mut rng);
            let mut v = gaussian_vec(2, &mut rng);
            let overlap = hermitian_inner(&v, &z);
            let t = norm_sq(&z);
            for (vi, zi) in v.iter_mut().zip(&z) {
                *vi -= overlap / t * zi;
            }
            if norm_sq(&v) < 1e-20 {
                v = vec![Cx::new(0.0, 0.0), Cx::new(1.0, 0.0)];
            }
            max_val = max_val.max(hsc(&kind, &z, &v)?);
        }
    }
    let ok = max_val < 0.0;
    Ok(result(
        "C12",
        "orthogonal directions beyond the sign threshold have negative sectional curvature",
        vec![("max_hsc", max_val), ("t_r", t_r)],
        0.0,
        ok,
    ))
}

/// Run the full registry. Claims are independent and may be evaluated
/// concurrently; the returned order is always C1..C12.
pub fn run_all(seed: u64, tol: f64) -> Result<Vec<ClaimResult>> {
    type Thunk = Box<dyn Fn() -> Result<ClaimResult> + Send + Sync>;
    let thunks: Vec<Thunk> = vec![
        Box::new(move || c1(tol)),
        Box::new(move || c2(tol)),
        Box::new(move || c3(tol)),
        Box::new(move || c4(tol)),
        Box::new(move || c5(seed, tol)),
        Box::new(move || c6(seed, tol)),
        Box::new(move || c7(tol)),
        Box::new(move || c8(tol)),
        Box::new(move || c9(seed)),
        Box::new(move || c10(seed, tol)),
        Box::new(move || c11(seed)),
        Box::new(move || c12(seed, tol)),
    ];
    crate::par::map_collect(thunks, |f| f()).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::DEFAULT_QUAD_TOL;

    #[test]
    fn registry_is_ordered_and_passes() {
        let results = run_all(42, DEFAULT_QUAD_TOL).unwrap();
        assert_eq!(results.len(), 12);
        for (i, r) in results.iter().enumerate() {
            assert_eq!(r.id, format!("C{}", i + 1));
            assert_eq!(
                r.status,
                ClaimStatus::Pass,
                "claim {} failed: {:?}",
                r.id,
                r.computed
            );
        }
    }

    #[test]
    fn registry_is_seed_stable() {
        let a = run_all(7, DEFAULT_QUAD_TOL).unwrap();
        let b = run_all(7, DEFAULT_QUAD_TOL).unwrap();
        for (ra, rb) in a.iter().zip(&b) {
            assert_eq!(ra.status, rb.status);
            for (k, v) in &ra.computed {
                assert_eq!(v.to_bits(), rb.computed[k].to_bits(), "{}/{}", ra.id, k);
            }
        }
    }

    #[test]
    fn status_displays_lowercase() {
        assert_eq!(ClaimStatus::Pass.to_string(), "pass");
        assert_eq!(ClaimStatus::Fail.to_string(), "fail");
    }
}
