//! Points, tangent vectors, the three metrics, and the diagonal vector
//! field with its flow.
//!
//! The metrics:
//!
//! * `grauert_metric` — the complete rotation-invariant metric on
//!   punctured complex space, `g(z, X) = (1 + v/t)|X|^2 +
//!   (u^2 - v/t^2)|<X, z>|^2` with `t = |z|^2`;
//! * `bergman_metric` — the constant-curvature metric of the unit ball,
//!   scaled by `(dim + 1)`;
//! * `ball_complement_metric` — the sum of the first metric pulled back
//!   through the projection onto the leading `n` coordinates and the
//!   second, which is complete on the ball minus the codimension-`n`
//!   coordinate subspace.
//!
//! The diagonal field `X(z) = (z_1, ..., z_{n-1}, alpha * z_n)` with
//! `alpha < 0` foliates the punctured space by complex curves; its flow is
//! closed-form. `sample_s` draws points of the locus where the field is
//! Hermitian-orthogonal to the radial direction, which is where the
//! closed-form leafwise curvature applies.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::radial;

/// Complex scalar used throughout.
pub type Cx = Complex<f64>;

/// A point of complex n-space, coordinates in order.
pub type PointC = Vec<Cx>;

/// A tangent vector at some base point; same length as the point.
pub type TangentC = Vec<Cx>;

/// Points closer than this to the origin, to the removed subspace, or to
/// the unit sphere are rejected rather than regularized.
pub const BOUNDARY_GUARD: f64 = 1e-10;

/// The linear diagonal vector field with a lone negative exponent on the
/// last coordinate; its only singularity is the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalField {
    pub n: usize,
    pub alpha: f64,
}

impl DiagonalField {
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("field dimension must be at least 1"));
        }
        if !(alpha.is_finite() && alpha < 0.0) {
            return Err(Error::domain(format!("field exponent must be finite and negative, got {alpha}")));
        }
        Ok(Self { n, alpha })
    }
}

/// Which metric is in force.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricKind {
    /// Punctured complex n-space.
    GrauertPunctured { n: usize },
    /// Unit ball of the given dimension with the constant-curvature metric.
    BergmanBall { n_ambient: usize },
    /// Unit ball of dimension `n_ambient` minus the subspace where the
    /// first `n_base` coordinates vanish; `w` is the base slice point
    /// (full-length, first `n_base` coordinates zero).
    BallComplement {
        n_ambient: usize,
        n_base: usize,
        w: Vec<Cx>,
    },
}

impl MetricKind {
    pub fn validate(&self) -> Result<()> {
        match self {
            MetricKind::GrauertPunctured { n } => {
                if *n == 0 {
                    return Err(Error::domain("dimension must be at least 1"));
                }
            }
            MetricKind::BergmanBall { n_ambient } => {
                if *n_ambient == 0 {
                    return Err(Error::domain("dimension must be at least 1"));
                }
            }
            MetricKind::BallComplement { n_ambient, n_base, w } => {
                if !(2 <= *n_base && n_base <= n_ambient) {
                    return Err(Error::domain(format!(
                        "need 2 <= base dimension <= ambient dimension, got {n_base} and {n_ambient}"
                    )));
                }
                if w.len() != *n_ambient {
                    return Err(Error::domain(format!(
                        "slice point has length {}, expected {}",
                        w.len(),
                        n_ambient
                    )));
                }
                if w[..*n_base].iter().any(|c| c.norm_sqr() != 0.0) {
                    return Err(Error::domain(
                        "slice point must vanish in the first base-dimension coordinates",
                    ));
                }
                if norm_sq(w) >= 1.0 {
                    return Err(Error::domain("slice point must lie inside the unit ball"));
                }
            }
        }
        Ok(())
    }

    /// Ambient dimension of points this metric acts on.
    pub fn dim(&self) -> usize {
        match self {
            MetricKind::GrauertPunctured { n } => *n,
            MetricKind::BergmanBall { n_ambient } => *n_ambient,
            MetricKind::BallComplement { n_ambient, .. } => *n_ambient,
        }
    }

    /// Squared slice radius 1 - |w|^2 (ball-complement only).
    pub fn r2(&self) -> Option<f64> {
        match self {
            MetricKind::BallComplement { w, .. } => Some(1.0 - norm_sq(w)),
            _ => None,
        }
    }
}

/// Hermitian inner product <X, z> = sum X_i * conj(z_i).
pub fn hermitian_inner(x: &[Cx], z: &[Cx]) -> Cx {
    x.iter().zip(z).map(|(a, b)| a * b.conj()).sum()
}

/// Squared Euclidean norm.
pub fn norm_sq(z: &[Cx]) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum()
}

/// |V|^2 |W|^2 - |<V, W>|^2, clamped at zero: it is a Gram determinant,
/// mathematically nonnegative, but roundoff can push it slightly below.
pub fn wedge_norm_sq(v: &[Cx], w: &[Cx]) -> Result<f64> {
    if v.len() != w.len() {
        return Err(Error::domain("wedge of vectors of different dimensions"));
    }
    let val = norm_sq(v) * norm_sq(w) - hermitian_inner(v, w).norm_sqr();
    Ok(val.max(0.0))
}

fn check_pair(z: &[Cx], x: &[Cx]) -> Result<()> {
    if z.is_empty() {
        return Err(Error::domain("empty point"));
    }
    if z.len() != x.len() {
        return Err(Error::domain(format!(
            "point and tangent dimensions differ: {} vs {}",
            z.len(),
            x.len()
        )));
    }
    Ok(())
}

/// Squared length of X in the punctured-space metric at z.
pub fn grauert_metric(z: &[Cx], x: &[Cx]) -> Result<f64> {
    grauert_metric_tol(z, x, radial::DEFAULT_QUAD_TOL)
}

pub fn grauert_metric_tol(z: &[Cx], x: &[Cx], tol: f64) -> Result<f64> {
    check_pair(z, x)?;
    let t = norm_sq(z);
    if t < BOUNDARY_GUARD * BOUNDARY_GUARD {
        return Err(Error::domain("base point too close to the origin"));
    }
    let u = radial::eval_u(t)?;
    let v = radial::eval_v_tol(t, tol)?;
    let radial_part = hermitian_inner(x, z).norm_sqr();
    Ok((1.0 + v / t) * norm_sq(x) + (u * u - v / (t * t)) * radial_part)
}

/// Squared length of X in the ball metric at z; `n_ambient` fixes the
/// curvature scale (dim + 1) and must match the coordinate count.
pub fn bergman_metric(n_ambient: usize, z: &[Cx], x: &[Cx]) -> Result<f64> {
    check_pair(z, x)?;
    if z.len() != n_ambient {
        return Err(Error::domain(format!(
            "point has dimension {}, metric expects {}",
            z.len(),
            n_ambient
        )));
    }
    let t = norm_sq(z);
    if t >= 1.0 {
        return Err(Error::domain("base point outside the open unit ball"));
    }
    let s = 1.0 - t;
    let radial_part = hermitian_inner(x, z).norm_sqr();
    Ok((n_ambient as f64 + 1.0) * (radial_part / (s * s) + norm_sq(x) / s))
}

/// Squared length of X in the combined metric on the ball minus the
/// coordinate subspace: pullback of the punctured-space metric through
/// the projection onto the first `n_base` coordinates, plus the ball
/// metric.
pub fn ball_complement_metric(kind: &MetricKind, z: &[Cx], x: &[Cx]) -> Result<f64> {
    ball_complement_metric_tol(kind, z, x, radial::DEFAULT_QUAD_TOL)
}

pub fn ball_complement_metric_tol(kind: &MetricKind, z: &[Cx], x: &[Cx], tol: f64) -> Result<f64> {
    let (n_ambient, n_base) = match kind {
        MetricKind::BallComplement { n_ambient, n_base, .. } => (*n_ambient, *n_base),
        _ => return Err(Error::domain("metric kind is not the ball-complement metric")),
    };
    kind.validate()?;
    check_pair(z, x)?;
    if z.len() != n_ambient {
        return Err(Error::domain(format!(
            "point has dimension {}, metric expects {}",
            z.len(),
            n_ambient
        )));
    }
    let projected = norm_sq(&z[..n_base]);
    if projected < BOUNDARY_GUARD * BOUNDARY_GUARD {
        return Err(Error::domain("base point too close to the removed subspace"));
    }
    let pulled_back = grauert_metric_tol(&z[..n_base], &x[..n_base], tol)?;
    // The pullback on the first block includes its own Euclidean term, so
    // this is the full combined metric.
    Ok(pulled_back + bergman_metric(n_ambient, z, x)?)
}

/// Squared length of X at z under whichever metric `kind` selects.
pub fn metric_norm(kind: &MetricKind, z: &[Cx], x: &[Cx]) -> Result<f64> {
    metric_norm_tol(kind, z, x, radial::DEFAULT_QUAD_TOL)
}

pub fn metric_norm_tol(kind: &MetricKind, z: &[Cx], x: &[Cx], tol: f64) -> Result<f64> {
    match kind {
        MetricKind::GrauertPunctured { n } => {
            if z.len() != *n {
                return Err(Error::domain("point dimension does not match metric"));
            }
            grauert_metric_tol(z, x, tol)
        }
        MetricKind::BergmanBall { n_ambient } => bergman_metric(*n_ambient, z, x),
        MetricKind::BallComplement { .. } => ball_complement_metric_tol(kind, z, x, tol),
    }
}

/// The field value X(z) and the derivative of the field along itself,
/// DX(z)(X(z)); for the diagonal field these are componentwise
/// (z_1, ..., z_{n-1}, a z_n) and (z_1, ..., z_{n-1}, a^2 z_n).
pub fn field_eval(field: &DiagonalField, z: &[Cx]) -> Result<(TangentC, TangentC)> {
    if z.len() != field.n {
        return Err(Error::domain(format!(
            "point has dimension {}, field expects {}",
            z.len(),
            field.n
        )));
    }
    let a = field.alpha;
    let mut x = z.to_vec();
    let mut dxx = z.to_vec();
    let last = field.n - 1;
    x[last] *= a;
    dxx[last] *= a * a;
    Ok((x, dxx))
}

/// Time-T point of the leaf through z: coordinates scale by e^T except the
/// last, which scales by e^{alpha T}. Solves dZ/dT = X(Z), Z(0) = z.
pub fn flow(field: &DiagonalField, z: &[Cx], t_time: Cx) -> Result<PointC> {
    if z.len() != field.n {
        return Err(Error::domain(format!(
            "point has dimension {}, field expects {}",
            z.len(),
            field.n
        )));
    }
    let e = t_time.exp();
    let ea = (t_time * field.alpha).exp();
    let last = field.n - 1;
    let mut out = z.to_vec();
    for c in out.iter_mut().take(last) {
        *c *= e;
    }
    out[last] *= ea;
    Ok(out)
}

/// Draw a point of the orthogonality locus { <z, X(z)> = 0 } with squared
/// norm exactly rescaled to `t`. Construction: random Gaussian first
/// block z', random phase for the last coordinate with |z_n|^2 =
/// |z'|^2 / (-alpha), so the defining equation |z'|^2 + alpha |z_n|^2 = 0
/// holds identically; then rescale to |z|^2 = t.
pub fn sample_s<R: Rng>(field: &DiagonalField, t: f64, rng: &mut R) -> Result<PointC> {
    if field.n < 2 {
        return Err(Error::domain("orthogonality locus needs dimension at least 2"));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::domain(format!("target squared radius must be positive, got {t}")));
    }
    let head_dim = field.n - 1;
    let mut head: Vec<Cx> = Vec::with_capacity(head_dim);
    loop {
        head.clear();
        for _ in 0..head_dim {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            head.push(Cx::new(re, im));
        }
        if norm_sq(&head) > 1e-30 {
            break;
        }
    }
    let head_sq = norm_sq(&head);
    let last_mod = (head_sq / (-field.alpha)).sqrt();
    let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let mut z = head;
    z.push(Cx::from_polar(last_mod, phase));
    let scale = (t / norm_sq(&z)).sqrt();
    for c in z.iter_mut() {
        *c *= scale;
    }
    Ok(z)
}

/// Extend a base-dimension point to the ambient dimension along the slice
/// through `w` (whose leading coordinates are zero).
pub fn embed_in_slice(z_tilde: &[Cx], w: &[Cx]) -> Result<PointC> {
    if z_tilde.len() > w.len() {
        return Err(Error::domain("embedded point must not have more coordinates than the slice point"));
    }
    let mut out = z_tilde.to_vec();
    out.extend_from_slice(&w[z_tilde.len()..]);
    Ok(out)
}

/// Extend a base-dimension tangent by zeros to the ambient dimension.
pub fn embed_tangent(x_tilde: &[Cx], n_ambient: usize) -> Result<TangentC> {
    if x_tilde.len() > n_ambient {
        return Err(Error::domain("tangent longer than ambient dimension"));
    }
    let mut out = x_tilde.to_vec();
    out.resize(n_ambient, Cx::new(0.0, 0.0));
    Ok(out)
}

/// Haar-distributed unitary matrix of the given dimension, obtained by
/// QR-factoring a complex Gaussian matrix and fixing the phases so the
/// triangular factor has positive diagonal.
pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> nalgebra::DMatrix<Cx> {
    let m = nalgebra::DMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Cx::new(re, im)
    });
    let qr = m.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for i in 0..dim {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// Apply a square matrix to a coordinate vector.
pub fn apply_matrix(m: &nalgebra::DMatrix<Cx>, z: &[Cx]) -> Vec<Cx> {
    let v = nalgebra::DVector::from_column_slice(z);
    let out = m * v;
    out.iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Cx {
        Cx::new(re, im)
    }

    fn random_point<R: Rng>(dim: usize, rng: &mut R) -> Vec<Cx> {
        (0..dim)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                c(re, im)
            })
            .collect()
    }

    #[test]
    fn grauert_metric_zero_tangent() {
        let z = vec![c(1.0, 0.0), c(0.0, 1.0)];
        let x = vec![c(0.0, 0.0), c(0.0, 0.0)];
        assert_eq!(grauert_metric(&z, &x).unwrap(), 0.0);
    }

    #[test]
    fn grauert_metric_dominates_euclidean() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let dim = 2 + (rng.gen_range(0..3) as usize);
            let z = random_point(dim, &mut rng);
            let x = random_point(dim, &mut rng);
            let g = grauert_metric(&z, &x).unwrap();
            assert!(g - norm_sq(&x) >= -1e-12, "metric fell below the Euclidean norm");
        }
    }

    #[test]
    fn grauert_metric_unitary_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let z = random_point(3, &mut rng);
            let x = random_point(3, &mut rng);
            let uu = random_unitary(3, &mut rng);
            let g1 = grauert_metric(&z, &x).unwrap();
            let g2 = grauert_metric(&apply_matrix(&uu, &z), &apply_matrix(&uu, &x)).unwrap();
            assert!((g1 - g2).abs() <= 1e-12 * g1.abs().max(1.0), "{g1} vs {g2}");
        }
    }

    #[test]
    fn grauert_metric_rejects_origin() {
        let z = vec![c(1e-11, 0.0), c(0.0, 0.0)];
        let x = vec![c(1.0, 0.0), c(0.0, 0.0)];
        assert!(grauert_metric(&z, &x).is_err());
    }

    #[test]
    fn bergman_metric_at_center() {
        let z = vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let x = vec![c(1.0, 2.0), c(0.0, 1.0), c(0.5, 0.0)];
        let g = bergman_metric(3, &z, &x).unwrap();
        assert!((g - 4.0 * norm_sq(&x)).abs() < 1e-14);
    }

    #[test]
    fn bergman_metric_one_dim_collapse() {
        // In one variable the two terms combine to 2|X|^2/(1-|z|^2)^2.
        let z = vec![c(0.5, 0.0)];
        let x = vec![c(1.0, 0.0)];
        let g = bergman_metric(1, &z, &x).unwrap();
        assert!((g - 32.0 / 9.0).abs() < 1e-14, "{g}");
        let direct = 2.0 / (1.0 - 0.25f64).powi(2);
        assert!((g - direct).abs() < 1e-14);
    }

    #[test]
    fn bergman_metric_rejects_outside() {
        let z = vec![c(0.8, 0.0), c(0.0, 0.7)];
        let x = vec![c(1.0, 0.0), c(0.0, 0.0)];
        assert!(bergman_metric(2, &z, &x).is_err());
    }

    #[test]
    fn ball_complement_reduces_on_kernel() {
        // Tangents killed by the projection see only the ball metric.
        let kind = MetricKind::BallComplement {
            n_ambient: 3,
            n_base: 2,
            w: vec![c(0.0, 0.0), c(0.0, 0.0), c(0.3, 0.0)],
        };
        let z = vec![c(0.2, 0.1), c(0.1, 0.0), c(0.3, 0.0)];
        let x = vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, -2.0)];
        let full = ball_complement_metric(&kind, &z, &x).unwrap();
        let bergman_only = bergman_metric(3, &z, &x).unwrap();
        assert!((full - bergman_only).abs() < 1e-12 * full.max(1.0));
    }

    #[test]
    fn ball_complement_full_base_case() {
        // When the base dimension equals the ambient one the projection is
        // the identity and the two pieces add on the same coordinates.
        let kind = MetricKind::BallComplement {
            n_ambient: 2,
            n_base: 2,
            w: vec![c(0.0, 0.0), c(0.0, 0.0)],
        };
        let z = vec![c(0.3, 0.1), c(0.1, -0.2)];
        let x = vec![c(0.5, 0.2), c(-0.1, 0.4)];
        let combined = ball_complement_metric(&kind, &z, &x).unwrap();
        let split = grauert_metric(&z, &x).unwrap() + bergman_metric(2, &z, &x).unwrap();
        assert!((combined - split).abs() < 1e-12 * combined.max(1.0));
    }

    #[test]
    fn ball_complement_dominates_bergman() {
        let kind = MetricKind::BallComplement {
            n_ambient: 3,
            n_base: 2,
            w: vec![c(0.0, 0.0), c(0.0, 0.0), c(0.25, -0.1)],
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let mut z = random_point(3, &mut rng);
            let scale = 0.5 / norm_sq(&z).sqrt().max(1.0);
            for cc in z.iter_mut() {
                *cc *= scale;
            }
            let x = random_point(3, &mut rng);
            if norm_sq(&z[..2]) < 1e-6 {
                continue;
            }
            let full = ball_complement_metric(&kind, &z, &x).unwrap();
            let berg = bergman_metric(3, &z, &x).unwrap();
            assert!(full >= berg - 1e-12, "pullback part went negative");
        }
    }

    #[test]
    fn field_eval_examples() {
        let f = DiagonalField::new(2, -1.0).unwrap();
        let (x, dxx) = field_eval(&f, &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(x, vec![c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(dxx, vec![c(1.0, 0.0), c(0.0, 0.0)]);

        let f2 = DiagonalField::new(2, -2.0).unwrap();
        let (x2, dxx2) = field_eval(&f2, &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(x2, vec![c(0.0, 0.0), c(-2.0, 0.0)]);
        assert_eq!(dxx2, vec![c(0.0, 0.0), c(4.0, 0.0)]);

        let f3 = DiagonalField::new(3, -1.0).unwrap();
        let z = vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)];
        let (x3, _) = field_eval(&f3, &z).unwrap();
        let ip = hermitian_inner(&z, &x3);
        assert!((ip - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn field_rejects_nonnegative_exponent() {
        assert!(DiagonalField::new(2, 0.0).is_err());
        assert!(DiagonalField::new(2, 1.0).is_err());
        assert!(DiagonalField::new(2, f64::NAN).is_err());
    }

    #[test]
    fn flow_initial_condition_and_group_law() {
        let f = DiagonalField::new(3, -1.5).unwrap();
        let z = vec![c(1.0, 0.5), c(-0.3, 0.2), c(0.4, -0.1)];
        let z0 = flow(&f, &z, c(0.0, 0.0)).unwrap();
        for (a, b) in z0.iter().zip(&z) {
            assert!((a - b).norm() < 1e-15);
        }
        let t1 = c(0.3, -0.2);
        let t2 = c(-0.1, 0.4);
        let once = flow(&f, &flow(&f, &z, t1).unwrap(), t2).unwrap();
        let both = flow(&f, &z, t1 + t2).unwrap();
        for (a, b) in once.iter().zip(&both) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn flow_velocity_matches_field() {
        let f = DiagonalField::new(2, -0.7).unwrap();
        let z = vec![c(0.8, 0.1), c(0.2, -0.5)];
        let s = 1e-6;
        let plus = flow(&f, &z, c(s, 0.0)).unwrap();
        let minus = flow(&f, &z, c(-s, 0.0)).unwrap();
        let (x, _) = field_eval(&f, &z).unwrap();
        for i in 0..2 {
            let fd = (plus[i] - minus[i]) / (2.0 * s);
            assert!((fd - x[i]).norm() < 1e-5 * x[i].norm().max(1.0));
        }
    }

    #[test]
    fn sample_s_lands_on_locus() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for &alpha in &[-0.5, -1.0, -2.0, -7.0] {
            for &n in &[2usize, 3, 4] {
                let f = DiagonalField::new(n, alpha).unwrap();
                let t = 2.5;
                let z = sample_s(&f, t, &mut rng).unwrap();
                let (x, dxx) = field_eval(&f, &z).unwrap();
                let ip = hermitian_inner(&z, &x).norm();
                assert!(ip < 1e-12 * norm_sq(&z).sqrt() * norm_sq(&x).sqrt());
                assert!((norm_sq(&z) - t).abs() < 1e-12 * t);

                // The locus identities tie everything to |z_n|^2.
                let zn2 = z[n - 1].norm_sqr();
                let a = alpha;
                assert!((norm_sq(&z) - (1.0 - a) * zn2).abs() < 1e-10 * norm_sq(&z));
                assert!((norm_sq(&x) - (a * a - a) * zn2).abs() < 1e-10 * norm_sq(&x));
                assert!((norm_sq(&dxx) - (a.powi(4) - a) * zn2).abs() < 1e-10 * norm_sq(&dxx));
                let ip_dz = hermitian_inner(&dxx, &z);
                assert!((ip_dz - c((a * a - a) * zn2, 0.0)).norm() < 1e-10 * ip_dz.norm());
                // At alpha = -1 the target is exactly zero, so scale the
                // tolerance by the point rather than the value.
                let ip_dx = hermitian_inner(&dxx, &x);
                assert!(
                    (ip_dx - c((a.powi(3) - a) * zn2, 0.0)).norm()
                        < 1e-10 * norm_sq(&z).max(ip_dx.norm())
                );
                let wedge = wedge_norm_sq(&x, &dxx).unwrap();
                let expect = (a * a - a).powi(3) * zn2.powi(3);
                assert!((norm_sq(&z) * wedge - expect).abs() < 1e-10 * expect);
            }
        }
    }

    #[test]
    fn wedge_basic() {
        let v = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let w = vec![c(0.0, 0.0), c(1.0, 0.0)];
        assert_eq!(wedge_norm_sq(&v, &w).unwrap(), 1.0);
        let lam = c(2.0, -3.0);
        let w2: Vec<Cx> = v.iter().map(|a| a * lam).collect();
        assert!(wedge_norm_sq(&v, &w2).unwrap() < 1e-12);
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let uu = random_unitary(4, &mut rng);
        let prod = uu.adjoint() * &uu;
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((prod[(i, j)] - c(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn slice_embedding() {
        let w = vec![c(0.0, 0.0), c(0.0, 0.0), c(0.3, 0.4)];
        let z_t = vec![c(0.1, 0.0), c(0.0, 0.2)];
        let z = embed_in_slice(&z_t, &w).unwrap();
        assert_eq!(z.len(), 3);
        assert_eq!(z[2], c(0.3, 0.4));
        let x = embed_tangent(&z_t, 3).unwrap();
        assert_eq!(x[2], c(0.0, 0.0));
    }

    #[test]
    fn metric_kind_validation() {
        assert!(MetricKind::GrauertPunctured { n: 2 }.validate().is_ok());
        assert!(MetricKind::BallComplement {
            n_ambient: 3,
            n_base: 2,
            w: vec![c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)],
        }
        .validate()
        .is_ok());
        // Slice point must vanish on the base block.
        assert!(MetricKind::BallComplement {
            n_ambient: 3,
            n_base: 2,
            w: vec![c(0.1, 0.0), c(0.0, 0.0), c(0.5, 0.0)],
        }
        .validate()
        .is_err());
        // Slice point must be inside the ball.
        assert!(MetricKind::BallComplement {
            n_ambient: 3,
            n_base: 2,
            w: vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        }
        .validate()
        .is_err());
        assert!(MetricKind::BallComplement {
            n_ambient: 3,
            n_base: 1,
            w: vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        }
        .validate()
        .is_err());
    }
}
