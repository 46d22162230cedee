//! Curvature tensor and holomorphic sectional curvature from metric
//! components.
//!
//! Every metric in this crate is a sum of radial blocks: over an index
//! range B with block squared radius T_B = sum_{i in B} |z_i|^2, the
//! components are
//!
//!   g_{a bbar} = a(T_B) zbar_a z_b + b(T_B) delta_{ab},  a, b in B.
//!
//! The punctured-space metric is one block with a = U'', b = 1 + U'; the
//! ball metric is one block with a = (dim+1)/(1-T)^2, b = (dim+1)/(1-T);
//! the combined metric on the ball minus a coordinate subspace is both at
//! once (the first over the leading coordinates only).
//!
//! With analytic first and second derivatives of the components, the
//! curvature tensor in the holomorphic direction X contracts to
//!
//!   R(X, Xbar, X, Xbar) = -E + W^T G^{-1} conj(W),
//!
//! where per block, writing p = <X, z>_B and |X|_B^2 for the block-
//! restricted quantities,
//!
//!   E  = a'' |p|^4 + (3a' + b'') |p|^2 |X|_B^2 + (a + b') |X|_B^4,
//!   W_q = a' p^2 z_q + (a + b') p X_q,  q in B,
//!
//! summed over blocks. The sectional curvature is normalized as
//!
//!   hsc = 2 R(X, Xbar, X, Xbar) / g(z, X)^2,
//!
//! the unique scaling under which a one-dimensional metric reproduces the
//! Gaussian curvature -2 h^{-1} ddbar log h of its conformal density; the
//! ball metric then has constant value -4/(dim+1).

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::geometry::{norm_sq, Cx, MetricKind, TangentC, BOUNDARY_GUARD};
use crate::radial;

/// One radial block of a metric: coefficient values and T-derivatives at
/// the block squared radius of a fixed base point.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RadialBlock {
    lo: usize,
    hi: usize,
    a: f64,
    da: f64,
    d2a: f64,
    b: f64,
    db: f64,
    d2b: f64,
}

impl RadialBlock {
    // Used by the uncontracted derivative audits below.
    #[cfg_attr(not(test), allow(dead_code))]
    fn contains(&self, i: usize) -> bool {
        self.lo <= i && i < self.hi
    }
}

pub(crate) fn blocks_for(kind: &MetricKind, z: &[Cx], tol: f64) -> Result<Vec<RadialBlock>> {
    kind.validate()?;
    if z.len() != kind.dim() {
        return Err(Error::domain(format!(
            "point has dimension {}, metric expects {}",
            z.len(),
            kind.dim()
        )));
    }
    let mut blocks = Vec::with_capacity(2);
    match kind {
        MetricKind::GrauertPunctured { n } => {
            blocks.push(grauert_block(&z[..*n], 0, tol)?);
        }
        MetricKind::BergmanBall { n_ambient } => {
            blocks.push(bergman_block(z, *n_ambient)?);
        }
        MetricKind::BallComplement { n_ambient, n_base, .. } => {
            blocks.push(grauert_block(&z[..*n_base], 0, tol)?);
            blocks.push(bergman_block(z, *n_ambient)?);
        }
    }
    Ok(blocks)
}

fn grauert_block(z_block: &[Cx], lo: usize, tol: f64) -> Result<RadialBlock> {
    let t = norm_sq(z_block);
    if t < BOUNDARY_GUARD * BOUNDARY_GUARD {
        return Err(Error::domain(
            "base point too close to the origin or the removed subspace",
        ));
    }
    let p = radial::profile_values_tol(t, tol)?;
    Ok(RadialBlock {
        lo,
        hi: lo + z_block.len(),
        a: p.d2pot,
        da: p.d3pot,
        d2a: p.d4pot,
        b: 1.0 + p.dpot,
        db: p.d2pot,
        d2b: p.d3pot,
    })
}

fn bergman_block(z: &[Cx], n_ambient: usize) -> Result<RadialBlock> {
    let t = norm_sq(z);
    if t.sqrt() > 1.0 - BOUNDARY_GUARD {
        return Err(Error::domain("base point too close to the unit sphere"));
    }
    let np1 = n_ambient as f64 + 1.0;
    let s = 1.0 - t;
    Ok(RadialBlock {
        lo: 0,
        hi: n_ambient,
        a: np1 / (s * s),
        da: 2.0 * np1 / (s * s * s),
        d2a: 6.0 * np1 / (s * s * s * s),
        b: np1 / s,
        db: np1 / (s * s),
        d2b: 2.0 * np1 / (s * s * s),
    })
}

/// Metric component matrix G[(a, b)] = g_{a bbar} at z.
pub(crate) fn component_matrix(blocks: &[RadialBlock], z: &[Cx]) -> DMatrix<Cx> {
    let dim = z.len();
    let mut g = DMatrix::from_element(dim, dim, Cx::new(0.0, 0.0));
    for blk in blocks {
        for alpha in blk.lo..blk.hi {
            for beta in blk.lo..blk.hi {
                let mut val = z[alpha].conj() * z[beta] * blk.a;
                if alpha == beta {
                    val += Cx::new(blk.b, 0.0);
                }
                g[(alpha, beta)] += val;
            }
        }
    }
    g
}

/// Holomorphic derivative d_gamma g_{a qbar} of the component matrix,
/// index layout (a, q). Kept for audits against finite differences of the
/// components.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn component_first_deriv(
    blocks: &[RadialBlock],
    z: &[Cx],
    gamma: usize,
) -> DMatrix<Cx> {
    let dim = z.len();
    let mut m = DMatrix::from_element(dim, dim, Cx::new(0.0, 0.0));
    for blk in blocks {
        if !blk.contains(gamma) {
            continue;
        }
        let zg = z[gamma].conj();
        for alpha in blk.lo..blk.hi {
            for q in blk.lo..blk.hi {
                let mut val = zg * z[alpha].conj() * z[q] * blk.da;
                if q == gamma {
                    val += z[alpha].conj() * blk.a;
                }
                if alpha == q {
                    val += zg * blk.db;
                }
                m[(alpha, q)] += val;
            }
        }
    }
    m
}

/// Mixed second derivative d_gamma dbar_delta g_{a bbar}, layout (a, b).
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn component_mixed_second(
    blocks: &[RadialBlock],
    z: &[Cx],
    gamma: usize,
    delta: usize,
) -> DMatrix<Cx> {
    let dim = z.len();
    let mut m = DMatrix::from_element(dim, dim, Cx::new(0.0, 0.0));
    for blk in blocks {
        if !(blk.contains(gamma) && blk.contains(delta)) {
            continue;
        }
        let zg = z[gamma].conj();
        let zd = z[delta];
        for alpha in blk.lo..blk.hi {
            for beta in blk.lo..blk.hi {
                let za = z[alpha].conj();
                let zb = z[beta];
                let mut val = zd * zg * za * zb * blk.d2a;
                if gamma == delta {
                    val += za * zb * blk.da;
                }
                if alpha == delta {
                    val += zg * zb * blk.da;
                }
                if beta == gamma {
                    val += zd * za * blk.da;
                }
                if alpha == delta && beta == gamma {
                    val += Cx::new(blk.a, 0.0);
                }
                if alpha == beta {
                    val += zd * zg * blk.d2b;
                    if gamma == delta {
                        val += Cx::new(blk.db, 0.0);
                    }
                }
                m[(alpha, beta)] += val;
            }
        }
    }
    m
}

/// Holomorphic-sectional-curvature evaluator with the point-dependent
/// data (radial profiles, component matrix, factorization) prepared once.
pub struct HscEngine {
    z: Vec<Cx>,
    blocks: Vec<RadialBlock>,
    g: DMatrix<Cx>,
    chol: Cholesky<Cx, Dyn>,
}

impl HscEngine {
    pub fn new(kind: &MetricKind, z: &[Cx]) -> Result<Self> {
        Self::new_tol(kind, z, radial::DEFAULT_QUAD_TOL)
    }

    pub fn new_tol(kind: &MetricKind, z: &[Cx], tol: f64) -> Result<Self> {
        let blocks = blocks_for(kind, z, tol)?;
        let g = component_matrix(&blocks, z);
        let chol = g
            .clone()
            .cholesky()
            .ok_or_else(|| Error::Numeric("metric component matrix is not positive definite".into()))?;
        Ok(HscEngine { z: z.to_vec(), blocks, g, chol })
    }

    /// Squared metric length of X at the engine's base point.
    pub fn metric_norm(&self, x: &[Cx]) -> Result<f64> {
        self.check_dim(x)?;
        let mut acc = Cx::new(0.0, 0.0);
        for alpha in 0..self.z.len() {
            for beta in 0..self.z.len() {
                acc += self.g[(alpha, beta)] * x[alpha] * x[beta].conj();
            }
        }
        Ok(acc.re)
    }

    /// Holomorphic sectional curvature along X.
    pub fn hsc(&self, x: &[Cx]) -> Result<f64> {
        self.check_dim(x)?;
        let x2 = norm_sq(x);
        if x2 < 1e-60 {
            return Err(Error::domain("tangent direction must be nonzero"));
        }
        let dim = self.z.len();
        let mut e_term = 0.0;
        let mut w = vec![Cx::new(0.0, 0.0); dim];
        for blk in &self.blocks {
            let mut p = Cx::new(0.0, 0.0);
            let mut xb2 = 0.0;
            for i in blk.lo..blk.hi {
                p += x[i] * self.z[i].conj();
                xb2 += x[i].norm_sqr();
            }
            let pn2 = p.norm_sqr();
            e_term += blk.d2a * pn2 * pn2
                + (3.0 * blk.da + blk.d2b) * pn2 * xb2
                + (blk.a + blk.db) * xb2 * xb2;
            let p2 = p * p;
            let coeff = blk.a + blk.db;
            for q in blk.lo..blk.hi {
                w[q] += p2 * self.z[q] * blk.da + p * x[q] * coeff;
            }
        }
        let rhs = DVector::from_iterator(dim, w.iter().map(|c| c.conj()));
        let sol = self.chol.solve(&rhs);
        let correction: Cx = w.iter().zip(sol.iter()).map(|(a, b)| a * b).sum();
        let r_form = -e_term + correction.re;
        let denom = self.metric_norm(x)?;
        Ok(2.0 * r_form / (denom * denom))
    }

    fn check_dim(&self, x: &[Cx]) -> Result<()> {
        if x.len() != self.z.len() {
            return Err(Error::domain("tangent dimension does not match the base point"));
        }
        Ok(())
    }
}

/// Holomorphic sectional curvature of the metric at z along X.
pub fn hsc(kind: &MetricKind, z: &[Cx], x: &[Cx]) -> Result<f64> {
    HscEngine::new(kind, z)?.hsc(x)
}

/// Result of the extremal-direction search. The reported values are inner
/// bounds: every audited direction satisfies k_minus <= hsc <= k_plus, so
/// the true extremes can only be wider.
#[derive(Debug, Clone)]
pub struct ExtremalHsc {
    pub k_minus: f64,
    pub k_plus: f64,
    pub argmin: TangentC,
    pub argmax: TangentC,
}

/// Default direction-sample count for the extremal search.
pub const DEFAULT_SAMPLES: usize = 256;
/// Default refinement sweeps for the extremal search.
pub const DEFAULT_REFINE_ITERS: usize = 50;

/// Estimate the extreme values of hsc over tangent directions at z by
/// seeded sampling followed by coordinate-wise golden-section refinement
/// on great circles of the direction sphere. Deterministic for a fixed
/// seed, and identical whether or not sample evaluation is parallel.
pub fn extremal_hsc(
    kind: &MetricKind,
    z: &[Cx],
    samples: usize,
    refine_iters: usize,
    seed: u64,
) -> Result<ExtremalHsc> {
    if samples == 0 {
        return Err(Error::domain("need at least one direction sample"));
    }
    let engine = HscEngine::new(kind, z)?;
    let dim = z.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut dirs: Vec<Vec<Cx>> = Vec::with_capacity(samples + dim + 1);
    for j in 0..dim {
        let mut e = vec![Cx::new(0.0, 0.0); dim];
        e[j] = Cx::new(1.0, 0.0);
        dirs.push(e);
    }
    dirs.push(normalize(z));
    for _ in 0..samples {
        let mut d: Vec<Cx> = (0..dim)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Cx::new(re, im)
            })
            .collect();
        if norm_sq(&d) < 1e-30 {
            d[0] = Cx::new(1.0, 0.0);
        }
        dirs.push(normalize(&d));
    }

    // Parallel map, sequential order-stable reduction: the selected seeds
    // do not depend on evaluation order.
    let engine_ref = &engine;
    let values: Vec<Result<f64>> =
        crate::par::map_collect(dirs.clone(), move |d| engine_ref.hsc(&d));
    let mut best_max: Option<(f64, usize)> = None;
    let mut best_min: Option<(f64, usize)> = None;
    for (i, v) in values.into_iter().enumerate() {
        let v = v?;
        if best_max.map_or(true, |(m, _)| v > m) {
            best_max = Some((v, i));
        }
        if best_min.map_or(true, |(m, _)| v < m) {
            best_min = Some((v, i));
        }
    }
    let (max0, imax) = best_max.expect("at least one direction");
    let (min0, imin) = best_min.expect("at least one direction");

    let (argmax, k_plus) = refine(&engine, &dirs[imax], max0, true, refine_iters)?;
    let (argmin, k_minus) = refine(&engine, &dirs[imin], min0, false, refine_iters)?;
    Ok(ExtremalHsc { k_minus, k_plus, argmin, argmax })
}

fn normalize(v: &[Cx]) -> Vec<Cx> {
    let n = norm_sq(v).sqrt();
    v.iter().map(|c| c / n).collect()
}

/// Coordinate-wise refinement: sweep the 2*dim chart axes (real and
/// imaginary unit vectors), moving along the great circle toward each and
/// keeping golden-section optima; the angular span contracts each sweep.
fn refine(
    engine: &HscEngine,
    start: &[Cx],
    start_val: f64,
    maximize: bool,
    iters: usize,
) -> Result<(Vec<Cx>, f64)> {
    let dim = start.len();
    let mut x = start.to_vec();
    let mut best = start_val;
    let mut span = std::f64::consts::FRAC_PI_2;
    for _ in 0..iters {
        for axis in 0..dim {
            for phase in [Cx::new(1.0, 0.0), Cx::new(0.0, 1.0)] {
                let mut w = vec![Cx::new(0.0, 0.0); dim];
                w[axis] = phase;
                // Component of the axis orthogonal to the current direction.
                let overlap = crate::geometry::hermitian_inner(&w, &x);
                for (wi, xi) in w.iter_mut().zip(&x) {
                    *wi -= overlap * xi;
                }
                let wn = norm_sq(&w);
                if wn < 1e-20 {
                    continue;
                }
                let what = normalize(&w);
                let eval = |theta: f64| -> Result<f64> {
                    let (c, s) = (theta.cos(), theta.sin());
                    let cand: Vec<Cx> = x
                        .iter()
                        .zip(&what)
                        .map(|(a, b)| a * c + b * s)
                        .collect();
                    engine.hsc(&cand)
                };
                let (theta, val) = golden(eval, -span, span, 32, maximize)?;
                let improved = if maximize { val > best } else { val < best };
                if improved {
                    best = val;
                    let (c, s) = (theta.cos(), theta.sin());
                    x = normalize(
                        &x.iter()
                            .zip(&what)
                            .map(|(a, b)| a * c + b * s)
                            .collect::<Vec<_>>(),
                    );
                }
            }
        }
        span *= 0.6;
    }
    Ok((x, best))
}

/// Golden-section search returning the best (angle, value) seen,
/// including the endpoints and final interior probes.
fn golden<F: Fn(f64) -> Result<f64>>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    iters: usize,
    maximize: bool,
) -> Result<(f64, f64)> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let sign = if maximize { 1.0 } else { -1.0 };
    let mut best = (0.0, sign * f(0.0)?);
    let consider = |th: f64, scaled: f64, best: &mut (f64, f64)| {
        if scaled > best.1 {
            *best = (th, scaled);
        }
    };
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = sign * f(c)?;
    let mut fd = sign * f(d)?;
    consider(c, fc, &mut best);
    consider(d, fd, &mut best);
    for _ in 0..iters {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = sign * f(c)?;
            consider(c, fc, &mut best);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = sign * f(d)?;
            consider(d, fd, &mut best);
        }
    }
    Ok((best.0, sign * best.1))
}
