//! Bracketed root location: sign-change scans over log-spaced grids plus
//! plain bisection. All searches here are deterministic.

use crate::error::{Error, Result};

/// Log-spaced grid of `count` points from `lo` to `hi` inclusive.
///
/// pre: 0 < lo < hi, count >= 2.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo) || count < 2 {
        return Err(Error::domain(format!(
            "log grid needs 0 < lo < hi and count >= 2, got [{lo}, {hi}] x {count}"
        )));
    }
    let (la, lb) = (lo.ln(), hi.ln());
    let step = (lb - la) / (count - 1) as f64;
    Ok((0..count)
        .map(|k| {
            // Pin both endpoints: exp(ln x) can drift by an ulp.
            if k == 0 {
                lo
            } else if k == count - 1 {
                hi
            } else {
                (la + step * k as f64).exp()
            }
        })
        .collect())
}

/// All sign-change brackets of `f` along `grid` (adjacent samples with
/// strictly opposite signs; exact zeros bracket themselves).
pub fn sign_changes<F: Fn(f64) -> Result<f64>>(f: F, grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for &t in grid {
        let ft = f(t)?;
        if let Some((tp, fp)) = prev {
            if fp == 0.0 || (fp < 0.0) != (ft < 0.0) {
                out.push((tp, t));
            }
        }
        prev = Some((t, ft));
    }
    Ok(out)
}

/// Bisection on a bracketing interval, to absolute width `tol`.
///
/// pre: f(lo) and f(hi) have opposite signs (or one endpoint is a zero).
pub fn bisect<F: Fn(f64) -> Result<f64>>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a)?;
    let fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if (fa < 0.0) == (fb < 0.0) {
        return Err(Error::Search(format!(
            "no sign change on [{a}, {b}]: f = {fa:.3e}, {fb:.3e}"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if (b - a).abs() <= tol || mid == a || mid == b {
            return Ok(mid);
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_are_exact() {
        let g = log_grid(1e-6, 1e6, 1024).unwrap();
        assert_eq!(g.len(), 1024);
        assert_eq!(g[0], 1e-6);
        assert_eq!(g[1023], 1e6);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn finds_simple_root() {
        let r = bisect(|x| Ok(x * x - 2.0), 1.0, 2.0, 1e-12).unwrap();
        assert!((r - 2.0_f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn scan_then_bisect() {
        let grid = log_grid(0.1, 10.0, 200).unwrap();
        let brackets = sign_changes(|t| Ok(t.ln()), &grid).unwrap();
        assert_eq!(brackets.len(), 1);
        let (a, b) = brackets[0];
        let root = bisect(|t| Ok(t.ln()), a, b, 1e-10).unwrap();
        assert!((root - 1.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_unbracketed() {
        assert!(bisect(|x| Ok(x * x + 1.0), -1.0, 1.0, 1e-9).is_err());
    }
}
