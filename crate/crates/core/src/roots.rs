//! Bracketing root search on sampled grids.
//!
//! Odd-order roots show up as sign changes of `f`; even-order roots are
//! sign changes of `f'` where `|f|` is negligible. Both are refined by
//! bisection, so a root search needs `f` and its exact derivative.

use crate::error::{EnvError, Result};

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    /// Number of grid intervals over the search domain.
    pub samples: usize,
    /// Bisection stops once the bracket is narrower than this.
    pub tol: f64,
    /// Even-order candidates are accepted when `|f| < accept · max|f|`.
    pub accept: f64,
    /// Roots closer than this are merged.
    pub merge: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self { samples: 4096, tol: 1e-13, accept: 1e-8, merge: 1e-9 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub t: f64,
    /// Found through `f'` without a sign change of `f`.
    pub even: bool,
}

/// Bisects a bracket `[lo, hi]` with `f(lo)·f(hi) <= 0`.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let mut flo = f(lo);
    if flo == 0.0 {
        return Ok(lo);
    }
    let fhi = f(hi);
    if fhi == 0.0 {
        return Ok(hi);
    }
    if !flo.is_finite() || !fhi.is_finite() {
        return Err(EnvError::UnresolvedRoot { lo, hi });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if !fm.is_finite() {
            return Err(EnvError::UnresolvedRoot { lo, hi });
        }
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// All roots of `f` in `[lo, hi)` (periodic) or `[lo, hi]`.
pub fn find_roots<F, D>(
    f: F,
    df: D,
    lo: f64,
    hi: f64,
    periodic: bool,
    opts: &RootOptions,
) -> Result<Vec<Root>>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let n = opts.samples.max(8);
    let h = (hi - lo) / n as f64;
    let grid: Vec<f64> = (0..=n).map(|i| if i == n { hi } else { lo + h * i as f64 }).collect();
    let fv: Vec<f64> = grid.iter().map(|&t| f(t)).collect();
    let dv: Vec<f64> = grid.iter().map(|&t| df(t)).collect();
    if fv.iter().chain(dv.iter()).any(|v| !v.is_finite()) {
        return Err(EnvError::UnresolvedRoot { lo, hi });
    }
    let scale = fv.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Ok(Vec::new());
    }
    let accept = opts.accept * scale;

    let mut roots = Vec::new();
    for i in 0..n {
        let (a, b) = (grid[i], grid[i + 1]);
        let (fa, fb) = (fv[i], fv[i + 1]);
        if fa == 0.0 {
            let before = if i > 0 { fv[i - 1] } else if periodic { fv[n - 1] } else { fb };
            roots.push(Root { t: a, even: before * fb > 0.0 });
            continue;
        }
        if fa * fb < 0.0 {
            roots.push(Root { t: bisect(&f, a, b, opts.tol)?, even: false });
        }
        if dv[i] * dv[i + 1] < 0.0 {
            let tm = bisect(&df, a, b, opts.tol)?;
            let fm = f(tm);
            if fm.abs() <= accept {
                roots.push(Root { t: tm, even: true });
            } else if fa * fb > 0.0 && (fm < 0.0) != (fa < 0.0) {
                // two simple roots hiding inside one grid cell
                roots.push(Root { t: bisect(&f, a, tm, opts.tol)?, even: false });
                roots.push(Root { t: bisect(&f, tm, b, opts.tol)?, even: false });
            }
        }
    }
    if !periodic && fv[n] == 0.0 {
        roots.push(Root { t: hi, even: false });
    }

    let period = hi - lo;
    for r in roots.iter_mut() {
        if periodic && r.t >= hi {
            r.t -= period;
        }
    }
    roots.sort_by(|x, y| x.t.total_cmp(&y.t));
    let mut merged: Vec<Root> = Vec::with_capacity(roots.len());
    for r in roots {
        match merged.last_mut() {
            Some(last) if (r.t - last.t).abs() < opts.merge => {
                // prefer the sign-change location, remember evenness
                if last.even && !r.even {
                    last.t = r.t;
                }
                last.even &= r.even;
            }
            _ => merged.push(r),
        }
    }
    if periodic && merged.len() > 1 {
        let first = merged[0];
        let last = *merged.last().unwrap();
        if first.t + period - last.t < opts.merge {
            merged.pop();
        }
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn simple_roots_of_sine() {
        let r = find_roots(|t: f64| (3.0 * t).sin(), |t: f64| 3.0 * (3.0 * t).cos(), 0.0, TAU, true, &RootOptions::default())
            .unwrap();
        assert_eq!(r.len(), 6);
        for (i, root) in r.iter().enumerate() {
            assert!((root.t - i as f64 * PI / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn double_roots_found_without_sign_change() {
        let f = |t: f64| 1.0 - (2.0 * t).cos();
        let df = |t: f64| 2.0 * (2.0 * t).sin();
        let r = find_roots(f, df, 0.0, TAU, true, &RootOptions { samples: 97, ..Default::default() }).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|x| x.even));
        assert!((r[1].t - PI).abs() < 1e-12);
    }

    #[test]
    fn close_pair_inside_one_cell() {
        // roots at 1 ± 1e-3, grid spacing far larger
        let f = |t: f64| (t - 1.0).powi(2) - 1e-6;
        let df = |t: f64| 2.0 * (t - 1.0);
        let r = find_roots(f, df, 0.0, 3.0, false, &RootOptions { samples: 10, ..Default::default() }).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].t - 0.999).abs() < 1e-12 && (r[1].t - 1.001).abs() < 1e-12);
    }

    #[test]
    fn triple_root_is_a_sign_change() {
        let r = find_roots(|t: f64| (t - 0.3).powi(3), |t: f64| 3.0 * (t - 0.3).powi(2), -1.0, 1.0, false, &RootOptions::default())
            .unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].t - 0.3).abs() < 1e-4);
    }
}
