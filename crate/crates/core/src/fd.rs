//! Richardson-extrapolated central differences for curve derivatives.

use crate::curve::Point;

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Central `k`-th difference quotient with step `h` (symmetric stencil, so
/// the error expands in even powers of `h`).
fn central<F: Fn(f64) -> Option<Point>>(f: &F, t0: f64, k: usize, h: f64) -> Option<Point> {
    let mut acc = [0.0, 0.0];
    for j in 0..=k {
        let w = binomial(k, j) * if j % 2 == 0 { 1.0 } else { -1.0 };
        let p = f(t0 + (k as f64 / 2.0 - j as f64) * h)?;
        acc[0] += w * p[0];
        acc[1] += w * p[1];
    }
    let hk = h.powi(k as i32);
    Some([acc[0] / hk, acc[1] / hk])
}

/// `k`-th derivative of `f` at `t0` from steps `h, h/2, …, h/2^(levels-1)`.
pub fn derivative<F: Fn(f64) -> Option<Point>>(
    f: &F,
    t0: f64,
    k: usize,
    h: f64,
    levels: usize,
) -> Option<Point> {
    if k == 0 {
        return f(t0);
    }
    let mut table: Vec<Vec<Point>> = Vec::with_capacity(levels);
    for i in 0..levels {
        let mut row = vec![central(f, t0, k, h / 2f64.powi(i as i32))?];
        for j in 1..=i {
            let factor = 4f64.powi(j as i32) - 1.0;
            let (cur, prev) = (row[j - 1], table[i - 1][j - 1]);
            row.push([cur[0] + (cur[0] - prev[0]) / factor, cur[1] + (cur[1] - prev[1]) / factor]);
        }
        table.push(row);
    }
    table.last().and_then(|r| r.last().copied())
}

/// Derivatives `0..=order` of `f` at `t0`.
pub fn jet<F: Fn(f64) -> Option<Point>>(
    f: &F,
    t0: f64,
    order: usize,
    h: f64,
    levels: usize,
) -> Option<Vec<Point>> {
    (0..=order).map(|k| derivative(f, t0, k, h, levels)).collect()
}

/// Largest parameter offset touched by [`derivative`].
pub fn stencil_radius(order: usize, h: f64) -> f64 {
    order as f64 / 2.0 * h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_of_exponential() {
        let f = |t: f64| Some([t.exp(), (2.0 * t).sin()]);
        for k in 0..=5 {
            let d = derivative(&f, 0.3, k, 0.4, 4).unwrap();
            assert!((d[0] - 0.3f64.exp()).abs() < 1e-8 * 10f64.powi(k as i32 / 2), "k={k}: {}", d[0]);
        }
        let d3 = derivative(&f, 0.3, 3, 0.1, 5).unwrap();
        assert!((d3[1] + 8.0 * 0.6f64.cos()).abs() < 1e-6);
    }
}
