//! Discretized reconstruction of `H` from the order-agreement equation.
//!
//! Unknowns are `h_k ≈ H(k/n)` for `0 < k < n`, with `h_0 = 0`, `h_n = 1`
//! pinned. Residual rows:
//!
//! * `h_{i+j} · Ĥ(i/(i+j)) − h_i` for every `i, j ≥ 1`, `i + j ≤ n`, where
//!   `Ĥ` is the piecewise-linear interpolant of the grid values;
//! * `h_k + h_{n−k} − 1` (complement symmetry);
//! * `max(0, h_k − h_{k+1})` (monotonicity).
//!
//! The sum of squares is minimized by Levenberg–Marquardt steps, each
//! followed by projection onto symmetric nondecreasing sequences in
//! `[0, 1]`, so every iterate (and the result) is monotone and symmetric.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Target Euclidean norm of the residual vector.
pub const SOLVE_TOLERANCE: f64 = 1e-10;

const MAX_ITERATIONS: usize = 500;
const MAX_DAMPING_TRIES: usize = 40;

#[derive(Debug, Clone, PartialEq)]
pub struct RuleSolution {
    pub n: usize,
    /// `H(k/n)` for `k = 0..=n`.
    pub values: Vec<f64>,
    /// `max_k |H(k/n) − k/n|`.
    pub sup_distance: f64,
    pub residual_norm: f64,
    pub iterations: usize,
}

impl RuleSolution {
    pub fn grid(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let nf = self.n as f64;
        self.values.iter().enumerate().map(move |(k, &h)| (k as f64 / nf, h))
    }
}

/// Solves from the flat start `H(p) = 1/2` on interior points.
pub fn solve_rule(n: usize) -> Result<RuleSolution> {
    solve_rule_from(n, &vec![0.5; n.saturating_sub(1)])
}

/// Solves from the given interior values `h_1..h_{n−1}` (projected first).
pub fn solve_rule_from(n: usize, interior: &[f64]) -> Result<RuleSolution> {
    if n < 4 {
        return Err(Error::GridTooSmall { got: n, min: 4 });
    }
    assert_eq!(interior.len(), n - 1, "need n - 1 interior values");

    let mut h = Vec::with_capacity(n + 1);
    h.push(0.0);
    h.extend_from_slice(interior);
    h.push(1.0);
    project(&mut h);

    let mut r = functional_residuals(&h);
    let mut cost = sq_norm(&r);
    let mut damping = 1e-3;
    let mut iterations = 0;

    while cost.sqrt() >= SOLVE_TOLERANCE {
        if iterations == MAX_ITERATIONS {
            return Err(Error::NonConvergence {
                residual: cost.sqrt(),
                iterations,
            });
        }
        iterations += 1;

        let jac = jacobian(&h);
        let jt = jac.transpose();
        let normal = &jt * &jac;
        let grad = &jt * DVector::from_column_slice(&r);

        let mut accepted = false;
        for _ in 0..MAX_DAMPING_TRIES {
            let mut lhs = normal.clone();
            for d in 0..n - 1 {
                lhs[(d, d)] += damping;
            }
            let Some(chol) = lhs.cholesky() else {
                damping *= 4.0;
                continue;
            };
            let step = chol.solve(&(-&grad));
            let mut trial = h.clone();
            for (d, s) in step.iter().enumerate() {
                trial[d + 1] += s;
            }
            project(&mut trial);
            let tr = functional_residuals(&trial);
            let tc = sq_norm(&tr);
            if tc < cost {
                h = trial;
                r = tr;
                cost = tc;
                damping = (damping / 3.0).max(1e-15);
                accepted = true;
                break;
            }
            damping *= 4.0;
        }
        if !accepted {
            return Err(Error::NonConvergence {
                residual: cost.sqrt(),
                iterations,
            });
        }
    }

    let nf = n as f64;
    let sup_distance = h
        .iter()
        .enumerate()
        .map(|(k, v)| (v - k as f64 / nf).abs())
        .fold(0.0, f64::max);
    Ok(RuleSolution {
        n,
        values: h,
        sup_distance,
        residual_norm: cost.sqrt(),
        iterations,
    })
}

fn sq_norm(r: &[f64]) -> f64 {
    r.iter().map(|v| v * v).sum()
}

/// Linear interpolation of the grid at `t ∈ [0, 1]`: `(value, k, w)` with
/// value `(1 − w)·h_k + w·h_{k+1}`.
fn interpolate(h: &[f64], t: f64) -> (f64, usize, f64) {
    let n = h.len() - 1;
    let pos = (t * n as f64).clamp(0.0, n as f64);
    let k = (pos.floor() as usize).min(n - 1);
    let w = pos - k as f64;
    ((1.0 - w) * h[k] + w * h[k + 1], k, w)
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |i| (1..=n - i).map(move |j| (i, j)))
}

/// Residual vector for grid values `h_0..=h_n`.
pub fn functional_residuals(h: &[f64]) -> Vec<f64> {
    let n = h.len() - 1;
    let mut r = Vec::new();
    for (i, j) in pairs(n) {
        let (l, _, _) = interpolate(h, i as f64 / (i + j) as f64);
        r.push(h[i + j] * l - h[i]);
    }
    for k in 1..=n / 2 {
        r.push(h[k] + h[n - k] - 1.0);
    }
    for k in 0..n {
        r.push((h[k] - h[k + 1]).max(0.0));
    }
    r
}

/// Jacobian of [`functional_residuals`] with respect to `h_1..h_{n−1}`.
fn jacobian(h: &[f64]) -> DMatrix<f64> {
    let n = h.len() - 1;
    let rows = pairs(n).count() + n / 2 + n;
    let mut jac = DMatrix::zeros(rows, n - 1);
    let mut add = |row: usize, k: usize, v: f64| {
        if k >= 1 && k < n {
            jac[(row, k - 1)] += v;
        }
    };
    let mut row = 0;
    for (i, j) in pairs(n) {
        let (l, k, w) = interpolate(h, i as f64 / (i + j) as f64);
        add(row, i + j, l);
        add(row, k, h[i + j] * (1.0 - w));
        add(row, k + 1, h[i + j] * w);
        add(row, i, -1.0);
        row += 1;
    }
    for k in 1..=n / 2 {
        add(row, k, 1.0);
        add(row, n - k, 1.0);
        row += 1;
    }
    for k in 0..n {
        if h[k] > h[k + 1] {
            add(row, k, 1.0);
            add(row, k + 1, -1.0);
        }
        row += 1;
    }
    jac
}

/// Projects `h` (endpoints untouched) onto complement-symmetric,
/// nondecreasing sequences in `[0, 1]`.
fn project(h: &mut [f64]) {
    let n = h.len() - 1;
    let sym: Vec<f64> = (0..=n).map(|k| 0.5 * (h[k] + 1.0 - h[n - k])).collect();
    h[1..n].copy_from_slice(&sym[1..n]);
    isotonic(&mut h[1..n]);
    for v in &mut h[1..n] {
        *v = v.clamp(0.0, 1.0);
    }
}

/// Pool-adjacent-violators: least-squares nondecreasing fit, in place.
fn isotonic(v: &mut [f64]) {
    // (mean, count) blocks
    let mut blocks: Vec<(f64, usize)> = Vec::with_capacity(v.len());
    for &x in v.iter() {
        blocks.push((x, 1));
        while blocks.len() >= 2 {
            let (m2, c2) = blocks[blocks.len() - 1];
            let (m1, c1) = blocks[blocks.len() - 2];
            if m1 <= m2 {
                break;
            }
            blocks.pop();
            let c = c1 + c2;
            *blocks.last_mut().unwrap() = ((m1 * c1 as f64 + m2 * c2 as f64) / c as f64, c);
        }
    }
    let mut i = 0;
    for (m, c) in blocks {
        v[i..i + c].fill(m);
        i += c;
    }
}
