//! Quadrature rules: Gauss-Legendre and Romberg (closed and open) with a
//! posteriori error estimates.

use std::f64::consts::PI;

use crate::summation::CompensatedSum;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut s = CompensatedSum::new();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s.add(w * f(mid + half * x));
        }
        half * s.value()
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Result of a Romberg integration.
#[derive(Clone, Debug, PartialEq)]
pub struct RombergResult {
    pub value: f64,
    /// `|R(m,m) - R(m-1,m-1)|` at the last level.
    pub posteriori_error: f64,
    pub evals: usize,
    pub level: usize,
    pub converged: bool,
}

/// Stopping and sizing parameters.
#[derive(Clone, Copy, Debug)]
pub struct RombergOptions {
    /// Maximum function evaluations (the tableau stops before exceeding it).
    pub cap: usize,
    /// Smallest tableau level accepted as converged.
    pub min_level: usize,
    /// Stop refining (unconverged) once the error estimate falls below
    /// `rel_floor · |value|`, where rounding dominates; 0 disables.
    pub rel_floor: f64,
}

impl Default for RombergOptions {
    fn default() -> Self {
        Self {
            cap: 2048,
            min_level: 2,
            rel_floor: 0.0,
        }
    }
}

/// Closed Romberg integration of a scalar function.
pub fn romberg<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, abs_target: f64, cap: usize) -> RombergResult {
    let opts = RombergOptions {
        cap,
        ..RombergOptions::default()
    };
    let mut out = [0.0];
    let mut res = romberg_multi(
        |x, buf: &mut [f64]| buf[0] = f(x),
        a,
        b,
        &[abs_target],
        opts,
        &mut out,
    );
    res.pop().expect("one component")
}

/// Closed Romberg on a vector-valued integrand sharing all abscissas.
///
/// `f(x, out)` writes every component at `x`. Refinement continues until
/// each component meets its own absolute target (or stops improving at the
/// rounding floor) or until the next level would exceed `opts.cap`
/// evaluations.
pub fn romberg_multi<F>(
    mut f: F,
    a: f64,
    b: f64,
    targets: &[f64],
    opts: RombergOptions,
    scratch: &mut [f64],
) -> Vec<RombergResult>
where
    F: FnMut(f64, &mut [f64]),
{
    let m = targets.len();
    assert!(scratch.len() >= m);
    let h0 = b - a;
    let mut evals = 0usize;
    // trapezoid sums of function values (not yet scaled by h)
    let mut sums: Vec<CompensatedSum> = vec![CompensatedSum::new(); m];
    f(a, scratch);
    for (s, v) in sums.iter_mut().zip(scratch.iter()) {
        s.add(0.5 * v);
    }
    f(b, scratch);
    for (s, v) in sums.iter_mut().zip(scratch.iter()) {
        s.add(0.5 * v);
    }
    evals += 2;

    let mut prev_row: Vec<Vec<f64>> = sums.iter().map(|s| vec![h0 * s.value()]).collect();
    let mut results: Vec<RombergResult> = prev_row
        .iter()
        .map(|r| RombergResult {
            value: r[0],
            posteriori_error: f64::INFINITY,
            evals,
            level: 0,
            converged: false,
        })
        .collect();
    let mut done = vec![false; m];

    let mut level = 0usize;
    loop {
        let new_points = 1usize << level;
        if evals + new_points > opts.cap {
            break;
        }
        level += 1;
        let h = h0 / (1usize << level) as f64;
        for i in 0..new_points {
            let x = a + (2 * i + 1) as f64 * h;
            f(x, scratch);
            for (s, v) in sums.iter_mut().zip(scratch.iter()) {
                s.add(*v);
            }
        }
        evals += new_points;

        for c in 0..m {
            let mut row = Vec::with_capacity(level + 1);
            row.push(h * sums[c].value());
            let mut factor = 1.0;
            for j in 1..=level {
                factor *= 4.0;
                let r = row[j - 1] + (row[j - 1] - prev_row[c][j - 1]) / (factor - 1.0);
                row.push(r);
            }
            let value = row[level];
            let err = (value - prev_row[c][level - 1]).abs();
            prev_row[c] = row;
            if done[c] {
                // keep refining in lock step but report the accepted level's bound
                results[c].value = value;
                results[c].posteriori_error = results[c].posteriori_error.max(err).min(err.max(results[c].posteriori_error));
                results[c].evals = evals;
                results[c].level = level;
                continue;
            }
            results[c] = RombergResult {
                value,
                posteriori_error: err,
                evals,
                level,
                converged: false,
            };
            if level >= opts.min_level {
                if err < targets[c] {
                    results[c].converged = true;
                    done[c] = true;
                } else if err <= opts.rel_floor * value.abs() {
                    done[c] = true;
                }
            }
        }
        if done.iter().all(|&d| d) {
            break;
        }
    }
    results
}

/// Open Romberg based on the midpoint rule with step tripling; never
/// evaluates the endpoints, for integrands singular there.
pub fn romberg_open_multi<F>(
    mut f: F,
    a: f64,
    b: f64,
    targets: &[f64],
    opts: RombergOptions,
    scratch: &mut [f64],
) -> Vec<RombergResult>
where
    F: FnMut(f64, &mut [f64]),
{
    let m = targets.len();
    let h0 = b - a;
    let mut evals = 0usize;
    let mut sums: Vec<CompensatedSum> = vec![CompensatedSum::new(); m];
    f(a + 0.5 * h0, scratch);
    for (s, v) in sums.iter_mut().zip(scratch.iter()) {
        s.add(*v);
    }
    evals += 1;
    let mut prev_row: Vec<Vec<f64>> = sums.iter().map(|s| vec![h0 * s.value()]).collect();
    let mut results: Vec<RombergResult> = prev_row
        .iter()
        .map(|r| RombergResult {
            value: r[0],
            posteriori_error: f64::INFINITY,
            evals,
            level: 0,
            converged: false,
        })
        .collect();
    let mut done = vec![false; m];
    let mut level = 0usize;
    let mut cells = 1usize;
    loop {
        let new_points = 2 * cells;
        if evals + new_points > opts.cap {
            break;
        }
        level += 1;
        let old_h = h0 / cells as f64;
        let h = old_h / 3.0;
        for i in 0..cells {
            let left = a + i as f64 * old_h;
            for x in [left + 0.5 * h, left + 2.5 * h] {
                f(x, scratch);
                for (s, v) in sums.iter_mut().zip(scratch.iter()) {
                    s.add(*v);
                }
            }
        }
        cells *= 3;
        evals += new_points;
        for c in 0..m {
            if done[c] {
                continue;
            }
            let mut row = Vec::with_capacity(level + 1);
            row.push(h * sums[c].value());
            let mut factor = 1.0;
            for j in 1..=level {
                factor *= 9.0;
                let r = row[j - 1] + (row[j - 1] - prev_row[c][j - 1]) / (factor - 1.0);
                row.push(r);
            }
            let value = row[level];
            let err = (value - prev_row[c][level - 1]).abs();
            prev_row[c] = row;
            results[c] = RombergResult {
                value,
                posteriori_error: err,
                evals,
                level,
                converged: false,
            };
            if level >= opts.min_level {
                if err < targets[c] {
                    results[c].converged = true;
                    done[c] = true;
                } else if err <= opts.rel_floor * value.abs() {
                    done[c] = true;
                }
            }
        }
        if done.iter().all(|&d| d) {
            break;
        }
    }
    results
}
