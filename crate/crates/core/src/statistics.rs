//! Analyses over block records: prediction ratios, summaries, standardized
//! moments, autocovariances with a permutation control, sorted extreme
//! contributions, and the shifted-moment kernel comparison.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::height::HeightValue;
use crate::moments::{shifted_fourth_moments_over, AccuracyStandard, BlockRecord};
use crate::predictions::{prediction_integral, PredictionPolynomial};
use crate::summation::compensated_sum;
use crate::zeros::ZeroList;

/// One empirical moment divided by its prediction over the same interval.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioSample {
    pub two_k: f64,
    pub first_index: Option<u64>,
    pub alpha: HeightValue,
    pub beta: HeightValue,
    pub numerator: f64,
    pub denominator: f64,
    pub ratio: f64,
}

/// Ratios over groups of `group` consecutive records.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioRun {
    pub samples: Vec<RatioSample>,
    /// Groups dropped because their records were not contiguous.
    pub skipped_groups: usize,
    /// Records left over after the last full group.
    pub leftover_records: usize,
}

fn contiguous(a: &BlockRecord, b: &BlockRecord) -> bool {
    a.beta.diff(&b.alpha).abs() <= 1e-9 * a.beta.to_f64().abs().max(1.0)
}

/// Groups `group` consecutive records, sums their `2k`-th moments and
/// divides by the prediction integral of `poly` over the grouped interval.
/// Groups spanning a break in the record sequence are skipped.
pub fn ratios(records: &[BlockRecord], poly: &PredictionPolynomial, group: usize, leading_only: bool) -> Result<RatioRun> {
    if group == 0 {
        return Err(Error::domain("group size must be positive"));
    }
    let two_k = 2.0 * poly.k as f64;
    let mut samples = Vec::new();
    let mut skipped = 0;
    let chunks = records.chunks_exact(group);
    let leftover = chunks.remainder().len();
    for chunk in chunks {
        if chunk.windows(2).any(|w| !contiguous(&w[0], &w[1])) {
            skipped += 1;
            continue;
        }
        let values = chunk
            .iter()
            .map(|r| {
                r.moment(two_k)
                    .map(|m| m.value)
                    .ok_or_else(|| Error::domain(format!("records lack the 2k={two_k} moment")))
            })
            .collect::<Result<Vec<f64>>>()?;
        let numerator = compensated_sum(values);
        let alpha = chunk[0].alpha.clone();
        let beta = chunk[chunk.len() - 1].beta.clone();
        let denominator = prediction_integral(&alpha, &beta, poly, leading_only)?;
        if !(denominator > 0.0) {
            return Err(Error::domain("prediction integral must be positive"));
        }
        samples.push(RatioSample {
            two_k,
            first_index: chunk[0].first_index,
            alpha,
            beta,
            numerator,
            denominator,
            ratio: numerator / denominator,
        });
    }
    Ok(RatioRun {
        samples,
        skipped_groups: skipped,
        leftover_records: leftover,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SummaryStats {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// Population standard deviation about the sample mean.
    pub sd: f64,
    pub count: usize,
}

pub fn summarize(xs: &[f64]) -> Result<SummaryStats> {
    if xs.is_empty() {
        return Err(Error::Degenerate("empty sample".into()));
    }
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::Degenerate("non-finite value in sample".into()));
    }
    let n = xs.len() as f64;
    let mean = compensated_sum(xs.iter().copied()) / n;
    let var = compensated_sum(xs.iter().map(|x| (x - mean) * (x - mean))) / n;
    Ok(SummaryStats {
        mean: mean.clamp(
            xs.iter().copied().fold(f64::INFINITY, f64::min),
            xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        ),
        min: xs.iter().copied().fold(f64::INFINITY, f64::min),
        max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        sd: var.sqrt(),
        count: xs.len(),
    })
}

/// `Σ z_i^p / n` for `p = 3..=p_max`, with `z` the sample standardized to
/// mean 0 and population variance 1.
pub fn standardized_moments(xs: &[f64], p_max: u32) -> Result<Vec<(u32, f64)>> {
    let s = summarize(xs)?;
    if !(s.sd > 0.0) {
        return Err(Error::Degenerate("zero variance".into()));
    }
    let n = xs.len() as f64;
    Ok((3..=p_max)
        .map(|p| {
            let m = compensated_sum(xs.iter().map(|x| ((x - s.mean) / s.sd).powi(p as i32))) / n;
            (p, m)
        })
        .collect())
}

/// Summary of `log x_j`.
pub fn log_ratio_stats(ratios: &[f64]) -> Result<SummaryStats> {
    if ratios.iter().any(|&r| !(r > 0.0)) {
        return Err(Error::domain("log ratios need positive ratios"));
    }
    let logs: Vec<f64> = ratios.iter().map(|r| r.ln()).collect();
    summarize(&logs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Autocovariance {
    /// `c_0..=c_max_lag`.
    pub c: Vec<f64>,
    /// `c_m / c_0`; `None` when `c_0 = 0`.
    pub normalized: Vec<Option<f64>>,
}

/// `c_m = (1/R) Σ_{r=1}^{R−m} (x_{r+m} − x̄)(x_r − x̄)`.
pub fn autocovariance(xs: &[f64], max_lag: usize) -> Result<Autocovariance> {
    let r = xs.len();
    if max_lag >= r {
        return Err(Error::domain(format!("max lag {max_lag} needs more than {r} samples")));
    }
    let mean = compensated_sum(xs.iter().copied()) / r as f64;
    let d: Vec<f64> = xs.iter().map(|x| x - mean).collect();
    let c: Vec<f64> = (0..=max_lag)
        .map(|m| compensated_sum((0..r - m).map(|i| d[i + m] * d[i])) / r as f64)
        .collect();
    let c0 = c[0];
    let normalized = c.iter().map(|&v| (c0 > 0.0).then(|| v / c0)).collect();
    Ok(Autocovariance { c, normalized })
}

/// Autocovariance of a seeded random permutation of the sample.
pub fn permutation_control(xs: &[f64], max_lag: usize, seed: u64) -> Result<Autocovariance> {
    let mut v = xs.to_vec();
    v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    autocovariance(&v, max_lag)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Contributions {
    /// `(original position, value)`, descending; ties keep input order.
    pub sorted: Vec<(usize, f64)>,
    /// `f(n) = y_n / y_1` for `n = 1..=n_max`.
    pub f: Vec<f64>,
    /// Cumulative share of the total, in percent, for `n = 1..=count`.
    pub cumulative_percent: Vec<f64>,
}

pub fn sorted_contributions(xs: &[f64], n_max: usize) -> Result<Contributions> {
    if xs.is_empty() {
        return Err(Error::Degenerate("empty sample".into()));
    }
    if xs.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
        return Err(Error::domain("contributions must be finite and non-negative"));
    }
    let mut sorted: Vec<(usize, f64)> = xs.iter().copied().enumerate().collect();
    sorted.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let y1 = sorted[0].1;
    if !(y1 > 0.0) {
        return Err(Error::Degenerate("all contributions are zero".into()));
    }
    let f = sorted.iter().take(n_max).map(|&(_, y)| y / y1).collect();
    let total = compensated_sum(xs.iter().copied());
    let mut acc = 0.0;
    let mut cumulative_percent: Vec<f64> = sorted
        .iter()
        .map(|&(_, y)| {
            acc += y;
            (100.0 * acc / total).min(100.0)
        })
        .collect();
    // remove rounding drift at the end
    *cumulative_percent.last_mut().expect("non-empty") = 100.0;
    Ok(Contributions {
        sorted,
        f,
        cumulative_percent,
    })
}

/// Reference power law `p_k(n) = n^{−k/5}`.
pub fn power_law(n: f64, k: f64) -> f64 {
    (-(k * n.log2()) / 5.0).exp2()
}

/// `(1/2) √(log log T / log M)`.
pub fn extreme_exponent_prediction(t: &HeightValue, blocks: f64) -> Result<f64> {
    let ll = t.ln().ln();
    let lm = blocks.ln();
    if !(ll > 0.0 && lm > 0.0) {
        return Err(Error::domain("need log log T > 0 and M > 1"));
    }
    Ok(0.5 * (ll / lm).sqrt())
}

/// `K(T;α) = 12/x² (1 − 4 sin²(x/2)/x²)`, `x = α log T`; the power series
/// `24 Σ_{n≥2} (−x²)^{n−2}/(2n)!` below `|x| < 1`, where the closed form
/// cancels.
pub fn kernel_k(t: &HeightValue, alpha: f64) -> f64 {
    kernel_k_at(alpha * t.ln())
}

pub fn kernel_k_at(x: f64) -> f64 {
    if x.abs() < 1.0 {
        let x2 = x * x;
        let mut term = 1.0 / 24.0;
        let mut sum = term;
        for n in 3..20u32 {
            let m = (2 * n) as f64;
            term *= -x2 / (m * (m - 1.0));
            sum += term;
            if term.abs() < 1e-18 {
                break;
            }
        }
        return 24.0 * sum;
    }
    let s = (0.5 * x).sin();
    12.0 / (x * x) * (1.0 - 4.0 * s * s / (x * x))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelRow {
    pub alpha: f64,
    pub moment: f64,
    pub error: f64,
    /// `M(T,H;α) / M(T,H;0)`.
    pub ratio: f64,
    pub kernel: f64,
}

/// Shifted fourth moments over `[lo, hi]` for every `α`, normalized by the
/// unshifted one from the same integration, beside `K(T;α)` at `T = lo`.
pub fn kernel_comparison(
    zeros: &ZeroList,
    lo: &HeightValue,
    hi: &HeightValue,
    alphas: &[f64],
    std: &AccuracyStandard,
) -> Result<Vec<KernelRow>> {
    let mut grid = vec![0.0];
    grid.extend(alphas.iter().copied().filter(|&a| a != 0.0));
    let m = shifted_fourth_moments_over(zeros, lo, hi, &grid, std)?;
    let m0 = m[0].value;
    if !(m0 > 0.0) {
        return Err(Error::Degenerate("unshifted fourth moment is zero".into()));
    }
    let mut rows: Vec<KernelRow> = m
        .iter()
        .zip(&grid)
        .map(|(v, &a)| KernelRow {
            alpha: a,
            moment: v.value,
            error: v.posteriori_error,
            ratio: if a == 0.0 { 1.0 } else { v.value / m0 },
            kernel: kernel_k(lo, a),
        })
        .collect();
    if !alphas.contains(&0.0) {
        rows.remove(0);
    }
    Ok(rows)
}

/// `start, start+step, …` up to `end` inclusive.
pub fn alpha_grid(start: f64, end: f64, step: f64) -> Vec<f64> {
    let n = ((end - start) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| start + i as f64 * step).collect()
}

/// Two-column plot data with `#` header lines.
pub fn plot_data(figure: &str, header: &[String], points: &[(f64, f64)]) -> String {
    let mut out = format!("# figure: {figure}\n");
    for h in header {
        let _ = writeln!(out, "# {h}");
    }
    for (x, y) in points {
        let _ = writeln!(out, "{x:.10e} {y:.10e}");
    }
    out
}

pub fn write_plot_data(path: impl AsRef<Path>, figure: &str, header: &[String], points: &[(f64, f64)]) -> Result<()> {
    fs::write(path, plot_data(figure, header, points))?;
    Ok(())
}
