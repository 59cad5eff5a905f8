//! Local product models of `|ζ(1/2+it)|` between consecutive zeros: the
//! truncated Hadamard product (HP) and the Euler-Hadamard product (EHP),
//! plus the experiment harness comparing them with direct evaluation.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::height::HeightValue;
use crate::primes::{ln_table, von_mangoldt_table};
use crate::specfun::{ci_unchecked, SmoothingKernel};
use crate::zeros::{mean_spacing, ZeroList};
use crate::zeta::z_with_target;

/// Accuracy of direct reference values.
const REFERENCE_TARGET: f64 = 1e-10;

/// Ordinates `γ_j − γ_n` of the `2m` zeros `n−m+1..=n+m` around interval
/// `(γ_n, γ_{n+1})`, in list positions.
fn window_offsets(zeros: &ZeroList, n: usize, m: usize) -> Result<Vec<f64>> {
    if n + 1 >= zeros.len() {
        return Err(Error::domain(format!("interval {n} needs a zero at position {}", n + 1)));
    }
    let lo = n as i64 - m as i64 + 1;
    let hi = (n + m) as i64;
    let have_hi = zeros.len() as i64 - 1;
    if m > 0 && (lo < 0 || hi > have_hi) {
        return Err(Error::InsufficientZeros {
            needed_lo: lo,
            needed_hi: hi,
            have_lo: 0,
            have_hi,
        });
    }
    if m > 0 && zeros.gaps().iter().any(|g| (g.after as i64) >= lo && (g.after as i64) < hi) {
        return Err(Error::domain(format!("zero window {lo}..={hi} crosses a gap")));
    }
    let off = zeros.offsets();
    let c = off[n];
    Ok((0..2 * m).map(|i| off[(lo + i as i64) as usize] - c).collect())
}

/// Precomputed HP window `Q^{n,m}(t) = Π |t − γ_j|`, normalized at the
/// interval midpoint `η_n`. Positions `x` are measured from `γ_n`.
#[derive(Clone, Debug)]
pub struct HpWindow {
    d: Vec<f64>,
    gap: f64,
    ln_norm: f64,
}

impl HpWindow {
    pub fn new(zeros: &ZeroList, n: usize, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("HP needs m >= 1"));
        }
        let d = window_offsets(zeros, n, m)?;
        let gap = zeros.offsets()[n + 1] - zeros.offsets()[n];
        let mut w = Self { d, gap, ln_norm: 0.0 };
        w.ln_norm = w.ln_q(0.5 * gap);
        Ok(w)
    }

    fn ln_q(&self, x: f64) -> f64 {
        self.d.iter().map(|&d| (x - d).abs().ln()).sum()
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * self.gap
    }

    /// `ln(Q(x)/Q(η))`; `−∞` at an included zero.
    pub fn ln_ratio(&self, x: f64) -> f64 {
        self.ln_q(x) - self.ln_norm
    }

    pub fn eval(&self, x: f64, anchor: f64) -> f64 {
        if x == 0.5 * self.gap {
            return anchor;
        }
        anchor * self.ln_ratio(x).exp()
    }
}

/// HP approximation `Q^{n,m}(t) · anchor / Q^{n,m}(η_n)` for `t` in
/// `(γ_n, γ_{n+1})`, `n` a list position.
pub fn hp_approx(t: &HeightValue, n: usize, zeros: &ZeroList, m: usize, anchor: f64) -> Result<f64> {
    let w = HpWindow::new(zeros, n, m)?;
    let x = t.offset_from(zeros.base()) - zeros.offsets()[n];
    Ok(w.eval(x, anchor))
}

/// The smoothed prime sum `P_X(t) = exp(Σ_{n≤X} Λ(n) cos(t log n) v(e^{log n/log X}) / (√n log n))`.
#[derive(Clone, Debug)]
pub struct PxModel {
    x: f64,
    terms: Vec<(usize, f64)>,
}

impl PxModel {
    /// `X < 2` gives the empty product.
    pub fn new(x: f64) -> Result<Self> {
        if !x.is_finite() || !(x > 0.0) {
            return Err(Error::domain(format!("X must be positive, got {x}")));
        }
        if x < 2.0 {
            return Ok(Self { x, terms: Vec::new() });
        }
        let kernel = SmoothingKernel::new(x)?;
        let limit = x.floor() as usize;
        let lambda = von_mangoldt_table(limit);
        let lx = x.ln();
        let terms = (2..=limit)
            .filter(|&n| lambda[n] > 0.0)
            .filter_map(|n| {
                let ln_n = (n as f64).ln();
                let w = kernel.v((ln_n / lx).exp());
                (w > 0.0).then(|| (n, lambda[n] * w / ((n as f64).sqrt() * ln_n)))
            })
            .collect();
        Ok(Self { x, terms })
    }

    pub fn cutoff(&self) -> f64 {
        self.x
    }

    /// `(n, Λ(n) v(·) / (√n log n))` for every contributing `n`.
    pub fn terms(&self) -> &[(usize, f64)] {
        &self.terms
    }

    pub fn eval(&self, t: Dd) -> f64 {
        let Some(&(last, _)) = self.terms.last() else {
            return 1.0;
        };
        let logs = ln_table(last);
        let s: f64 = self
            .terms
            .iter()
            .map(|&(n, c)| c * (t * logs[n]).rem_two_pi().cos())
            .sum();
        s.exp()
    }
}

pub fn ehp_px(t: &HeightValue, x: f64) -> Result<f64> {
    Ok(PxModel::new(x)?.eval(t.to_dd()))
}

/// `|Z_X^{n,m}|` window: `exp(Σ_j Ci(|t − γ_j| log X))`.
#[derive(Clone, Debug)]
pub struct ZxWindow {
    d: Vec<f64>,
    ln_x: f64,
}

impl ZxWindow {
    pub fn new(zeros: &ZeroList, n: usize, m: usize, x: f64) -> Result<Self> {
        if !(x > 1.0) {
            return Err(Error::domain(format!("X must exceed 1, got {x}")));
        }
        Ok(Self {
            d: window_offsets(zeros, n, m)?,
            ln_x: x.ln(),
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut s = 0.0;
        for &d in &self.d {
            let u = (x - d).abs() * self.ln_x;
            if u == 0.0 {
                return 0.0;
            }
            s += ci_unchecked(u);
        }
        s.exp()
    }
}

pub fn ehp_zx(t: &HeightValue, n: usize, zeros: &ZeroList, m: usize, x: f64) -> Result<f64> {
    let w = ZxWindow::new(zeros, n, m, x)?;
    Ok(w.eval(t.offset_from(zeros.base()) - zeros.offsets()[n]))
}

/// `|P_X Z_X^{n,m}|`, optionally rescaled to equal `anchor` at `η_n`.
pub fn ehp_approx(
    t: &HeightValue,
    n: usize,
    zeros: &ZeroList,
    m: usize,
    x: f64,
    normalized: bool,
    anchor: Option<f64>,
) -> Result<f64> {
    let px = PxModel::new(x)?;
    let zx = ZxWindow::new(zeros, n, m, x)?;
    let off = t.offset_from(zeros.base()) - zeros.offsets()[n];
    let raw = px.eval(t.to_dd()) * zx.eval(off);
    if !normalized {
        return Ok(raw);
    }
    let anchor = anchor.ok_or_else(|| Error::domain("normalized EHP needs the midpoint value"))?;
    let mid = 0.5 * (zeros.offsets()[n + 1] - zeros.offsets()[n]);
    // Offsets rebuilt from a height carry a few ulps of the base offset.
    let ulps = 4.0 * f64::EPSILON * zeros.offsets()[n].abs().max(1.0);
    if (off - mid).abs() <= ulps {
        return Ok(anchor);
    }
    let mid_t = zeros.base().value().add_f64(zeros.offsets()[n] + mid);
    Ok(raw * anchor / (px.eval(mid_t) * zx.eval(mid)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LocalModel {
    Hp,
    Ehp,
    EhpNormalized,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalModelConfig {
    pub model: LocalModel,
    /// Zeros per side.
    pub m: usize,
    /// EHP cutoff; unused by HP.
    pub x: f64,
}

impl LocalModelConfig {
    pub fn hp(m: usize) -> Self {
        Self {
            model: LocalModel::Hp,
            m,
            x: f64::NAN,
        }
    }

    pub fn ehp(m: usize, x: f64, normalized: bool) -> Self {
        Self {
            model: if normalized {
                LocalModel::EhpNormalized
            } else {
                LocalModel::Ehp
            },
            m,
            x,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 && self.model == LocalModel::Hp {
            return Err(Error::domain("HP needs m >= 1"));
        }
        if self.model != LocalModel::Hp && !(self.x >= 2.0) {
            return Err(Error::domain(format!("EHP needs X >= 2, got {}", self.x)));
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        match self.model {
            LocalModel::Hp => format!("HP m={}", self.m),
            LocalModel::Ehp => format!("EHP m={} X={}", self.m, self.x),
            LocalModel::EhpNormalized => format!("EHPn m={} X={}", self.m, self.x),
        }
    }
}

/// Grid size `l(n) = 2⌊10 (γ_{n+1} − γ_n)/Δ_n + 1⌋ + 1`; always odd.
pub fn grid_size(gap: f64, mean_gap: f64) -> usize {
    2 * (10.0 * gap / mean_gap + 1.0).floor() as usize + 1
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentResult {
    pub experiment_id: usize,
    pub config: LocalModelConfig,
    pub linf_error: f64,
    pub grid_points_used: usize,
    pub interval_max_errors: Vec<f64>,
    pub skipped_intervals: usize,
}

struct IntervalGrid {
    n: usize,
    xs: Vec<f64>,
    direct: Vec<f64>,
    mid_index: usize,
}

/// Runs every configuration on intervals `start..start+intervals` (list
/// positions of the left zeros). Each interval gets `l(n)` equally spaced
/// interior points, the midpoint among them; the reference is direct
/// evaluation of `|Z|`.
pub fn run_experiment(
    experiment_id: usize,
    zeros: &ZeroList,
    start: usize,
    intervals: usize,
    cfgs: &[LocalModelConfig],
) -> Result<Vec<ExperimentResult>> {
    for c in cfgs {
        c.validate()?;
    }
    if start + intervals >= zeros.len() {
        return Err(Error::domain("experiment span runs past the zero list"));
    }
    let grids: Vec<Option<IntervalGrid>> = (start..start + intervals)
        .into_par_iter()
        .map(|n| -> Result<Option<IntervalGrid>> {
            let gap = zeros.offsets()[n + 1] - zeros.offsets()[n];
            let t0 = zeros.height_dd(n);
            let mean = mean_spacing(t0.to_f64());
            if !(gap > 1e-9 * mean) {
                return Ok(None);
            }
            let l = grid_size(gap, mean);
            let h = gap / (l + 1) as f64;
            let xs: Vec<f64> = (1..=l).map(|d| if 2 * d == l + 1 { 0.5 * gap } else { d as f64 * h }).collect();
            let direct = xs
                .iter()
                .map(|&x| z_with_target(t0.add_f64(x), REFERENCE_TARGET).map(|(z, _)| z.abs()))
                .collect::<Result<Vec<_>>>()?;
            Ok(Some(IntervalGrid {
                n,
                xs,
                direct,
                mid_index: l / 2,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let skipped = grids.iter().filter(|g| g.is_none()).count();
    let grids: Vec<IntervalGrid> = grids.into_iter().flatten().collect();
    let points: usize = grids.iter().map(|g| g.xs.len()).sum();

    let mut px_cache: Vec<(f64, PxModel)> = Vec::new();
    for c in cfgs {
        if c.model != LocalModel::Hp && !px_cache.iter().any(|(x, _)| *x == c.x) {
            px_cache.push((c.x, PxModel::new(c.x)?));
        }
    }

    cfgs.iter()
        .map(|cfg| {
            let px = px_cache.iter().find(|(x, _)| *x == cfg.x).map(|(_, p)| p);
            let per_interval = grids
                .par_iter()
                .map(|g| interval_error(zeros, g, cfg, px))
                .collect::<Result<Vec<f64>>>()?;
            let linf = per_interval.iter().copied().fold(0.0, f64::max);
            Ok(ExperimentResult {
                experiment_id,
                config: *cfg,
                linf_error: linf,
                grid_points_used: points,
                interval_max_errors: per_interval,
                skipped_intervals: skipped,
            })
        })
        .collect()
}

fn interval_error(zeros: &ZeroList, g: &IntervalGrid, cfg: &LocalModelConfig, px: Option<&PxModel>) -> Result<f64> {
    let anchor = g.direct[g.mid_index];
    let t0 = zeros.height_dd(g.n);
    let model: Vec<f64> = match cfg.model {
        LocalModel::Hp => {
            let w = HpWindow::new(zeros, g.n, cfg.m)?;
            g.xs.iter().map(|&x| w.eval(x, anchor)).collect()
        }
        LocalModel::Ehp | LocalModel::EhpNormalized => {
            let px = px.expect("P_X prepared for every EHP config");
            let zx = ZxWindow::new(zeros, g.n, cfg.m, cfg.x)?;
            let raw: Vec<f64> = g.xs.iter().map(|&x| px.eval(t0.add_f64(x)) * zx.eval(x)).collect();
            if cfg.model == LocalModel::EhpNormalized {
                let scale = anchor / raw[g.mid_index];
                raw.iter()
                    .enumerate()
                    .map(|(i, &v)| if i == g.mid_index { anchor } else { v * scale })
                    .collect()
            } else {
                raw
            }
        }
    };
    Ok(model
        .iter()
        .zip(&g.direct)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// `C_r = (log E_r − log E_{r−1}) / log(1/2)`; `None` where undefined.
pub fn convergence_rates(errors: &[f64]) -> Vec<Option<f64>> {
    errors
        .windows(2)
        .map(|w| {
            (w[0] > 0.0 && w[1] > 0.0 && w[0].is_finite() && w[1].is_finite())
                .then(|| (w[1].ln() - w[0].ln()) / 0.5f64.ln())
        })
        .collect()
}

/// Text table of mean/min/max `L∞` per configuration over experiments.
pub fn report(results: &[ExperimentResult]) -> String {
    let mut labels: Vec<(String, LocalModelConfig)> = Vec::new();
    for r in results {
        let l = r.config.label();
        if !labels.iter().any(|(x, _)| *x == l) {
            labels.push((l, r.config));
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "{:<24} {:>6} {:>12} {:>12} {:>12}", "model", "runs", "mean_linf", "min_linf", "max_linf");
    for (label, _) in &labels {
        let v: Vec<f64> = results
            .iter()
            .filter(|r| r.config.label() == *label)
            .map(|r| r.linf_error)
            .collect();
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        let min = v.iter().copied().fold(f64::INFINITY, f64::min);
        let max = v.iter().copied().fold(0.0, f64::max);
        let _ = writeln!(out, "{label:<24} {:>6} {mean:>12.5e} {min:>12.5e} {max:>12.5e}", v.len());
    }
    out
}
