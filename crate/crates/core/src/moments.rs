//! Moments `∫|ζ(1/2+it)|^{2k} dt` between consecutive zeros, with Romberg
//! quadrature, a posteriori error control, HP dispatch, and per-block
//! aggregation.

use std::fmt;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::height::{DecimalBase, HeightValue};
use crate::local_models::HpWindow;
use crate::predictions::leading_term_moment;
use crate::quadrature::{romberg_multi, romberg_open_multi, RombergOptions, RombergResult};
use crate::summation::CompensatedSum;
use crate::zeros::{isolate_zeros, mean_spacing, BlockTiling, ZeroBlock, ZeroList};
use crate::zeta::{z_with_target, EvalMethod};

/// Absolute accuracy of direct `Z` evaluations inside integrands.
pub const EVAL_TARGET: f64 = 1e-11;

/// Cost of one HP evaluation in units of a direct evaluation.
pub const HP_EVAL_COST: f64 = 0.2;

/// Relative rounding floor below which Romberg refinement stops.
const ROUNDING_FLOOR: f64 = 1e-13;

/// Exponent `2k` of `|ζ|^{2k}`; `2k ≥ −1/2`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct MomentExponent(f64);

impl MomentExponent {
    pub fn new(two_k: f64) -> Result<Self> {
        if !two_k.is_finite() || two_k < -0.5 {
            return Err(Error::domain(format!("2k must be finite and >= -0.5, got {two_k}")));
        }
        Ok(Self(two_k))
    }

    pub fn two_k(self) -> f64 {
        self.0
    }

    pub fn k(self) -> f64 {
        0.5 * self.0
    }

    /// `2k` as an even integer, if it is one.
    pub fn even_integer(self) -> Option<u32> {
        (self.0 >= 0.0 && self.0.fract() == 0.0 && self.0 % 2.0 == 0.0).then_some(self.0 as u32)
    }
}

impl fmt::Display for MomentExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parses `"2,4,6"` or ranges with a step, `"-0.5:12:0.5"`.
pub fn parse_exponents(text: &str) -> Result<Vec<MomentExponent>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let nums: Vec<f64> = part
            .split(':')
            .map(|x| x.trim().parse::<f64>().map_err(|e| Error::domain(format!("bad exponent {x:?}: {e}"))))
            .collect::<Result<_>>()?;
        match nums[..] {
            [v] => out.push(MomentExponent::new(v)?),
            [a, b, step] if step > 0.0 => {
                let n = ((b - a) / step + 1e-9).floor() as i64;
                for i in 0..=n {
                    out.push(MomentExponent::new(a + i as f64 * step)?);
                }
            }
            _ => return Err(Error::domain(format!("bad exponent spec {part:?}"))),
        }
    }
    Ok(out)
}

/// The per-interval accuracy standard: absolute a posteriori error below
/// `relative × mean gap × leading-term 2k-th moment`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AccuracyStandard {
    pub relative: f64,
    pub romberg_cap: usize,
}

impl Default for AccuracyStandard {
    fn default() -> Self {
        Self {
            relative: 1e-3,
            romberg_cap: 2048,
        }
    }
}

impl AccuracyStandard {
    /// Leading-term expected moment; half-integers take the smaller of their
    /// integer neighbours, `2k ≤ 0` takes 1.
    pub fn expected_moment(t: &HeightValue, e: MomentExponent) -> Result<f64> {
        let k = e.k();
        if k <= 0.0 {
            return Ok(1.0);
        }
        let lo = k.floor() as u32;
        let hi = k.ceil() as u32;
        let at = |j: u32| if j == 0 { Ok(1.0) } else { leading_term_moment(t, j) };
        Ok(at(lo)?.min(at(hi)?))
    }

    /// Target for one interval of length `len`. Using `min(len, mean gap)`
    /// keeps the mean-gap per-interval bound and makes the errors of a block
    /// sum to at most `relative × expected × block length`.
    pub fn interval_target(&self, t: &HeightValue, e: MomentExponent, len: f64) -> Result<f64> {
        let gap = mean_spacing(t.to_f64());
        Ok(self.relative * gap.min(len) * Self::expected_moment(t, e)?)
    }

    /// Bound on aggregate error divided by aggregate length.
    pub fn aggregate_target(&self, t: &HeightValue, e: MomentExponent) -> Result<f64> {
        Ok(self.relative * Self::expected_moment(t, e)?)
    }

    fn romberg_options(&self) -> RombergOptions {
        RombergOptions {
            cap: self.romberg_cap,
            min_level: 2,
            rel_floor: ROUNDING_FLOOR,
        }
    }
}

/// HP dispatch: intervals whose midpoint value `C` is at most `threshold`
/// integrate the HP model over `m` zeros per side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HpDispatch {
    pub threshold: f64,
    pub m: usize,
    /// Multiplier on the probe discrepancy used as the model error.
    pub probe_safety: f64,
}

impl Default for HpDispatch {
    fn default() -> Self {
        Self {
            threshold: 7.0,
            m: 500,
            probe_safety: 4.0,
        }
    }
}

/// Result for one exponent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentValue {
    pub two_k: f64,
    pub value: f64,
    /// Romberg a posteriori error plus, for HP, the model error term.
    pub posteriori_error: f64,
    /// Propagated error of the `|ζ|` evaluations themselves.
    pub evaluation_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntervalMoment {
    /// List position of the left zero.
    pub position: usize,
    pub length: f64,
    pub moments: Vec<MomentValue>,
    /// `|ζ|` at the midpoint.
    pub midpoint_value: f64,
    pub method: EvalMethod,
    /// Evaluations in direct units (HP counted at [`HP_EVAL_COST`]).
    pub evals: f64,
    /// Exponents whose target was not met.
    pub missed: Vec<bool>,
    pub fell_back: bool,
}

fn abs_z(t: Dd) -> Result<(f64, f64)> {
    let (z, q) = z_with_target(t, EVAL_TARGET)?;
    Ok((z.abs(), q.abs_error_bound))
}

/// `|ζ|^{2k}` for all exponents; `0^0 = 1`.
fn powers(v: f64, exps: &[MomentExponent], out: &mut [f64]) {
    let ln_v = v.ln();
    for (o, e) in out.iter_mut().zip(exps) {
        *o = if e.0 == 0.0 {
            1.0
        } else if e.0 == 2.0 {
            v * v
        } else {
            (e.0 * ln_v).exp()
        };
    }
}

struct Sampler {
    max_value: f64,
    max_delta: f64,
    direct: usize,
    hp: usize,
    failure: Option<Error>,
}

impl Sampler {
    fn new() -> Self {
        Self {
            max_value: 0.0,
            max_delta: 0.0,
            direct: 0,
            hp: 0,
            failure: None,
        }
    }

    fn direct(&mut self, t: Dd) -> f64 {
        self.direct += 1;
        match abs_z(t) {
            Ok((v, d)) => {
                self.max_value = self.max_value.max(v);
                self.max_delta = self.max_delta.max(d);
                v
            }
            Err(e) => {
                self.failure.get_or_insert(e);
                f64::NAN
            }
        }
    }

    fn evals(&self) -> f64 {
        self.direct as f64 + HP_EVAL_COST * self.hp as f64
    }
}

/// `|2k| C^{2k−1} δ · len`: first-order effect of an error `δ` in `|ζ|`.
fn propagated(e: MomentExponent, c: f64, delta: f64, len: f64) -> f64 {
    if e.0 == 0.0 || delta == 0.0 {
        return 0.0;
    }
    e.0.abs() * c.powf(e.0 - 1.0) * delta * len
}

fn integrate_direct(
    t0: Dd,
    len: f64,
    mid_value: f64,
    exps: &[MomentExponent],
    targets: &[f64],
    std: &AccuracyStandard,
    sampler: &mut Sampler,
) -> Vec<RombergResult> {
    let (nonneg, neg): (Vec<usize>, Vec<usize>) = (0..exps.len()).partition(|&i| exps[i].0 >= 0.0);
    let mut results: Vec<Option<RombergResult>> = vec![None; exps.len()];
    let opts = std.romberg_options();
    if !nonneg.is_empty() {
        let ex: Vec<MomentExponent> = nonneg.iter().map(|&i| exps[i]).collect();
        let tg: Vec<f64> = nonneg.iter().map(|&i| targets[i]).collect();
        let mut scratch = vec![0.0; ex.len()];
        let res = romberg_multi(
            |x, out| {
                if x == 0.0 || x == len {
                    // endpoints are zeros of ζ
                    powers(0.0, &ex, out);
                } else if x == len / 2.0 {
                    powers(mid_value, &ex, out);
                } else {
                    let v = sampler.direct(t0.add_f64(x));
                    powers(v, &ex, out);
                }
            },
            0.0,
            len,
            &tg,
            opts,
            &mut scratch,
        );
        for (r, &i) in res.into_iter().zip(&nonneg) {
            results[i] = Some(r);
        }
    }
    if !neg.is_empty() {
        // x = len (3u² − 2u³) flattens the endpoint singularities
        let ex: Vec<MomentExponent> = neg.iter().map(|&i| exps[i]).collect();
        let tg: Vec<f64> = neg.iter().map(|&i| targets[i]).collect();
        let mut scratch = vec![0.0; ex.len()];
        let res = romberg_open_multi(
            |u, out| {
                let x = len * u * u * (3.0 - 2.0 * u);
                let jac = 6.0 * len * u * (1.0 - u);
                let v = if x == len / 2.0 { mid_value } else { sampler.direct(t0.add_f64(x)) };
                powers(v, &ex, out);
                for o in out.iter_mut() {
                    *o *= jac;
                }
            },
            0.0,
            1.0,
            &tg,
            opts,
            &mut scratch,
        );
        for (r, &i) in res.into_iter().zip(&neg) {
            results[i] = Some(r);
        }
    }
    results.into_iter().map(|r| r.expect("every exponent integrated")).collect()
}

fn finish(
    position: usize,
    len: f64,
    exps: &[MomentExponent],
    targets: &[f64],
    res: &[RombergResult],
    model_delta: f64,
    sampler: &Sampler,
    midpoint_value: f64,
    method: EvalMethod,
    fell_back: bool,
    evals: f64,
) -> IntervalMoment {
    let mut moments = Vec::with_capacity(exps.len());
    let mut missed = Vec::with_capacity(exps.len());
    for ((e, r), &tg) in exps.iter().zip(res).zip(targets) {
        let model = propagated(*e, sampler.max_value, model_delta, len);
        let err = r.posteriori_error + model;
        missed.push(!(err < tg));
        moments.push(MomentValue {
            two_k: e.0,
            value: r.value,
            posteriori_error: err,
            evaluation_error: propagated(*e, sampler.max_value, sampler.max_delta, len),
        });
    }
    IntervalMoment {
        position,
        length: len,
        moments,
        midpoint_value,
        method,
        evals,
        missed,
        fell_back,
    }
}

/// Integrates `|ζ|^{2k}` over `(γ_n, γ_{n+1})`, `n` a list position, for
/// every exponent at once.
///
/// With `hp` set and `C = |ζ(η_n)| ≤ threshold`, the integrand is the HP
/// model except at the midpoint and quarter points, which are evaluated
/// directly; the quarter points also measure the model error. If the HP
/// result misses the standard for any exponent, the interval is
/// re-integrated directly.
pub fn interval_moment(
    zeros: &ZeroList,
    n: usize,
    exps: &[MomentExponent],
    std: &AccuracyStandard,
    hp: Option<&HpDispatch>,
) -> Result<IntervalMoment> {
    if n + 1 >= zeros.len() {
        return Err(Error::domain(format!("no interval starts at position {n}")));
    }
    let len = zeros.offsets()[n + 1] - zeros.offsets()[n];
    let t0 = zeros.height_dd(n);
    let th = zeros.height(n);
    let targets = exps
        .iter()
        .map(|&e| std.interval_target(&th, e, len))
        .collect::<Result<Vec<f64>>>()?;
    let mut sampler = Sampler::new();
    let mid = len / 2.0;
    let c = sampler.direct(t0.add_f64(mid));
    if let Some(e) = sampler.failure.take() {
        return Err(e);
    }
    let window = match hp {
        Some(cfg) if c <= cfg.threshold && exps.iter().all(|e| e.0 >= 0.0) => {
            HpWindow::new(zeros, n, cfg.m).ok().map(|w| (w, cfg.probe_safety))
        }
        _ => None,
    };
    let mut hp_evals = 0.0;
    if let Some((w, safety)) = window {
        // the same expressions Romberg uses for its level-2 abscissas
        let h = len / 4.0;
        let (q1, q3) = (h, 3.0 * h);
        let d1 = sampler.direct(t0.add_f64(q1));
        let d3 = sampler.direct(t0.add_f64(q3));
        if let Some(e) = sampler.failure.take() {
            return Err(e);
        }
        let delta = safety * (w.eval(q1, c) - d1).abs().max((w.eval(q3, c) - d3).abs());
        let mut scratch = vec![0.0; exps.len()];
        let mut hp_count = 0usize;
        let res = romberg_multi(
            |x, out| {
                let v = if x == 0.0 || x == len {
                    0.0
                } else if x == mid {
                    c
                } else if x == q1 {
                    d1
                } else if x == q3 {
                    d3
                } else {
                    hp_count += 1;
                    w.eval(x, c)
                };
                sampler.max_value = sampler.max_value.max(v);
                powers(v, exps, out);
            },
            0.0,
            len,
            &targets,
            std.romberg_options(),
            &mut scratch,
        );
        sampler.hp = hp_count;
        let out = finish(
            n,
            len,
            exps,
            &targets,
            &res,
            delta,
            &sampler,
            c,
            EvalMethod::HpModel,
            false,
            sampler.evals(),
        );
        if !out.missed.iter().any(|&m| m) {
            return Ok(out);
        }
        hp_evals = sampler.evals();
        let delta0 = sampler.max_delta;
        sampler = Sampler::new();
        sampler.max_value = c;
        sampler.max_delta = delta0;
    }
    let res = integrate_direct(t0, len, c, exps, &targets, std, &mut sampler);
    if let Some(e) = sampler.failure.take() {
        return Err(e);
    }
    let method = if t0.hi >= crate::zeta::RS_MIN_HEIGHT {
        EvalMethod::RiemannSiegel
    } else {
        EvalMethod::EulerMaclaurin
    };
    let fell_back = hp_evals > 0.0;
    let evals = sampler.evals() + hp_evals;
    Ok(finish(n, len, exps, &targets, &res, 0.0, &sampler, c, method, fell_back, evals))
}

/// Moments aggregated over one block.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockRecord {
    pub first_index: Option<u64>,
    /// Number of intervals.
    pub count: usize,
    pub alpha: HeightValue,
    pub beta: HeightValue,
    pub moments: Vec<MomentValue>,
    pub eval_count: f64,
    pub hp_fraction: f64,
    /// Intervals whose own error missed the per-interval target, per exponent.
    pub intervals_missing_target: Vec<usize>,
    pub flaws: Vec<String>,
}

impl BlockRecord {
    pub fn interval_length(&self) -> f64 {
        self.beta.diff(&self.alpha)
    }

    pub fn moment(&self, two_k: f64) -> Option<&MomentValue> {
        self.moments.iter().find(|m| m.two_k == two_k)
    }

    pub fn is_clean(&self) -> bool {
        self.flaws.is_empty()
    }
}

/// Integrates every interval of every block and aggregates per block with
/// compensated sums in interval order; output is independent of the
/// worker count.
pub fn block_moments(
    zeros: &ZeroList,
    tiling: &BlockTiling,
    exps: &[MomentExponent],
    std: &AccuracyStandard,
    hp: Option<&HpDispatch>,
) -> Result<Vec<BlockRecord>> {
    let positions: Vec<usize> = tiling.blocks.iter().flat_map(|b| b.start..b.end).collect();
    let results: Vec<Result<IntervalMoment>> = positions
        .par_iter()
        .map(|&n| interval_moment(zeros, n, exps, std, hp))
        .collect();
    let mut it = results.into_iter();
    tiling
        .blocks
        .iter()
        .map(|b| {
            let chunk: Vec<Result<IntervalMoment>> = it.by_ref().take(b.intervals()).collect();
            aggregate_block(b, &chunk, exps, std)
        })
        .collect()
}

fn aggregate_block(
    block: &ZeroBlock,
    intervals: &[Result<IntervalMoment>],
    exps: &[MomentExponent],
    std: &AccuracyStandard,
) -> Result<BlockRecord> {
    let m = exps.len();
    let mut values = vec![CompensatedSum::new(); m];
    let mut errors = vec![CompensatedSum::new(); m];
    let mut eval_errors = vec![CompensatedSum::new(); m];
    let mut missing = vec![0usize; m];
    let mut evals = CompensatedSum::new();
    let mut hp_used = 0usize;
    let mut flaws = Vec::new();
    for r in intervals {
        match r {
            Ok(iv) => {
                for j in 0..m {
                    values[j].add(iv.moments[j].value);
                    errors[j].add(iv.moments[j].posteriori_error);
                    eval_errors[j].add(iv.moments[j].evaluation_error);
                    missing[j] += iv.missed[j] as usize;
                }
                evals.add(iv.evals);
                hp_used += (iv.method == EvalMethod::HpModel) as usize;
            }
            Err(e) => flaws.push(format!("interval failed: {e}")),
        }
    }
    let len = block.length();
    let moments: Vec<MomentValue> = (0..m)
        .map(|j| MomentValue {
            two_k: exps[j].0,
            value: values[j].value(),
            posteriori_error: errors[j].value(),
            evaluation_error: eval_errors[j].value(),
        })
        .collect();
    for (e, mv) in exps.iter().zip(&moments) {
        let bound = std.aggregate_target(&block.alpha, *e)?;
        if !(mv.posteriori_error / len < bound) {
            flaws.push(format!(
                "2k={}: aggregate error/length {:.3e} exceeds standard {:.3e}",
                e.0,
                mv.posteriori_error / len,
                bound
            ));
        }
    }
    Ok(BlockRecord {
        first_index: block.first_index,
        count: block.intervals(),
        alpha: block.alpha.clone(),
        beta: block.beta.clone(),
        moments,
        eval_count: evals.value(),
        hp_fraction: if intervals.is_empty() {
            0.0
        } else {
            hp_used as f64 / intervals.len() as f64
        },
        intervals_missing_target: missing,
        flaws,
    })
}

/// Sums consecutive records into one (additivity of the integrals).
pub fn merge_records(records: &[BlockRecord]) -> Result<BlockRecord> {
    let first = records.first().ok_or_else(|| Error::domain("nothing to merge"))?;
    let last = records.last().expect("non-empty");
    let m = first.moments.len();
    let mut values = vec![CompensatedSum::new(); m];
    let mut errors = vec![CompensatedSum::new(); m];
    let mut eval_errors = vec![CompensatedSum::new(); m];
    let mut missing = vec![0usize; m];
    let mut evals = CompensatedSum::new();
    let mut hp = CompensatedSum::new();
    let mut count = 0;
    let mut flaws = Vec::new();
    for r in records {
        if r.moments.len() != m || r.moments.iter().zip(&first.moments).any(|(a, b)| a.two_k != b.two_k) {
            return Err(Error::domain("records carry different exponent sets"));
        }
        for j in 0..m {
            values[j].add(r.moments[j].value);
            errors[j].add(r.moments[j].posteriori_error);
            eval_errors[j].add(r.moments[j].evaluation_error);
            missing[j] += r.intervals_missing_target.get(j).copied().unwrap_or(0);
        }
        evals.add(r.eval_count);
        hp.add(r.hp_fraction * r.count as f64);
        count += r.count;
        flaws.extend(r.flaws.iter().cloned());
    }
    Ok(BlockRecord {
        first_index: first.first_index,
        count,
        alpha: first.alpha.clone(),
        beta: last.beta.clone(),
        moments: (0..m)
            .map(|j| MomentValue {
                two_k: first.moments[j].two_k,
                value: values[j].value(),
                posteriori_error: errors[j].value(),
                evaluation_error: eval_errors[j].value(),
            })
            .collect(),
        eval_count: evals.value(),
        hp_fraction: if count == 0 { 0.0 } else { hp.value() / count as f64 },
        intervals_missing_target: missing,
        flaws,
    })
}

const BLOCKS_MAGIC: &str = "ZETABLOCKS v1";

/// Text form: `ZETABLOCKS v1 base=<decimal>`, `#` comment lines (the
/// given header lines, then one per flaw), then one record per line.
pub fn block_file_contents(base: &DecimalBase, records: &[BlockRecord], header: &[String]) -> Result<String> {
    let mut out = format!("{BLOCKS_MAGIC} base={}\n", base.as_str());
    for h in header {
        let _ = writeln!(out, "# {h}");
    }
    for r in records {
        for f in &r.flaws {
            let idx = r.first_index.map_or("unknown".to_string(), |i| i.to_string());
            let _ = writeln!(out, "# flaw first_index={idx}: {f}");
        }
    }
    for r in records {
        let idx = r.first_index.map_or("unknown".to_string(), |i| i.to_string());
        let a = r.alpha.offset_from(base);
        let b = r.beta.offset_from(base);
        let moments: Vec<String> = r
            .moments
            .iter()
            .map(|m| format!("{}:{:.17e}:{:.17e}", m.two_k, m.value, m.posteriori_error))
            .collect();
        let _ = writeln!(
            out,
            "{idx},{},{a:.17e},{b:.17e},{},{:.17e},{:.17e}",
            r.count,
            moments.join(";"),
            r.eval_count,
            r.hp_fraction
        );
    }
    Ok(out)
}

pub fn write_block_file(path: impl AsRef<Path>, base: &DecimalBase, records: &[BlockRecord], header: &[String]) -> Result<()> {
    fs::write(path, block_file_contents(base, records, header)?)?;
    Ok(())
}

/// Parses a block file. Flaw comments are reattached to their records.
pub fn parse_block_file(text: &str, path: &Path) -> Result<(DecimalBase, Vec<BlockRecord>)> {
    let mut lines = text.lines().enumerate();
    let base = match lines.next() {
        Some((_, l)) => {
            let rest = l
                .strip_prefix(BLOCKS_MAGIC)
                .and_then(|r| r.trim().strip_prefix("base="))
                .ok_or_else(|| Error::format(path, 1, format!("expected `{BLOCKS_MAGIC} base=<decimal>`")))?;
            DecimalBase::parse(rest.trim()).map_err(|e| Error::format(path, 1, e.to_string()))?
        }
        None => return Err(Error::format(path, 1, "empty block file")),
    };
    let mut records = Vec::new();
    let mut flaws: Vec<(String, String)> = Vec::new();
    for (i, line) in lines {
        let ln = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            if let Some(f) = c.trim().strip_prefix("flaw first_index=") {
                if let Some((idx, msg)) = f.split_once(": ") {
                    flaws.push((idx.to_string(), msg.to_string()));
                }
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(Error::format(path, ln, format!("expected 7 fields, found {}", fields.len())));
        }
        let bad = |what: &str| Error::format(path, ln, format!("bad {what}"));
        let first_index = match fields[0] {
            "unknown" => None,
            s => Some(s.parse::<u64>().map_err(|_| bad("first_index"))?),
        };
        let count: usize = fields[1].parse().map_err(|_| bad("count"))?;
        let a: f64 = fields[2].parse().map_err(|_| bad("alpha"))?;
        let b: f64 = fields[3].parse().map_err(|_| bad("beta"))?;
        let mut moments = Vec::new();
        for item in fields[4].split(';').filter(|s| !s.is_empty()) {
            let p: Vec<&str> = item.split(':').collect();
            if p.len() != 3 {
                return Err(bad("moment entry"));
            }
            moments.push(MomentValue {
                two_k: p[0].parse().map_err(|_| bad("two_k"))?,
                value: p[1].parse().map_err(|_| bad("moment value"))?,
                posteriori_error: p[2].parse().map_err(|_| bad("moment error"))?,
                evaluation_error: 0.0,
            });
        }
        let eval_count: f64 = fields[5].parse().map_err(|_| bad("evals"))?;
        let hp_fraction: f64 = fields[6].parse().map_err(|_| bad("hp_fraction"))?;
        if !(0.0..=1.0).contains(&hp_fraction) {
            return Err(bad("hp_fraction"));
        }
        let idx = first_index.map_or("unknown".to_string(), |i| i.to_string());
        let n = moments.len();
        records.push(BlockRecord {
            first_index,
            count,
            alpha: HeightValue::new(base.clone(), a).map_err(|e| Error::format(path, ln, e.to_string()))?,
            beta: HeightValue::new(base.clone(), b).map_err(|e| Error::format(path, ln, e.to_string()))?,
            moments,
            eval_count,
            hp_fraction,
            intervals_missing_target: vec![0; n],
            flaws: flaws.iter().filter(|(i, _)| *i == idx).map(|(_, m)| m.clone()).collect(),
        });
    }
    Ok((base, records))
}

pub fn read_block_file(path: impl AsRef<Path>) -> Result<(DecimalBase, Vec<BlockRecord>)> {
    let path = path.as_ref();
    parse_block_file(&fs::read_to_string(path)?, path)
}

/// Shifted fourth moments `(1/H)∫_lo^hi Z(t)² Z(t+α)² dt` for every `α`,
/// split at the zeros of `zeros` inside `(lo, hi)`.
pub fn shifted_fourth_moments_over(
    zeros: &ZeroList,
    lo: &HeightValue,
    hi: &HeightValue,
    alphas: &[f64],
    std: &AccuracyStandard,
) -> Result<Vec<MomentValue>> {
    if alphas.iter().any(|a| !(*a >= 0.0) || !a.is_finite()) {
        return Err(Error::domain("shifts must be finite and non-negative"));
    }
    let h = hi.diff(lo);
    if !(h > 0.0) {
        return Err(Error::domain("need H > 0"));
    }
    let base = lo.to_dd();
    // breakpoints as offsets from lo, flagging those that are zeros
    let mut cuts: Vec<(f64, bool)> = vec![(0.0, false)];
    for i in 0..zeros.len() {
        let x = (zeros.height_dd(i) - base).to_f64();
        if x > 0.0 && x < h {
            cuts.push((x, true));
        }
    }
    cuts.push((h, false));
    let four = MomentExponent::new(4.0)?;
    let opts = std.romberg_options();
    let pieces: Vec<Result<Vec<RombergResult>>> = cuts
        .par_windows(2)
        .map(|w| {
            let ((a, za), (b, zb)) = (w[0], w[1]);
            let len = b - a;
            let target = std.interval_target(&HeightValue::from_dd(base.add_f64(a))?, four, len)?;
            let targets = vec![target; alphas.len()];
            let mut scratch = vec![0.0; alphas.len()];
            let mut failure = None;
            let res = romberg_multi(
                |x, out| {
                    if (x == 0.0 && za) || (x == len && zb) {
                        out.fill(0.0);
                        return;
                    }
                    let t = base.add_f64(a + x);
                    let mut z = |t: Dd| match z_with_target(t, EVAL_TARGET) {
                        Ok((v, _)) => v,
                        Err(e) => {
                            failure.get_or_insert(e);
                            f64::NAN
                        }
                    };
                    let z0 = z(t);
                    for (o, &al) in out.iter_mut().zip(alphas) {
                        let z1 = if al == 0.0 { z0 } else { z(t.add_f64(al)) };
                        *o = z0 * z0 * z1 * z1;
                    }
                },
                0.0,
                len,
                &targets,
                opts,
                &mut scratch,
            );
            match failure {
                Some(e) => Err(e),
                None => Ok(res),
            }
        })
        .collect();
    let mut sums = vec![CompensatedSum::new(); alphas.len()];
    let mut errs = vec![CompensatedSum::new(); alphas.len()];
    for p in pieces {
        for (j, r) in p?.iter().enumerate() {
            sums[j].add(r.value);
            errs[j].add(r.posteriori_error);
        }
    }
    Ok(alphas
        .iter()
        .enumerate()
        .map(|(j, &a)| MomentValue {
            two_k: a,
            value: sums[j].value() / h,
            posteriori_error: errs[j].value() / h,
            evaluation_error: 0.0,
        })
        .collect())
}

/// `M(T, H; α)`: isolates the zeros of `[T, T+H]` and integrates between
/// them.
pub fn shifted_fourth_moment(t: &HeightValue, h: f64, alpha: f64, std: &AccuracyStandard) -> Result<f64> {
    let lo = t.to_f64();
    let zeros = isolate_zeros(lo, lo + h, None)?;
    let hi = HeightValue::from_dd(t.to_dd().add_f64(h))?;
    Ok(shifted_fourth_moments_over(&zeros, t, &hi, &[alpha], std)?[0].value)
}
