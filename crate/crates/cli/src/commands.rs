use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use zeta_core::local_models::{convergence_rates, report, run_experiment, LocalModel, LocalModelConfig};
use zeta_core::moments::{
    block_file_contents, block_moments, merge_records, parse_exponents, read_block_file, AccuracyStandard, BlockRecord,
    HpDispatch,
};
use zeta_core::predictions::{
    arithmetic_factor, cue_moment, leading_polynomial, leading_term_moment, polynomial_p, prediction_integral,
    prediction_mean, rmt_factor_g_over_fact, rmt_polynomial_4, CoefficientTable, PredictionPolynomial,
};
use zeta_core::statistics::{
    alpha_grid, autocovariance, extreme_exponent_prediction, kernel_comparison, log_ratio_stats, permutation_control,
    plot_data, power_law, ratios, sorted_contributions, standardized_moments, summarize,
};
use zeta_core::zeros::{
    build_blocks, isolate_zeros_by_index, isolate_zeros_with_report, read_zero_file, zero_file_contents, BlockTiling,
    ZeroList,
};
use zeta_core::HeightValue;

use crate::args::{
    Analysis, LocalModelArgs, MomentsArgs, PredictArgs, PredictMode, RatioArgs, ShiftedArgs, StatsArgs, ZeroSource,
    ZerosArgs,
};
use crate::config::Provenance;
use crate::{invalid, Outcome, Result};

fn split_pair<'a>(text: &'a str, what: &str) -> Result<(&'a str, &'a str)> {
    match text.split_once(':') {
        Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => Ok((a.trim(), b.trim())),
        _ => invalid(format!("{what} must look like `a:b`, got {text:?}")),
    }
}

fn parse_index_range(text: &str) -> Result<(u64, u64)> {
    let (a, b) = split_pair(text, "--zero-index-range")?;
    let (Ok(a), Ok(b)) = (a.parse::<u64>(), b.parse::<u64>()) else {
        return invalid(format!("zero indices must be integers, got {text:?}"));
    };
    if a < 1 || b <= a {
        return invalid(format!("need 1 <= a < b in --zero-index-range, got {text:?}"));
    }
    Ok((a, b))
}

fn parse_height_range(text: &str) -> Result<(HeightValue, HeightValue)> {
    let (a, b) = split_pair(text, "--range")?;
    let lo = HeightValue::parse(a)?;
    let hi = HeightValue::parse(b)?;
    if !(hi.diff(&lo) > 0.0) {
        return invalid(format!("--range needs lo < hi, got {text:?}"));
    }
    Ok((lo, hi))
}

/// `1,2,3` or the inclusive range `1:8`.
fn parse_ks(text: &str) -> Result<Vec<u32>> {
    let bad = || invalid(format!("--k must be a list `1,2` or a range `1:8`, got {text:?}"));
    if let Some((a, b)) = text.split_once(':') {
        let (Ok(a), Ok(b)) = (a.trim().parse::<u32>(), b.trim().parse::<u32>()) else {
            return bad();
        };
        if a > b {
            return bad();
        }
        return Ok((a..=b).collect());
    }
    match text.split(',').map(|s| s.trim().parse::<u32>()).collect() {
        Ok(v) => Ok(v),
        Err(_) => bad(),
    }
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|s| s.trim().parse::<T>().or_else(|_| invalid(format!("bad {what} entry {s:?}"))))
        .collect()
}

/// Exponents that must be even integers; returns `(2k, k)` pairs.
fn even_exponents(text: &str) -> Result<Vec<(f64, u32)>> {
    parse_exponents(text)?
        .into_iter()
        .map(|e| match e.even_integer() {
            Some(two_k) if two_k > 0 => Ok((e.two_k(), two_k / 2)),
            _ => invalid(format!("2k = {} is not a positive even integer", e.two_k())),
        })
        .collect()
}

fn sig(x: f64, digits: usize) -> String {
    format!("{:.*e}", digits.max(1) - 1, x)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    if let Some(p) = path {
        fs::write(p, text)?;
    }
    Ok(())
}

/// A zero list with the positions `first..=last` the command works on.
struct Zeros {
    list: ZeroList,
    first: usize,
    last: usize,
}

/// Loads zeros from the source; index ranges are widened by `margin` zeros
/// on each side so local windows fit.
fn load_zeros(src: &ZeroSource, margin: usize, prov: &mut Provenance) -> Result<Zeros> {
    if let Some(path) = &src.zero_file {
        prov.add_input(path)?;
        let list = read_zero_file(path)?;
        let (first, last) = match &src.zero_index_range {
            Some(r) => {
                let (a, b) = parse_index_range(r)?;
                match (list.position_of(a), list.position_of(b)) {
                    (Some(p), Some(q)) => (p, q),
                    _ => return invalid(format!("{} does not hold zeros {a}..={b}", path.display())),
                }
            }
            None => (0, list.len().saturating_sub(1)),
        };
        return Ok(Zeros { list, first, last });
    }
    if let Some(r) = &src.zero_index_range {
        let (a, b) = parse_index_range(r)?;
        let lo = a.saturating_sub(margin as u64).max(1);
        let (list, _) = isolate_zeros_by_index(lo, b + margin as u64)?;
        let first = (a - lo) as usize;
        return Ok(Zeros {
            list,
            first,
            last: first + (b - a) as usize,
        });
    }
    if let Some(r) = &src.range {
        let (lo, hi) = parse_height_range(r)?;
        let (list, _) = isolate_zeros_with_report(lo.to_f64(), hi.to_f64(), None)?;
        let last = list.len().saturating_sub(1);
        return Ok(Zeros { list, first: 0, last });
    }
    invalid("one of --range, --zero-index-range or --zero-file is required")
}

pub fn zeros(a: &ZerosArgs, mut prov: Provenance) -> Result<Outcome> {
    if a.source.zero_file.is_some() {
        return invalid("zeros takes --range or --zero-index-range, not --zero-file");
    }
    let z = load_zeros(&a.source, 0, &mut prov)?;
    let list = z.list.slice(z.first..z.last + 1);
    fs::write(&a.out, zero_file_contents(&list))?;
    let mut cfg = prov.comment_block();
    let _ = writeln!(cfg, "# output {}", a.out.display());
    fs::write(config_sibling(&a.out), cfg)?;
    let mut out = prov.comment_block();
    let _ = writeln!(out, "zeros {}", list.len());
    if let Some(i) = list.first_index() {
        let _ = writeln!(out, "first_index {i}");
    }
    if !list.is_empty() {
        let _ = writeln!(out, "first {:.13}", list.height_f64(0));
        let _ = writeln!(out, "last {:.13}", list.height_f64(list.len() - 1));
    }
    Ok(Outcome {
        stdout: out,
        flaws: Vec::new(),
    })
}

fn config_sibling(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".config");
    s.into()
}

/// Blocks of `size` intervals over positions `first..=last`.
fn tile(z: &Zeros, size: usize) -> Result<BlockTiling> {
    let sub = z.list.slice(z.first..z.last + 1);
    let mut t = build_blocks(&sub, size)?;
    for b in &mut t.blocks {
        b.start += z.first;
        b.end += z.first;
    }
    Ok(t)
}

pub fn moments(a: &MomentsArgs, mut prov: Provenance) -> Result<Outcome> {
    let exps = parse_exponents(&a.two_k)?;
    if a.block_size == 0 {
        return invalid("--block-size must be positive");
    }
    if a.romberg_cap < 5 {
        return invalid("--romberg-cap must allow at least one Romberg level");
    }
    let hp = (!a.no_hp && a.hp_threshold > 0.0).then(|| HpDispatch {
        threshold: a.hp_threshold,
        m: (a.hp_window / 2).max(1),
        ..HpDispatch::default()
    });
    let z = load_zeros(&a.source, hp.map_or(0, |h| h.m), &mut prov)?;
    let tiling = tile(&z, a.block_size)?;
    let std = AccuracyStandard {
        romberg_cap: a.romberg_cap,
        ..AccuracyStandard::default()
    };
    let records = block_moments(&z.list, &tiling, &exps, &std, hp.as_ref())?;
    let text = block_file_contents(z.list.base(), &records, &prov.lines())?;
    write_out(a.out.as_deref(), &text)?;

    let mut out = prov.comment_block();
    let _ = writeln!(out, "blocks {} intervals_per_block {} dropped_intervals {}", records.len(), a.block_size, tiling.dropped_intervals);
    let _ = writeln!(out, "{:>6} {:>22} {:>12} {:>12} {:>8} {:>8}", "2k", "moment/length", "err/length", "standard", "flawed", "missed");
    if let (Some(first), Ok(all)) = (records.first(), merge_records(&records)) {
        let len = all.interval_length();
        for (j, e) in exps.iter().enumerate() {
            let m = &all.moments[j];
            let standard = std.aggregate_target(&first.alpha, *e)?;
            let flawed = records.iter().filter(|r| r.flaws.iter().any(|f| f.starts_with(&format!("2k={}:", e.two_k())))).count();
            let missed: usize = records.iter().map(|r| r.intervals_missing_target[j]).sum();
            let _ = writeln!(
                out,
                "{:>6} {:>22.15e} {:>12.3e} {:>12.3e} {flawed:>8} {missed:>8}",
                e.two_k(),
                m.value / len,
                m.posteriori_error / len,
                standard
            );
        }
        let hp_share = records.iter().map(|r| r.hp_fraction).sum::<f64>() / records.len() as f64;
        let evals: f64 = records.iter().map(|r| r.eval_count).sum();
        let _ = writeln!(out, "evaluations {evals:.1} hp_fraction {hp_share:.4}");
    }
    let flaws = records
        .iter()
        .flat_map(|r| {
            let idx = r.first_index.map_or("unknown".into(), |i| i.to_string());
            r.flaws.iter().map(move |f| format!("block {idx}: {f}"))
        })
        .collect();
    Ok(Outcome { stdout: out, flaws })
}

fn load_table(path: Option<&Path>, prov: &mut Provenance) -> Result<Option<CoefficientTable>> {
    match path {
        Some(p) => {
            prov.add_input(p)?;
            Ok(Some(CoefficientTable::read(p)?))
        }
        None => Ok(None),
    }
}

pub fn predict(a: &PredictArgs, mut prov: Provenance) -> Result<Outcome> {
    let ks = parse_ks(&a.k)?;
    if ks.iter().any(|&k| k == 0) {
        return invalid("k must be positive");
    }
    let table = load_table(a.coeff_file.as_deref(), &mut prov)?;
    let mut out = prov.comment_block();
    if a.constants {
        let _ = writeln!(out, "{:>3} {:>14} {:>14}", "k", "a(k)", "g(k)/k^2!");
        for &k in &ks {
            let _ = writeln!(out, "{k:>3} {:>14} {:>14}", sig(arithmetic_factor(k)?, a.digits), sig(rmt_factor_g_over_fact(k), a.digits));
        }
        write_out(a.out.as_deref(), &out)?;
        return Ok(Outcome {
            stdout: out,
            flaws: Vec::new(),
        });
    }
    let at = a.t.as_deref().map(HeightValue::parse).transpose()?;
    let range = a.range.as_deref().map(parse_height_range).transpose()?;
    if at.is_none() && range.is_none() {
        return invalid("predict needs --t or --range");
    }
    let t_ref = at.clone().or_else(|| range.as_ref().map(|r| r.0.clone())).expect("checked above");
    let ln_2pi = (2.0 * std::f64::consts::PI).ln();
    let poly = |k: u32| -> Result<PredictionPolynomial> {
        match a.mode {
            PredictMode::Full => Ok(polynomial_p(k, table.as_ref())?),
            PredictMode::Leading => Ok(leading_polynomial(k)?),
            PredictMode::Rmt4 if k == 2 => Ok(rmt_polynomial_4()?),
            PredictMode::Rmt4 => invalid("rmt4 mode covers k = 2 only"),
            PredictMode::Cue => unreachable!(),
        }
    };
    let _ = writeln!(out, "{:>4} {:>14}", "2k", "prediction");
    for &k in &ks {
        let v = match (a.mode, &at, &range) {
            (PredictMode::Cue, _, _) => {
                let n = match a.cue_n {
                    Some(n) => n,
                    None => (t_ref.ln() - ln_2pi).round().max(1.0) as u64,
                };
                cue_moment(n, k)
            }
            (PredictMode::Leading, Some(t), _) => leading_term_moment(t, k)?,
            (_, Some(t), _) => poly(k)?.eval(t.ln() - ln_2pi),
            (mode, None, Some((lo, hi))) => prediction_mean(lo, hi, &poly(k)?, mode == PredictMode::Leading)?,
            (_, None, None) => unreachable!(),
        };
        let _ = writeln!(out, "{:>4} {:>14}", 2 * k, sig(v, a.digits));
    }
    write_out(a.out.as_deref(), &out)?;
    Ok(Outcome {
        stdout: out,
        flaws: Vec::new(),
    })
}

fn ratio_polynomial(k: u32, leading_only: bool, table: Option<&CoefficientTable>) -> Result<PredictionPolynomial> {
    Ok(if leading_only { leading_polynomial(k)? } else { polynomial_p(k, table)? })
}

fn input_flaws(records: &[BlockRecord]) -> Vec<String> {
    let n = records.iter().filter(|r| !r.is_clean()).count();
    if n == 0 {
        Vec::new()
    } else {
        vec![format!("input holds {n} flawed block records")]
    }
}

pub fn ratio(a: &RatioArgs, mut prov: Provenance) -> Result<Outcome> {
    prov.add_input(&a.block_file)?;
    let (_, mut records) = read_block_file(&a.block_file)?;
    let table = load_table(a.coeff_file.as_deref(), &mut prov)?;
    let exps = even_exponents(&a.two_k)?;
    let groups: Vec<usize> = parse_list(&a.groups, "--groups")?;
    let polys = exps
        .iter()
        .map(|&(_, k)| ratio_polynomial(k, a.leading_only, table.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    if a.self_check {
        for r in &mut records {
            for ((two_k, _), p) in exps.iter().zip(&polys) {
                let pred = prediction_integral(&r.alpha, &r.beta, p, a.leading_only)?;
                match r.moments.iter_mut().find(|m| m.two_k == *two_k) {
                    Some(m) => m.value = pred,
                    None => return invalid(format!("block file lacks 2k={two_k}")),
                }
            }
        }
    }
    let mut out = prov.comment_block();
    let mut detail = prov.comment_block();
    let _ = writeln!(out, "{:>4} {:>6} {:>7} {:>10} {:>10} {:>10} {:>10} {:>7}", "2k", "group", "samples", "mean", "sd", "min", "max", "skipped");
    for ((two_k, _), p) in exps.iter().zip(&polys) {
        for &g in &groups {
            let run = ratios(&records, p, g, a.leading_only)?;
            let xs: Vec<f64> = run.samples.iter().map(|s| s.ratio).collect();
            if xs.is_empty() {
                let _ = writeln!(out, "{two_k:>4} {g:>6} {:>7} (no complete group)", 0);
                continue;
            }
            let s = summarize(&xs)?;
            let _ = writeln!(
                out,
                "{two_k:>4} {g:>6} {:>7} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>7}",
                s.count, s.mean, s.sd, s.min, s.max, run.skipped_groups
            );
            for smp in &run.samples {
                let idx = smp.first_index.map_or("unknown".into(), |i| i.to_string());
                let _ = writeln!(detail, "{two_k} {g} {idx} {:.15e}", smp.ratio);
            }
        }
    }
    write_out(a.out.as_deref(), &detail)?;
    Ok(Outcome {
        stdout: out,
        flaws: input_flaws(&records),
    })
}

fn moment_series(records: &[BlockRecord], two_k: f64) -> Result<Vec<f64>> {
    records
        .iter()
        .map(|r| match r.moment(two_k) {
            Some(m) => Ok(m.value),
            None => invalid(format!("block file lacks 2k={two_k}")),
        })
        .collect()
}

pub fn stats(a: &StatsArgs, mut prov: Provenance) -> Result<Outcome> {
    prov.add_input(&a.block_file)?;
    let (_, records) = read_block_file(&a.block_file)?;
    if records.is_empty() {
        return invalid("block file holds no records");
    }
    let table = load_table(a.coeff_file.as_deref(), &mut prov)?;
    let exps = even_exponents(&a.two_k)?;
    let mut out = prov.comment_block();
    let mut plot = String::new();
    for &(two_k, k) in &exps {
        let _ = writeln!(out, "2k {two_k}");
        match a.analysis {
            Analysis::MomentsOfMoments | Analysis::LogRatio => {
                let p = ratio_polynomial(k, a.leading_only, table.as_ref())?;
                let run = ratios(&records, &p, a.group, a.leading_only)?;
                let xs: Vec<f64> = run.samples.iter().map(|s| s.ratio).collect();
                let s = if a.analysis == Analysis::LogRatio { log_ratio_stats(&xs)? } else { summarize(&xs)? };
                let what = if a.analysis == Analysis::LogRatio { "log ratio" } else { "ratio" };
                let _ = writeln!(
                    out,
                    "{what}: count {} mean {:.6e} sd {:.6e} min {:.6e} max {:.6e}",
                    s.count, s.mean, s.sd, s.min, s.max
                );
                if a.analysis == Analysis::MomentsOfMoments {
                    for (p, m) in standardized_moments(&xs, a.p_max)? {
                        let _ = writeln!(out, "standardized moment {p}: {m:.6e}");
                    }
                }
            }
            Analysis::Autocov => {
                let xs = moment_series(&records, two_k)?;
                let c = autocovariance(&xs, a.max_lag)?;
                let ctl = permutation_control(&xs, a.max_lag, a.seed)?;
                let bound = 3.0 / (xs.len() as f64).sqrt();
                let _ = writeln!(out, "R {} c0 {:.6e} control bound {bound:.4}", xs.len(), c.c[0]);
                let _ = writeln!(out, "{:>4} {:>12} {:>12}", "m", "c_m/c_0", "control");
                let mut points = Vec::new();
                for m in 1..=a.max_lag {
                    let v = c.normalized[m].unwrap_or(f64::NAN);
                    let w = ctl.normalized[m].unwrap_or(f64::NAN);
                    let _ = writeln!(out, "{m:>4} {v:>12.6} {w:>12.6}");
                    points.push((m as f64, v));
                }
                plot.push_str(&plot_data("blockcorr", &[format!("2k={two_k}")], &points));
            }
            Analysis::Extremes => {
                let xs = moment_series(&records, two_k)?;
                let c = sorted_contributions(&xs, a.n_max)?;
                let _ = writeln!(out, "{:>4} {:>12} {:>12}", "n", "f(n)", "n^(-k/5)");
                let mut points = Vec::new();
                for (i, f) in c.f.iter().enumerate() {
                    let n = (i + 1) as f64;
                    let _ = writeln!(out, "{:>4} {f:>12.6} {:>12.6}", i + 1, power_law(n, k as f64));
                    points.push((n, *f));
                }
                let top: Vec<String> = c.cumulative_percent.iter().take(5).map(|p| format!("{p:.4}")).collect();
                let _ = writeln!(out, "cumulative percent n=1..5: {}", top.join(" "));
                let e = extreme_exponent_prediction(&records[0].alpha, records.len() as f64)?;
                let _ = writeln!(out, "predicted extreme exponent {e:.6}");
                plot.push_str(&plot_data("powerlaw", &[format!("2k={two_k}")], &points));
            }
        }
    }
    if let Some(p) = &a.out {
        fs::write(p, format!("{}{plot}", prov.comment_block()))?;
    }
    Ok(Outcome {
        stdout: out,
        flaws: input_flaws(&records),
    })
}

fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() == 3 {
        let v: Vec<f64> = parts.iter().map(|s| s.trim().parse::<f64>()).collect::<std::result::Result<_, _>>()
            .or_else(|_| invalid(format!("bad grid {text:?}")))?;
        if !(v[2] > 0.0 && v[1] >= v[0]) {
            return invalid(format!("grid needs start <= end and step > 0, got {text:?}"));
        }
        return Ok(alpha_grid(v[0], v[1], v[2]));
    }
    parse_list(text, "--alpha-grid")
}

pub fn shifted(a: &ShiftedArgs, mut prov: Provenance) -> Result<Outcome> {
    let alphas = parse_grid(&a.alpha_grid)?;
    let z = load_zeros(&a.source, 0, &mut prov)?;
    if z.last <= z.first {
        return invalid("shifted moments need at least two zeros");
    }
    let std = AccuracyStandard {
        romberg_cap: a.romberg_cap,
        ..AccuracyStandard::default()
    };
    let lo = z.list.height(z.first);
    let hi = z.list.height(z.last);
    let rows = kernel_comparison(&z.list, &lo, &hi, &alphas, &std)?;
    let mut out = prov.comment_block();
    let _ = writeln!(out, "T {:.6} H {:.6} logT {:.6}", lo.to_f64(), hi.diff(&lo), lo.ln());
    let _ = writeln!(out, "{:>10} {:>14} {:>12} {:>12} {:>12}", "alpha", "moment", "error", "ratio", "K");
    let mut flaws = Vec::new();
    for r in &rows {
        let _ = writeln!(out, "{:>10.4} {:>14.6e} {:>12.3e} {:>12.6} {:>12.6}", r.alpha, r.moment, r.error, r.ratio, r.kernel);
        if !(r.error <= std.relative * r.moment.abs()) {
            flaws.push(format!("alpha={}: error {:.3e} above {} of the moment", r.alpha, r.error, std.relative));
        }
    }
    if let Some(p) = &a.out {
        let header = prov.lines();
        let ratio: Vec<(f64, f64)> = rows.iter().map(|r| (r.alpha, r.ratio)).collect();
        let kernel: Vec<(f64, f64)> = rows.iter().map(|r| (r.alpha, r.kernel)).collect();
        fs::write(p, plot_data(&a.figure, &header, &ratio))?;
        let mut kp = p.as_os_str().to_owned();
        kp.push(".kernel");
        fs::write(std::path::PathBuf::from(kp), plot_data(&format!("{} kernel", a.figure), &header, &kernel))?;
    }
    Ok(Outcome { stdout: out, flaws })
}

fn parse_models(text: &str) -> Result<Vec<LocalModelConfig>> {
    text.split(',')
        .map(|item| {
            let p: Vec<&str> = item.trim().split(':').collect();
            let bad = || invalid(format!("bad model {item:?}; use hp:M, ehp:M:X or nehp:M:X"));
            let m = p.get(1).and_then(|s| s.parse::<usize>().ok());
            let x = p.get(2).and_then(|s| s.parse::<f64>().ok());
            let cfg = match (p[0], m, x, p.len()) {
                ("hp", Some(m), None, 2) => LocalModelConfig::hp(m),
                ("ehp", Some(m), Some(x), 3) => LocalModelConfig::ehp(m, x, false),
                ("nehp", Some(m), Some(x), 3) => LocalModelConfig::ehp(m, x, true),
                _ => return bad(),
            };
            cfg.validate()?;
            Ok(cfg)
        })
        .collect()
}

pub fn localmodel(a: &LocalModelArgs, mut prov: Provenance) -> Result<Outcome> {
    let cfgs = parse_models(&a.models)?;
    if a.intervals == 0 || a.experiments == 0 {
        return invalid("--intervals and --experiments must be positive");
    }
    let margin = cfgs.iter().map(|c| c.m).max().unwrap_or(1);
    let z = load_zeros(&a.source, margin, &mut prov)?;
    let first = z.first.max(margin);
    let last = z.last.min(z.list.len().saturating_sub(margin));
    let needed = a.intervals * a.experiments;
    if last < first || last - first < needed {
        return invalid(format!("{needed} intervals with {margin}-zero windows do not fit the zero list"));
    }
    let mut results = Vec::new();
    for e in 0..a.experiments {
        results.extend(run_experiment(e + 1, &z.list, first + e * a.intervals, a.intervals, &cfgs)?);
    }
    let mut out = prov.comment_block();
    let _ = writeln!(out, "{:>4} {:<24} {:>12} {:>8} {:>8}", "exp", "model", "linf", "points", "skipped");
    for r in &results {
        let _ = writeln!(
            out,
            "{:>4} {:<24} {:>12.5e} {:>8} {:>8}",
            r.experiment_id,
            r.config.label(),
            r.linf_error,
            r.grid_points_used,
            r.skipped_intervals
        );
    }
    out.push_str(&report(&results));
    // Convergence rates along HP configurations whose m doubles.
    let mut hp_ms: Vec<usize> = cfgs.iter().filter(|c| c.model == LocalModel::Hp).map(|c| c.m).collect();
    hp_ms.sort_unstable();
    hp_ms.dedup();
    if hp_ms.len() >= 2 && hp_ms.windows(2).all(|w| w[1] == 2 * w[0]) {
        let mut per_r = vec![Vec::new(); hp_ms.len() - 1];
        for e in 1..=a.experiments {
            let errs: Vec<f64> = hp_ms
                .iter()
                .map(|&m| {
                    results
                        .iter()
                        .find(|r| r.experiment_id == e && r.config.model == LocalModel::Hp && r.config.m == m)
                        .map_or(f64::NAN, |r| r.linf_error)
                })
                .collect();
            for (i, c) in convergence_rates(&errs).into_iter().enumerate() {
                if let Some(c) = c {
                    per_r[i].push(c);
                }
            }
        }
        let _ = writeln!(out, "convergence rate C_r (HP, m doubling)");
        for (i, v) in per_r.iter().enumerate() {
            let mean = v.iter().sum::<f64>() / v.len().max(1) as f64;
            let _ = writeln!(out, "m {:>5} -> {:>5}: mean C {mean:.4} over {} experiments", hp_ms[i], hp_ms[i + 1], v.len());
        }
    }
    let flaws = results
        .iter()
        .filter(|r| !r.linf_error.is_finite())
        .map(|r| format!("experiment {} {}: non-finite error", r.experiment_id, r.config.label()))
        .collect();
    write_out(a.out.as_deref(), &out)?;
    Ok(Outcome { stdout: out, flaws })
}
