//! Acceptance criteria 1–11: one PASS/FAIL line per criterion, details
//! indented below it. Honest failures are reported, not hidden; the target
//! exits 0 once every criterion has been evaluated.
//!
//! `ZETA_COEFF_FILE` points at a `ZETAPK v1` coefficient file for the
//! clauses that need P_k with k ≥ 3. `ZETA_ACCEPTANCE_QUICK=1` skips the
//! 10⁵-zero desk run (criteria 5, 6, 10 and the Jensen suite report NOT RUN).

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::Instant;

use zeta_core::local_models::{convergence_rates, run_experiment, ExperimentResult, LocalModel, LocalModelConfig};
use zeta_core::moments::{merge_records, read_block_file, AccuracyStandard, BlockRecord, MomentExponent};
use zeta_core::predictions::{
    arithmetic_factor, arithmetic_factor_a, polynomial_p, rmt_factor_g_over_fact, ArithFactorConfig, CoefficientTable,
};
use zeta_core::selfcheck::{em_rs_agreement, jensen_ordering, local_model_anchoring, romberg_containment, SuiteResult};
use zeta_core::statistics::{kernel_comparison, kernel_k_at, permutation_control, autocovariance, ratios, sorted_contributions};
use zeta_core::zeros::{gram_point_dd, isolate_zeros, isolate_zeros_by_index, ZeroList};
use zeta_core::zeta::z_function_dd;

const A23_FIRST: &str = "13066434408795325114253.9323425414";
const S8_FIRST: &str = "14.1347251417347";
const S8_LAST: &str = "42653549.7609516";
const S1_FIRST: u64 = 10_000_000;
const S1_ZEROS: u64 = 100_000;

#[derive(Clone, Copy, PartialEq)]
enum Status {
    Pass,
    Fail,
    NotRun,
}

struct Verdict {
    status: Status,
    summary: String,
    details: Vec<String>,
}

impl Verdict {
    fn new(pass: bool, summary: impl Into<String>, details: Vec<String>) -> Self {
        Self {
            status: if pass { Status::Pass } else { Status::Fail },
            summary: summary.into(),
            details,
        }
    }

    fn not_run(summary: impl Into<String>) -> Self {
        Self {
            status: Status::NotRun,
            summary: summary.into(),
            details: Vec::new(),
        }
    }
}

/// True if `printed` equals `value` truncated or rounded to `digits`
/// significant digits.
fn matches_printed(value: f64, printed: f64, digits: i32) -> bool {
    let e = printed.abs().log10().floor() as i32 - (digits - 1);
    let unit = 10f64.powi(e);
    let scaled = value / unit;
    let target = (printed / unit).round();
    scaled.floor() == target || scaled.round() == target
}

fn cli(args: &[&str]) -> zeta_cli::Outcome {
    let mut argv = vec!["zeta-moments"];
    argv.extend_from_slice(args);
    zeta_cli::run(&argv).unwrap_or_else(|e| panic!("zeta-moments {}: {e}", args.join(" ")))
}

/// `(2k, value)` rows of a `predict` report.
fn predict_rows(args: &[&str]) -> Vec<(u32, f64)> {
    cli(args)
        .stdout
        .lines()
        .filter(|l| !l.starts_with('#'))
        .filter_map(|l| {
            let mut it = l.split_whitespace();
            Some((it.next()?.parse().ok()?, it.next()?.parse().ok()?))
        })
        .collect()
}

fn compare_rows(rows: &[(u32, f64)], printed: &[(u32, f64)], digits: i32, details: &mut Vec<String>) -> usize {
    let mut ok = 0;
    for &(two_k, want) in printed {
        match rows.iter().find(|r| r.0 == two_k) {
            Some(&(_, v)) if matches_printed(v, want, digits) => ok += 1,
            Some(&(_, v)) => details.push(format!("2k={two_k}: computed {v:.6e}, printed {want:e}")),
            None => details.push(format!("2k={two_k}: missing from output")),
        }
    }
    ok
}

fn coeff_table() -> Option<(String, CoefficientTable)> {
    let path = std::env::var("ZETA_COEFF_FILE").ok()?;
    let table = CoefficientTable::read(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    Some((path, table))
}

fn criterion_1() -> Verdict {
    let printed = [
        (1, 1.0, 1.0),
        (2, 6.0792e-1, 8.3333e-2),
        (3, 4.9321e-2, 1.1574e-4),
        (4, 2.1468e-4, 1.1482e-9),
        (5, 3.1326e-8, 4.5202e-17),
        (6, 1.1415e-13, 4.4937e-27),
        (7, 8.4291e-21, 7.8100e-40),
        (8, 1.0751e-29, 1.7402e-55),
    ];
    let start = Instant::now();
    let mut details = Vec::new();
    let mut ok = 0;
    for &(k, pa, pg) in &printed {
        let a = arithmetic_factor(k).expect("a(k)");
        let g = rmt_factor_g_over_fact(k);
        let (ma, mg) = (matches_printed(a, pa, 5), matches_printed(g, pg, 5));
        if ma && mg {
            ok += 1;
        } else {
            details.push(format!("k={k}: a = {a:.7e} (printed {pa:e}, {}), g/k²! = {g:.7e} (printed {pg:e}, {})",
                if ma { "ok" } else { "MISMATCH" }, if mg { "ok" } else { "MISMATCH" }));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let truncated = ArithFactorConfig {
        prime_cutoff: Some(220_000),
        tail_correction: false,
        ..ArithFactorConfig::default()
    };
    let trunc_ok = printed
        .iter()
        .filter(|&&(k, pa, _)| matches_printed(arithmetic_factor_a(k, &truncated).expect("a(k)"), pa, 5))
        .count();
    details.push(format!(
        "diagnostic: an uncorrected Euler product over primes <= 220000 matches {trunc_ok}/8 printed a(k); \
         the converged product (tail-corrected) is the library default"
    ));
    Verdict::new(ok == 8 && secs < 5.0, format!("{ok}/8 rows match to 5 digits, {secs:.2} s (budget 5 s)"), details)
}

fn criterion_2() -> Verdict {
    let printed = [
        (2, 5.09e1), (4, 3.40e5), (6, 1.31e10), (8, 5.04e14), (10, 6.67e18), (12, 1.44e22), (14, 2.86e24),
        (16, 3.27e25), (18, 1.44e25), (20, 1.74e23), (22, 4.29e19), (24, 1.64e14), (26, 7.61e6), (28, 3.50e-3),
    ];
    let start = Instant::now();
    let rows = predict_rows(&["predict", "--mode", "leading", "--t", A23_FIRST, "--k", "1:14", "--digits", "12"]);
    let secs = start.elapsed().as_secs_f64();
    let mut details = Vec::new();
    let ok = compare_rows(&rows, &printed, 3, &mut details);
    Verdict::new(ok == 14 && secs < 1.0, format!("{ok}/14 rows match to 3 digits, {secs:.3} s (budget 1 s)"), details)
}

fn criterion_3() -> Verdict {
    let mut details = Vec::new();
    let start = Instant::now();
    let s8 = format!("{S8_FIRST}:{S8_LAST}");
    let rows = predict_rows(&["predict", "--mode", "full", "--range", &s8, "--k", "1:2", "--digits", "12"]);
    let mut total = 2;
    let mut ok = compare_rows(&rows, &[(2, 1.58e1), (4, 5.28e3)], 3, &mut details);
    let mut secs = start.elapsed().as_secs_f64();
    let coeff_clause = match coeff_table() {
        Some((path, _)) => {
            let start = Instant::now();
            let rows = predict_rows(&["predict", "--mode", "full", "--range", &s8, "--k", "3:6", "--coeff-file", &path, "--digits", "12"]);
            secs += start.elapsed().as_secs_f64();
            total += 4;
            ok += compare_rows(&rows, &[(6, 5.58e6), (8, 9.87e9), (10, 2.33e13), (12, 6.67e16)], 3, &mut details);
            "coefficient-file rows run".to_string()
        }
        None => "coefficient-file clause NOT RUN (no ZETA_COEFF_FILE; P_k for k>=3 is external data)".to_string(),
    };
    let exp2 = [
        ("2513274123247200.2749333722:2513274310394937.6298283407", [3.36e1, 6.47e4, 3.13e8, 6.57e11, 2.07e14, 4.66e15]),
        ("15202440116008983010.9496959179:15202440116162879518.7223388010", [4.23e1, 1.62e5, 2.49e9, 2.61e13, 6.56e16, 1.85e19]),
        ("13066434408795325114253.9323425414:13066434408795982219997.4045053551", [4.90e1, 2.94e5, 9.44e9, 2.80e14, 2.66e18, 3.84e21]),
    ];
    let mut exp2_ok = 0;
    for (range, printed) in exp2 {
        let rows = predict_rows(&["predict", "--mode", "leading", "--range", range, "--k", "1:6", "--digits", "12"]);
        let want: Vec<(u32, f64)> = printed.iter().enumerate().map(|(i, &v)| (2 * (i as u32 + 1), v)).collect();
        exp2_ok += compare_rows(&rows, &want, 3, &mut details);
    }
    let pass = ok == total && exp2_ok == 18 && secs < 1.0;
    Verdict::new(
        pass,
        format!("exp1 S8 {ok}/{total} rows in {secs:.3} s; exp2 Z16/O20/A23 {exp2_ok}/18 rows; {coeff_clause}"),
        details,
    )
}

fn criterion_4() -> Verdict {
    let mut details = Vec::new();
    let first = isolate_zeros(10.0, 20.0, None).expect("zeros below 20");
    let g1 = first.height_f64(0);
    let g1_ok = (g1 - 14.1347251417347).abs() <= 5e-12 && first.first_index() == Some(1);
    details.push(format!("γ1 = {g1:.13}"));
    let start = Instant::now();
    let (zeros, report) = isolate_zeros_by_index(1, 100_000).expect("first 10^5 zeros");
    let iso_secs = start.elapsed().as_secs_f64();
    let hs: Vec<f64> = (0..zeros.len()).map(|i| zeros.height_f64(i)).collect();
    let increasing = hs.windows(2).all(|w| w[1] > w[0]);
    // N(g_n) = n + 1 at every good Gram point below the last zero.
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut n = -1i64;
    loop {
        let g = gram_point_dd(n).expect("Gram point");
        if g.to_f64() >= hs[hs.len() - 1] {
            break;
        }
        let (z, _) = z_function_dd(g).expect("Z at Gram point");
        let good = if n.rem_euclid(2) == 0 { z > 0.0 } else { z < 0.0 };
        if good {
            checked += 1;
            let count = hs.partition_point(|&h| h < g.to_f64()) as i64;
            if count != n + 1 {
                bad.push(format!("g_{n}: {count} zeros below, backbone says {}", n + 1));
            }
        }
        n += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    details.push(format!(
        "isolation {iso_secs:.1} s; {} bad Gram points, {} subdivided Gram blocks; {checked} good Gram points checked",
        report.bad_gram_points, report.subdivided_blocks
    ));
    details.extend(bad.iter().take(5).cloned());
    let pass = g1_ok && zeros.len() == 100_000 && increasing && bad.is_empty() && secs < 600.0;
    Verdict::new(
        pass,
        format!(
            "γ1 {}; {} zeros, count matches N(g_n)=n+1 at {}/{checked} good Gram points; {secs:.1} s (budget 600 s)",
            if g1_ok { "matches to 12 digits" } else { "MISMATCH" },
            zeros.len(),
            checked - bad.len()
        ),
        details,
    )
}

/// The desk run over zeros 10⁷..10⁷+10⁵ in 100-interval records.
struct DeskRun {
    records: Vec<BlockRecord>,
    secs: f64,
    cli_flaws: usize,
}

fn desk_run(dir: &Path) -> DeskRun {
    let out = dir.join("s1.blocks");
    let range = format!("{}:{}", S1_FIRST, S1_FIRST + S1_ZEROS);
    let start = Instant::now();
    let outcome = cli(&[
        "moments", "--zero-index-range", &range, "--two-k", "2,4,6,8,10,12", "--block-size", "100",
        "--out", out.to_str().expect("utf-8 path"),
    ]);
    let secs = start.elapsed().as_secs_f64();
    let (_, records) = read_block_file(&out).expect("block file");
    DeskRun {
        records,
        secs,
        cli_flaws: outcome.flaws.len(),
    }
}

/// Canonical 1000-interval blocks from consecutive 100-interval records.
fn canonical_blocks(records: &[BlockRecord]) -> Vec<BlockRecord> {
    records.chunks_exact(10).map(|c| merge_records(c).expect("contiguous records")).collect()
}

fn criterion_5(run: Option<&DeskRun>) -> Verdict {
    let Some(run) = run else {
        return Verdict::not_run("desk run skipped (ZETA_ACCEPTANCE_QUICK)");
    };
    let mut details = Vec::new();
    let ratio = |k: u32, table: Option<&CoefficientTable>| -> f64 {
        let p = polynomial_p(k, table).expect("prediction polynomial");
        let r = ratios(&run.records, &p, run.records.len(), false).expect("ratio");
        assert_eq!(r.samples.len(), 1, "s1 must form one contiguous group");
        r.samples[0].ratio
    };
    let mut pass = true;
    for (k, want) in [(1, 1.000), (2, 0.996)] {
        let r = ratio(k, None);
        let ok = (r - want).abs() <= 0.005;
        pass &= ok;
        details.push(format!("2k={}: ratio {r:.5} (published {want:.3} ± 0.005) {}", 2 * k, if ok { "ok" } else { "MISMATCH" }));
    }
    let coeff_clause = match coeff_table() {
        Some((_, table)) => {
            for (k, want) in [(3, 0.975), (4, 0.943), (5, 0.909), (6, 0.875)] {
                let r = ratio(k, Some(&table));
                let ok = (r - want).abs() <= 0.02;
                pass &= ok;
                details.push(format!("2k={}: ratio {r:.5} (published {want:.3} ± 0.02) {}", 2 * k, if ok { "ok" } else { "MISMATCH" }));
            }
            "coefficient-file rows run"
        }
        None => "coefficient-file clause NOT RUN (no ZETA_COEFF_FILE)",
    };
    pass &= run.secs <= 7200.0;
    let first = &details[0];
    let second = &details[1];
    Verdict::new(pass, format!("{first}; {second}; run {:.0} s (budget 7200 s); {coeff_clause}", run.secs), details.split_off(2))
}

fn criterion_6(run: Option<&DeskRun>) -> Verdict {
    let Some(run) = run else {
        return Verdict::not_run("desk run skipped (ZETA_ACCEPTANCE_QUICK)");
    };
    let std = AccuracyStandard::default();
    let blocks = canonical_blocks(&run.records);
    let mut details = Vec::new();
    let mut failing = 0;
    for two_k in [2.0, 4.0, 6.0, 8.0, 10.0, 12.0] {
        let e = MomentExponent::new(two_k).expect("exponent");
        let mut misses = 0;
        let mut worst = 0.0f64;
        for b in &blocks {
            let m = b.moment(two_k).expect("moment");
            let bound = std.aggregate_target(&b.alpha, e).expect("standard");
            let q = m.posteriori_error / b.interval_length() / bound;
            worst = worst.max(q);
            misses += (q >= 1.0) as usize;
        }
        failing += misses;
        details.push(format!("2k={two_k}: {misses}/{} blocks over the standard, worst error/standard {worst:.3}", blocks.len()));
    }
    details.push(format!("the 100-interval records raised {} flaws in the moments command", run.cli_flaws));
    Verdict::new(
        failing == 0 && !blocks.is_empty(),
        format!("{failing} (block, 2k) pairs over 1e-3 × leading-term moment across {} 1000-interval blocks", blocks.len()),
        details,
    )
}

/// Zeros 10⁷−300 .. 10⁷+3300: three 1000-interval experiments with room
/// for 256-zero windows on each side.
fn local_zeros() -> ZeroList {
    isolate_zeros_by_index(S1_FIRST - 300, S1_FIRST + 3300).expect("zeros near 10^7").0
}

fn local_results(zeros: &ZeroList) -> Vec<ExperimentResult> {
    let mut cfgs: Vec<LocalModelConfig> = (1..=8).map(|r| LocalModelConfig::hp(1 << r)).collect();
    cfgs.push(LocalModelConfig::ehp(256, 6.0, true));
    cfgs.push(LocalModelConfig::ehp(256, 1000.0, true));
    cfgs.push(LocalModelConfig::ehp(256, 1000.0, false));
    (0..3)
        .flat_map(|e| run_experiment(e + 1, zeros, 300 + 1000 * e, 1000, &cfgs).expect("experiment"))
        .collect()
}

fn linf(results: &[ExperimentResult], exp: usize, model: LocalModel, m: usize, x: Option<f64>) -> f64 {
    results
        .iter()
        .find(|r| r.experiment_id == exp && r.config.model == model && r.config.m == m && x.map_or(true, |x| r.config.x == x))
        .expect("configuration present")
        .linf_error
}

fn criterion_7(results: &[ExperimentResult]) -> Verdict {
    let errs: Vec<f64> = (3..=8).map(|r| linf(results, 1, LocalModel::Hp, 1 << r, None)).collect();
    let rates: Vec<f64> = convergence_rates(&errs).into_iter().flatten().collect();
    let mean = rates.iter().sum::<f64>() / rates.len() as f64;
    let (e16, e256) = (linf(results, 1, LocalModel::Hp, 16, None), linf(results, 1, LocalModel::Hp, 256, None));
    let pass = rates.len() == 5 && (0.75..=1.25).contains(&mean) && e256 < e16;
    let mut details: Vec<String> = (1..=8)
        .map(|r| format!("m={:>3}: L∞ {:.5}", 1 << r, linf(results, 1, LocalModel::Hp, 1 << r, None)))
        .collect();
    details.push(format!("C_4..C_8 = {}", rates.iter().map(|c| format!("{c:.3}")).collect::<Vec<_>>().join(", ")));
    Verdict::new(pass, format!("mean C_r over r=4..8 = {mean:.3} (need 0.75..1.25); L∞(256) {e256:.4} < L∞(16) {e16:.4}"), details)
}

fn criterion_8(results: &[ExperimentResult]) -> Verdict {
    let avg = |model, m, x| (1..=3).map(|e| linf(results, e, model, m, x)).sum::<f64>() / 3.0;
    let n6 = avg(LocalModel::EhpNormalized, 256, Some(6.0));
    let n1000 = avg(LocalModel::EhpNormalized, 256, Some(1000.0));
    let raw = avg(LocalModel::Ehp, 256, Some(1000.0));
    let hp = avg(LocalModel::Hp, 256, None);
    let pass = n6 < n1000 && raw > hp;
    Verdict::new(
        pass,
        format!("normalized EHP X=6 {n6:.4} < X=1000 {n1000:.4}; unnormalized EHP X=1000 {raw:.4} > HP {hp:.4} (m=256, 3 experiments)"),
        Vec::new(),
    )
}

fn criterion_9() -> Verdict {
    let start = Instant::now();
    let zeros = isolate_zeros(5_000_000.0, 5_004_600.0, None).expect("zeros near 5e6");
    let lo = zeros.height(0);
    let hi = zeros.height(zeros.len() - 1);
    let log_t = lo.ln();
    let alphas: Vec<f64> = (0..=13).map(|i| 0.02 * i as f64).filter(|a| a * log_t <= 4.0).collect();
    let rows = kernel_comparison(&zeros, &lo, &hi, &alphas, &AccuracyStandard::default()).expect("kernel comparison");
    let mut details = Vec::new();
    let mut worst = 0.0f64;
    for r in &rows {
        let d = (r.ratio - r.kernel).abs();
        worst = worst.max(d);
        details.push(format!("α={:.2} (α log T={:.2}): ratio {:.4}, K {:.4}, |Δ| {d:.4}", r.alpha, r.alpha * log_t, r.ratio, r.kernel));
    }
    let at_zero = rows.iter().find(|r| r.alpha == 0.0).map(|r| r.ratio);
    let k0 = kernel_k_at(0.0);
    let k2pi = kernel_k_at(2.0 * std::f64::consts::PI);
    let pass = at_zero == Some(1.0) && worst <= 0.05 && k0 == 1.0 && (k2pi - 0.303964).abs() <= 1e-6;
    Verdict::new(
        pass,
        format!(
            "{} zeros from T={:.0}; ratio(0) = {:?}; max |ratio − K| = {worst:.4} for α log T ≤ 4 (need ≤ 0.05); K(0)={k0}, K(2π)={k2pi:.6}; {:.0} s",
            zeros.len(),
            lo.to_f64(),
            at_zero,
            start.elapsed().as_secs_f64()
        ),
        details,
    )
}

fn criterion_10(run: Option<&DeskRun>) -> Verdict {
    let Some(run) = run else {
        return Verdict::not_run("desk run skipped (ZETA_ACCEPTANCE_QUICK)");
    };
    let xs: Vec<f64> = run.records.iter().map(|r| r.moment(2.0).expect("2k=2").value).collect();
    let r = xs.len();
    let bound = 3.0 / (r as f64).sqrt();
    let ctl = permutation_control(&xs, 40, 20240101).expect("control");
    let raw = autocovariance(&xs, 40).expect("autocovariance");
    let worst = (1..=40).map(|m| ctl.normalized[m].expect("c0 > 0").abs()).fold(0.0, f64::max);
    let mut details = vec![format!(
        "unrandomized c_m/c_0 for m=1..5: {}",
        (1..=5).map(|m| format!("{:.3}", raw.normalized[m].unwrap_or(f64::NAN))).collect::<Vec<_>>().join(", ")
    )];
    let mut contrib_ok = true;
    for two_k in [2.0, 4.0, 6.0, 8.0, 10.0, 12.0] {
        let ys: Vec<f64> = run.records.iter().map(|r| r.moment(two_k).expect("moment").value).collect();
        let c = sorted_contributions(&ys, 20).expect("contributions");
        let ok = c.f[0] == 1.0
            && c.f.windows(2).all(|w| w[1] <= w[0])
            && c.cumulative_percent.windows(2).all(|w| w[1] >= w[0])
            && c.cumulative_percent.last() == Some(&100.0);
        contrib_ok &= ok;
        details.push(format!(
            "2k={two_k}: f(2..4) = {:.3} {:.3} {:.3}; top-5 share {:.2}% {}",
            c.f[1], c.f[2], c.f[3], c.cumulative_percent[4], if ok { "ok" } else { "VIOLATION" }
        ));
    }
    Verdict::new(
        worst < bound && contrib_ok,
        format!(
            "permutation control of {r} block second moments: max |c_m/c_0| = {worst:.4} < 3/√R = {bound:.4} for m=1..40; \
             sorted contributions {}",
            if contrib_ok { "satisfy f(1)=1 and monotonicity" } else { "VIOLATE invariants" }
        ),
        details,
    )
}

fn criterion_11(run: Option<&DeskRun>, zeros: &ZeroList) -> Verdict {
    let mut details = Vec::new();
    let mut all = true;
    let mut report = |name: &str, r: &SuiteResult| {
        all &= r.passed();
        details.push(format!("{name}: {} cases, {} violations", r.cases, r.violations.len()));
        details.extend(r.violations.iter().take(3).map(|v| format!("  {v}")));
    };
    let start = Instant::now();
    report("EM vs RS on 1000 random t in [100, 1e7]", &em_rs_agreement(1000, 100.0, 1e7, 0x5eed_0001).expect("EM/RS"));
    report("Romberg vs adaptive oracle, 100 integrands", &romberg_containment(100, 0x5eed_0002));
    report(
        "HP/EHP midpoint and zero-vanishing near zero #1e7",
        &local_model_anchoring(zeros, 300..500, &[1, 16, 256], &[6.0, 1000.0]).expect("anchoring"),
    );
    let jensen = match run {
        Some(run) => {
            let merged = merge_records(&run.records).expect("contiguous records");
            report("Jensen ordering over the 1e5-zero desk run", &jensen_ordering(&merged));
            "all four suites run"
        }
        None => {
            all = false;
            "Jensen suite NOT RUN (desk run skipped)"
        }
    };
    let secs = start.elapsed().as_secs_f64();
    Verdict::new(all, format!("{jensen}; {secs:.0} s"), details)
}

fn guarded(f: impl FnOnce() -> Verdict) -> Verdict {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(v) => v,
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Verdict::new(false, format!("aborted: {msg}"), Vec::new())
        }
    }
}

fn print(id: u32, v: &Verdict) {
    let status = match v.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::NotRun => "NOT RUN",
    };
    println!("criterion {id:>2}: {status} — {}", v.summary);
    for d in &v.details {
        println!("    {d}");
    }
}

fn main() {
    let quick = std::env::var("ZETA_ACCEPTANCE_QUICK").is_ok_and(|v| v == "1");
    let dir = tempfile::tempdir().expect("temporary directory");
    let mut verdicts = Vec::new();
    let mut record = |id: u32, v: Verdict| {
        print(id, &v);
        verdicts.push(v.status);
    };
    record(1, guarded(criterion_1));
    record(2, guarded(criterion_2));
    record(3, guarded(criterion_3));
    record(4, guarded(criterion_4));
    let run = if quick { None } else { catch_unwind(AssertUnwindSafe(|| desk_run(dir.path()))).ok() };
    if !quick && run.is_none() {
        println!("desk run aborted; criteria depending on it fail");
    }
    let missing = |v: Verdict| if !quick && run.is_none() { Verdict::new(false, "desk run aborted", Vec::new()) } else { v };
    record(5, missing(guarded(|| criterion_5(run.as_ref()))));
    record(6, missing(guarded(|| criterion_6(run.as_ref()))));
    let zeros = catch_unwind(local_zeros).ok();
    let results = zeros.as_ref().and_then(|z| catch_unwind(AssertUnwindSafe(|| local_results(z))).ok());
    match &results {
        Some(r) => {
            record(7, guarded(|| criterion_7(r)));
            record(8, guarded(|| criterion_8(r)));
        }
        None => {
            record(7, Verdict::new(false, "local-model experiments aborted", Vec::new()));
            record(8, Verdict::new(false, "local-model experiments aborted", Vec::new()));
        }
    }
    record(9, guarded(criterion_9));
    record(10, missing(guarded(|| criterion_10(run.as_ref()))));
    match &zeros {
        Some(z) => record(11, guarded(|| criterion_11(run.as_ref(), z))),
        None => record(11, Verdict::new(false, "zeros near 10^7 unavailable", Vec::new())),
    }
    let count = |s: Status| verdicts.iter().filter(|&&v| v == s).count();
    println!(
        "acceptance: {} passed, {} failed, {} not run",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::NotRun)
    );
}
