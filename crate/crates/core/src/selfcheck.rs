//! Cross-method self-checks: independent evaluations of the same quantity
//! must agree within the errors the library reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dd::Dd;
use crate::local_models::{ehp_approx, HpWindow, ZxWindow};
use crate::moments::BlockRecord;
use crate::quadrature::{romberg, GaussLegendre};
use crate::zeros::ZeroList;
use crate::zeta::{riemann_siegel_z_dd, z_euler_maclaurin, z_with_target};
use crate::{HeightValue, Result};

/// Cases examined and the ones that failed, described.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SuiteResult {
    pub cases: usize,
    pub violations: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.cases > 0 && self.violations.is_empty()
    }
}

/// `|Z_EM(t) − Z_RS(t)|` within the sum of both reported bounds at `samples`
/// uniform heights in `[lo, hi]`. Riemann-Siegel uses all four corrections.
pub fn em_rs_agreement(samples: usize, lo: f64, hi: f64, seed: u64) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ts: Vec<f64> = (0..samples).map(|_| rng.gen_range(lo..hi)).collect();
    let checked: Vec<Option<String>> = ts
        .par_iter()
        .map(|&t| -> Result<Option<String>> {
            let (rs, qr) = riemann_siegel_z_dd(Dd::from(t), 4)?;
            let (em, qe) = z_euler_maclaurin(t, 1e-9)?;
            let d = (rs - em).abs();
            let bound = qr.abs_error_bound + qe.abs_error_bound;
            Ok((d > bound).then(|| format!("t={t}: |EM−RS| = {d:.3e} > {bound:.3e}")))
        })
        .collect::<Result<_>>()?;
    Ok(SuiteResult {
        cases: samples,
        violations: checked.into_iter().flatten().collect(),
    })
}

/// Adaptive Gauss-Legendre bisection, independent of Romberg.
fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, gl: &GaussLegendre, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let whole = gl.integrate(f, a, b);
    let halves = gl.integrate(f, a, m) + gl.integrate(f, m, b);
    if (whole - halves).abs() <= tol || depth == 0 {
        return halves;
    }
    adaptive(f, a, m, 0.5 * tol, gl, depth - 1) + adaptive(f, m, b, 0.5 * tol, gl, depth - 1)
}

/// Romberg on random sums of damped cosines: the difference from an
/// adaptive-quadrature oracle must lie within the a posteriori error, plus
/// `1e−14 ∫|f|` for rounding in the sums.
pub fn romberg_containment(cases: usize, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gl = GaussLegendre::new(20);
    let mut violations = Vec::new();
    for case in 0..cases {
        let terms: Vec<(f64, f64, f64, f64)> = (0..3)
            .map(|_| {
                (
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-1.5..1.5),
                    rng.gen_range(0.0..8.0),
                    rng.gen_range(0.0..std::f64::consts::TAU),
                )
            })
            .collect();
        let a = rng.gen_range(-2.0..1.0);
        let b = a + rng.gen_range(0.1..3.0);
        let f = |x: f64| terms.iter().map(|&(c, e, w, p)| c * (e * x).exp() * (w * x + p).cos()).sum::<f64>();
        let scale = gl.integrate(|x| f(x).abs(), a, b).max(f64::MIN_POSITIVE);
        let r = romberg(f, a, b, 1e-9 * scale, 1 << 14);
        let oracle = adaptive(&f, a, b, 1e-15 * scale, &gl, 30);
        let d = (r.value - oracle).abs();
        if d > r.posteriori_error + 1e-14 * scale {
            violations.push(format!("case {case}: |Δ| = {d:.3e} > error {:.3e}", r.posteriori_error));
        }
    }
    SuiteResult { cases, violations }
}

/// HP and EHP equal the direct value at the interval midpoint (normalized
/// forms) and vanish at both endpoint zeros, for every interval in
/// `positions` and every `m` and `X` given.
pub fn local_model_anchoring(
    zeros: &ZeroList,
    positions: std::ops::Range<usize>,
    ms: &[usize],
    xs: &[f64],
) -> Result<SuiteResult> {
    let off = zeros.offsets();
    let mut cases = 0;
    let mut violations = Vec::new();
    for n in positions {
        let gap = off[n + 1] - off[n];
        let mid_off = 0.5 * (off[n] + off[n + 1]);
        let direct = z_with_target(zeros.base().value().add_f64(mid_off), 1e-10)?.0.abs();
        let mid = HeightValue::new(zeros.base().clone(), mid_off)?;
        let left = zeros.height(n);
        let right = zeros.height(n + 1);
        for &m in ms {
            let hp = HpWindow::new(zeros, n, m)?;
            let hp_vals = [hp.eval(hp.midpoint(), direct), hp.eval(0.0, direct), hp.eval(gap, direct)];
            cases += 1;
            if hp_vals != [direct, 0.0, 0.0] {
                violations.push(format!("HP n={n} m={m}: {hp_vals:?}, midpoint {direct}"));
            }
            for &x in xs {
                let zx = ZxWindow::new(zeros, n, m, x)?;
                let vals = [
                    ehp_approx(&mid, n, zeros, m, x, true, Some(direct))?,
                    zx.eval(0.0),
                    zx.eval(gap),
                    ehp_approx(&left, n, zeros, m, x, false, None)?,
                    ehp_approx(&right, n, zeros, m, x, false, None)?,
                ];
                cases += 1;
                if vals != [direct, 0.0, 0.0, 0.0, 0.0] {
                    violations.push(format!("EHP n={n} m={m} X={x}: {vals:?}, midpoint {direct}"));
                }
            }
        }
    }
    Ok(SuiteResult { cases, violations })
}

/// Power-mean ordering of mean moments over one aggregated record:
/// `(M_q)^{1/q} ≥ (M_p)^{1/p}` for positive exponents `p < q`, with
/// `M_p = (1/len)∫|ζ|^p`. For `p = 2k`, `q = 2k+2` this is
/// `M_{2k+2} ≥ M_{2k}^{(k+1)/k}`.
pub fn jensen_ordering(record: &BlockRecord) -> SuiteResult {
    let len = record.interval_length();
    let mut ms: Vec<(f64, f64)> = record
        .moments
        .iter()
        .filter(|m| m.two_k > 0.0)
        .map(|m| (m.two_k, m.value / len))
        .collect();
    ms.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut cases = 0;
    let mut violations = Vec::new();
    for (i, &(p, mp)) in ms.iter().enumerate() {
        for &(q, mq) in &ms[i + 1..] {
            cases += 1;
            let (lp, lq) = (mp.ln() / p, mq.ln() / q);
            if !(lq >= lp) {
                violations.push(format!("M_{q}^(1/{q}) = {:.6e} < M_{p}^(1/{p}) = {:.6e}", lq.exp(), lp.exp()));
            }
        }
    }
    SuiteResult { cases, violations }
}
