//! Moment predictions: the arithmetic factor `a(k)`, the random-matrix
//! factor `g(k)/k²!`, CUE moments, the moment polynomials `P_k`, and their
//! integrals over height ranges.
//!
//! Polynomials are held in integrand form: the predicted `2k`-th moment over
//! `[T, T+H]` is `∫ P_k(log(t/2π)) dt`. The familiar averaged form `Q_k`,
//! with `∫_0^T P_k = T·Q_k(log(T/2π))`, satisfies `P = Q + Q'`; the
//! published second and fourth moment polynomials are of that averaged
//! shape (`Q_1(x) = x + 2γ − 1`).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::height::HeightValue;
use crate::primes::primes_up_to;
use crate::specfun::{expint_e1, EULER_GAMMA};

/// Largest `k` for which `a(k)` is supported.
pub const MAX_K: u32 = 16;

#[derive(Clone, Debug)]
pub struct ArithFactorConfig {
    /// Primes up to this bound enter the product explicitly; `None` picks
    /// `max(10^6, 100 k²)`.
    pub prime_cutoff: Option<usize>,
    pub series_tolerance: f64,
    /// Add the first-order estimate of the primes beyond the cutoff.
    pub tail_correction: bool,
}

impl Default for ArithFactorConfig {
    fn default() -> Self {
        Self {
            prime_cutoff: None,
            series_tolerance: 1e-12,
            tail_correction: true,
        }
    }
}

/// `ln` of the local Euler factor `(1−x)^{k²} Σ_m d_k(p^m)² x^m`, `x = 1/p`.
fn ln_local_factor(k: u32, x: f64, tol: f64) -> f64 {
    let kf = k as f64;
    let mut c = 1.0f64; // binomial(m + k - 1, m)
    let mut xm = 1.0f64;
    let mut sum = 1.0f64;
    let mut peaked = false;
    for m in 1..100_000u32 {
        let mf = m as f64;
        c *= (mf + kf - 1.0) / mf;
        xm *= x;
        let term = c * c * xm;
        sum += term;
        let ratio = ((mf + kf) / (mf + 1.0)).powi(2) * x;
        if ratio < 1.0 {
            peaked = true;
        }
        if peaked && term < tol * sum * (1.0 - ratio.min(0.5)) {
            break;
        }
    }
    kf * kf * (-x).ln_1p() + sum.ln()
}

/// `a(k) = Π_p (1 − 1/p)^{k²} Σ_m d_k(p^m)² p^{−m}`.
///
/// Primes past the cutoff contribute `−k²(k−1)²/4 · Σ_{p>P} p^{−2}` to the
/// logarithm to first order, with `Σ_{p>P} p^{−2} ≈ E₁(log P)`.
pub fn arithmetic_factor_a(k: u32, cfg: &ArithFactorConfig) -> Result<f64> {
    ln_arithmetic_factor_a(k, cfg).map(f64::exp)
}

/// `ln a(k)`; stays finite where products with `g(k)/k²!` would underflow.
pub fn ln_arithmetic_factor_a(k: u32, cfg: &ArithFactorConfig) -> Result<f64> {
    if !(1..=MAX_K).contains(&k) {
        return Err(Error::domain(format!("a(k) supported for 1 <= k <= {MAX_K}, got {k}")));
    }
    let cutoff = cfg
        .prime_cutoff
        .unwrap_or_else(|| 1_000_000usize.max(100 * (k * k) as usize));
    if cutoff < 2 {
        return Err(Error::domain("prime cutoff must be >= 2"));
    }
    if k == 1 {
        return Ok(0.0);
    }
    let mut acc = 0.0f64;
    let mut comp = 0.0f64;
    for &p in primes_up_to(cutoff).iter().rev() {
        // smallest terms first
        let v = ln_local_factor(k, 1.0 / p as f64, cfg.series_tolerance);
        let y = v - comp;
        let t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    if !cfg.tail_correction {
        return Ok(acc);
    }
    let kf = k as f64;
    let tail_sum = expint_e1(Complex64::new((cutoff as f64).ln(), 0.0))?.re;
    Ok(acc - kf * kf * (kf - 1.0) * (kf - 1.0) / 4.0 * tail_sum)
}

/// `a(k)` with the default configuration.
pub fn arithmetic_factor(k: u32) -> Result<f64> {
    ln_arithmetic_factor(k).map(f64::exp)
}

/// `ln a(k)` with the default configuration, cached.
pub fn ln_arithmetic_factor(k: u32) -> Result<f64> {
    static CACHE: OnceLock<Vec<OnceLock<f64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| (0..=MAX_K).map(|_| OnceLock::new()).collect());
    if !(1..=MAX_K).contains(&k) {
        return ln_arithmetic_factor_a(k, &ArithFactorConfig::default());
    }
    if let Some(v) = cache[k as usize].get() {
        return Ok(*v);
    }
    let v = ln_arithmetic_factor_a(k, &ArithFactorConfig::default())?;
    Ok(*cache[k as usize].get_or_init(|| v))
}

fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// `ln(g(k)/k²!) = Σ_{j<k} ln(j!/(j+k)!)`.
pub fn ln_rmt_factor(k: u32) -> f64 {
    (0..k as u64)
        .map(|j| ln_factorial(j) - ln_factorial(j + k as u64))
        .sum()
}

/// `g(k)/k²! = Π_{j=0}^{k−1} j!/(j+k)!`.
pub fn rmt_factor_g_over_fact(k: u32) -> f64 {
    ln_rmt_factor(k).exp()
}

/// Leading coefficient `a(k) g(k)/k²!` of `P_k`.
pub fn leading_coefficient(k: u32) -> Result<f64> {
    Ok(ln_leading_coefficient(k)?.exp())
}

pub fn ln_leading_coefficient(k: u32) -> Result<f64> {
    Ok(ln_arithmetic_factor(k)? + ln_rmt_factor(k))
}

/// CUE moment `Π_{j=0}^{N−1} j!(j+2k)!/((j+k)!)²`, accumulated in logs.
pub fn cue_moment(n: u64, k: u32) -> f64 {
    let k = k as u64;
    let mut acc = 0.0;
    for j in 0..n {
        for i in 1..=k {
            acc += ((j + k + i) as f64).ln() - ((j + i) as f64).ln();
        }
    }
    acc.exp()
}

/// Exact CUE moment for small `N`.
pub fn cue_moment_exact(n: u32, k: u32) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 0..n {
        for i in 1..=k {
            num *= BigUint::from(j + k + i);
            den *= BigUint::from(j + i);
        }
    }
    num / den
}

/// Exact coefficients (ascending in `N`) of the degree-`k²` polynomial
/// `N ↦ cue_moment(N, k)`, by interpolation at `N = 0..=k²`.
pub fn cue_polynomial(k: u32) -> Vec<BigRational> {
    let deg = (k * k) as usize;
    let ys: Vec<BigRational> = (0..=deg as u32)
        .map(|n| BigRational::from_integer(BigInt::from(cue_moment_exact(n, k))))
        .collect();
    // Newton divided differences on integer nodes, then expand.
    let mut dd = ys.clone();
    for level in 1..=deg {
        for i in (level..=deg).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / BigRational::from_integer(BigInt::from(level));
        }
    }
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    // Horner on the Newton form: p = dd[deg]; p = p*(N - i) + dd[i]
    for i in (0..=deg).rev() {
        // multiply current poly by (N - i)
        let mut next = vec![BigRational::zero(); deg + 1];
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j + 1 <= deg {
                next[j + 1] += c;
            }
            next[j] -= c * BigRational::from_integer(BigInt::from(i));
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Exact,
    Published,
    Ingested,
}

/// `P_k(x) = Σ c_j x^j` in integrand form, `x = log(t/2π)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PredictionPolynomial {
    pub k: u32,
    /// Ascending coefficients `c_0..c_{k²}`.
    pub coefficients: Vec<f64>,
    pub provenance: Provenance,
}

/// Published averaged fourth-moment polynomial, ascending.
const Q2_PUBLISHED: [f64; 5] = [-0.040924, 1.35334, 0.937279, 0.496227, 0.050660];

impl PredictionPolynomial {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn leading(&self) -> f64 {
        *self.coefficients.last().expect("non-empty")
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Builds `P = Q + Q'` from averaged-form coefficients.
    pub fn from_mean_coefficients(k: u32, q: &[f64], provenance: Provenance) -> Self {
        let mut c = q.to_vec();
        for j in 1..q.len() {
            c[j - 1] += j as f64 * q[j];
        }
        Self {
            k,
            coefficients: c,
            provenance,
        }
    }

    /// Averaged-form coefficients `Q` with `Q + Q' = P`.
    pub fn mean_coefficients(&self) -> Vec<f64> {
        mean_form(&self.coefficients)
    }

    /// Only the top coefficient kept.
    pub fn leading_only(&self) -> Self {
        let mut c = vec![0.0; self.coefficients.len()];
        *c.last_mut().expect("non-empty") = self.leading();
        Self {
            k: self.k,
            coefficients: c,
            provenance: self.provenance,
        }
    }
}

fn mean_form(p: &[f64]) -> Vec<f64> {
    // q_j = p_j − (j+1) q_{j+1}
    let n = p.len();
    let mut q = vec![0.0; n];
    for j in (0..n).rev() {
        q[j] = p[j] - if j + 1 < n { (j + 1) as f64 * q[j + 1] } else { 0.0 };
    }
    q
}

/// Ingested `P_k` coefficients for `k >= 3`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CoefficientTable {
    polys: BTreeMap<u32, Vec<f64>>,
}

const COEFF_MAGIC: &str = "ZETAPK v1";

/// Relative tolerance of the leading-coefficient check on ingested data.
pub const LEADING_TOLERANCE: f64 = 1e-6;

fn check_leading(k: u32, found: f64, tol: f64) -> Result<()> {
    let expected = leading_coefficient(k)?;
    if ((found - expected) / expected).abs() >= tol {
        return Err(Error::LeadingCoefficient { k, found, expected });
    }
    Ok(())
}

impl CoefficientTable {
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l.trim() == COEFF_MAGIC => {}
            _ => return Err(Error::format(path, 1, format!("expected `{COEFF_MAGIC}` header"))),
        }
        let mut polys = BTreeMap::new();
        for (i, line) in lines {
            let line_no = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (head, rest) = line
                .split_once(';')
                .ok_or_else(|| Error::format(path, line_no, "expected `k=<k>; c0,...`"))?;
            let k: u32 = head
                .trim()
                .strip_prefix("k=")
                .and_then(|v| v.trim().parse().ok())
                .ok_or_else(|| Error::format(path, line_no, format!("bad k field {head:?}")))?;
            let coeffs = rest
                .split(',')
                .map(|c| c.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::format(path, line_no, e.to_string()))?;
            if coeffs.len() != (k * k + 1) as usize {
                return Err(Error::format(
                    path,
                    line_no,
                    format!("P_{k} needs {} coefficients, found {}", k * k + 1, coeffs.len()),
                ));
            }
            check_leading(k, coeffs[coeffs.len() - 1], LEADING_TOLERANCE)?;
            if polys.insert(k, coeffs).is_some() {
                return Err(Error::format(path, line_no, format!("duplicate entry for k={k}")));
            }
        }
        Ok(Self { polys })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&fs::read_to_string(path)?, path)
    }

    pub fn insert(&mut self, k: u32, coefficients: Vec<f64>) -> Result<()> {
        if coefficients.len() != (k * k + 1) as usize {
            return Err(Error::domain(format!("P_{k} needs {} coefficients", k * k + 1)));
        }
        check_leading(k, coefficients[coefficients.len() - 1], LEADING_TOLERANCE)?;
        self.polys.insert(k, coefficients);
        Ok(())
    }

    pub fn get(&self, k: u32) -> Option<&[f64]> {
        self.polys.get(&k).map(Vec::as_slice)
    }

    pub fn ks(&self) -> impl Iterator<Item = u32> + '_ {
        self.polys.keys().copied()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{COEFF_MAGIC}\n");
        for (k, c) in &self.polys {
            let cs: Vec<String> = c.iter().map(|v| format!("{v:e}")).collect();
            let _ = writeln!(out, "k={k}; {}", cs.join(","));
        }
        out
    }
}

/// `P_k`: exact for `k = 1`, published for `k = 2`, ingested for `k >= 3`.
pub fn polynomial_p(k: u32, table: Option<&CoefficientTable>) -> Result<PredictionPolynomial> {
    match k {
        0 => Err(Error::domain("k must be positive")),
        1 => Ok(PredictionPolynomial::from_mean_coefficients(
            1,
            &[2.0 * EULER_GAMMA - 1.0, 1.0],
            Provenance::Exact,
        )),
        2 => Ok(PredictionPolynomial::from_mean_coefficients(
            2,
            &Q2_PUBLISHED,
            Provenance::Published,
        )),
        _ => {
            if let Some(c) = table.and_then(|t| t.get(k)) {
                return Ok(PredictionPolynomial {
                    k,
                    coefficients: c.to_vec(),
                    provenance: Provenance::Ingested,
                });
            }
            // also honour ingested k = 1, 2 entries? no: built-ins take precedence
            Err(Error::CoefficientsUnavailable(k))
        }
    }
}

/// Leading-term-only `P_k`; available for every supported `k`.
pub fn leading_polynomial(k: u32) -> Result<PredictionPolynomial> {
    let mut c = vec![0.0; (k * k + 1) as usize];
    c[(k * k) as usize] = leading_coefficient(k)?;
    Ok(PredictionPolynomial {
        k,
        coefficients: c,
        provenance: Provenance::Exact,
    })
}

/// `a(2) · cue_moment(N, 2)` expanded in `N`, ascending; with
/// `N → log(T/2π)` this is the random-matrix-only fourth-moment polynomial.
pub fn rmt_polynomial_4() -> Result<PredictionPolynomial> {
    let a2 = arithmetic_factor(2)?;
    let coefficients = cue_polynomial(2)
        .iter()
        .map(|c| a2 * c.to_f64().unwrap_or(f64::NAN))
        .collect();
    Ok(PredictionPolynomial {
        k: 2,
        coefficients,
        provenance: Provenance::Exact,
    })
}

/// `a(k) g(k)/k²! (log T)^{k²}` — note `log T`, not `log(T/2π)`.
pub fn leading_term_moment(t: &HeightValue, k: u32) -> Result<f64> {
    let l = t.ln();
    Ok((ln_leading_coefficient(k)? + (k * k) as f64 * l.ln()).exp())
}

/// `∫_{lo}^{hi} P(log(t/2π)) dt` in closed form.
///
/// With `F(t) = t Q(log(t/2π))`, `F(b) − F(a)` is evaluated as
/// `(b−a) Q(L_b) + a (Q(L_b) − Q(L_a))`, the second difference expanded
/// through `L_b − L_a = ln1p((b−a)/a)` so that short ranges at large
/// heights keep full relative accuracy.
pub fn prediction_integral(
    lo: &HeightValue,
    hi: &HeightValue,
    poly: &PredictionPolynomial,
    leading_only: bool,
) -> Result<f64> {
    let p = if leading_only { poly.leading_only() } else { poly.clone() };
    let width = hi.diff(lo);
    if !(width >= 0.0) {
        return Err(Error::domain("prediction_integral needs lo <= hi"));
    }
    let a = lo.to_f64();
    if !(a > 0.0) {
        return Err(Error::domain("prediction_integral needs positive heights"));
    }
    let ln_2pi = (2.0 * std::f64::consts::PI).ln();
    let la = lo.ln() - ln_2pi;
    let d = (width / a).ln_1p();
    let lb = la + d;
    let q = mean_form(&p.coefficients);
    let q_lb = q.iter().rev().fold(0.0, |acc, &c| acc * lb + c);
    // Σ_i q_i (L_b^i − L_a^i) / (L_b − L_a) = Σ_i q_i Σ_{j<i} L_b^j L_a^{i−1−j}
    let mut diff_quot = 0.0;
    for (i, &qi) in q.iter().enumerate().skip(1) {
        let mut s = 0.0;
        for j in 0..i {
            s += lb.powi(j as i32) * la.powi((i - 1 - j) as i32);
        }
        diff_quot += qi * s;
    }
    Ok(width * q_lb + a * d * diff_quot)
}

/// Mean of `P(log(t/2π))` over `[lo, hi]`.
pub fn prediction_mean(
    lo: &HeightValue,
    hi: &HeightValue,
    poly: &PredictionPolynomial,
    leading_only: bool,
) -> Result<f64> {
    let width = hi.diff(lo);
    if !(width > 0.0) {
        return Err(Error::domain("prediction_mean needs lo < hi"));
    }
    Ok(prediction_integral(lo, hi, poly, leading_only)? / width)
}

/// `((T+H) log((T+H)/2π) − T log(T/2π))/H + 2γ − 1`.
pub fn short_interval_second_moment(t: f64, h: f64) -> Result<f64> {
    if !(t > 0.0 && h > 0.0) {
        return Err(Error::domain("need T > 0 and H > 0"));
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let lt = (t / two_pi).ln();
    // (T+H) log((T+H)/2π) − T log(T/2π) = H log((T+H)/2π) + T ln1p(H/T)
    let lth = lt + (h / t).ln_1p();
    Ok((h * lth + t * (h / t).ln_1p()) / h + 2.0 * EULER_GAMMA - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_matches_closed_form() {
        // Σ (m+1)² x^m = (1+x)/(1−x)³, so a(2) = Π (1 − 1/p²) = 6/π²
        let a2 = arithmetic_factor(2).unwrap();
        let exact = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
        assert!(((a2 - exact) / exact).abs() < 1e-10, "{a2}");
        assert_eq!(arithmetic_factor(1).unwrap(), 1.0);
        assert!(arithmetic_factor(0).is_err());
        assert!(arithmetic_factor(17).is_err());
    }

    #[test]
    fn rmt_factor_values() {
        assert_eq!(rmt_factor_g_over_fact(1), 1.0);
        assert!((rmt_factor_g_over_fact(2) - 1.0 / 12.0).abs() < 1e-15);
        assert!(((rmt_factor_g_over_fact(3) - 1.0 / 8640.0) * 8640.0).abs() < 1e-12);
    }

    #[test]
    fn cue_moments() {
        for n in 0..=20u32 {
            assert_eq!(cue_moment_exact(n, 1), BigUint::from(n + 1));
        }
        assert!((cue_moment(5, 1) - 6.0).abs() < 1e-12);
        assert_eq!(cue_moment_exact(1, 2), BigUint::from(6u32));
        let ratio = cue_moment(10_000, 2) / 1e16;
        assert!((ratio / (1.0 / 12.0) - 1.0).abs() < 1e-2);
    }

    #[test]
    fn cue_polynomial_k2() {
        let p = cue_polynomial(2);
        let expect = [12, 28, 23, 8, 1];
        for (c, e) in p.iter().zip(expect) {
            assert_eq!(*c, BigRational::new(BigInt::from(e), BigInt::from(12)));
        }
    }

    #[test]
    fn p1_and_mean_form() {
        let p1 = polynomial_p(1, None).unwrap();
        let q = p1.mean_coefficients();
        assert!((q[0] - (2.0 * EULER_GAMMA - 1.0)).abs() < 1e-15);
        assert!((p1.eval(0.0) - 2.0 * EULER_GAMMA).abs() < 1e-15);
        let p2 = polynomial_p(2, None).unwrap();
        let q2 = p2.mean_coefficients();
        for (a, b) in q2.iter().zip(Q2_PUBLISHED) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((p2.leading() - arithmetic_factor(2).unwrap() / 12.0).abs() < 1e-5);
        assert!(matches!(polynomial_p(3, None), Err(Error::CoefficientsUnavailable(3))));
    }

    #[test]
    fn rmt4_polynomial() {
        let p = rmt_polynomial_4().unwrap();
        let expect = [0.607927, 1.41849, 1.16519, 0.405284, 0.0506606];
        for (c, e) in p.coefficients.iter().zip(expect) {
            assert!(((c - e) / e).abs() < 5e-6, "{c} vs {e}");
        }
        assert_eq!(p.eval(0.0), arithmetic_factor(2).unwrap());
    }

    #[test]
    fn integral_of_constant_and_additivity() {
        let c = PredictionPolynomial {
            k: 0,
            coefficients: vec![3.5],
            provenance: Provenance::Exact,
        };
        let a = HeightValue::from_f64(1000.0).unwrap();
        let b = HeightValue::from_f64(2500.0).unwrap();
        assert!((prediction_integral(&a, &b, &c, false).unwrap() - 3.5 * 1500.0).abs() < 1e-9);
        let p2 = polynomial_p(2, None).unwrap();
        let m = HeightValue::from_f64(1700.0).unwrap();
        let whole = prediction_integral(&a, &b, &p2, false).unwrap();
        let parts = prediction_integral(&a, &m, &p2, false).unwrap() + prediction_integral(&m, &b, &p2, false).unwrap();
        assert!(((whole - parts) / whole).abs() < 1e-12);
    }

    #[test]
    fn short_interval_identity() {
        let p1 = polynomial_p(1, None).unwrap();
        let t = 5e6;
        let h = 1e4;
        let direct = prediction_mean(
            &HeightValue::from_f64(t).unwrap(),
            &HeightValue::from_f64(t + h).unwrap(),
            &p1,
            false,
        )
        .unwrap();
        let v = short_interval_second_moment(t, h).unwrap();
        assert!(((v - direct) / v).abs() < 1e-10);
        let tiny = short_interval_second_moment(t, 1e-6).unwrap();
        assert!((tiny - ((t / (2.0 * std::f64::consts::PI)).ln() + 2.0 * EULER_GAMMA)).abs() < 1e-6);
    }

    #[test]
    fn coefficient_file_validation() {
        let p = Path::new("pk.txt");
        let lc3 = leading_coefficient(3).unwrap();
        let mut c = vec![0.0; 10];
        c[9] = lc3;
        let text = format!(
            "ZETAPK v1\nk=3; {}\n",
            c.iter().map(|v| format!("{v:e}")).collect::<Vec<_>>().join(",")
        );
        let t = CoefficientTable::parse(&text, p).unwrap();
        assert_eq!(polynomial_p(3, Some(&t)).unwrap().provenance, Provenance::Ingested);
        assert_eq!(CoefficientTable::parse(&t.to_text(), p).unwrap(), t);
        let bad = text.replace(&format!("{lc3:e}"), &format!("{:e}", lc3 * 1.01));
        assert!(matches!(
            CoefficientTable::parse(&bad, p),
            Err(Error::LeadingCoefficient { .. })
        ));
        assert!(CoefficientTable::parse("ZETAPK v1\nk=3; 1,2\n", p).is_err());
    }
}
