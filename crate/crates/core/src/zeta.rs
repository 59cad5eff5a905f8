//! Point evaluation of ζ: Euler-Maclaurin summation for reference accuracy
//! anywhere in the plane, and the Riemann-Siegel formula for `Z(t)` on the
//! critical line.

use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::height::HeightValue;
use crate::primes::ln_table;
use crate::specfun::{bernoulli_even, theta, theta_dd};
use crate::summation::CompensatedSum;

/// Below this height `Z` is evaluated through Euler-Maclaurin.
pub const RS_MIN_HEIGHT: f64 = 30.0;

/// Default number of Riemann-Siegel correction terms beyond `C0`.
pub const DEFAULT_CORRECTIONS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EvalMethod {
    EulerMaclaurin,
    RiemannSiegel,
    HpModel,
    EhpModel,
}

impl fmt::Display for EvalMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvalMethod::EulerMaclaurin => "euler_maclaurin",
            EvalMethod::RiemannSiegel => "riemann_siegel",
            EvalMethod::HpModel => "hp_model",
            EvalMethod::EhpModel => "ehp_model",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalQuality {
    pub abs_error_bound: f64,
    pub method: EvalMethod,
}

impl EvalQuality {
    fn new(bound: f64, method: EvalMethod) -> Self {
        Self {
            abs_error_bound: bound.max(f64::MIN_POSITIVE),
            method,
        }
    }
}

/// `B_{2j} / (2j)!` for `j = 0..`.
fn bernoulli_over_factorial() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli_even();
        let mut fact = 1.0f64;
        let mut out = Vec::with_capacity(b.len());
        for (j, bj) in b.iter().enumerate() {
            if j > 0 {
                fact *= (2 * j - 1) as f64 * (2 * j) as f64;
            }
            if !fact.is_finite() {
                break;
            }
            out.push(bj / fact);
        }
        out
    })
}

/// Largest Bernoulli order accepted by [`zeta_euler_maclaurin`].
pub fn max_bernoulli_order() -> usize {
    bernoulli_over_factorial().len() - 2
}

fn em_tail_bound(s: Complex64, n: usize, order: usize) -> f64 {
    // |first omitted term| * |s + 2M + 1| / (σ + 2M + 1)
    let bf = bernoulli_over_factorial();
    let j = order + 1;
    let ln_n = (n as f64).ln();
    let mut log_mag = bf[j].abs().ln() - (s.re + 2.0 * j as f64 - 1.0) * ln_n;
    for i in 0..(2 * j - 1) {
        log_mag += (s + i as f64).norm().ln();
    }
    let m = 2.0 * order as f64 + 1.0;
    log_mag.exp() * (s + m).norm() / (s.re + m)
}

/// `n^{-s}` with the phase `t ln n` reduced in double-double.
#[inline]
fn pow_neg_s(s: Complex64, t: Dd, ln_n: Dd) -> Complex64 {
    let mag = (-s.re * ln_n.to_f64()).exp();
    let phase = (t * ln_n).rem_two_pi();
    let (sin, cos) = phase.sin_cos();
    Complex64::new(mag * cos, -mag * sin)
}

/// ζ(s) by Euler-Maclaurin summation with `terms` explicit terms and
/// Bernoulli corrections up to `B_{2·bernoulli_order}`.
///
/// The reported bound is the standard remainder estimate from the first
/// omitted Bernoulli term (valid for `σ + 2M + 1 > 0`) plus a rounding
/// allowance.
pub fn zeta_euler_maclaurin(s: Complex64, terms: usize, bernoulli_order: usize) -> Result<(Complex64, EvalQuality)> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole);
    }
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::domain(format!("non-finite argument {s}")));
    }
    let needed = (s.im.abs() / (2.0 * PI) + 10.0).ceil() as usize;
    if terms < needed {
        return Err(Error::InsufficientTerms { needed, given: terms });
    }
    if bernoulli_order == 0 || bernoulli_order > max_bernoulli_order() {
        return Err(Error::domain(format!(
            "bernoulli_order must be in 1..={}, got {bernoulli_order}",
            max_bernoulli_order()
        )));
    }
    if s.re + 2.0 * bernoulli_order as f64 + 1.0 <= 0.0 {
        return Err(Error::domain("Euler-Maclaurin remainder bound needs σ + 2M + 1 > 0"));
    }
    let n = terms;
    let logs = ln_table(n);
    let t = Dd::from_f64(s.im);
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    let mut abs_sum = 0.0;
    for k in 1..n {
        let v = pow_neg_s(s, t, logs[k]);
        re.add(v.re);
        im.add(v.im);
        abs_sum += v.norm();
    }
    let n_pow = pow_neg_s(s, t, logs[n]);
    let nf = n as f64;
    let mut tail = n_pow * nf / (s - 1.0) + n_pow * 0.5;
    // B_2j/(2j)! s(s+1)...(s+2j-2) N^{-s-2j+1}
    let bf = bernoulli_over_factorial();
    let mut rising = s;
    let mut npow = n_pow / nf;
    for j in 1..=bernoulli_order {
        tail += rising * npow * bf[j];
        let a = s + (2 * j - 1) as f64;
        let b = s + (2 * j) as f64;
        rising *= a * b;
        npow /= nf * nf;
    }
    let value = Complex64::new(re.value(), im.value()) + tail;
    let rounding = 8.0 * f64::EPSILON * (abs_sum + tail.norm() + 1.0);
    let bound = em_tail_bound(s, n, bernoulli_order) + rounding;
    Ok((value, EvalQuality::new(bound, EvalMethod::EulerMaclaurin)))
}

/// Picks Euler-Maclaurin parameters so the remainder bound falls below
/// `target`; returns `(terms, bernoulli_order)`.
pub fn euler_maclaurin_plan(s: Complex64, target: f64) -> (usize, usize) {
    let order = 40.min(max_bernoulli_order());
    let mut n = (s.im.abs() / (2.0 * PI) + 10.0).ceil() as usize;
    n = n.max(16);
    for _ in 0..200 {
        if em_tail_bound(s, n, order) < 0.5 * target {
            break;
        }
        n = (n as f64 * 1.05).ceil() as usize + 4;
    }
    (n, order)
}

/// ζ(s) with automatically chosen Euler-Maclaurin parameters.
pub fn zeta(s: Complex64, target: f64) -> Result<(Complex64, EvalQuality)> {
    let (n, m) = euler_maclaurin_plan(s, target);
    zeta_euler_maclaurin(s, n, m)
}

// ---- Riemann-Siegel ----

const RS_DEGREE: usize = 64;

/// Gabcke's constants: |R_K(t)| < d_K t^{-(2K+3)/4} for t >= 200.
const RS_BOUND: [f64; 5] = [0.127, 0.053, 0.011, 0.031, 0.017];

/// Taylor coefficients in `w = p - 1/2` of the correction functions
/// `C_0..C_4`, derived from `Ψ(p) = cos(2π(p² − p − 1/16)) / cos(2πp)`.
fn rs_coefficients() -> &'static [[f64; RS_DEGREE]; 5] {
    static TABLE: OnceLock<[[f64; RS_DEGREE]; 5]> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Ψ = -cos(2πw² − 5π/8) / cos(2πw) is entire; read its Taylor
        // coefficients off a discrete Fourier transform on |w| = 1.
        const M: usize = 256;
        let psi = |w: Complex64| -> Complex64 {
            let num = (w * w * (2.0 * PI) - 5.0 * PI / 8.0).cos();
            let den = (w * (2.0 * PI)).cos();
            -num / den
        };
        let samples: Vec<Complex64> = (0..M)
            .map(|j| psi(Complex64::from_polar(1.0, 2.0 * PI * j as f64 / M as f64)))
            .collect();
        let mut a = [0.0f64; RS_DEGREE];
        for (n, an) in a.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, f) in samples.iter().enumerate() {
                let ang = -2.0 * PI * ((n * j) % M) as f64 / M as f64;
                acc += f * Complex64::from_polar(1.0, ang);
            }
            *an = acc.re / M as f64;
        }
        let deriv = |d: usize| -> [f64; RS_DEGREE] {
            let mut out = [0.0; RS_DEGREE];
            for n in d..RS_DEGREE {
                let mut f = 1.0;
                for i in 0..d {
                    f *= (n - i) as f64;
                }
                out[n - d] = a[n] * f;
            }
            out
        };
        let pi2 = PI * PI;
        let combo = |terms: &[(usize, f64)]| -> [f64; RS_DEGREE] {
            let mut out = [0.0; RS_DEGREE];
            for &(d, c) in terms {
                let p = deriv(d);
                for (o, v) in out.iter_mut().zip(p.iter()) {
                    *o += c * v;
                }
            }
            out
        };
        [
            combo(&[(0, 1.0)]),
            combo(&[(3, -1.0 / (96.0 * pi2))]),
            combo(&[(6, 1.0 / (18432.0 * pi2 * pi2)), (2, 1.0 / (64.0 * pi2))]),
            combo(&[
                (9, -1.0 / (5_308_416.0 * pi2.powi(3))),
                (5, -1.0 / (3840.0 * pi2 * pi2)),
                (1, -1.0 / (64.0 * pi2)),
            ]),
            combo(&[
                (12, 1.0 / (2_038_431_744.0 * pi2.powi(4))),
                (8, 11.0 / (5_898_240.0 * pi2.powi(3))),
                (4, 19.0 / (24576.0 * pi2 * pi2)),
                (0, 1.0 / (128.0 * pi2)),
            ]),
        ]
    })
}

/// Riemann-Siegel correction function `C_k(p)`.
pub fn rs_correction(k: usize, p: f64) -> f64 {
    let c = &rs_coefficients()[k];
    let w = p - 0.5;
    c.iter().rev().fold(0.0, |acc, &x| acc * w + x)
}

/// Heuristic bound on the Riemann-Siegel truncation error with
/// `correction_terms` corrections at height `t`, plus main-sum rounding.
pub fn rs_error_bound(t: f64, correction_terms: usize) -> f64 {
    let k = correction_terms.min(4);
    let safety = if t < 200.0 { 4.0 } else { 1.0 };
    let n = (t / (2.0 * PI)).sqrt();
    safety * RS_BOUND[k] * t.powf(-(2.0 * k as f64 + 3.0) / 4.0) + 1e-15 * (4.0 * n.sqrt() + 1.0)
}

/// `Z(t)` by the Riemann-Siegel formula at a double-double height.
pub fn riemann_siegel_z_dd(t: Dd, correction_terms: usize) -> Result<(f64, EvalQuality)> {
    let tf = t.to_f64();
    if !(tf >= RS_MIN_HEIGHT) || !tf.is_finite() {
        return Err(Error::domain(format!(
            "Riemann-Siegel needs t >= {RS_MIN_HEIGHT}, got {tf}"
        )));
    }
    if correction_terms > 4 {
        return Err(Error::domain(format!("correction_terms must be in 0..=4, got {correction_terms}")));
    }
    let tau = (tf / (2.0 * PI)).sqrt();
    let n = tau.floor() as usize;
    let p = tau - n as f64;
    let logs = ln_table(n);
    let th = theta_dd(t);
    // reduce θ first so every term works with a small double-double
    let th = Dd::from_f64(th.rem_two_pi());
    let mut sum = CompensatedSum::new();
    for k in 1..=n {
        let phase = (th - t * logs[k]).rem_two_pi();
        sum.add(phase.cos() / (k as f64).sqrt());
    }
    let main = 2.0 * sum.value();
    let mut rem = 0.0;
    let mut tpow = 1.0;
    for k in 0..=correction_terms {
        rem += rs_correction(k, p) * tpow;
        tpow /= tau;
    }
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let z = main + sign * rem / tau.sqrt();
    Ok((z, EvalQuality::new(rs_error_bound(tf, correction_terms), EvalMethod::RiemannSiegel)))
}

/// `Z(t)` by the Riemann-Siegel formula; requires `t >= 30`.
pub fn riemann_siegel_z(t: &HeightValue, correction_terms: usize) -> Result<(f64, EvalQuality)> {
    riemann_siegel_z_dd(t.to_dd(), correction_terms)
}

/// `Z(t) = Re(e^{iθ(t)} ζ(1/2 + it))` through Euler-Maclaurin, for small `t`.
pub fn z_euler_maclaurin(t: f64, target: f64) -> Result<(f64, EvalQuality)> {
    let s = Complex64::new(0.5, t);
    let (z, q) = zeta(s, target)?;
    let rot = Complex64::from_polar(1.0, theta(t)?);
    Ok(((rot * z).re, q))
}

/// `Z(t)` with the default method for the height: Euler-Maclaurin below 30,
/// Riemann-Siegel with [`DEFAULT_CORRECTIONS`] above.
pub fn z_function_dd(t: Dd) -> Result<(f64, EvalQuality)> {
    if t.hi < RS_MIN_HEIGHT {
        z_euler_maclaurin(t.to_f64(), 1e-14)
    } else {
        riemann_siegel_z_dd(t, DEFAULT_CORRECTIONS)
    }
}

pub fn z_function(t: &HeightValue) -> Result<(f64, EvalQuality)> {
    z_function_dd(t.to_dd())
}

/// `Z(t)` with an absolute error bound below `target`: Riemann-Siegel with
/// the fewest corrections that meet it, else Euler-Maclaurin.
pub fn z_with_target(t: Dd, target: f64) -> Result<(f64, EvalQuality)> {
    let tf = t.to_f64();
    if tf >= RS_MIN_HEIGHT {
        if let Some(k) = (0..=4).find(|&k| rs_error_bound(tf, k) <= target) {
            return riemann_siegel_z_dd(t, k);
        }
    }
    z_euler_maclaurin(tf, target)
}

/// `|ζ(1/2 + it)|` meeting `quality_target`, or an explicit quality miss.
pub fn abs_zeta_line(t: &HeightValue, quality_target: f64) -> Result<(f64, EvalQuality)> {
    if !(quality_target > 0.0) {
        return Err(Error::domain("quality_target must be positive"));
    }
    let td = t.to_dd();
    let tf = td.to_f64();
    if tf < RS_MIN_HEIGHT {
        let (z, q) = z_euler_maclaurin(tf, quality_target)?;
        if q.abs_error_bound > quality_target {
            return Err(Error::QualityMiss {
                target: quality_target,
                achieved: q.abs_error_bound,
            });
        }
        return Ok((z.abs(), q));
    }
    let k = (DEFAULT_CORRECTIONS..=4)
        .find(|&k| rs_error_bound(tf, k) <= quality_target)
        .ok_or(Error::QualityMiss {
            target: quality_target,
            achieved: rs_error_bound(tf, 4),
        })?;
    let (z, q) = riemann_siegel_z_dd(td, k)?;
    Ok((z.abs(), q))
}

#[cfg(test)]
mod tests {
    use super::*;

    // 40-digit references from mpmath
    const Z_100: f64 = 2.692_697_056_664_463_5;
    const Z_1000: f64 = 0.997_794_637_521_586_6;
    const Z_10000: f64 = -0.341_394_724_231_208_56;

    #[test]
    fn zeta_two_and_half() {
        let (v, q) = zeta_euler_maclaurin(Complex64::new(2.0, 0.0), 20, 10).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() < 1e-12);
        assert!(q.abs_error_bound < 1e-12);
        let (v, _) = zeta(Complex64::new(0.5, 0.0), 1e-15).unwrap();
        assert!((v.re + 1.460_354_508_809_586_8).abs() < 1e-13);
        let (v, _) = zeta(Complex64::new(2.0, 3.0), 1e-15).unwrap();
        assert!((v.re - 0.798_021_985_146_275_7).abs() < 1e-13);
        assert!((v.im + 0.113_744_308_052_938_5).abs() < 1e-13);
    }

    #[test]
    fn euler_maclaurin_rejects_bad_input() {
        assert!(matches!(
            zeta_euler_maclaurin(Complex64::new(1.0, 0.0), 20, 5),
            Err(Error::Pole)
        ));
        assert!(matches!(
            zeta_euler_maclaurin(Complex64::new(0.5, 1000.0), 50, 5),
            Err(Error::InsufficientTerms { .. })
        ));
    }

    #[test]
    fn first_zero_is_a_zero() {
        let (v, _) = zeta(Complex64::new(0.5, 14.134_725_141_734_7), 1e-15).unwrap();
        assert!(v.norm() < 1e-9);
    }

    #[test]
    fn error_bound_covers_actual_error() {
        let s = Complex64::new(0.5, 100.0);
        let (v, q) = zeta_euler_maclaurin(s, 30, 6).unwrap();
        let exact = Complex64::new(2.692_619_885_681_324, -0.020_386_029_602_591_76);
        assert!((v - exact).norm() <= q.abs_error_bound);
    }

    #[test]
    fn correction_functions_at_centre() {
        // C0(1/2) = cos(π/8)... sign: -cos(5π/8) = sin(π/8)
        assert!((rs_correction(0, 0.5) - (PI / 8.0).sin()).abs() < 1e-14);
        // direct evaluation of Ψ away from the centre
        for p in [0.1, 0.3, 0.62, 0.9] {
            let direct = (2.0 * PI * (p * p - p - 1.0 / 16.0)).cos() / (2.0 * PI * p).cos();
            assert!((rs_correction(0, p) - direct).abs() < 1e-13, "p = {p}");
        }
    }

    #[test]
    fn riemann_siegel_matches_references() {
        // at t = 100 the asymptotic series itself limits accuracy to ~4e-8
        for (t, z, tol) in [(100.0, Z_100, 1e-7), (1000.0, Z_1000, 1e-8), (10000.0, Z_10000, 1e-8)] {
            let (v, q) = riemann_siegel_z(&HeightValue::from_f64(t).unwrap(), 4).unwrap();
            assert!((v - z).abs() < tol, "t = {t}: {v} vs {z}");
            assert!((v - z).abs() <= q.abs_error_bound, "t = {t}");
        }
        let (v, _) = riemann_siegel_z(&HeightValue::parse("5000000").unwrap(), 2).unwrap();
        assert!((v + 27.697_570_196_845_356).abs() < 1e-9);
    }

    #[test]
    fn corrections_reduce_error() {
        let t = HeightValue::from_f64(1000.0).unwrap();
        let errs: Vec<f64> = (0..=4)
            .map(|k| (riemann_siegel_z(&t, k).unwrap().0 - Z_1000).abs())
            .collect();
        assert!(errs[4] < errs[0] * 1e-3, "{errs:?}");
    }

    #[test]
    fn riemann_siegel_domain() {
        assert!(riemann_siegel_z(&HeightValue::from_f64(14.0).unwrap(), 2).is_err());
        assert!(riemann_siegel_z(&HeightValue::from_f64(100.0).unwrap(), 5).is_err());
    }

    #[test]
    fn abs_zeta_dispatch() {
        let (v, q) = abs_zeta_line(&HeightValue::from_f64(14.134_725_141_734_7).unwrap(), 1e-12).unwrap();
        assert!(v < 1e-9);
        assert_eq!(q.method, EvalMethod::EulerMaclaurin);
        let (v, q) = abs_zeta_line(&HeightValue::from_f64(17.8).unwrap(), 1e-12).unwrap();
        assert!(v > 0.1);
        assert!(q.abs_error_bound <= 1e-12);
        let (v, q) = abs_zeta_line(&HeightValue::from_f64(5e6).unwrap(), 1e-10).unwrap();
        assert!((v - 27.697_570_196_845_356).abs() < 1e-8);
        assert_eq!(q.method, EvalMethod::RiemannSiegel);
        assert!(matches!(
            abs_zeta_line(&HeightValue::from_f64(40.0).unwrap(), 1e-20),
            Err(Error::QualityMiss { .. })
        ));
    }

    #[test]
    fn functional_equation_rotation_is_real() {
        for t in [50.0, 333.3, 2024.5] {
            let (z, _) = zeta(Complex64::new(0.5, t), 1e-14).unwrap();
            let r = Complex64::from_polar(1.0, theta(t).unwrap()) * z;
            assert!(r.im.abs() < 1e-8, "t = {t}");
        }
    }
}
