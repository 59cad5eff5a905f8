//! Special functions: Riemann-Siegel theta, complex log-gamma, the
//! exponential, cosine and sine integrals, Euler's constant, and the
//! compactly supported smoothing kernel used by the Euler-Hadamard model.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

/// Euler's constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

const BERNOULLI_COUNT: usize = 64;

/// Even-index Bernoulli numbers `B_0, B_2, ..., B_126` as `f64`,
/// generated exactly from the standard recurrence.
pub fn bernoulli_even() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n_max = 2 * BERNOULLI_COUNT;
        let mut b: Vec<BigRational> = Vec::with_capacity(n_max + 1);
        b.push(BigRational::one());
        for m in 1..=n_max {
            // sum_{j=0}^{m} C(m+1, j) B_j = 0
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one();
            for (j, bj) in b.iter().enumerate() {
                acc += BigRational::from_integer(binom.clone()) * bj;
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        (0..BERNOULLI_COUNT)
            .map(|j| b[2 * j].to_f64().unwrap_or(f64::NAN))
            .collect()
    })
}

fn theta_small_terms(t: f64) -> f64 {
    // sum_k (1 - 2^{1-2k}) |B_2k| / (4k (2k-1) t^{2k-1})
    let b = bernoulli_even();
    let inv_t2 = 1.0 / (t * t);
    let mut tpow = 1.0 / t;
    let mut acc = 0.0;
    for (k, bk) in b.iter().enumerate().skip(1) {
        let kf = k as f64;
        let term = (1.0 - 2f64.powi(1 - 2 * k as i32)) * bk.abs() / (4.0 * kf * (2.0 * kf - 1.0)) * tpow;
        acc += term;
        if term.abs() < 1e-17 {
            break;
        }
        tpow *= inv_t2;
    }
    acc
}

/// Riemann-Siegel theta at a double-double height `t >= 10`.
///
/// The large part `t/2 log(t/2π) - t/2` is carried in double-double so the
/// result keeps absolute accuracy near 1e-20 relative to `t log t`.
pub fn theta_dd(t: Dd) -> Dd {
    debug_assert!(t.hi >= 10.0);
    let half = t.scale_pow2(0.5);
    let l = (t / Dd::TWO_PI).ln();
    let main = half * l - half;
    main - Dd::PI.scale_pow2(0.125) + Dd::from_f64(theta_small_terms(t.to_f64()))
}

/// Riemann-Siegel theta function θ(t) = arg Γ(1/4 + it/2) − (t/2) log π.
pub fn theta(t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("theta requires t > 0, got {t}")));
    }
    if t >= 10.0 {
        Ok(theta_dd(Dd::from_f64(t)).to_f64())
    } else {
        Ok(theta_lngamma(t))
    }
}

/// θ'(t), used by Newton iterations.
pub fn theta_prime(t: f64) -> f64 {
    // d/dt of the asymptotic series; accurate to ~1e-6 even at t = 7
    0.5 * (t / (2.0 * PI)).ln() - 1.0 / (48.0 * t * t) - 7.0 / (1920.0 * t.powi(4))
}

fn theta_lngamma(t: f64) -> f64 {
    let z = Complex64::new(0.25, 0.5 * t);
    ln_gamma(z).im - 0.5 * t * PI.ln()
}

/// Complex log-gamma on the continuous branch for `Re z > 0`.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    const SHIFT: f64 = 12.0;
    let mut w = z;
    let mut correction = Complex64::new(0.0, 0.0);
    while w.re < SHIFT {
        correction += w.ln();
        w += 1.0;
    }
    let b = bernoulli_even();
    let mut series = Complex64::new(0.0, 0.0);
    let winv = w.inv();
    let winv2 = winv * winv;
    let mut p = winv;
    for (k, bk) in b.iter().enumerate().skip(1).take(12) {
        let kf = k as f64;
        series += p * (bk / (2.0 * kf * (2.0 * kf - 1.0)));
        p *= winv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - correction
}

/// Exponential integral E₁(z) = ∫_z^∞ e^{-w}/w dw for `Re z >= 0`, `z != 0`.
pub fn expint_e1(z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::domain("E1 has a logarithmic singularity at 0"));
    }
    if z.re < 0.0 || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain(format!("E1 requires Re z >= 0, got {z}")));
    }
    if z.norm() <= 2.0 {
        Ok(e1_series(z))
    } else {
        e1_continued_fraction(z)
    }
}

fn e1_series(z: Complex64) -> Complex64 {
    // -γ - ln z - sum_{k>=1} (-z)^k / (k k!)
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..200 {
        let kf = k as f64;
        term *= -z / kf;
        let add = term / kf;
        sum += add;
        if add.norm() < 1e-17 * sum.norm().max(1e-300) {
            break;
        }
    }
    -EULER_GAMMA - z.ln() - sum
}

fn e1_continued_fraction(z: Complex64) -> Result<Complex64> {
    // modified Lentz on e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...)))
    const TINY: f64 = 1e-300;
    let mut b = z + 1.0;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..20_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = (d * an + b).inv();
        c = b + c.inv() * an;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            return Ok(h * (-z).exp());
        }
    }
    Err(Error::NonConvergence {
        what: "E1 continued fraction",
        iterations: 20_000,
    })
}

/// Auxiliary functions f, g with Ci = f sin x − g cos x and
/// Si = π/2 − f cos x − g sin x, by their asymptotic series (x >= 40).
fn ci_si_auxiliary(x: f64) -> (f64, f64) {
    let inv2 = 1.0 / (x * x);
    let mut f = 0.0;
    let mut g = 0.0;
    let mut tf = 1.0;
    let mut tg = 1.0;
    let mut k = 0.0;
    loop {
        f += tf;
        g += tg;
        let nf = -tf * (2.0 * k + 1.0) * (2.0 * k + 2.0) * inv2;
        let ng = -tg * (2.0 * k + 2.0) * (2.0 * k + 3.0) * inv2;
        if nf.abs() > tf.abs() || nf.abs() < 1e-18 {
            break;
        }
        tf = nf;
        tg = ng;
        k += 1.0;
    }
    (f / x, g * inv2)
}

/// Cosine integral Ci(x) = γ + ln x + ∫₀^x (cos t − 1)/t dt = −∫_x^∞ cos t / t dt.
pub fn cosine_integral(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("Ci requires x > 0, got {x}")));
    }
    Ok(ci_unchecked(x))
}

#[inline]
pub(crate) fn ci_unchecked(x: f64) -> f64 {
    if x <= 4.0 {
        let x2 = x * x;
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..100 {
            let kf = k as f64;
            term *= -x2 / ((2.0 * kf - 1.0) * (2.0 * kf));
            let add = term / (2.0 * kf);
            sum += add;
            if add.abs() < 1e-18 {
                break;
            }
        }
        EULER_GAMMA + x.ln() + sum
    } else if x < 40.0 {
        // Ci(x) = -Re E1(ix)
        -e1_continued_fraction(Complex64::new(0.0, x))
            .map(|e| e.re)
            .unwrap_or(f64::NAN)
    } else {
        let (f, g) = ci_si_auxiliary(x);
        f * x.sin() - g * x.cos()
    }
}

/// Sine integral Si(x) = ∫₀^x sin t / t dt.
pub fn sine_integral(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax <= 4.0 {
        let x2 = ax * ax;
        let mut term = ax;
        let mut sum = ax;
        for k in 1..100 {
            let kf = k as f64;
            term *= -x2 / ((2.0 * kf) * (2.0 * kf + 1.0));
            let add = term / (2.0 * kf + 1.0);
            sum += add;
            if add.abs() < 1e-18 {
                break;
            }
        }
        sum
    } else if ax < 40.0 {
        // Si(x) = π/2 + Im E1(ix)
        FRAC_PI_2
            + e1_continued_fraction(Complex64::new(0.0, ax))
                .map(|e| e.im)
                .unwrap_or(f64::NAN)
    } else {
        let (f, g) = ci_si_auxiliary(ax);
        FRAC_PI_2 - f * ax.cos() - g * ax.sin()
    };
    v.copysign(x)
}

/// The smoothing kernel `u(x) = X g(X log(x/e) + 1) / x` supported on
/// `[e^{1-1/X}, e]`, built from the bump `f(y) f(1-y)` with `f(y) = e^{-1/y^2}`.
#[derive(Clone, Debug)]
pub struct SmoothingKernel {
    cutoff: f64,
    rule: GaussLegendre,
    left_mass: f64,
    norm: f64,
}

fn bump(y: f64) -> f64 {
    if y <= 0.0 || y >= 1.0 {
        0.0
    } else {
        (-1.0 / (y * y) - 1.0 / ((1.0 - y) * (1.0 - y))).exp()
    }
}

impl SmoothingKernel {
    pub const DEFAULT_NODES: usize = 64;

    pub fn new(cutoff: f64) -> Result<Self> {
        Self::with_nodes(cutoff, Self::DEFAULT_NODES)
    }

    pub fn with_nodes(cutoff: f64, nodes: usize) -> Result<Self> {
        if !(cutoff >= 2.0) || !cutoff.is_finite() {
            return Err(Error::domain(format!("kernel cutoff X must be >= 2, got {cutoff}")));
        }
        if nodes == 0 {
            return Err(Error::domain("kernel quadrature needs at least one node"));
        }
        let rule = GaussLegendre::new(nodes);
        // Both halves with the same rule, so v is continuous at y = 1/2.
        let left = rule.integrate(bump, 0.0, 0.5);
        let right = rule.integrate(bump, 0.5, 1.0);
        Ok(Self {
            cutoff,
            rule,
            left_mass: left,
            norm: left + right,
        })
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn nodes(&self) -> usize {
        self.rule.len()
    }

    /// Support `[e^{1-1/X}, e]`.
    pub fn support(&self) -> (f64, f64) {
        ((1.0 - 1.0 / self.cutoff).exp(), std::f64::consts::E)
    }

    fn g(&self, y: f64) -> f64 {
        bump(y) / self.norm
    }

    fn y_of(&self, x: f64) -> f64 {
        self.cutoff * (x.ln() - 1.0) + 1.0
    }

    pub fn u(&self, x: f64) -> f64 {
        if !(x > 0.0) {
            return 0.0;
        }
        self.cutoff * self.g(self.y_of(x)) / x
    }

    /// `v(t) = ∫_t^∞ u(x) dx`, in `[0, 1]` and non-increasing.
    pub fn v(&self, t: f64) -> f64 {
        if !(t > 0.0) {
            return 1.0;
        }
        let y = self.y_of(t);
        let v = if y <= 0.0 {
            1.0
        } else if y >= 1.0 {
            0.0
        } else if y <= 0.5 {
            1.0 - self.rule.integrate(bump, 0.0, y) / self.norm
        } else {
            self.rule.integrate(bump, y, 1.0) / self.norm
        };
        v.clamp(0.0, 1.0)
    }

    /// Mass of `g` on `[0, 1/2]`; equals `v` at the kernel's center.
    pub fn half_mass(&self) -> f64 {
        self.left_mass / self.norm
    }
}

/// Free-function form of [`SmoothingKernel::u`].
pub fn kernel_u(x: f64, cfg: &SmoothingKernel) -> f64 {
    cfg.u(x)
}

/// Free-function form of [`SmoothingKernel::v`].
pub fn kernel_v(t: f64, cfg: &SmoothingKernel) -> f64 {
    cfg.v(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values computed with 40-digit mpmath.
    const THETA_1000: f64 = 2034.546_428_038_031_6;
    const THETA_10: f64 = -3.067_074_396_289_895_3;
    const THETA_5: f64 = -3.459_620_375_363_462_5;
    const E1_ONE: f64 = 0.219_383_934_395_520_27;
    const CI_ONE: f64 = 0.337_403_922_900_968_13;

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli_even();
        assert_eq!(b[0], 1.0);
        assert!((b[1] - 1.0 / 6.0).abs() < 1e-17);
        assert!((b[2] + 1.0 / 30.0).abs() < 1e-17);
        assert!((b[6] + 691.0 / 2730.0).abs() < 1e-16);
    }

    #[test]
    fn theta_matches_reference_values() {
        assert!((theta(1000.0).unwrap() - THETA_1000).abs() < 1e-10);
        assert!((theta(10.0).unwrap() - THETA_10).abs() < 1e-12);
        assert!((theta(5.0).unwrap() - THETA_5).abs() < 1e-12);
        // both definitions agree where they overlap
        for t in [10.0, 12.5, 20.0, 35.0] {
            assert!((theta_lngamma(t) - theta(t).unwrap()).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn theta_rejects_nonpositive() {
        assert!(theta(0.0).is_err());
        assert!(theta(-3.0).is_err());
    }

    #[test]
    fn ln_gamma_reference() {
        let v = ln_gamma(Complex64::new(0.25, 5.0));
        assert!((v.re + 7.337_088_084_209_181).abs() < 1e-13);
        assert!((v.im - 2.656_575_032_957_105_6).abs() < 1e-13);
        // Γ(5) = 24
        assert!((ln_gamma(Complex64::new(5.0, 0.0)).re - 24f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn e1_reference_values() {
        let v = expint_e1(Complex64::new(1.0, 0.0)).unwrap();
        assert!(((v.re - E1_ONE) / E1_ONE).abs() < 1e-12);
        let v = expint_e1(Complex64::new(0.0, 2.0)).unwrap();
        assert!((v.re + 0.422_980_828_774_864_996).abs() < 1e-13);
        assert!((v.im - 0.034_616_650_007_798_229).abs() < 1e-13);
        let v = expint_e1(Complex64::new(5.0, 3.0)).unwrap();
        assert!((v.re + 9.596_300_261_428_665e-4).abs() < 1e-15);
        assert!((v.im - 3.350_031_036_165_939e-4).abs() < 1e-15);
        let v = expint_e1(Complex64::new(10.0, 0.0)).unwrap();
        assert!(((v.re - 4.156_968_929_685_324e-6) / 4.156_968_929_685_324e-6).abs() < 1e-12);
        assert!(expint_e1(Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn e1_positive_and_decreasing_on_real_axis() {
        let mut prev = f64::INFINITY;
        for i in 1..=100 {
            let x = 0.05 * i as f64;
            let v = expint_e1(Complex64::new(x, 0.0)).unwrap().re;
            assert!(v > 0.0 && v < prev, "x = {x}");
            prev = v;
        }
    }

    #[test]
    fn ci_reference_values() {
        assert!((cosine_integral(1.0).unwrap() - CI_ONE).abs() < 1e-13);
        assert!((cosine_integral(0.5).unwrap() + 0.177_784_078_806_612_9).abs() < 1e-13);
        assert!((cosine_integral(5.0).unwrap() + 0.190_029_749_656_643_88).abs() < 1e-13);
        assert!((cosine_integral(30.0).unwrap() + 0.033_032_417_282_071_14).abs() < 1e-13);
        assert!((cosine_integral(100.0).unwrap() + 0.005_148_825_142_610_492).abs() < 1e-13);
        assert!(cosine_integral(0.0).is_err());
    }

    #[test]
    fn ci_small_argument_limit() {
        let x = 1e-6;
        assert!((cosine_integral(x).unwrap() - (EULER_GAMMA + x.ln())).abs() < 1e-12);
    }

    #[test]
    fn ci_tail_bound() {
        for i in 0..200 {
            let x = 10.0 + 0.73 * i as f64;
            assert!(cosine_integral(x).unwrap().abs() <= 2.0 / x);
        }
    }

    #[test]
    fn ci_and_e1_agree_on_imaginary_axis() {
        for y in [0.5, 1.0, 5.0] {
            let e = expint_e1(Complex64::new(0.0, y)).unwrap();
            assert!((e.re + cosine_integral(y).unwrap()).abs() < 1e-13, "y = {y}");
            assert!((e.im - (sine_integral(y) - FRAC_PI_2)).abs() < 1e-13, "y = {y}");
        }
    }

    #[test]
    fn euler_gamma_against_harmonic_oracle() {
        // H_n - ln n - 1/(2n) + 1/(12 n^2) - 1/(120 n^4) -> γ
        let n = 10_000u32;
        let h = crate::summation::compensated_sum((1..=n).rev().map(|k| 1.0 / k as f64));
        let nf = n as f64;
        let g = h - nf.ln() - 1.0 / (2.0 * nf) + 1.0 / (12.0 * nf * nf) - 1.0 / (120.0 * nf.powi(4));
        assert!((g - euler_gamma()).abs() < 1e-14);
        assert!((2.0 * euler_gamma() - 1.0 - 0.154_431_329_8).abs() < 1e-10);
    }

    #[test]
    fn kernel_support_and_values() {
        let k = SmoothingKernel::new(6.0).unwrap();
        let (lo, hi) = k.support();
        assert!((lo - (5.0f64 / 6.0).exp()).abs() < 1e-15);
        assert_eq!(k.v((2f64.ln() / 6f64.ln()).exp()), 1.0);
        assert_eq!(k.v(std::f64::consts::E), 0.0);
        assert_eq!(k.u(lo * 0.999), 0.0);
        assert_eq!(k.u(hi * 1.001), 0.0);
        assert!(SmoothingKernel::new(1.5).is_err());
    }

    #[test]
    fn kernel_mass_is_one() {
        // independent composite Simpson oracle on u itself
        for x in [2.0, 6.0, 50.92, 1000.0] {
            let k = SmoothingKernel::new(x).unwrap();
            let (a, b) = k.support();
            let n = 200_000;
            let h = (b - a) / n as f64;
            let mut s = k.u(a) + k.u(b);
            for i in 1..n {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                s += w * k.u(a + i as f64 * h);
            }
            let mass = s * h / 3.0;
            assert!((mass - 1.0).abs() < 1e-10, "X = {x}: mass {mass}");
        }
    }

    #[test]
    fn kernel_v_monotone_on_grid() {
        let k = SmoothingKernel::new(6.0).unwrap();
        let mut prev = 1.0;
        for i in 0..=5000 {
            let t = 2.2 + 0.6 * i as f64 / 5000.0;
            let v = k.v(t);
            assert!(v <= prev && (0.0..=1.0).contains(&v), "t = {t}");
            prev = v;
        }
        assert!((k.half_mass() - 0.5).abs() < 1e-12);
    }
}
