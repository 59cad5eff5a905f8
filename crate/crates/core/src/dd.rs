//! Double-double arithmetic.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, giving
//! roughly 32 significant decimal digits. Only the handful of operations the
//! phase computations need are provided: the large heights used here make
//! `t * log(n)` and `theta(t)` lose all fractional accuracy in plain `f64`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };
    pub const TWO_PI: Dd = Dd {
        hi: std::f64::consts::TAU,
        lo: 2.449_293_598_294_706_4e-16,
    };
    pub const LN2: Dd = Dd {
        hi: std::f64::consts::LN_2,
        lo: 2.319_046_813_846_299_6e-17,
    };

    #[inline]
    pub const fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    fn renorm(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Dd {
        let (s, e) = two_sum(self.hi, b);
        Dd::renorm(s, e + self.lo)
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        Dd::renorm(p, self.lo.mul_add(b, e))
    }

    /// Exact multiplication by a power of two.
    #[inline]
    pub fn scale_pow2(self, s: f64) -> Dd {
        Dd {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn floor(self) -> Dd {
        let hi = self.hi.floor();
        if hi == self.hi {
            // hi is integral; the fractional part lives in lo.
            Dd::renorm(hi, self.lo.floor())
        } else {
            Dd { hi, lo: 0.0 }
        }
    }

    pub fn sqr(self) -> Dd {
        self * self
    }

    /// `e^x`, correct to about 1e-31 relative for moderate arguments.
    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / Dd::LN2.hi).round();
        let r = self - Dd::LN2.mul_f64(k);
        // exp(r) = (1 + expm1(r/1024))^1024 computed through expm1 doubling.
        let r = r.scale_pow2(1.0 / 1024.0);
        let mut term = r;
        let mut s = r;
        for i in 2..=14 {
            term = term * r / Dd::from_f64(i as f64);
            s = s + term;
            if term.hi.abs() < 1e-34 {
                break;
            }
        }
        for _ in 0..10 {
            // expm1(2x) = 2 expm1(x) + expm1(x)^2
            s = s.scale_pow2(2.0) + s.sqr();
        }
        (s + Dd::ONE).scale_pow2(2f64.powi(k as i32))
    }

    /// Natural logarithm via one Newton step on `exp`.
    pub fn ln(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        let x = Dd::from_f64(self.hi.ln());
        x + self * (-x).exp() - Dd::ONE
    }

    /// Reduces modulo 2π into `[-π, π]` and rounds to `f64`.
    #[inline]
    pub fn rem_two_pi(self) -> f64 {
        let k = (self.hi / Dd::TWO_PI.hi).round();
        if k == 0.0 {
            return self.to_f64();
        }
        let (p, e) = two_prod(Dd::TWO_PI.hi, k);
        let e = Dd::TWO_PI.lo.mul_add(k, e);
        let (s, f) = two_sum(self.hi, -p);
        s + (f + self.lo - e)
    }

    /// Parses an unsigned exact decimal such as `14.1347251417347`,
    /// `1.30664344087953251142539323425414e22` or `4990000`.
    ///
    /// Digits beyond double-double precision are rounded.
    pub fn parse_decimal(s: &str) -> Option<Dd> {
        let s = s.trim();
        let (mantissa, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
            None => (s, 0),
        };
        if mantissa.is_empty() {
            return None;
        }
        let mut value = Dd::ZERO;
        let mut frac_digits = 0i32;
        let mut seen_dot = false;
        let mut seen_digit = false;
        for c in mantissa.chars() {
            match c {
                '0'..='9' => {
                    value = value.mul_f64(10.0).add_f64(f64::from(c as u8 - b'0'));
                    seen_digit = true;
                    if seen_dot {
                        frac_digits += 1;
                    }
                }
                '.' if !seen_dot => seen_dot = true,
                _ => return None,
            }
        }
        if !seen_digit {
            return None;
        }
        let e10 = exp - frac_digits;
        Some(value * pow10(e10))
    }
}

fn pow10(e: i32) -> Dd {
    let mut base = Dd::from_f64(10.0);
    let mut n = e.unsigned_abs();
    let mut acc = Dd::ONE;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base;
        }
        base = base.sqr();
        n >>= 1;
    }
    if e < 0 {
        Dd::ONE / acc
    } else {
        acc
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Dd::renorm(s, e + f)
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        Dd::renorm(p, e)
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Dd { hi: q1, lo: q2 }.add_f64(q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} + {:e}", self.hi, self.lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Dd, b: Dd) -> f64 {
        ((a - b).to_f64() / b.to_f64()).abs()
    }

    #[test]
    fn constants_are_consistent() {
        let two_pi = Dd::PI.scale_pow2(2.0);
        assert_eq!(two_pi, Dd::TWO_PI);
        // exp(ln 2) == 2 to double-double accuracy
        assert!(rel(Dd::LN2.exp(), Dd::from_f64(2.0)) < 1e-30);
    }

    #[test]
    fn exp_ln_round_trip() {
        for &x in &[1e-8, 0.5, 1.0, 3.7, 42.0, 1e6, 1.3e22] {
            let d = Dd::from_f64(x);
            assert!(rel(d.ln().exp(), d) < 1e-29, "x = {x}");
        }
    }

    #[test]
    fn ln_matches_high_precision_reference() {
        // ln(10) = 2.302585092994045684017991454684364207601...
        let ln10 = Dd::from_f64(10.0).ln();
        let reference = Dd {
            hi: 2.302_585_092_994_046,
            lo: -2.170_756_223_382_249_3e-16,
        };
        assert!(rel(ln10, reference) < 1e-30);
    }

    #[test]
    fn parse_decimal_keeps_extra_digits() {
        let t = Dd::parse_decimal("1.30664344087953251142539323425414e22").unwrap();
        let back = t - Dd::parse_decimal("13066434408795325114253.9323425414").unwrap();
        assert!(back.to_f64().abs() < 1e-8);
        // fractional digits that f64 alone would drop
        let frac = t - Dd::from_f64(13066434408795325114253.0).floor();
        assert!(frac.to_f64().is_finite());
        assert_eq!(Dd::parse_decimal("4990000").unwrap().to_f64(), 4_990_000.0);
        assert!(Dd::parse_decimal("1.2.3").is_none());
        assert!(Dd::parse_decimal("-5").is_none());
        assert!(Dd::parse_decimal("").is_none());
    }

    #[test]
    fn rem_two_pi_is_accurate_for_large_arguments() {
        // 1e6 * 2π + 1/3 reduces to 1/3
        let x = Dd::TWO_PI.mul_f64(1e6) + Dd::from_f64(1.0) / Dd::from_f64(3.0);
        assert!((x.rem_two_pi() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn floor_handles_fraction_in_low_word() {
        let x = Dd::from_f64(1e20).add_f64(0.25);
        assert_eq!(x.floor().to_f64(), 1e20);
        assert_eq!(Dd::from_f64(2.5).floor().to_f64(), 2.0);
    }
}
