//! `sin(πt)` and `cos(πt)` with exact argument reduction.
//!
//! The Weierstrass series only ever needs trigonometric functions of
//! `2^k π t`. Scaling `t` by `2^k` is exact in binary floating point and the
//! reduction modulo 2 below is exact as well, so integer and half-integer
//! multiples of π produce exact zeros and units. This is what makes the
//! dyadic trace sequences `y_n = 2^{-n}` hit `sin(2^{k-n} π) = 0` exactly.

use std::f64::consts::PI;

/// `t mod 2` in `[0, 2)`; exact for every finite `t`.
#[inline]
fn reduce_mod2(t: f64) -> f64 {
    let r = t % 2.0;
    if r < 0.0 {
        r + 2.0
    } else {
        r
    }
}

/// `sin(π t)`.
#[inline]
pub fn sinpi(t: f64) -> f64 {
    let r = reduce_mod2(t);
    if r <= 0.25 {
        (PI * r).sin()
    } else if r <= 0.75 {
        (PI * (r - 0.5)).cos()
    } else if r <= 1.25 {
        -(PI * (r - 1.0)).sin()
    } else if r <= 1.75 {
        -(PI * (r - 1.5)).cos()
    } else {
        (PI * (r - 2.0)).sin()
    }
}

/// `cos(π t)`.
#[inline]
pub fn cospi(t: f64) -> f64 {
    let r = reduce_mod2(t);
    if r <= 0.25 {
        (PI * r).cos()
    } else if r <= 0.75 {
        -(PI * (r - 0.5)).sin()
    } else if r <= 1.25 {
        -(PI * (r - 1.0)).cos()
    } else if r <= 1.75 {
        (PI * (r - 1.5)).sin()
    } else {
        (PI * (r - 2.0)).cos()
    }
}

/// `2^k` as an exact float (valid for |k| < 1023).
#[inline]
pub fn pow2(k: i32) -> f64 {
    f64::from_bits(((1023 + k) as u64) << 52)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_zeros_and_units() {
        for k in 0..60 {
            assert_eq!(sinpi(pow2(k)), 0.0);
        }
        for k in 0..52 {
            assert_eq!(cospi(pow2(k) + 0.5), 0.0);
        }
        assert_eq!(sinpi(0.5), 1.0);
        assert_eq!(sinpi(1.5), -1.0);
        assert_eq!(cospi(1.0), -1.0);
        assert_eq!(cospi(-3.0), -1.0);
        assert_eq!(sinpi(-0.5), -1.0);
    }

    #[test]
    fn matches_std_on_ordinary_arguments() {
        for i in -400..400 {
            let t = i as f64 * 0.01237;
            assert!((sinpi(t) - (PI * t).sin()).abs() < 1e-13, "t = {t}");
            assert!((cospi(t) - (PI * t).cos()).abs() < 1e-13, "t = {t}");
        }
    }

    #[test]
    fn pow2_is_exact() {
        assert_eq!(pow2(0), 1.0);
        assert_eq!(pow2(10), 1024.0);
        assert_eq!(pow2(-3), 0.125);
        assert_eq!(pow2(-50), 2f64.powi(-50));
    }
}
