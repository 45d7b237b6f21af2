//! Fixed-point decimal rendering of [`ExactScalar`] values.
//!
//! π and √d are expanded as scaled big integers with guard digits sized to
//! the magnitude of the value, then the sum is rounded half away from zero.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{ExactScalar, Rational};

const GUARD_DIGITS: u32 = 10;

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

/// `floor(arctan(1/x) · 10^prec)` up to a few units in the last place.
fn arctan_inv(x: u64, prec: u32) -> BigInt {
    let scale = pow10(prec);
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = &scale / &x;
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power /= &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// π·10^prec, accurate to within a handful of units in the last place.
pub fn pi_fixed(prec: u32) -> BigInt {
    // Machin: π = 16·atan(1/5) − 4·atan(1/239)
    let extra = 8;
    let p = prec + extra;
    let pi = BigInt::from(16) * arctan_inv(5, p) - BigInt::from(4) * arctan_inv(239, p);
    pi / pow10(extra)
}

/// floor(√d · 10^prec).
fn sqrt_fixed(d: u64, prec: u32) -> BigInt {
    (BigInt::from(d) * pow10(2 * prec)).sqrt()
}

fn rational_fixed(r: &Rational, x: &BigInt) -> BigInt {
    (r.numer() * x).div_floor(r.denom())
}

/// Round `value / 10^drop` half away from zero.
fn round_div(value: &BigInt, drop: u32) -> BigInt {
    let div = pow10(drop);
    let (q, r) = value.abs().div_rem(&div);
    let q = if BigInt::from(2) * r >= div { q + 1 } else { q };
    if value.is_negative() {
        -q
    } else {
        q
    }
}

fn format_fixed(scaled: &BigInt, digits: u32) -> String {
    let neg = scaled.sign() == Sign::Minus;
    let s = scaled.abs().to_string();
    let width = digits as usize + 1;
    let s = if s.len() < width {
        format!("{}{}", "0".repeat(width - s.len()), s)
    } else {
        s
    };
    let (int, frac) = s.split_at(s.len() - digits as usize);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

pub(crate) fn render(x: &ExactScalar, digits: u32) -> String {
    if let Some(r) = x.as_rational() {
        // Exact path: no irrational parts.
        let (q, rem) = (r.numer().abs() * pow10(digits)).div_rem(r.denom());
        let q = if BigInt::from(2) * rem >= *r.denom() {
            q + 1
        } else {
            q
        };
        let q = if r.is_negative() { -q } else { q };
        return format_fixed(&q, digits);
    }
    // Size the working precision to the integer part of the value so that
    // the absolute error stays below 10^-(digits + guard).
    let magnitude: f64 = x
        .terms()
        .map(|(k, c)| {
            (c.a().to_f64().abs() + c.b().to_f64().abs() * (c.d() as f64).sqrt())
                * 4f64.powi(k as i32)
        })
        .sum();
    let max_pi = x.terms().map(|(k, _)| k).max().unwrap_or(0);
    let lead = magnitude.log10().max(0.0).ceil() as u32;
    let prec = digits + GUARD_DIGITS + lead + max_pi + 2;
    let one = pow10(prec);
    let pi = pi_fixed(prec);
    let root = if x.d() != 0 {
        sqrt_fixed(x.d(), prec)
    } else {
        BigInt::zero()
    };

    let mut total = BigInt::zero();
    let mut pi_pow = one.clone();
    let mut pi_exp = 0u32;
    for (k, c) in x.terms() {
        while pi_exp < k {
            pi_pow = &pi_pow * &pi / &one;
            pi_exp += 1;
        }
        let mut coef = rational_fixed(c.a(), &one);
        if !c.b().is_zero() {
            coef += rational_fixed(c.b(), &root);
        }
        total += coef * &pi_pow / &one;
    }
    format_fixed(&round_div(&total, prec - digits), digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::QuadRational;

    #[test]
    fn pi_digits() {
        assert_eq!(
            pi_fixed(50).to_string(),
            "314159265358979323846264338327950288419716939937510"
        );
    }

    #[test]
    fn renders() {
        assert_eq!(ExactScalar::pi_pow(1).to_decimal(6), "3.141593");
        assert_eq!(ExactScalar::zero().to_decimal(3), "0.000");
        assert_eq!(
            ExactScalar::from_rational(Rational::frac(-1, 3)).to_decimal(4),
            "-0.3333"
        );
        assert_eq!(
            ExactScalar::from_rational(Rational::frac(2, 3)).to_decimal(2),
            "0.67"
        );
        assert_eq!(
            ExactScalar::from_rational(Rational::frac(-1, 20000)).to_decimal(4),
            "-0.0001"
        );
        assert_eq!(
            ExactScalar::term(QuadRational::sqrt(2), 0).to_decimal(10),
            "1.4142135624"
        );
        // -√2·10^-6 rounds to zero at 3 digits; no "-0.000".
        let tiny = ExactScalar::term(
            QuadRational::new(Rational::zero(), Rational::frac(-1, 1_000_000), 2),
            0,
        );
        assert_eq!(tiny.to_decimal(3), "0.000");
    }
}
