use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Rational;
use crate::error::Error;

/// Splits `d` as `s^2 * r` with `r` square-free. Returns `(s, r)`.
pub fn square_free_part(d: u64) -> (u64, u64) {
    if d == 0 {
        return (0, 0);
    }
    let mut rest = d;
    let mut root = 1u64;
    let mut f = 2u64;
    while f.saturating_mul(f) <= rest {
        while rest.is_multiple_of(f * f) {
            rest /= f * f;
            root *= f;
        }
        f += if f == 2 { 1 } else { 2 };
    }
    (root, rest)
}

/// An element `a + b·√d` of the real quadratic field ℚ(√d).
///
/// `d` is square-free, and `d == 0` exactly when `b == 0`; a perfect-square
/// radicand collapses into `a` at construction.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadRational {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadRational {
    /// Builds `a + b·√d`, extracting square factors from `d`.
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        let (root, rest) = square_free_part(d);
        if b.is_zero() || d == 0 {
            return QuadRational {
                a,
                b: Rational::zero(),
                d: 0,
            };
        }
        let b = b * Rational::from_integer(root);
        if rest == 1 {
            return QuadRational {
                a: a + b,
                b: Rational::zero(),
                d: 0,
            };
        }
        QuadRational { a, b, d: rest }
    }

    pub fn rational(a: Rational) -> Self {
        QuadRational {
            a,
            b: Rational::zero(),
            d: 0,
        }
    }

    /// `√d` itself.
    pub fn sqrt(d: u64) -> Self {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn common_d(&self, other: &Self) -> Result<u64, Error> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(Error::DiscriminantMismatch(x, y)),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, Error> {
        let d = self.common_d(rhs)?;
        Ok(Self::new(&self.a + &rhs.a, &self.b + &rhs.b, d))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, Error> {
        self.checked_add(&rhs.neg())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, Error> {
        let d = self.common_d(rhs)?;
        let dq = Rational::from_integer(d);
        let a = &self.a * &rhs.a + &self.b * &rhs.b * &dq;
        let b = &self.a * &rhs.b + &rhs.a * &self.b;
        Ok(Self::new(a, b, d))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.a * k, &self.b * k, self.d)
    }

    pub fn neg(&self) -> Self {
        QuadRational {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }

    pub fn conj(&self) -> Self {
        QuadRational {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d)
    }

    /// Multiplicative inverse with rationalized denominator.
    pub fn inv(&self) -> Result<Self, Error> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let r = n.recip()?;
        Ok(self.conj().scale(&r))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        self.checked_mul(&rhs.inv()?)
    }

    /// Exact sign of `a + b√d`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // Opposite signs: compare a² with d·b².
        let a2 = &self.a * &self.a;
        let db2 = &self.b * &self.b * Rational::from_integer(self.d);
        match a2.cmp(&db2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * (self.d as f64).sqrt()
    }

    /// Exact ordering; fails on mismatched discriminants.
    pub fn checked_cmp(&self, rhs: &Self) -> Result<Ordering, Error> {
        Ok(self.checked_sub(rhs)?.signum())
    }

    /// Renders as `(A + B√d)/L` with `L` the lcm of the denominators.
    pub fn to_pretty(&self) -> String {
        if self.b.is_zero() {
            return self.a.to_string();
        }
        let l: BigInt = self.a.denom().lcm(self.b.denom());
        let big_a = self.a.numer() * (&l / self.a.denom());
        let big_b = self.b.numer() * (&l / self.b.denom());
        let surd = |coef: &BigInt| -> String {
            let mag = coef.abs();
            if mag == BigInt::from(1) {
                format!("√{}", self.d)
            } else {
                format!("{}√{}", mag, self.d)
            }
        };
        let body = if big_a.is_zero() {
            if big_b.is_negative() {
                format!("-{}", surd(&big_b))
            } else {
                surd(&big_b)
            }
        } else {
            let op = if big_b.is_negative() { '-' } else { '+' };
            format!("{} {} {}", big_a, op, surd(&big_b))
        };
        let one = BigInt::from(1);
        match (l == one, big_a.is_zero()) {
            (true, true) => body,
            (true, false) => format!("({body})"),
            (false, _) => format!("({body})/{l}"),
        }
    }
}

impl fmt::Display for QuadRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

impl fmt::Debug for QuadRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√{}", self.a, self.b, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, d: u64) -> QuadRational {
        QuadRational::new(Rational::from(a), Rational::from(b), d)
    }

    #[test]
    fn square_free_reduction() {
        assert_eq!(square_free_part(12), (2, 3));
        assert_eq!(square_free_part(13), (1, 13));
        assert_eq!(square_free_part(4), (2, 1));
        assert_eq!(square_free_part(72), (6, 2));
        assert_eq!(q(1, 1, 4), q(3, 0, 0));
        assert_eq!(q(0, 1, 12), q(0, 2, 3));
    }

    #[test]
    fn product_matches_hand_expansion() {
        // (4+√13)(5+2√13) = 20 + 8√13 + 5√13 + 26
        assert_eq!(
            q(4, 1, 13).checked_mul(&q(5, 2, 13)).unwrap(),
            q(46, 13, 13)
        );
    }

    #[test]
    fn mixing_discriminants_fails() {
        assert_eq!(
            q(1, 1, 13).checked_add(&q(1, 1, 5)),
            Err(Error::DiscriminantMismatch(13, 5))
        );
        // Rational side is compatible with anything.
        assert!(q(1, 1, 13).checked_add(&q(7, 0, 0)).is_ok());
    }

    #[test]
    fn inverse_is_rationalized() {
        let x = q(-5, 2, 13);
        let inv = x.inv().unwrap();
        assert_eq!(
            inv,
            QuadRational::new(Rational::frac(5, 27), Rational::frac(2, 27), 13)
        );
        assert_eq!(x.checked_mul(&inv).unwrap(), QuadRational::one());
    }

    #[test]
    fn exact_sign() {
        assert_eq!(q(-5, 2, 13).signum(), Ordering::Greater); // 2√13 ≈ 7.2
        assert_eq!(q(-8, 2, 13).signum(), Ordering::Less);
        assert_eq!(q(3, -1, 2).signum(), Ordering::Greater);
        assert_eq!(q(0, 0, 0).signum(), Ordering::Equal);
    }

    #[test]
    fn pretty() {
        let x = QuadRational::new(Rational::frac(736, 81), Rational::frac(208, 81), 13);
        assert_eq!(x.to_pretty(), "(736 + 208√13)/81");
        assert_eq!(q(0, -1, 13).to_pretty(), "-√13");
        assert_eq!(q(3, -2, 5).to_pretty(), "(3 - 2√5)");
    }
}
