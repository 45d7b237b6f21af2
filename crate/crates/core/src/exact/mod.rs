//! Exact arithmetic: rationals, the quadratic fields ℚ(√d), and scalars
//! graded by powers of a formal π.

mod decimal;
mod quad;
mod rational;
mod scalar;

use num_bigint::BigInt;

pub use decimal::pi_fixed;
pub use quad::{square_free_part, QuadRational};
pub use rational::Rational;
pub use scalar::ExactScalar;

/// `m!` as an arbitrary-precision integer.
pub fn factorial(m: u32) -> BigInt {
    (1..=m).fold(BigInt::from(1), |acc, i| acc * i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(4), BigInt::from(24));
        assert_eq!(factorial(12), BigInt::from(479_001_600u64));
        assert_eq!(factorial(25).to_string(), "15511210043330985984000000");
    }
}
