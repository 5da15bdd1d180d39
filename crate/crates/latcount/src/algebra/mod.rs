//! Exact scalar and polynomial arithmetic plus the combinatorial
//! number-theory utilities the rest of the crate consumes.
//!
//! Everything here is exact: the scalar domain is the arbitrary-precision
//! rationals, and no operation ever rounds.

pub mod numtheory;
pub mod poly;
pub mod stirling;

use num::BigInt;

/// Arbitrary-precision rational, always reduced with a positive denominator.
///
/// `num::BigRational` maintains both invariants internally and prints as
/// `p/q` (or just `p` when the denominator is 1), which is the exact textual
/// form used by the CLI.
pub type Rational = num::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Rational from an unsigned 128-bit integer (leg products can be wide).
pub fn rat_u128(n: u128) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_reduce_and_print_exactly() {
        assert_eq!(ratio(2, 4), ratio(1, 2));
        assert_eq!(ratio(2, 4).to_string(), "1/2");
        assert_eq!(ratio(-3, 6).to_string(), "-1/2");
        assert_eq!(rat(7).to_string(), "7");
        // denominator is kept positive
        assert_eq!(Rational::new(BigInt::from(1), BigInt::from(-2)).to_string(), "-1/2");
    }
}
