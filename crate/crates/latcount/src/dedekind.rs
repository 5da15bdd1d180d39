//! Dedekind sums by three independent routes: the sawtooth definition, a
//! logarithmic-time reduction through the classical reciprocity law, and a
//! root-of-unity identity evaluated in cyclotomic fields. The three must
//! agree, which makes the sum its own cross-check.

use num::BigInt;

use crate::algebra::numtheory::{divisors, gcd_i64};
use crate::algebra::poly::Ring;
use crate::algebra::{rat, rat_u128, ratio, Rational};
use crate::cyclotomic::{field, invert, Cyclotomic};
use crate::error::{Error, Result};

fn require_coprime(a: i64, b: u64) -> Result<()> {
    if gcd_i64(a, b) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    Ok(())
}

/// s(a, b) from the definition: the sum over k = 1..b-1 of
/// `((k/b)) * ((k*a/b))`, where `((x))` is the sawtooth `x - floor(x) - 1/2`
/// on non-integers and 0 on integers. Needs `gcd(a, b) = 1`.
pub fn dedekind_direct(a: i64, b: u64) -> Result<Rational> {
    require_coprime(a, b)?;
    if b == 1 {
        return Ok(Rational::from(BigInt::from(0)));
    }
    // with gcd(a, b) = 1 and 0 < k < b no argument is ever an integer, so
    // each term is (2k - b)(2r - b) / (4 b^2) with r = k*a mod b
    let b_i = b as i128;
    let mut sum: i128 = 0;
    for k in 1..b as i128 {
        let r = (k * a as i128).rem_euclid(b_i);
        debug_assert_ne!(r, 0, "coprimality keeps the sawtooth off the integers");
        sum += (2 * k - b_i) * (2 * r - b_i);
    }
    Ok(Rational::new(BigInt::from(sum), BigInt::from(4 * b_i * b_i)))
}

/// s(1, b) = (b - 1)(b - 2) / (12 b).
fn dedekind_of_one(b: u64) -> Rational {
    let b = b as i128;
    Rational::new(BigInt::from((b - 1) * (b - 2)), BigInt::from(12 * b))
}

/// s(a, b) in O(log b) arithmetic steps: reduce a mod b, then apply the
/// reciprocity law `s(a,b) + s(b,a) = -1/4 + (a/b + b/a + 1/(ab)) / 12`
/// along the Euclidean remainder chain, bottoming out at the s(1, b)
/// closed form. Needs `gcd(a, b) = 1`.
pub fn dedekind_fast(a: i64, b: u64) -> Result<Rational> {
    require_coprime(a, b)?;
    fn go(a: u64, b: u64) -> Rational {
        // invariants: 0 <= a < b, gcd(a, b) = 1
        if b == 1 {
            return rat(0);
        }
        if a == 1 {
            return dedekind_of_one(b);
        }
        let (a_q, b_q) = (rat_u128(a as u128), rat_u128(b as u128));
        let cross = (&a_q / &b_q + &b_q / &a_q + (&a_q * &b_q).recip()) / rat(12);
        cross - ratio(1, 4) - go(b % a, a)
    }
    Ok(go(a.rem_euclid(b as i64) as u64, b))
}

/// s(a, b) recovered from the exact root-of-unity identity
/// `(1/b) * sum_{k=1..b-1} 1 / ((1 - xi^(k a)) (1 - xi^k)) = 1/4 - 1/(4b) - s(a, b)`
/// with `xi` a primitive b-th root of unity.
///
/// The left side is grouped by the multiplicative order of `xi^k`: each
/// divisor `m > 1` of `b` contributes the Galois-orbit sum over the
/// primitive m-th roots, evaluated in Q(zeta_m) and rationalized by
/// `primitive_trace`. Needs `gcd(a, b) = 1` and `b >= 2`.
pub fn dedekind_root_identity(a: i64, b: u64) -> Result<Rational> {
    require_coprime(a, b)?;
    if b < 2 {
        return Err(Error::ModulusTooSmall { b });
    }
    let mut lhs = rat(0);
    for m in divisors(b) {
        if m == 1 {
            continue;
        }
        let f = field(m);
        let one = Cyclotomic::one();
        let term = invert(&one.sub(&f.zeta_pow(a)))?.mul(&invert(&one.sub(&f.zeta()))?);
        let orbit = f.primitive_trace(&term);
        f.assert_orbit_sum_rational(&term, &orbit);
        lhs += orbit;
    }
    lhs /= rat_u128(b as u128);
    Ok(ratio(1, 4) - Rational::new(BigInt::from(1), BigInt::from(4 * b as i128)) - lhs)
}
