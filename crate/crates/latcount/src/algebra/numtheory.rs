//! Elementary multiplicative number theory: factorization by trial
//! division, Möbius, Euler phi, divisor lists, binomials, and Ramanujan
//! sums. All functions are exact and sized for desk-scale inputs.

use num::{BigInt, One};

/// Prime factorization `n = p1^e1 * p2^e2 * ...` with ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize needs n >= 1");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Möbius function: 0 on squareful n, otherwise (-1)^(number of prime factors).
pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        return 0;
    }
    if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Euler totient.
pub fn totient(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// Sorted list of positive divisors.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    num::integer::gcd(a, b)
}

/// gcd(a, b) for a signed first argument, as a nonnegative integer.
pub fn gcd_i64(a: i64, b: u64) -> u64 {
    num::integer::gcd(a.unsigned_abs(), b)
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Binomial coefficient C(n, k) as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Ramanujan sum c_d(i): the sum of e^(2 pi i k j / d) over j coprime to d.
///
/// Evaluated by the multiplicative closed form
/// `mu(d/g) * phi(d) / phi(d/g)` with `g = gcd(i, d)`, which is always an
/// integer. This is how sums over all primitive d-th roots of unity are
/// turned into rationals without touching any single root.
pub fn ramanujan_sum(d: u64, i: i64) -> i64 {
    assert!(d >= 1, "ramanujan_sum needs d >= 1");
    let r = i.rem_euclid(d as i64) as u64;
    let g = if r == 0 { d } else { gcd_u64(r, d) };
    let q = d / g;
    mobius(q) * (totient(d) / totient(q)) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(totient(1), 1);
        assert_eq!(divisors(1), vec![1]);
    }

    #[test]
    fn mobius_squareful_is_zero() {
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(6), 1);
    }

    #[test]
    fn divisors_of_30() {
        assert_eq!(divisors(30), vec![1, 2, 3, 5, 6, 10, 15, 30]);
    }

    #[test]
    fn totient_divisor_sum_is_n() {
        for n in 1..=1000u64 {
            let s: u64 = divisors(n).into_iter().map(totient).sum();
            assert_eq!(s, n, "sum of phi over divisors of {n}");
        }
    }

    #[test]
    fn ramanujan_examples() {
        // c_d(0) = phi(d)
        for d in 1..=12 {
            assert_eq!(ramanujan_sum(d, 0), totient(d) as i64);
        }
        // zeta_3 + zeta_3^2 = -1
        assert_eq!(ramanujan_sum(3, 1), -1);
        // i + (-i) = 0
        assert_eq!(ramanujan_sum(4, 1), 0);
        // periodic in i
        assert_eq!(ramanujan_sum(6, 7), ramanujan_sum(6, 1));
        assert_eq!(ramanujan_sum(6, -1), ramanujan_sum(6, 5));
    }

    #[test]
    fn binomial_row() {
        let row: Vec<BigInt> = (0..=4).map(|k| binomial(4, k)).collect();
        let expect: Vec<BigInt> = [1, 4, 6, 4, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(row, expect);
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }
}
