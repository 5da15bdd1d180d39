//! Stirling numbers of the second kind.

use std::sync::{Mutex, OnceLock};

use num::BigInt;

fn table() -> &'static Mutex<Vec<Vec<BigInt>>> {
    static TABLE: OnceLock<Mutex<Vec<Vec<BigInt>>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![vec![BigInt::from(1)]]))
}

/// S(m, k): the number of partitions of an m-element set into k nonempty
/// blocks, computed by the recurrence
/// `S(m, k) = k * S(m-1, k) + S(m-1, k-1)` over a memoized triangular table.
///
/// `S(0, 0) = 1`, and `S(m, k) = 0` whenever `k > m` or exactly one of
/// `m`, `k` is zero.
pub fn stirling2(m: u32, k: u32) -> BigInt {
    if k > m {
        return BigInt::from(0);
    }
    let mut rows = table().lock().expect("stirling table poisoned");
    while rows.len() <= m as usize {
        let prev = rows.last().expect("table seeded with row 0");
        let m_now = rows.len();
        let mut row = Vec::with_capacity(m_now + 1);
        row.push(BigInt::from(0)); // S(m, 0) = 0 for m >= 1
        for k_now in 1..=m_now {
            let carry = &prev[k_now - 1];
            let kept = if k_now < prev.len() {
                &prev[k_now] * BigInt::from(k_now)
            } else {
                BigInt::from(0)
            };
            row.push(kept + carry);
        }
        rows.push(row);
    }
    rows[m as usize][k as usize].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::numtheory::binomial;
    use num::{BigInt, Signed};

    /// Independent route: the explicit alternating sum
    /// S(m, k) = (1/k!) * sum_j C(k, j) (-1)^(k-j) j^m.
    fn stirling2_explicit(m: u32, k: u32) -> BigInt {
        let mut acc = BigInt::from(0);
        for j in 0..=k {
            let sign = if (k - j).is_multiple_of(2) { 1 } else { -1 };
            acc += binomial(k as u64, j as u64) * BigInt::from(j).pow(m) * BigInt::from(sign);
        }
        let mut fact = BigInt::from(1);
        for i in 1..=k {
            fact *= BigInt::from(i);
        }
        let (q, r) = num::integer::div_rem(acc, fact);
        assert!(r.abs() == BigInt::from(0), "explicit formula must divide evenly");
        q
    }

    /// Independent route: enumerate restricted-growth strings and count the
    /// partitions of an m-set by block count.
    fn partition_counts_by_blocks(m: usize) -> Vec<u64> {
        fn rec(pos: usize, m: usize, labels: &mut Vec<usize>, blocks: usize, out: &mut Vec<u64>) {
            if pos == m {
                out[blocks] += 1;
                return;
            }
            for b in 0..=blocks {
                labels.push(b);
                rec(pos + 1, m, labels, blocks.max(b + 1), out);
                labels.pop();
            }
        }
        let mut out = vec![0u64; m + 1];
        if m == 0 {
            out[0] = 1;
            return out;
        }
        rec(0, m, &mut Vec::new(), 0, &mut out);
        out
    }

    #[test]
    fn base_examples() {
        for m in 1..=8 {
            assert_eq!(stirling2(m, 1), BigInt::from(1), "S({m},1)");
            assert_eq!(stirling2(m, m), BigInt::from(1), "S({m},{m})");
        }
        assert_eq!(stirling2(2, 3), BigInt::from(0));
        assert_eq!(stirling2(4, 2), BigInt::from(7));
    }

    #[test]
    fn s42_matches_block_enumeration() {
        let counts = partition_counts_by_blocks(4);
        assert_eq!(counts[2], 7);
        for k in 0..=4u32 {
            assert_eq!(stirling2(4, k), BigInt::from(counts[k as usize]));
        }
    }

    #[test]
    fn recurrence_matches_explicit_formula() {
        for m in 0..=12 {
            for k in 0..=12 {
                assert_eq!(stirling2(m, k), stirling2_explicit(m, k), "S({m},{k})");
            }
        }
    }

    #[test]
    fn row_sums_are_bell_numbers() {
        for m in 0..=8usize {
            let bell: u64 = partition_counts_by_blocks(m).iter().sum();
            let row_sum: BigInt = (0..=m as u32).map(|k| stirling2(m as u32, k)).sum();
            assert_eq!(row_sum, BigInt::from(bell), "Bell({m})");
        }
    }
}
