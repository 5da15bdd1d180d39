//! Brute-force lattice-point oracles.
//!
//! These enumerators are the ground truth the residue engine is tested
//! against, so they stay as plain as possible: nested loops with exact
//! integer bounds and an iteration budget instead of cleverness.

use crate::error::{Error, Result};

/// Default cap on enumeration loop iterations. The oracles exist for
/// verification, not production counting, so runaway inputs fail fast.
pub const DEFAULT_ITERATION_BUDGET: u64 = 1_000_000;

/// Axis-aligned lattice simplex with vertices at the origin and at
/// `a_k * e_k` on each coordinate axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexSpec {
    legs: Vec<u64>,
    product: u128,
    cofactors: Vec<u128>,
}

impl SimplexSpec {
    pub fn new(legs: Vec<u64>) -> Result<Self> {
        if legs.is_empty() {
            return Err(Error::EmptySimplex);
        }
        let mut product: u128 = 1;
        for (index, &a) in legs.iter().enumerate() {
            if a == 0 {
                return Err(Error::NonPositiveLeg { index });
            }
            product = product.checked_mul(a as u128).ok_or(Error::ProductOverflow)?;
        }
        let cofactors = legs.iter().map(|&a| product / a as u128).collect();
        Ok(SimplexSpec { legs, product, cofactors })
    }

    pub fn dim(&self) -> usize {
        self.legs.len()
    }

    pub fn legs(&self) -> &[u64] {
        &self.legs
    }

    /// Product of all leg lengths.
    pub fn leg_product(&self) -> u128 {
        self.product
    }

    /// Product of all legs except leg `k`.
    pub fn cofactor(&self, k: usize) -> u128 {
        self.cofactors[k]
    }

    pub fn cofactors(&self) -> &[u128] {
        &self.cofactors
    }

    /// Product of all legs except legs `j` and `k` (`j != k`).
    pub fn pair_cofactor(&self, j: usize, k: usize) -> u128 {
        assert_ne!(j, k, "pair cofactor needs two distinct indices");
        self.cofactors[j] / self.legs[k] as u128
    }
}

/// Loop-iteration allowance; remembers its initial size for the error it
/// raises when exhausted.
pub(crate) struct Budget {
    remaining: u64,
    initial: u64,
}

impl Budget {
    pub(crate) fn new(initial: u64) -> Self {
        Budget { remaining: initial, initial }
    }

    pub(crate) fn spend(&mut self) -> Result<()> {
        if self.remaining == 0 {
            return Err(Error::BudgetExceeded { budget: self.initial });
        }
        self.remaining -= 1;
        Ok(())
    }
}

/// Solutions of `sum_k m_k * w_k <= target` with all `m_k >= 0`, counted by
/// nested loops whose bound is the exact remaining budget per prefix.
fn count_weighted_le(weights: &[u128], target: u128, budget: &mut Budget) -> Result<u64> {
    match weights.split_first() {
        None => Ok(1),
        Some((&w, rest)) => {
            let mut total = 0u64;
            let mut used = 0u128;
            loop {
                budget.spend()?;
                total += count_weighted_le(rest, target - used, budget)?;
                used += w;
                if used > target {
                    return Ok(total);
                }
            }
        }
    }
}

/// Solutions of `sum_k m_k * w_k = target` with all `m_k >= 0`.
fn count_weighted_eq(weights: &[u128], target: u128, budget: &mut Budget) -> Result<u64> {
    match weights.split_first() {
        None => Ok(u64::from(target == 0)),
        Some((&w, rest)) => {
            let mut total = 0u64;
            let mut used = 0u128;
            loop {
                budget.spend()?;
                total += count_weighted_eq(rest, target - used, budget)?;
                used += w;
                if used > target {
                    return Ok(total);
                }
            }
        }
    }
}

/// Lattice points of the dilated closed simplex: vectors `m >= 0` with
/// `sum_k m_k / a_k <= t`, enumerated via `sum_k m_k * A_k <= t * A`.
pub fn count_closed_simplex(s: &SimplexSpec, t: u32) -> Result<u64> {
    count_closed_simplex_with_budget(s, t, DEFAULT_ITERATION_BUDGET)
}

pub fn count_closed_simplex_with_budget(s: &SimplexSpec, t: u32, budget: u64) -> Result<u64> {
    let mut budget = Budget::new(budget);
    count_weighted_le(s.cofactors(), t as u128 * s.leg_product(), &mut budget)
}

/// Lattice points of the dilated open simplex: vectors `m >= 1` with
/// `sum_k m_k / a_k < t`.
pub fn count_open_simplex(s: &SimplexSpec, t: u32) -> Result<u64> {
    count_open_simplex_with_budget(s, t, DEFAULT_ITERATION_BUDGET)
}

pub fn count_open_simplex_with_budget(s: &SimplexSpec, t: u32, budget: u64) -> Result<u64> {
    // substitute m_k = m'_k + 1 and sharpen the strict inequality to <= tA - 1
    let shift: u128 = s.cofactors().iter().sum();
    let ta = t as u128 * s.leg_product();
    if ta < shift + 1 {
        return Ok(0);
    }
    let mut budget = Budget::new(budget);
    count_weighted_le(s.cofactors(), ta - 1 - shift, &mut budget)
}

/// The same closed count read as a denumerant: the number of nonnegative
/// solutions of `sum_k m_k * A_k + m = t * A` in n+1 variables.
pub fn count_denumerant(s: &SimplexSpec, t: u32) -> Result<u64> {
    let mut weights: Vec<u128> = s.cofactors().to_vec();
    weights.push(1);
    let mut budget = Budget::new(DEFAULT_ITERATION_BUDGET);
    count_weighted_eq(&weights, t as u128 * s.leg_product(), &mut budget)
}

/// H-polytope cut out by `x >= 0` together with one simplex-style row per
/// constraint: `sum_k x_k / a_jk <= t` for each row j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytopeSpec {
    entries: Vec<Vec<u64>>, // q rows by n columns, all positive
    row_products: Vec<u128>,
    row_cofactors: Vec<Vec<u128>>,
}

impl HPolytopeSpec {
    pub fn new(entries: Vec<Vec<u64>>) -> Result<Self> {
        if entries.is_empty() || entries[0].is_empty() {
            return Err(Error::InvalidConstraintMatrix);
        }
        let n = entries[0].len();
        for (row, r) in entries.iter().enumerate() {
            if r.len() != n {
                return Err(Error::RaggedConstraintMatrix {
                    row,
                    expected: n,
                    got: r.len(),
                });
            }
            if r.contains(&0) {
                return Err(Error::InvalidConstraintMatrix);
            }
        }
        let mut row_products = Vec::with_capacity(entries.len());
        let mut row_cofactors = Vec::with_capacity(entries.len());
        for r in &entries {
            let mut p: u128 = 1;
            for &x in r {
                p = p.checked_mul(x as u128).ok_or(Error::ProductOverflow)?;
            }
            row_products.push(p);
            row_cofactors.push(r.iter().map(|&x| p / x as u128).collect());
        }
        Ok(HPolytopeSpec {
            entries,
            row_products,
            row_cofactors,
        })
    }

    pub fn dim(&self) -> usize {
        self.entries[0].len()
    }

    pub fn num_rows(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// P_j: the product of row j's entries.
    pub fn row_product(&self, j: usize) -> u128 {
        self.row_products[j]
    }

    /// A_jk = P_j / a_jk: the cleared-denominator coefficient of x_k in row j.
    pub fn row_cofactors(&self, j: usize) -> &[u128] {
        &self.row_cofactors[j]
    }

    /// Upper bound for x_k implied by the rows alone: positive entries make
    /// every coordinate bounded, which is why construction never admits an
    /// unbounded region.
    fn coordinate_bound(&self, k: usize, t: u32) -> u128 {
        self.entries
            .iter()
            .map(|row| row[k] as u128 * t as u128)
            .min()
            .expect("at least one row")
    }
}

/// Lattice points with `x >= 0` and every row constraint satisfied,
/// enumerated over the per-coordinate bounding box and filtered.
pub fn count_hpolytope(h: &HPolytopeSpec, t: u32) -> Result<u64> {
    count_hpolytope_with_budget(h, t, DEFAULT_ITERATION_BUDGET)
}

pub fn count_hpolytope_with_budget(h: &HPolytopeSpec, t: u32, budget: u64) -> Result<u64> {
    fn rec(
        h: &HPolytopeSpec,
        t: u32,
        k: usize,
        partial: &mut Vec<u128>,
        budget: &mut Budget,
    ) -> Result<u64> {
        if k == h.dim() {
            return Ok(1);
        }
        let mut total = 0u64;
        for x in 0..=h.coordinate_bound(k, t) {
            budget.spend()?;
            let violated = (0..h.num_rows()).any(|j| {
                partial[j] + x * h.row_cofactors(j)[k] > t as u128 * h.row_product(j)
            });
            if violated {
                break; // entries are positive, so larger x only overshoots
            }
            for (p, cofs) in partial.iter_mut().zip(&h.row_cofactors) {
                *p += x * cofs[k];
            }
            total += rec(h, t, k + 1, partial, budget)?;
            for (p, cofs) in partial.iter_mut().zip(&h.row_cofactors) {
                *p -= x * cofs[k];
            }
        }
        Ok(total)
    }
    let mut partial = vec![0u128; h.num_rows()];
    let mut budget = Budget::new(budget);
    rec(h, t, 0, &mut partial, &mut budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex(legs: &[u64]) -> SimplexSpec {
        SimplexSpec::new(legs.to_vec()).unwrap()
    }

    #[test]
    fn closed_counts() {
        assert_eq!(count_closed_simplex(&simplex(&[2, 3]), 1).unwrap(), 7);
        assert_eq!(count_closed_simplex(&simplex(&[2, 3]), 0).unwrap(), 1);
        assert_eq!(count_closed_simplex(&simplex(&[7, 4, 3]), 0).unwrap(), 1);
        assert_eq!(count_closed_simplex(&simplex(&[2, 3, 5]), 1).unwrap(), 18);
    }

    #[test]
    fn open_counts() {
        assert_eq!(count_open_simplex(&simplex(&[2, 3]), 1).unwrap(), 1);
        assert_eq!(count_open_simplex(&simplex(&[2, 3]), 0).unwrap(), 0);
        assert_eq!(count_open_simplex(&simplex(&[5, 5, 5]), 0).unwrap(), 0);
        assert_eq!(count_open_simplex(&simplex(&[1, 1]), 3).unwrap(), 1);
    }

    #[test]
    fn denumerant_counts() {
        assert_eq!(count_denumerant(&simplex(&[2, 3]), 1).unwrap(), 7);
        assert_eq!(count_denumerant(&simplex(&[2, 3]), 0).unwrap(), 1);
        assert_eq!(count_denumerant(&simplex(&[5]), 2).unwrap(), 11);
    }

    #[test]
    fn denumerant_agrees_with_closed_count() {
        let cases: &[&[u64]] = &[&[1], &[4], &[2, 3], &[2, 2], &[1, 5], &[2, 3, 5], &[3, 3, 2]];
        for legs in cases {
            let s = simplex(legs);
            for t in 0..=4 {
                assert_eq!(
                    count_denumerant(&s, t).unwrap(),
                    count_closed_simplex(&s, t).unwrap(),
                    "a = {legs:?}, t = {t}"
                );
            }
        }
    }

    #[test]
    fn counts_are_monotone_and_open_below_closed() {
        let cases: &[&[u64]] = &[&[3], &[2, 3], &[2, 2, 2], &[1, 2, 3]];
        for legs in cases {
            let s = simplex(legs);
            let mut prev_closed = 0;
            let mut prev_open = 0;
            for t in 0..=4 {
                let closed = count_closed_simplex(&s, t).unwrap();
                let open = count_open_simplex(&s, t).unwrap();
                assert!(closed >= prev_closed && open >= prev_open, "monotone in t");
                assert!(open <= closed);
                if t >= 1 {
                    assert!(open < closed, "boundary points always exist for t >= 1");
                }
                prev_closed = closed;
                prev_open = open;
            }
        }
    }

    #[test]
    fn hpolytope_counts() {
        // a single row reduces to the closed simplex count
        let h = HPolytopeSpec::new(vec![vec![2, 3]]).unwrap();
        assert_eq!(count_hpolytope(&h, 1).unwrap(), 7);

        // x + 2y <= 2 and 2x + y <= 2: points (0,0), (1,0), (0,1)
        let h = HPolytopeSpec::new(vec![vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(count_hpolytope(&h, 1).unwrap(), 3);
        assert_eq!(count_hpolytope(&h, 0).unwrap(), 1);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(SimplexSpec::new(vec![]), Err(Error::EmptySimplex)));
        assert!(matches!(
            SimplexSpec::new(vec![2, 0]),
            Err(Error::NonPositiveLeg { index: 1 })
        ));
        assert!(matches!(
            HPolytopeSpec::new(vec![vec![1, 0]]),
            Err(Error::InvalidConstraintMatrix)
        ));
        assert!(matches!(
            HPolytopeSpec::new(vec![vec![1, 2], vec![3]]),
            Err(Error::RaggedConstraintMatrix { .. })
        ));
    }

    #[test]
    fn budget_guard_trips() {
        let s = simplex(&[50, 50, 50]);
        let err = count_closed_simplex_with_budget(&s, 30, 1000);
        assert!(matches!(err, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn pair_cofactors() {
        let s = simplex(&[2, 3, 5]);
        assert_eq!(s.leg_product(), 30);
        assert_eq!(s.cofactor(0), 15);
        assert_eq!(s.pair_cofactor(0, 1), 5);
        assert_eq!(s.pair_cofactor(1, 2), 2);
    }
}
