//! Truncated Laurent series over an abstract exact coefficient ring.
//!
//! A series is a finite window of coefficients for the local variable `w`:
//! exponents below the window are exactly zero, exponents above it are
//! unknown (truncated away). The same code path serves rational
//! coefficients (expansions about z = 1), cyclotomic coefficients
//! (expansions about roots of unity), and polynomial coefficients in the
//! dilation parameter over either.

use crate::algebra::poly::{QAlgebra, Ring};
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Finite window `[valuation, order]` of a Laurent expansion.
///
/// Invariants: the window is nonempty (`order >= valuation`), and
/// multiplication shrinks the window per the rule checked in `mul`, so a
/// coefficient is never claimed beyond what the operands prove.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentSeries<R: Ring> {
    valuation: i64,
    coeffs: Vec<R>, // exponents valuation ..= valuation + len - 1
}

impl<R: Ring> LaurentSeries<R> {
    pub fn new(valuation: i64, coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "series window must be nonempty");
        LaurentSeries { valuation, coeffs }
    }

    /// Constant 1 known through `order`.
    pub fn one(order: i64) -> Self {
        let mut s = LaurentSeries::new(0, vec![R::zero(); (order.max(0) + 1) as usize]);
        s.coeffs[0] = R::one();
        s
    }

    /// Lowest retained exponent.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Highest retained exponent (truncation order).
    pub fn order(&self) -> i64 {
        self.valuation + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `w^e`: exact zero below the window, retained value
    /// inside it. Panics above the window, where nothing is known.
    pub fn coeff(&self, e: i64) -> R {
        if e < self.valuation {
            return R::zero();
        }
        assert!(e <= self.order(), "coefficient {e} beyond truncation order {}", self.order());
        self.coeffs[(e - self.valuation) as usize].clone()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let valuation = self.valuation.min(rhs.valuation);
        let order = self.order().min(rhs.order());
        let mut coeffs = Vec::with_capacity((order - valuation + 1) as usize);
        for e in valuation..=order {
            coeffs.push(self.coeff(e).add(&rhs.coeff(e)));
        }
        LaurentSeries::new(valuation, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul_scalar(&self, k: &R) -> Self {
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| c.mul(k)).collect(),
        }
    }

    /// Product, on the provable window
    /// `[v_a + v_b, min(o_a + v_b, o_b + v_a)]`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let valuation = self.valuation + rhs.valuation;
        let order = (self.order() + rhs.valuation).min(rhs.order() + self.valuation);
        let mut coeffs = vec![R::zero(); (order - valuation + 1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let e = self.valuation + i as i64 + rhs.valuation + j as i64;
                if e > order {
                    break;
                }
                let slot = (e - valuation) as usize;
                coeffs[slot] = coeffs[slot].add(&a.mul(b));
            }
        }
        let out = LaurentSeries::new(valuation, coeffs);
        debug_assert_eq!(out.valuation, self.valuation + rhs.valuation);
        debug_assert_eq!(
            out.order(),
            (self.order() + rhs.valuation).min(rhs.order() + self.valuation)
        );
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(e >= 1, "series pow needs a positive exponent");
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Drop leading zero coefficients so the lowest retained coefficient is
    /// nonzero. Errors if the whole window is zero, since the true valuation
    /// is then unknown.
    pub fn trim_leading_zeros(&self) -> Result<Self> {
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if skip == self.coeffs.len() {
            return Err(Error::ZeroSeries);
        }
        Ok(LaurentSeries {
            valuation: self.valuation + skip as i64,
            coeffs: self.coeffs[skip..].to_vec(),
        })
    }

    /// Multiplicative inverse within the window. The lowest retained
    /// coefficient must be a unit of the coefficient ring; trim first when a
    /// factor is known to vanish at the expansion point.
    pub fn invert(&self) -> Result<Self> {
        let lead_inv = self.coeffs[0].inv().ok_or(Error::NonUnitLeadingCoefficient)?;
        let n = self.coeffs.len();
        let mut inv = Vec::with_capacity(n);
        inv.push(lead_inv.clone());
        for i in 1..n {
            // b_i = -a_0^{-1} * sum_{j=1..i} a_j b_{i-j}
            let mut acc = R::zero();
            for j in 1..=i {
                acc = acc.add(&self.coeffs[j].mul(&inv[i - j]));
            }
            inv.push(acc.mul(&lead_inv).neg());
        }
        Ok(LaurentSeries::new(-self.valuation, inv))
    }

    /// Coefficient of `w^{-1}`: zero when the window starts above -1,
    /// an error when the window was truncated before reaching -1.
    pub fn residue(&self) -> Result<R> {
        if self.order() < -1 {
            return Err(Error::ResidueOutsideWindow {
                lo: self.valuation,
                hi: self.order(),
            });
        }
        Ok(self.coeff(-1))
    }

    pub fn map_ring<S: Ring>(&self, f: impl Fn(&R) -> S) -> LaurentSeries<S> {
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

/// Taylor window of `exp(c * w)` through the given order:
/// `sum_{j=0..order} c^j w^j / j!`.
pub fn exp_series<R: QAlgebra>(c: &R, order: i64) -> LaurentSeries<R> {
    assert!(order >= 0, "exponential window needs order >= 0");
    let mut coeffs = Vec::with_capacity(order as usize + 1);
    let mut term = R::one();
    coeffs.push(term.clone());
    for j in 1..=order {
        term = term.mul(c).scale(&Rational::new(1.into(), j.into()));
        coeffs.push(term.clone());
    }
    LaurentSeries::new(0, coeffs)
}

/// `exp(c * w) - 1`, trimmed so the window starts at exponent 1.
/// Errors if `c = 0` (the difference is identically zero).
pub fn exp_minus_one<R: QAlgebra>(c: &R, order: i64) -> Result<LaurentSeries<R>> {
    let mut e = exp_series(c, order);
    e.coeffs[0] = R::zero();
    e.trim_leading_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::QPoly;
    use crate::algebra::{rat, ratio, Rational};
    use rand::{Rng, SeedableRng};

    fn qs(valuation: i64, coeffs: &[i64]) -> LaurentSeries<Rational> {
        LaurentSeries::new(valuation, coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn simple_products() {
        // (w^-1 + 1) * w = 1 + w
        let a = qs(-1, &[1, 1]);
        let b = qs(1, &[1]);
        let p = a.mul(&b);
        assert_eq!(p.valuation(), 0);
        assert_eq!(p.coeff(0), rat(1));
        assert_eq!(p.order(), 0); // window rule: min(0+1, 1-1) = 0

        // (1 + w)(1 - w) = 1 - w^2 within the window
        let p = qs(0, &[1, 1, 0]).mul(&qs(0, &[1, -1, 0]));
        assert_eq!(p.coeff(0), rat(1));
        assert_eq!(p.coeff(1), rat(0));
        assert_eq!(p.coeff(2), rat(-1));
    }

    #[test]
    fn exp_product_window_truncates() {
        // exp(2w) * exp(-2w) = 1 with both factors known through w^3
        let a = exp_series(&rat(2), 3);
        let b = exp_series(&rat(-2), 3);
        let p = a.mul(&b);
        assert_eq!(p.order(), 3);
        for e in 0..=3 {
            assert_eq!(p.coeff(e), rat(if e == 0 { 1 } else { 0 }));
        }
    }

    #[test]
    fn mul_window_rule_holds() {
        let a = qs(-2, &[3, 0, 1, 5]); // window [-2, 1]
        let b = qs(1, &[2, 7]); // window [1, 2]
        let p = a.mul(&b);
        assert_eq!(p.valuation(), -1);
        assert_eq!(p.order(), 2 - 2);
    }

    #[test]
    fn geometric_inverse() {
        let inv = qs(0, &[1, -1, 0, 0]).invert().unwrap();
        for e in 0..=3 {
            assert_eq!(inv.coeff(e), rat(1), "1/(1-w) has all-ones window");
        }
    }

    #[test]
    fn inverse_of_one_minus_exp() {
        // 1/(1 - e^w) = -w^-1 + 1/2 - w/12 + O(w^3)
        let f = exp_minus_one(&rat(1), 5).unwrap().neg();
        let inv = f.invert().unwrap();
        assert_eq!(inv.valuation(), -1);
        assert_eq!(inv.coeff(-1), rat(-1));
        assert_eq!(inv.coeff(0), ratio(1, 2));
        assert_eq!(inv.coeff(1), ratio(-1, 12));
        assert_eq!(inv.coeff(2), rat(0));
        // residue extraction reads exponent -1
        assert_eq!(inv.residue().unwrap(), rat(-1));
    }

    #[test]
    fn long_division_inverse() {
        let inv = qs(0, &[2, 1, 0, 0]).invert().unwrap();
        assert_eq!(inv.coeff(0), ratio(1, 2));
        assert_eq!(inv.coeff(1), ratio(-1, 4));
        assert_eq!(inv.coeff(2), ratio(1, 8));
        assert_eq!(inv.coeff(3), ratio(-1, 16));
    }

    #[test]
    fn invert_requires_unit_leading() {
        let f = qs(0, &[0, 1, 1]);
        assert!(matches!(f.invert(), Err(Error::NonUnitLeadingCoefficient)));
        let trimmed = f.trim_leading_zeros().unwrap();
        assert_eq!(trimmed.valuation(), 1);
        assert!(trimmed.invert().is_ok());
        assert!(matches!(qs(0, &[0, 0]).trim_leading_zeros(), Err(Error::ZeroSeries)));
    }

    #[test]
    fn exp_with_polynomial_coefficient() {
        // exp(-30 t w) through w^2 over polynomials in t
        let c = QPoly::from_coeffs(vec![rat(0), rat(-30)]);
        let e = exp_series(&c, 2);
        assert_eq!(e.coeff(0), QPoly::one());
        assert_eq!(e.coeff(1), QPoly::from_coeffs(vec![rat(0), rat(-30)]));
        assert_eq!(e.coeff(2), QPoly::from_coeffs(vec![rat(0), rat(0), rat(450)]));

        // exp(0) is the constant series 1
        let z = exp_series(&QPoly::zero(), 3);
        assert_eq!(z.coeff(0), QPoly::one());
        for e in 1..=3 {
            assert!(z.coeff(e).is_zero());
        }

        // exp(w) through w^3
        let e = exp_series(&rat(1), 3);
        assert_eq!(e.coeff(2), ratio(1, 2));
        assert_eq!(e.coeff(3), ratio(1, 6));
    }

    #[test]
    fn residue_reads_exponent_minus_one() {
        assert_eq!(qs(-1, &[-1, 0, 5]).residue().unwrap(), rat(-1));
        // pure Taylor window: exponent -1 is exactly zero below the window
        assert_eq!(qs(0, &[3, 1]).residue().unwrap(), rat(0));
        // polynomial-coefficient residue
        let s = LaurentSeries::new(-1, vec![QPoly::from_coeffs(vec![rat(0), ratio(-1, 2)])]);
        assert_eq!(s.residue().unwrap(), QPoly::from_coeffs(vec![rat(0), ratio(-1, 2)]));
        // truncated before reaching -1
        assert!(matches!(
            qs(-4, &[1, 2]).residue(),
            Err(Error::ResidueOutsideWindow { .. })
        ));
    }

    #[test]
    fn residue_is_linear() {
        let a = qs(-2, &[1, 3, 5, 7]);
        let b = qs(-1, &[2, -4, 6]);
        let lhs = a.add(&b).residue().unwrap();
        assert_eq!(lhs, a.residue().unwrap() + b.residue().unwrap());
    }

    #[test]
    fn double_inversion_roundtrips() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let v = rng.gen_range(-2..=2);
            let coeffs: Vec<Rational> = (0..5)
                .map(|i| {
                    if i == 0 {
                        rat(*[1, -1, 2, 3].get(rng.gen_range(0..4)).unwrap())
                    } else {
                        ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
                    }
                })
                .collect();
            let s = LaurentSeries::new(v, coeffs);
            let back = s.invert().unwrap().invert().unwrap();
            for e in back.valuation()..=back.order() {
                assert_eq!(back.coeff(e), s.coeff(e));
            }
        }
    }

    #[test]
    fn exp_times_exp_neg_is_one() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let c = ratio(rng.gen_range(-12..=12), rng.gen_range(1..=9));
            let p = exp_series(&c, 4).mul(&exp_series(&(-c.clone()), 4));
            for e in 0..=4 {
                assert_eq!(p.coeff(e), rat(if e == 0 { 1 } else { 0 }));
            }
        }
    }
}
