//! Dense univariate polynomials over an abstract exact commutative ring.
//!
//! One representation serves every coefficient domain in the crate: big
//! integers (cyclotomic moduli), rationals (polynomials in the dilation
//! parameter), cyclotomic field elements, and polynomials over cyclotomic
//! elements (local residue expansions). Polynomials are stored in ascending
//! order with no trailing zero coefficient; the zero polynomial is the empty
//! coefficient list and its degree is `None`.

use std::fmt;

use num::{BigInt, Signed};

use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Exact commutative ring with unit detection, as used by the polynomial
/// and Laurent-series engines. `inv` returns `None` on non-units.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
}

/// Rings containing the rationals: support exact scaling by a rational.
pub trait QAlgebra: Ring {
    fn scale(&self, q: &Rational) -> Self;

    fn from_rational(q: &Rational) -> Self {
        Self::one().scale(q)
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        num::Zero::zero()
    }
    fn one() -> Self {
        num::One::one()
    }
    fn is_zero(&self) -> bool {
        num::Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if self.abs() == BigInt::from(1) {
            Some(self.clone())
        } else {
            None
        }
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        num::Zero::zero()
    }
    fn one() -> Self {
        num::One::one()
    }
    fn is_zero(&self) -> bool {
        num::Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if num::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl QAlgebra for Rational {
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
}

/// Dense polynomial over `R` in canonical form.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<R: Ring> {
    coeffs: Vec<R>,
}

/// Polynomial in the dilation parameter with rational coefficients.
pub type QPoly = Poly<Rational>;

impl<R: Ring> Poly<R> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Degree, with `None` as the sentinel for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Ascending coefficients (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&rhs.coeff(i)));
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn mul_scalar(&self, k: &R) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c.mul(k)).collect())
    }

    /// Horner evaluation at a ring element.
    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    /// Requires the divisor's leading coefficient to be a unit.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let d_lead = d.leading().ok_or(Error::ZeroPolynomialDivision)?;
        let d_lead_inv = d_lead.inv().ok_or(Error::NonInvertibleLeading)?;
        let d_deg = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![R::zero(); self.coeffs.len().saturating_sub(d_deg)];
        while rem.len() > d_deg {
            let top = rem.last().expect("nonempty").clone();
            let shift = rem.len() - 1 - d_deg;
            let factor = top.mul(&d_lead_inv);
            if !factor.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let idx = shift + i;
                    rem[idx] = rem[idx].sub(&factor.mul(dc));
                }
                quot[shift] = factor;
            }
            debug_assert!(rem.last().expect("nonempty").is_zero());
            rem.pop();
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        Poly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Poly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Poly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        if self.degree() == Some(0) {
            self.coeffs[0].inv().map(Poly::constant)
        } else {
            None
        }
    }
}

impl<R: QAlgebra> QAlgebra for Poly<R> {
    fn scale(&self, q: &Rational) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c.scale(q)).collect())
    }
}

/// Extended gcd over a coefficient field: returns `(g, u, v)` with
/// `u*a + v*b = g`. Intended for rational coefficients, where every nonzero
/// leading coefficient is invertible.
pub fn xgcd<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> Result<(Poly<R>, Poly<R>, Poly<R>)> {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut u0, mut u1) = (Poly::one(), Poly::zero());
    let (mut v0, mut v1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let u = u0.sub(&q.mul(&u1));
        let v = v0.sub(&q.mul(&v1));
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u);
        v0 = std::mem::replace(&mut v1, v);
    }
    Ok((r0, u0, v0))
}

impl QPoly {
    /// Evaluate at a rational point.
    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.eval(x)
    }

    /// Human-readable form in the dilation variable, highest power first,
    /// e.g. `5*t^3 + 8*t^2 + 4*t + 1`.
    pub fn display_t(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if num::Zero::is_zero(c) {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let unit_mag = num::One::is_one(&mag);
            if !unit_mag || i == 0 {
                out.push_str(&mag.to_string());
            }
            if i > 0 {
                if !unit_mag {
                    out.push('*');
                }
                out.push('t');
                if i > 1 {
                    out.push_str(&format!("^{i}"));
                }
            }
        }
        out
    }
}

/// Unique interpolating polynomial of degree `< points.len()` through the
/// given `(x, y)` pairs. Errors on an empty input or repeated abscissae.
pub fn lagrange_interpolate(points: &[(Rational, Rational)]) -> Result<QPoly> {
    if points.is_empty() {
        return Err(Error::EmptyInterpolation);
    }
    for (i, (xi, _)) in points.iter().enumerate() {
        for (xj, _) in points.iter().skip(i + 1) {
            if xi == xj {
                return Err(Error::DuplicateAbscissa { x: xi.to_string() });
            }
        }
    }
    let mut acc = QPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = QPoly::one();
        let mut denom = Rational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&QPoly::from_coeffs(vec![-xj.clone(), Rational::one()]));
            denom *= xi - xj;
        }
        acc = acc.add(&basis.mul_scalar(&(yi / denom)));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    fn qp(coeffs: &[i64]) -> QPoly {
        QPoly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn binomial_square() {
        let p = qp(&[1, 1]);
        assert_eq!(p.mul(&p), qp(&[1, 2, 1]));
    }

    #[test]
    fn eval_counts_points_of_small_simplex() {
        // 3t^2 + 3t + 1 at t = 1 is the lattice-point count 7 of the
        // (2,3) simplex; the oracle itself lives in the counting module.
        let p = qp(&[1, 3, 3]);
        assert_eq!(p.eval_rational(&rat(1)), rat(7));
    }

    #[test]
    fn difference_with_self_is_zero_with_degree_sentinel() {
        let p = qp(&[4, 0, 2]);
        let z = p.sub(&p);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn division_and_xgcd_roundtrip() {
        let a = qp(&[2, 0, 1]).mul(&qp(&[-3, 1])); // (x^2+2)(x-3)
        let (q, r) = a.div_rem(&qp(&[-3, 1])).unwrap();
        assert_eq!(q, qp(&[2, 0, 1]));
        assert!(r.is_zero());

        let (g, u, v) = xgcd(&qp(&[1, 1]), &qp(&[1, 0, 1])).unwrap();
        // gcd of coprime inputs is a nonzero constant; check the identity.
        assert_eq!(g.degree(), Some(0));
        let lhs = u.mul(&qp(&[1, 1])).add(&v.mul(&qp(&[1, 0, 1])));
        assert_eq!(lhs, g);
    }

    #[test]
    fn interpolation_examples() {
        let pts = [(rat(0), rat(1)), (rat(1), rat(7)), (rat(2), rat(19))];
        assert_eq!(lagrange_interpolate(&pts).unwrap(), qp(&[1, 3, 3]));

        assert_eq!(lagrange_interpolate(&[(rat(0), rat(5))]).unwrap(), qp(&[5]));

        let collinear = [(rat(0), rat(1)), (rat(1), rat(2)), (rat(2), rat(3))];
        assert_eq!(lagrange_interpolate(&collinear).unwrap(), qp(&[1, 1]));

        let dup = [(rat(1), rat(1)), (rat(1), rat(2))];
        assert!(matches!(
            lagrange_interpolate(&dup),
            Err(Error::DuplicateAbscissa { .. })
        ));
        assert!(matches!(lagrange_interpolate(&[]), Err(Error::EmptyInterpolation)));
    }

    #[test]
    fn interpolation_left_inverts_evaluation() {
        // sample a fixed degree-4 polynomial at 5 points and reconstruct it
        let p = QPoly::from_coeffs(vec![ratio(1, 3), rat(-2), rat(0), ratio(7, 2), rat(1)]);
        let pts: Vec<_> = (-2..=2)
            .map(|x| (rat(x), p.eval_rational(&rat(x))))
            .collect();
        assert_eq!(lagrange_interpolate(&pts).unwrap(), p);
    }

    #[test]
    fn display_t_formats() {
        assert_eq!(qp(&[1, 4, 5]).display_t(), "5*t^2 + 4*t + 1");
        assert_eq!(qp(&[1, -3, 3]).display_t(), "3*t^2 - 3*t + 1");
        assert_eq!(qp(&[0, -1]).display_t(), "-t");
        assert_eq!(QPoly::zero().display_t(), "0");
        assert_eq!(
            QPoly::from_coeffs(vec![rat(0), ratio(-5, 2)]).display_t(),
            "-5/2*t"
        );
    }
}
