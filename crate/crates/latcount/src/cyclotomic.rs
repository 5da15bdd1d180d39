//! Exact arithmetic in cyclotomic fields Q(zeta_d).
//!
//! Elements are residue classes modulo the d-th cyclotomic polynomial,
//! with rational coordinates on the power basis 1, zeta, ..., zeta^(phi(d)-1).
//! Sums over all primitive d-th roots of unity are evaluated through
//! Ramanujan sums, so a whole Galois orbit collapses to a rational in one
//! pass instead of being walked root by root.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::BigInt;

use crate::algebra::numtheory::{divisors, ramanujan_sum, totient};
use crate::algebra::poly::{xgcd, Poly, QAlgebra, Ring};
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Largest field degree for which the Galois-orbit self-check runs.
/// Every field reachable from the bundled verification families is far
/// below this; the cap only spares deliberately huge CLI inputs.
const ORBIT_CHECK_MAX_DEGREE: usize = 128;

/// The d-th cyclotomic polynomial with integer coefficients, computed by
/// exact division: Phi_d = (x^d - 1) / prod of Phi_e over proper divisors e.
pub fn cyclotomic_polynomial(d: u64) -> Poly<BigInt> {
    assert!(d >= 1, "cyclotomic polynomial needs d >= 1");
    let mut memo: BTreeMap<u64, Poly<BigInt>> = BTreeMap::new();
    for e in divisors(d) {
        let mut denom: Poly<BigInt> = Poly::one();
        for f in divisors(e) {
            if f < e {
                denom = denom.mul(&memo[&f]);
            }
        }
        let mut num_coeffs = vec![BigInt::zero(); e as usize + 1];
        num_coeffs[0] = -BigInt::one();
        num_coeffs[e as usize] = BigInt::one();
        let numerator = Poly::from_coeffs(num_coeffs);
        let (q, r) = numerator
            .div_rem(&denom)
            .expect("division by a monic polynomial cannot fail");
        assert!(r.is_zero(), "x^{e} - 1 must be divisible by its cyclotomic factors");
        memo.insert(e, q);
    }
    memo.remove(&d).expect("d is a divisor of itself")
}

struct OrbitTable {
    /// Verified orbit sums of the basis monomials: entry i is the sum of
    /// zeta^(i*j) over j coprime to d, as a coordinate vector. Each equals
    /// (c_d(i), 0, ..., 0) once the reduction machinery is consistent.
    monomial_sums: Vec<Vec<Rational>>,
}

/// Q(zeta_d) presented as Q[x] / Phi_d(x).
pub struct CyclotomicField {
    d: u64,
    phi: usize,
    modulus_int: Poly<BigInt>,
    modulus: Poly<Rational>,
    /// x^(phi + i) mod Phi_d for i in 0..phi-1; one row per overflow degree.
    reduction_rows: Vec<Vec<Rational>>,
    orbit: OnceLock<Option<OrbitTable>>,
}

impl std::fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CyclotomicField(d = {}, degree = {})", self.d, self.phi)
    }
}

/// Shared handle to the field of d-th roots of unity. Fields are cached
/// process-wide and immutable, so handles are safe to spread across threads.
pub fn field(d: u64) -> Arc<CyclotomicField> {
    static CACHE: OnceLock<Mutex<BTreeMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut map = cache.lock().expect("field cache poisoned");
    map.entry(d).or_insert_with(|| Arc::new(CyclotomicField::build(d))).clone()
}

impl CyclotomicField {
    fn build(d: u64) -> Self {
        let modulus_int = cyclotomic_polynomial(d);
        let phi = modulus_int.degree().expect("cyclotomic polynomial is nonzero");
        assert_eq!(phi as u64, totient(d), "degree of Phi_d must be phi(d)");
        let modulus = modulus_int.map(|c| Rational::from(c.clone()));

        // x^phi = -(c_0 + c_1 x + ... + c_{phi-1} x^{phi-1}), then one more
        // row per overflow degree up to x^(2*phi - 1)
        let base: Vec<Rational> = (0..phi).map(|i| -modulus.coeff(i)).collect();
        let mut reduction_rows = vec![base.clone()];
        while reduction_rows.len() < phi {
            let next = Self::shift_reduce(reduction_rows.last().expect("nonempty"), &base);
            reduction_rows.push(next);
        }

        CyclotomicField {
            d,
            phi,
            modulus_int,
            modulus,
            reduction_rows,
            orbit: OnceLock::new(),
        }
    }

    /// Multiply a reduced coordinate vector by x and reduce again.
    fn shift_reduce(v: &[Rational], x_phi: &[Rational]) -> Vec<Rational> {
        let phi = v.len();
        let top = v[phi - 1].clone();
        let mut out = Vec::with_capacity(phi);
        out.push(&top * &x_phi[0]);
        for j in 1..phi {
            out.push(&v[j - 1] + &top * &x_phi[j]);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.d
    }

    /// Field degree phi(d).
    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn modulus(&self) -> &Poly<BigInt> {
        &self.modulus_int
    }

    /// Reduce ascending coordinates of any length modulo Phi_d.
    fn reduce(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.phi];
        let mut tail: Vec<(usize, Rational)> = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i < self.phi {
                out[i] += c;
            } else {
                tail.push((i, c.clone()));
            }
        }
        for (i, c) in tail {
            let over = i - self.phi;
            if over < self.reduction_rows.len() {
                for (j, r) in self.reduction_rows[over].iter().enumerate() {
                    out[j] += &c * r;
                }
            } else {
                // beyond the precomputed rows: fold one degree at a time
                let base = &self.reduction_rows[0];
                let mut row = self.reduction_rows.last().expect("rows nonempty").clone();
                let mut deg = self.phi + self.reduction_rows.len() - 1;
                while deg < i {
                    row = Self::shift_reduce(&row, base);
                    deg += 1;
                }
                for (j, r) in row.iter().enumerate() {
                    out[j] += &c * r;
                }
            }
        }
        out
    }

    /// Coordinates of x^e mod Phi_d (e already reduced mod d by callers).
    fn monomial_coords(&self, e: u64) -> Vec<Rational> {
        if (e as usize) < self.phi {
            let mut v = vec![Rational::zero(); self.phi];
            v[e as usize] = Rational::one();
            return v;
        }
        let base = &self.reduction_rows[0];
        let mut row = base.clone();
        let mut deg = self.phi as u64;
        while deg < e {
            row = Self::shift_reduce(&row, base);
            deg += 1;
        }
        row
    }

    /// Element from power-basis coordinates of any length (reduced here).
    pub fn element(self: &Arc<Self>, coeffs: Vec<Rational>) -> Cyclotomic {
        Cyclotomic::Ext {
            field: Arc::clone(self),
            coeffs: self.reduce(&coeffs),
        }
    }

    /// The canonical primitive d-th root of unity.
    pub fn zeta(self: &Arc<Self>) -> Cyclotomic {
        self.zeta_pow(1)
    }

    /// zeta_d^e for any integer exponent, reduced mod d then mod Phi_d.
    pub fn zeta_pow(self: &Arc<Self>, e: i64) -> Cyclotomic {
        let e = e.rem_euclid(self.d as i64) as u64;
        Cyclotomic::Ext {
            field: Arc::clone(self),
            coeffs: self.monomial_coords(e),
        }
    }

    /// Coordinates of an element in this field (rationals are promoted).
    pub fn coordinates(&self, a: &Cyclotomic) -> Vec<Rational> {
        match a {
            Cyclotomic::Rational(r) => {
                let mut v = vec![Rational::zero(); self.phi];
                v[0] = r.clone();
                v
            }
            Cyclotomic::Ext { field, coeffs } => {
                assert_eq!(field.d, self.d, "element from a different cyclotomic field");
                coeffs.clone()
            }
        }
    }

    /// Sum of the evaluations of `a`'s representative at every primitive
    /// d-th root of unity, computed exactly via Ramanujan sums.
    ///
    /// This rationalizes a full Galois orbit: the orbit sum of any element
    /// is rational, and for the basis monomial zeta^i it equals c_d(i).
    pub fn primitive_trace(&self, a: &Cyclotomic) -> Rational {
        let coords = self.coordinates(a);
        let mut acc = Rational::zero();
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                acc += c * Rational::from(BigInt::from(ramanujan_sum(self.d, i as i64)));
            }
        }
        acc
    }

    fn orbit_table(&self) -> Option<&OrbitTable> {
        self.orbit
            .get_or_init(|| {
                if self.phi > ORBIT_CHECK_MAX_DEGREE {
                    return None;
                }
                // full power table zeta^0..zeta^(d-1), built by shifting
                let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(self.d as usize);
                let mut v = vec![Rational::zero(); self.phi];
                v[0] = Rational::one();
                powers.push(v);
                let base = self.reduction_rows[0].clone();
                for _ in 1..self.d {
                    let prev = powers.last().expect("nonempty");
                    powers.push(Self::shift_reduce(prev, &base));
                }
                let coprime: Vec<u64> =
                    (0..self.d).filter(|&j| num::integer::gcd(j, self.d) == 1).collect();
                let mut monomial_sums = Vec::with_capacity(self.phi);
                for i in 0..self.phi as u64 {
                    let mut sum = vec![Rational::zero(); self.phi];
                    for &j in &coprime {
                        let p = &powers[((i * j) % self.d) as usize];
                        for (slot, c) in sum.iter_mut().zip(p.iter()) {
                            *slot += c;
                        }
                    }
                    // the literal root-by-root sum must already be rational
                    let expect = Rational::from(BigInt::from(ramanujan_sum(self.d, i as i64)));
                    assert_eq!(
                        sum[0], expect,
                        "orbit sum of zeta_{}^{} disagrees with its Ramanujan sum",
                        self.d, i
                    );
                    assert!(
                        sum[1..].iter().all(|c| c.is_zero()),
                        "orbit sum of zeta_{}^{} has a non-constant component",
                        self.d, i
                    );
                    monomial_sums.push(sum);
                }
                Some(OrbitTable { monomial_sums })
            })
            .as_ref()
    }

    /// Engine self-check: recompute the Galois-orbit sum of `a` from the
    /// verified monomial orbit table and assert it is the claimed rational
    /// with no residual cyclotomic component. Skipped for degrees above
    /// `ORBIT_CHECK_MAX_DEGREE`.
    pub(crate) fn assert_orbit_sum_rational(&self, a: &Cyclotomic, claimed: &Rational) {
        let Some(table) = self.orbit_table() else {
            return;
        };
        let coords = self.coordinates(a);
        let mut orbit = vec![Rational::zero(); self.phi];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, s) in orbit.iter_mut().zip(table.monomial_sums[i].iter()) {
                *slot += c * s;
            }
        }
        assert!(
            orbit[1..].iter().all(|c| c.is_zero()),
            "Galois orbit sum over Q(zeta_{}) retains a non-constant cyclotomic component",
            self.d
        );
        assert_eq!(
            &orbit[0], claimed,
            "Galois orbit sum over Q(zeta_{}) disagrees with its Ramanujan-sum trace",
            self.d
        );
    }
}

/// Element of a cyclotomic field. Plain rationals embed in every field, so
/// they carry no field handle until they meet a proper field element.
#[derive(Clone, Debug)]
pub enum Cyclotomic {
    Rational(Rational),
    Ext {
        field: Arc<CyclotomicField>,
        coeffs: Vec<Rational>,
    },
}

impl Cyclotomic {
    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic::Rational(r)
    }

    pub fn from_int(n: i64) -> Self {
        Cyclotomic::Rational(crate::algebra::rat(n))
    }

    /// The rational value of this element, if it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Cyclotomic::Rational(r) => Some(r.clone()),
            Cyclotomic::Ext { coeffs, .. } => {
                if coeffs[1..].iter().all(|c| c.is_zero()) {
                    Some(coeffs[0].clone())
                } else {
                    None
                }
            }
        }
    }

    fn field_of<'a>(a: &'a Cyclotomic, b: &'a Cyclotomic) -> Option<&'a Arc<CyclotomicField>> {
        match (a, b) {
            (Cyclotomic::Ext { field, .. }, Cyclotomic::Ext { field: other, .. }) => {
                assert_eq!(field.d, other.d, "mixed cyclotomic fields");
                Some(field)
            }
            (Cyclotomic::Ext { field, .. }, _) => Some(field),
            (_, Cyclotomic::Ext { field, .. }) => Some(field),
            _ => None,
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Cyclotomic::Rational(a), Cyclotomic::Rational(b)) => a == b,
            _ => {
                let field = Cyclotomic::field_of(self, other).expect("one side is Ext");
                field.coordinates(self) == field.coordinates(other)
            }
        }
    }
}

impl Ring for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::Rational(Rational::zero())
    }

    fn one() -> Self {
        Cyclotomic::Rational(Rational::one())
    }

    fn is_zero(&self) -> bool {
        match self {
            Cyclotomic::Rational(r) => r.is_zero(),
            Cyclotomic::Ext { coeffs, .. } => coeffs.iter().all(|c| c.is_zero()),
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Cyclotomic::Rational(a), Cyclotomic::Rational(b)) => Cyclotomic::Rational(a + b),
            _ => {
                let field = Cyclotomic::field_of(self, rhs).expect("one side is Ext").clone();
                let mut coeffs = field.coordinates(self);
                for (slot, c) in coeffs.iter_mut().zip(field.coordinates(rhs)) {
                    *slot += c;
                }
                Cyclotomic::Ext { field, coeffs }
            }
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Cyclotomic::Rational(a), Cyclotomic::Rational(b)) => Cyclotomic::Rational(a * b),
            (Cyclotomic::Rational(r), Cyclotomic::Ext { field, coeffs })
            | (Cyclotomic::Ext { field, coeffs }, Cyclotomic::Rational(r)) => Cyclotomic::Ext {
                field: field.clone(),
                coeffs: coeffs.iter().map(|c| c * r).collect(),
            },
            (
                Cyclotomic::Ext { field, coeffs: a },
                Cyclotomic::Ext { field: fb, coeffs: b },
            ) => {
                assert_eq!(field.d, fb.d, "mixed cyclotomic fields");
                let mut conv = vec![Rational::zero(); a.len() + b.len() - 1];
                for (i, ai) in a.iter().enumerate() {
                    if ai.is_zero() {
                        continue;
                    }
                    for (j, bj) in b.iter().enumerate() {
                        if !bj.is_zero() {
                            conv[i + j] += ai * bj;
                        }
                    }
                }
                Cyclotomic::Ext {
                    field: field.clone(),
                    coeffs: field.reduce(&conv),
                }
            }
        }
    }

    fn neg(&self) -> Self {
        match self {
            Cyclotomic::Rational(r) => Cyclotomic::Rational(-r),
            Cyclotomic::Ext { field, coeffs } => Cyclotomic::Ext {
                field: field.clone(),
                coeffs: coeffs.iter().map(|c| -c).collect(),
            },
        }
    }

    fn inv(&self) -> Option<Self> {
        match self {
            Cyclotomic::Rational(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Cyclotomic::Rational(r.recip()))
                }
            }
            Cyclotomic::Ext { field, coeffs } => {
                if self.is_zero() {
                    return None;
                }
                let rep: Poly<Rational> = Poly::from_coeffs(coeffs.clone());
                let (g, u, _) = xgcd(&rep, &field.modulus).expect("rational xgcd cannot fail");
                debug_assert_eq!(g.degree(), Some(0), "Phi_d is irreducible over Q");
                let scale = g.coeff(0).recip();
                let inv_rep = u.mul_scalar(&scale);
                Some(Cyclotomic::Ext {
                    field: field.clone(),
                    coeffs: field.reduce(inv_rep.coeffs()),
                })
            }
        }
    }
}

impl QAlgebra for Cyclotomic {
    fn scale(&self, q: &Rational) -> Self {
        self.mul(&Cyclotomic::Rational(q.clone()))
    }
}

/// Field inversion with the error surface of the public API.
pub fn invert(a: &Cyclotomic) -> Result<Cyclotomic> {
    a.inv().ok_or_else(|| Error::ZeroInverse {
        d: match a {
            Cyclotomic::Rational(_) => 1,
            Cyclotomic::Ext { field, .. } => field.order(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use rand::{Rng, SeedableRng};

    fn int_poly(coeffs: &[i64]) -> Poly<BigInt> {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), int_poly(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), int_poly(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), int_poly(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), int_poly(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), int_poly(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), int_poly(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_product_reconstructs_x_pow_d_minus_one() {
        for d in 1..=20u64 {
            let mut prod: Poly<BigInt> = Poly::one();
            for e in divisors(d) {
                prod = prod.mul(&cyclotomic_polynomial(e));
            }
            let mut expect = vec![BigInt::zero(); d as usize + 1];
            expect[0] = -BigInt::one();
            expect[d as usize] = BigInt::one();
            assert_eq!(prod, Poly::from_coeffs(expect), "d = {d}");
        }
    }

    #[test]
    fn zeta_powers_reduce() {
        let f4 = field(4);
        // zeta_4^2 = -1
        assert_eq!(f4.zeta().mul(&f4.zeta()), Cyclotomic::from_int(-1));
        // zeta^0 = 1 under exponent reduction
        assert_eq!(field(7).zeta_pow(14), Cyclotomic::from_int(1));
        // zeta_3^2 = -1 - zeta
        let f3 = field(3);
        assert_eq!(f3.zeta_pow(2), f3.element(vec![rat(-1), rat(-1)]));
        // odd power of -1
        assert_eq!(field(2).zeta_pow(7), Cyclotomic::from_int(-1));
        // zeta_5 * zeta_5^4 = 1
        let f5 = field(5);
        assert_eq!(f5.zeta().mul(&f5.zeta_pow(4)), Cyclotomic::from_int(1));
    }

    #[test]
    fn inverse_of_one_minus_zeta3() {
        let f3 = field(3);
        let a = Cyclotomic::from_int(1).sub(&f3.zeta());
        let inv = invert(&a).unwrap();
        // (1 - zeta)^(-1) = (2 + zeta)/3
        assert_eq!(inv, f3.element(vec![ratio(2, 3), ratio(1, 3)]));
        assert_eq!(a.mul(&inv), Cyclotomic::from_int(1));
        assert!(matches!(
            invert(&Cyclotomic::zero()),
            Err(Error::ZeroInverse { .. })
        ));
    }

    #[test]
    fn random_inverses_multiply_to_one() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for d in 2..=12u64 {
            let f = field(d);
            let mut done = 0;
            while done < 200 {
                let coeffs: Vec<Rational> = (0..f.degree())
                    .map(|_| ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3)))
                    .collect();
                let a = f.element(coeffs);
                if a.is_zero() {
                    continue;
                }
                assert_eq!(a.mul(&a.inv().unwrap()), Cyclotomic::from_int(1), "d = {d}");
                done += 1;
            }
        }
    }

    #[test]
    fn trace_examples() {
        // single root for d = 1: the trace of a constant is itself
        let f1 = field(1);
        assert_eq!(f1.primitive_trace(&Cyclotomic::from_rational(ratio(5, 3))), ratio(5, 3));
        // zeta_3 + zeta_3^2 = -1
        let f3 = field(3);
        assert_eq!(f3.primitive_trace(&f3.zeta()), rat(-1));
        // i + (-i) = 0
        let f4 = field(4);
        assert_eq!(f4.primitive_trace(&f4.zeta()), rat(0));
        // trace(1) = phi(d)
        for d in 1..=16 {
            let f = field(d);
            assert_eq!(f.primitive_trace(&Cyclotomic::one()), rat(totient(d) as i64));
        }
    }

    #[test]
    fn trace_is_linear_and_matches_monomial_sums() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for d in 2..=20u64 {
            let f = field(d);
            // trace of basis monomials equals the Ramanujan sum
            for i in 0..d {
                let z = f.zeta_pow(i as i64);
                assert_eq!(f.primitive_trace(&z), rat(ramanujan_sum(d, i as i64)));
                // the literal per-root sum is checked inside:
                f.assert_orbit_sum_rational(&z, &f.primitive_trace(&z));
            }
            // linearity over random combinations
            for _ in 0..10 {
                let a = f.element((0..f.degree()).map(|_| rat(rng.gen_range(-4..=4))).collect());
                let b = f.element((0..f.degree()).map(|_| rat(rng.gen_range(-4..=4))).collect());
                let alpha = ratio(rng.gen_range(-3..=3), 1);
                let beta = ratio(rng.gen_range(-3..=3), 1);
                let comb = a.scale(&alpha).add(&b.scale(&beta));
                assert_eq!(
                    f.primitive_trace(&comb),
                    &alpha * f.primitive_trace(&a) + &beta * f.primitive_trace(&b)
                );
            }
        }
    }
}
