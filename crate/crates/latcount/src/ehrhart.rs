//! The residue engine.
//!
//! The lattice-point count of the dilated closed simplex is read off the
//! generating function
//!
//! ```text
//! (z^(-tA) - 1) / ((1 - z^(A_1)) ... (1 - z^(A_n)) (1 - z) z)
//! ```
//!
//! whose residues at z = 1 and at roots of unity determine the count
//! polynomial: `closed(t) = 1 - Res(z=1) - sum of root residues`. Each
//! residue is extracted from an exact truncated Laurent expansion under
//! `z = lambda * e^w`; root residues are computed once per multiplicative
//! order d in Q(zeta_d) and summed over the Galois orbit via Ramanujan
//! sums. Raising the numerator to the k-th power isolates coefficients:
//! the same machinery then yields every Ehrhart coefficient, the
//! codimension-2 closed form through Dedekind sums, and the multivariate
//! constant-term count for H-polytopes.

use std::collections::BTreeMap;

use num::BigInt;

use crate::algebra::numtheory::{binomial, divisors, factorial, gcd_u64};
use crate::algebra::poly::{Poly, QPoly};
use crate::algebra::{rat, rat_u128, Rational};
use crate::counting::{count_closed_simplex, HPolytopeSpec, SimplexSpec};
use crate::cyclotomic::{field, Cyclotomic};
use crate::error::{Error, Result};
use crate::series::{exp_minus_one, exp_series, LaurentSeries};

/// Which sign of the dilation parameter appears in the numerator
/// `z^(sign * t * A) - 1`: `Negative` drives the closed count, `Positive`
/// the interior count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DilationSign {
    Negative,
    Positive,
}

impl DilationSign {
    fn factor(self) -> i64 {
        match self {
            DilationSign::Negative => -1,
            DilationSign::Positive => 1,
        }
    }
}

/// Exact closed and interior count polynomials of a simplex.
///
/// Both are computed by residues (the interior polynomial by its own
/// positive-sign pass, not by reflecting the closed one), and construction
/// verifies degree n, constant term 1, leading coefficient A/n!, and the
/// reflection law between them.
#[derive(Clone, Debug, PartialEq)]
pub struct EhrhartPolynomial {
    pub simplex: SimplexSpec,
    pub closed: QPoly,
    pub open: QPoly,
}

/// Residues of the closed-count integrand, split by location.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueBreakdown {
    pub at_one: QPoly,
    /// Rationalized Galois-orbit residue sum per multiplicative order d.
    pub at_roots: BTreeMap<u64, QPoly>,
    pub total_roots: QPoly,
}

/// Rationalized root-residue sums for one numerator power.
#[derive(Clone, Debug, PartialEq)]
pub struct RootResidueSum {
    pub per_order: BTreeMap<u64, QPoly>,
    pub total: QPoly,
}

fn leg_product_u64(s: &SimplexSpec) -> u64 {
    u64::try_from(s.leg_product()).expect("leg product exceeds the supported residue-engine range")
}

/// Orders d > 1 at which the integrand with numerator power k has a pole,
/// with the pole order. A primitive d-th root is a pole of order
/// `v(d) - k` where `v(d)` counts the cofactors A_j divisible by d; only
/// orders with `v(d) - k >= 1` appear.
pub fn pole_orders(s: &SimplexSpec, k: usize) -> BTreeMap<u64, usize> {
    assert!(k <= s.dim(), "numerator power k must satisfy 0 <= k <= n");
    let mut out = BTreeMap::new();
    for d in divisors(leg_product_u64(s)) {
        if d == 1 {
            continue;
        }
        let v = s
            .cofactors()
            .iter()
            .filter(|&&aj| aj % d as u128 == 0)
            .count();
        if v > k {
            out.insert(d, v - k);
        }
    }
    out
}

/// Numerator window `(e^(sign * A * t * w) - 1)^k` over polynomials in t.
fn numerator_series(s: &SimplexSpec, k: usize, sign: DilationSign, order: i64) -> LaurentSeries<QPoly> {
    let c = QPoly::from_coeffs(vec![
        Rational::from(BigInt::from(0)),
        rat(sign.factor()) * rat_u128(s.leg_product()),
    ]);
    exp_minus_one(&c, order)
        .expect("numerator exponent is nonzero")
        .pow(k as u32)
}

/// Residue at z = 1 of the power-k integrand, as a polynomial in t.
///
/// All n+1 denominator factors vanish at z = 1 and the numerator vanishes
/// to order k, so the pole order is n+1-k; every factor is expanded two
/// coefficients past that before inverting.
pub fn residue_at_one(s: &SimplexSpec, k: usize, sign: DilationSign) -> QPoly {
    let n = s.dim();
    assert!(1 <= k && k <= n, "numerator power k must satisfy 1 <= k <= n");
    let pole = n + 1 - k;
    let order = (pole + 2) as i64;

    let mut denom_inv: Option<LaurentSeries<Rational>> = None;
    for weight in s.cofactors().iter().copied().chain([1u128]) {
        // 1 - e^(weight * w), vanishing at w = 0
        let factor = exp_minus_one(&rat_u128(weight), order)
            .expect("weights are positive")
            .neg();
        let inv = factor.invert().expect("leading coefficient -weight is a unit");
        denom_inv = Some(match denom_inv {
            None => inv,
            Some(acc) => acc.mul(&inv),
        });
    }
    let denom_inv = denom_inv
        .expect("at least one leg")
        .map_ring(|c| QPoly::constant(c.clone()));

    numerator_series(s, k, sign, order)
        .mul(&denom_inv)
        .residue()
        .expect("window was sized from the pole order")
}

/// Residue at the canonical primitive d-th root of unity of the power-k
/// integrand: a polynomial in t with coefficients in Q(zeta_d). The
/// residues at the conjugate roots are the Galois conjugates of this one.
pub fn root_residue_at_canonical(
    s: &SimplexSpec,
    k: usize,
    sign: DilationSign,
    d: u64,
) -> Poly<Cyclotomic> {
    let n = s.dim();
    assert!(1 <= k && k <= n, "numerator power k must satisfy 1 <= k <= n");
    assert!(d > 1 && leg_product_u64(s).is_multiple_of(d), "d must be a nontrivial divisor of the leg product");
    let f = field(d);
    let vanishing = s
        .cofactors()
        .iter()
        .filter(|&&aj| aj % d as u128 == 0)
        .count();
    assert!(vanishing > k, "no pole of positive order at d = {d}");
    let pole = vanishing - k;
    let order = (pole + 2) as i64;

    let mut denom_inv: Option<LaurentSeries<Cyclotomic>> = None;
    for weight in s.cofactors().iter().copied().chain([1u128]) {
        let e = (weight % d as u128) as i64;
        // 1 - lambda^weight * e^(weight * w) about z = lambda = zeta_d
        let factor = if e == 0 {
            exp_minus_one(&Cyclotomic::from_rational(rat_u128(weight)), order)
                .expect("weights are positive")
                .neg()
        } else {
            let root_power = f.zeta_pow(e);
            LaurentSeries::one(order).sub(
                &exp_series(&Cyclotomic::from_rational(rat_u128(weight)), order)
                    .mul_scalar(&root_power),
            )
        };
        let inv = factor
            .invert()
            .expect("leading coefficient is a unit of Q(zeta_d)");
        denom_inv = Some(match denom_inv {
            None => inv,
            Some(acc) => acc.mul(&inv),
        });
    }
    let denom_inv = denom_inv
        .expect("at least one leg")
        .map_ring(|c| Poly::constant(c.clone()));

    let numerator = numerator_series(s, k, sign, order)
        .map_ring(|q| q.map(|r| Cyclotomic::from_rational(r.clone())));

    numerator
        .mul(&denom_inv)
        .residue()
        .expect("window was sized from the pole order")
}

/// Galois-orbit residue sums at every pole order d, rationalized
/// coefficientwise through `primitive_trace` and self-checked against the
/// literal orbit sum.
pub fn residues_at_roots(s: &SimplexSpec, k: usize, sign: DilationSign) -> RootResidueSum {
    let mut per_order = BTreeMap::new();
    let mut total = QPoly::zero();
    for &d in pole_orders(s, k).keys() {
        let f = field(d);
        let symbolic = root_residue_at_canonical(s, k, sign, d);
        let mut coeffs = Vec::with_capacity(symbolic.coeffs().len());
        for c in symbolic.coeffs() {
            let trace = f.primitive_trace(c);
            f.assert_orbit_sum_rational(c, &trace);
            coeffs.push(trace);
        }
        let rationalized = QPoly::from_coeffs(coeffs);
        total = total.add(&rationalized);
        per_order.insert(d, rationalized);
    }
    RootResidueSum { per_order, total }
}

/// `(-1)^n * p(-t)`: the reflection that relates closed and interior
/// count polynomials.
pub fn reflect(p: &QPoly, n: usize) -> QPoly {
    QPoly::from_coeffs(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| if (n + i) % 2 == 1 { -c } else { c.clone() })
            .collect(),
    )
}

/// Leading coefficient mandated by volume: A / n!.
pub fn volume_coefficient(s: &SimplexSpec) -> Rational {
    rat_u128(s.leg_product()) / Rational::from(factorial(s.dim() as u64))
}

impl EhrhartPolynomial {
    fn validated(simplex: SimplexSpec, closed: QPoly, open: QPoly) -> Result<Self> {
        let n = simplex.dim();
        if closed.degree() != Some(n) {
            return Err(Error::IdentityViolation {
                context: "count polynomial degree",
                lhs: format!("{:?}", closed.degree()),
                rhs: n.to_string(),
            });
        }
        if closed.coeff(0) != rat(1) {
            return Err(Error::IdentityViolation {
                context: "constant coefficient of the closed polynomial",
                lhs: closed.coeff(0).to_string(),
                rhs: "1".to_string(),
            });
        }
        let volume = volume_coefficient(&simplex);
        if closed.coeff(n) != volume {
            return Err(Error::IdentityViolation {
                context: "leading coefficient vs normalized volume",
                lhs: closed.coeff(n).to_string(),
                rhs: volume.to_string(),
            });
        }
        if open != reflect(&closed, n) {
            return Err(Error::IdentityViolation {
                context: "reflection law between closed and interior polynomials",
                lhs: open.display_t(),
                rhs: reflect(&closed, n).display_t(),
            });
        }
        Ok(EhrhartPolynomial { simplex, closed, open })
    }

    /// Count of the closed dilated simplex at integer dilation t.
    pub fn closed_at(&self, t: i64) -> Rational {
        self.closed.eval_rational(&rat(t))
    }

    /// Count of the open dilated simplex at integer dilation t >= 1.
    /// At t = 0 the polynomial value is (-1)^n while the geometric count
    /// is 0; agreement with counts is only claimed for t >= 1.
    pub fn open_at(&self, t: i64) -> Rational {
        self.open.eval_rational(&rat(t))
    }
}

/// Closed count polynomial via the residue route, with the residue
/// breakdown that produced it: `closed = 1 - at_one - total_roots`.
/// The returned polynomial pair has all structural invariants verified.
pub fn ehrhart_closed_residue(s: &SimplexSpec) -> Result<(EhrhartPolynomial, ResidueBreakdown)> {
    let at_one = residue_at_one(s, 1, DilationSign::Negative);
    let roots = residues_at_roots(s, 1, DilationSign::Negative);
    let closed = QPoly::one().sub(&at_one).sub(&roots.total);
    let open = ehrhart_open_residue(s);
    let polynomial = EhrhartPolynomial::validated(s.clone(), closed, open)?;
    Ok((
        polynomial,
        ResidueBreakdown {
            at_one,
            at_roots: roots.per_order,
            total_roots: roots.total,
        },
    ))
}

/// Interior count polynomial computed by its own residue pass (the
/// positive-sign numerator), not by reflecting the closed polynomial.
pub fn ehrhart_open_residue(s: &SimplexSpec) -> QPoly {
    let at_one = residue_at_one(s, 1, DilationSign::Positive);
    let roots = residues_at_roots(s, 1, DilationSign::Positive);
    let inner = QPoly::one().sub(&at_one).sub(&roots.total);
    if s.dim() % 2 == 1 {
        inner.neg()
    } else {
        inner
    }
}

/// Residue at the origin of the power-k integrand, evaluated two ways:
/// from oracle counts via the binomial expansion of the numerator, and
/// from the computed coefficients as
/// `k! * sum_{m=k..n} S(m,k) c_m t^m`. Returns the count-route value and
/// errors if the two disagree.
pub fn residue_at_zero_checked(s: &SimplexSpec, k: usize, t: u32) -> Result<Rational> {
    let n = s.dim();
    if !(1..=n).contains(&k) {
        return Err(Error::CoefficientOutOfRange { k, n });
    }

    // count route: sum_{j=0..k-1} C(k,j) (-1)^j (L((k-j) t) - 1)
    let mut via_counts = Rational::from(BigInt::from(0));
    for j in 0..k {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let dilation = (k - j) as u32 * t;
        let count = count_closed_simplex(s, dilation)?;
        via_counts += Rational::from(binomial(k as u64, j as u64))
            * rat(sign)
            * (rat_u128(count as u128) - rat(1));
    }

    // coefficient route through the Stirling expansion
    let (polynomial, _) = ehrhart_closed_residue(s)?;
    let mut via_coeffs = Rational::from(BigInt::from(0));
    let t_q = rat(t as i64);
    for m in k..=n {
        let s_mk = Rational::from(crate::algebra::stirling::stirling2(m as u32, k as u32));
        let mut term = s_mk * polynomial.closed.coeff(m);
        let mut power = Rational::from(BigInt::from(1));
        for _ in 0..m {
            power *= &t_q;
        }
        term *= power;
        via_coeffs += term;
    }
    via_coeffs *= Rational::from(factorial(k as u64));

    if via_counts != via_coeffs {
        return Err(Error::IdentityViolation {
            context: "origin residue of the power-k integrand",
            lhs: via_counts.to_string(),
            rhs: via_coeffs.to_string(),
        });
    }
    Ok(via_counts)
}

/// The t^m coefficient of `(-1/m!) * (Res(z=1) + root residues)` for the
/// power-m integrand, which is the coefficient-extraction route for c_m.
pub fn coefficient_from_residues(s: &SimplexSpec, m: usize) -> Result<Rational> {
    let n = s.dim();
    if !(1..=n).contains(&m) {
        return Err(Error::CoefficientOutOfRange { k: m, n });
    }
    let at_one = residue_at_one(s, m, DilationSign::Negative);
    let roots = residues_at_roots(s, m, DilationSign::Negative);
    let scale = -Rational::from(factorial(m as u64)).recip();
    Ok(at_one.add(&roots.total).mul_scalar(&scale).coeff(m))
}

/// Closed form for the codimension-2 coefficient when the legs are
/// pairwise coprime and at least 2, in dimension n >= 3:
///
/// ```text
/// c_{n-2} = (C_n - s(A_1, a_1) - ... - s(A_n, a_n)) / (n-2)!
/// C_n = (n + sum_{j<k} A_{j,k}) / 4 + (1/A + sum_k A_k / a_k) / 12
/// ```
///
/// where `s` is the Dedekind sum and `A_{j,k}` the product of all legs
/// except legs j and k.
pub fn codim2_closed_form(s: &SimplexSpec) -> Result<Rational> {
    let n = s.dim();
    if n < 3 {
        return Err(Error::NeedsDimensionAtLeast3 { n });
    }
    for (index, &a) in s.legs().iter().enumerate() {
        if a < 2 {
            return Err(Error::LegTooSmall { index, value: a });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let g = gcd_u64(s.legs()[i], s.legs()[j]);
            if g != 1 {
                return Err(Error::LegsNotCoprime { i, j, g });
            }
        }
    }

    let mut pair_sum = Rational::from(BigInt::from(0));
    for j in 0..n {
        for k in (j + 1)..n {
            pair_sum += rat_u128(s.pair_cofactor(j, k));
        }
    }
    let mut slope_sum = rat_u128(s.leg_product()).recip();
    for k in 0..n {
        slope_sum += rat_u128(s.cofactor(k)) / rat_u128(s.legs()[k] as u128);
    }
    let c_n = (rat(n as i64) + pair_sum) / rat(4) + slope_sum / rat(12);

    let mut dedekind_total = Rational::from(BigInt::from(0));
    for k in 0..n {
        let b = s.legs()[k];
        let a = (s.cofactor(k) % b as u128) as i64;
        dedekind_total += crate::dedekind::dedekind_fast(a, b)?;
    }

    Ok((c_n - dedekind_total) / Rational::from(factorial(n as u64 - 2)))
}

/// Count of an H-polytope read off the multivariate generating function:
/// enumerate the exponent tuples of the truncated product of geometric
/// series (one per coordinate, plus one slack series per constraint) and
/// count the monomials whose exponents land exactly on `t * P_j` in every
/// constraint variable. The slack exponents are forced, so a coordinate
/// tuple m contributes precisely when it satisfies all constraints.
pub fn hpolytope_count_series(h: &HPolytopeSpec, t: u32) -> Result<u64> {
    hpolytope_count_series_with_budget(h, t, crate::counting::DEFAULT_ITERATION_BUDGET)
}

pub fn hpolytope_count_series_with_budget(h: &HPolytopeSpec, t: u32, budget: u64) -> Result<u64> {
    fn rec(
        h: &HPolytopeSpec,
        t: u32,
        k: usize,
        exponents: &mut Vec<u128>,
        budget: &mut crate::counting::Budget,
    ) -> Result<u64> {
        if k == h.dim() {
            // every truncated exponent is within range, so each constraint's
            // slack series supplies the unique power reaching t * P_j
            return Ok(1);
        }
        let mut total = 0u64;
        let mut multiple = 0u128;
        loop {
            budget.spend()?;
            let overflow = (0..h.num_rows()).any(|j| {
                exponents[j] + multiple * h.row_cofactors(j)[k] > t as u128 * h.row_product(j)
            });
            if overflow {
                return Ok(total); // truncation: the monomial degree is exhausted
            }
            for (j, e) in exponents.iter_mut().enumerate() {
                *e += multiple * h.row_cofactors(j)[k];
            }
            total += rec(h, t, k + 1, exponents, budget)?;
            for (j, e) in exponents.iter_mut().enumerate() {
                *e -= multiple * h.row_cofactors(j)[k];
            }
            multiple += 1;
        }
    }
    let mut exponents = vec![0u128; h.num_rows()];
    let mut budget = crate::counting::Budget::new(budget);
    rec(h, t, 0, &mut exponents, &mut budget)
}
