//! Exact lattice-point counting via residue calculus.
//!
//! The crate computes the count polynomials (closed and interior) of
//! axis-aligned lattice simplices by extracting residues of the associated
//! rational generating function: at z = 1 through an exact exponential
//! substitution, and at roots of unity through cyclotomic-field arithmetic
//! whose Galois-orbit sums rationalize via Ramanujan sums. On top of the
//! residue engine sit coefficient extraction through Stirling-weighted
//! numerator powers, the codimension-2 closed form in terms of Dedekind
//! sums, and a multivariate constant-term counter for H-polytopes.
//!
//! Everything is exact: the scalar domain is arbitrary-precision rational,
//! and no identity is checked with a tolerance. Brute-force enumeration
//! oracles live alongside the engine, and [`verify`] bundles the identity
//! suites that play the two against each other.

pub mod algebra;
pub mod counting;
pub mod cyclotomic;
pub mod dedekind;
pub mod ehrhart;
pub mod error;
pub mod series;
pub mod verify;

pub use algebra::poly::{lagrange_interpolate, Poly, QAlgebra, QPoly, Ring};
pub use algebra::{rat, rat_u128, ratio, Rational};
pub use counting::{
    count_closed_simplex, count_denumerant, count_hpolytope, count_open_simplex, HPolytopeSpec,
    SimplexSpec,
};
pub use cyclotomic::{cyclotomic_polynomial, field, Cyclotomic, CyclotomicField};
pub use dedekind::{dedekind_direct, dedekind_fast, dedekind_root_identity};
pub use ehrhart::{
    codim2_closed_form, coefficient_from_residues, ehrhart_closed_residue, ehrhart_open_residue,
    hpolytope_count_series, pole_orders, reflect, residue_at_one, residue_at_zero_checked,
    residues_at_roots, root_residue_at_canonical, DilationSign, EhrhartPolynomial,
    ResidueBreakdown,
};
pub use error::{Error, Result};
pub use series::{exp_series, LaurentSeries};
