use thiserror::Error;

/// Errors surfaced by the library.
///
/// Engine-internal consistency violations (Galois sums failing to
/// rationalize, window bookkeeping going wrong) are bugs and panic via
/// assertions instead of returning a variant here.
#[derive(Debug, Error)]
pub enum Error {
    #[error("interpolation needs at least one point")]
    EmptyInterpolation,

    #[error("interpolation abscissae must be pairwise distinct (x = {x} repeated)")]
    DuplicateAbscissa { x: String },

    #[error("division by the zero polynomial")]
    ZeroPolynomialDivision,

    #[error("polynomial division needs an invertible leading coefficient")]
    NonInvertibleLeading,

    #[error("inversion of zero in Q(zeta_{d})")]
    ZeroInverse { d: u64 },

    #[error("series inversion needs a unit leading coefficient")]
    NonUnitLeadingCoefficient,

    #[error("series has no nonzero retained coefficient")]
    ZeroSeries,

    #[error("series window [{lo}, {hi}] does not reach exponent -1; truncation order too small")]
    ResidueOutsideWindow { lo: i64, hi: i64 },

    #[error("simplex needs at least one leg")]
    EmptySimplex,

    #[error("leg lengths must be positive (leg {index} is 0)")]
    NonPositiveLeg { index: usize },

    #[error("inequality matrix must be nonempty with positive entries")]
    InvalidConstraintMatrix,

    #[error("constraint matrix rows must all have length {expected} (row {row} has {got})")]
    RaggedConstraintMatrix { row: usize, expected: usize, got: usize },

    #[error("leg product overflows the supported range")]
    ProductOverflow,

    #[error("iteration budget of {budget} exceeded; raise the budget for larger instances")]
    BudgetExceeded { budget: u64 },

    #[error("dedekind sums need coprime arguments: gcd({a}, {b}) != 1")]
    NotCoprime { a: i64, b: u64 },

    #[error("modulus must be at least 2 (got {b})")]
    ModulusTooSmall { b: u64 },

    #[error("coefficient index {k} out of range 1..={n}")]
    CoefficientOutOfRange { k: usize, n: usize },

    #[error("the closed form yields the codimension-2 coefficient t^{expected} here, not t^{m}")]
    ClosedFormIndexMismatch { m: usize, expected: usize },

    #[error("codimension-2 closed form needs dimension >= 3 (got n = {n})")]
    NeedsDimensionAtLeast3 { n: usize },

    #[error("codimension-2 closed form needs legs >= 2 (leg {index} is {value})")]
    LegTooSmall { index: usize, value: u64 },

    #[error("codimension-2 closed form needs pairwise coprime legs (gcd(a_{i}, a_{j}) = {g})")]
    LegsNotCoprime { i: usize, j: usize, g: u64 },

    #[error("identity violation in {context}: {lhs} != {rhs}")]
    IdentityViolation {
        context: &'static str,
        lhs: String,
        rhs: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
