//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Problem data violates a structural constraint (support window,
    /// `1 < N ≤ r < s`, continuity, ...).
    #[error("invalid sampling problem: {0}")]
    InvalidProblem(String),

    /// Harmonic decomposition is only defined for algebraic polynomials.
    #[error("harmonic split requires nonnegative exponents, found z^{exponent}")]
    NegativeExponent { exponent: i64 },

    /// Polynomial gcd of an all-zero family is undefined.
    #[error("gcd of all-zero polynomial family")]
    ZeroGcdInput,

    /// A sample row `g_j` vanished identically.
    #[error("degenerate problem: {0}")]
    DegenerateProblem(String),

    /// An algebraic polynomial exceeded the degree bound `N + r − 2 < 2r`.
    #[error("degree bound violated: degree {degree} exceeds {bound}")]
    DegreeBound { degree: i64, bound: i64 },

    /// A harmonic component had more than one term, so the monomial structure
    /// of the reduced matrix breaks down.
    #[error("harmonic entry at ({row}, {col}) is not a monomial")]
    NonMonomialHarmonic { row: usize, col: usize },

    /// A trailing column mixed constant and `z^r` terms, which contradicts the
    /// uniform-exponent structure of columns `N..=r`.
    #[error("trailing column {col} mixes z^0 and z^r terms")]
    MixedTrailingColumn { col: usize },

    /// The constant block has rank below `r − N + 1`; no polynomial left
    /// inverse exists and the reduction stops here.
    #[error("scalar part is rank deficient: rank {rank} < {expected}")]
    RankDeficientScalarPart { rank: usize, expected: usize },

    /// Matrix entry is not affine in `λ = z^r`.
    #[error("entry at ({row}, {col}) is not affine in λ")]
    NotAffine { row: usize, col: usize },

    /// A numerical rank decision was too close to call. Carries the singular
    /// values and the threshold so the caller can rerun with the exact oracle.
    #[error("ambiguous numerical rank decision at threshold {threshold:.3e}")]
    RankAmbiguous {
        singular_values: Vec<f64>,
        threshold: f64,
    },

    /// The staircase bookkeeping became self-contradictory (usually a symptom
    /// of rank decisions taken at the wrong tolerance).
    #[error("staircase reduction inconsistent: {0}")]
    StaircaseInconsistent(String),

    /// An operation that needs exact rational data was given a float pencil.
    #[error("{0} requires exact rational data")]
    ExactDataRequired(&'static str),

    /// The minor enumeration would exceed the guard size.
    #[error("minor oracle too large: {minors} minors exceed guard {guard}")]
    OracleTooLarge { minors: u128, guard: u128 },

    /// Preconditions of the block-system solver do not hold.
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    /// The block linear systems are inconsistent, hence the pencil has no
    /// polynomial left inverse.
    #[error("block linear systems inconsistent: no polynomial left inverse")]
    NoPolynomialInverse,

    /// No degree `ν ≤ nu_max` made the block systems consistent.
    #[error("no polynomial left inverse found up to degree {nu_max}")]
    DegreeCapExceeded { nu_max: usize },

    /// Back-mapped filter coefficients had a non-negligible imaginary part.
    #[error("filter coefficients not real: max |Im| = {max_imag:.3e}")]
    NonRealFilters { max_imag: f64 },

    /// Reconstruction was requested at points whose overlapping translates
    /// have no sample available.
    #[error("sample coverage gap at flat indices {missing:?}")]
    CoverageGap { missing: Vec<i64> },

    /// Matrix shape does not match the operation.
    #[error("wrong shape: {0}")]
    WrongShape(String),

    /// Problem descriptor failed schema validation.
    #[error("descriptor error: {0}")]
    Descriptor(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
