use thiserror::Error;

/// Every failure the numerical routines can report.
///
/// Variants carry enough context to print a useful diagnostic; none of them
/// is recoverable by retrying with the same input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("divisor class has {found} coefficients, surface has Picard rank {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("intersection matrix is not symmetric")]
    AsymmetricMatrix,

    #[error("ampleness is not decidable on a custom surface")]
    UnsupportedSurface,

    #[error("operation requires {expected}")]
    WrongSurface { expected: &'static str },

    #[error("character has rank zero")]
    RankZero,

    #[error("rank {rank} is below the minimum {min}")]
    RankTooSmall { rank: i64, min: i64 },

    #[error("polarization has H.H = {0} <= 0")]
    NonPositiveH(String),

    #[error("curve has H.C = {0} <= 0")]
    NonPositiveHC(String),

    #[error("stability point needs t > 0, got t^2 = {0}")]
    NonPositiveT(String),

    #[error("twisted slope equals s; Bridgeland slope is undefined")]
    SlopeEqualsS,

    #[error("rank-zero class has H.ch1 = 0; Bridgeland slope is undefined")]
    ZeroImaginaryPart,

    #[error("expected a rank-zero class, got rank {0}")]
    NonZeroRank(i64),

    #[error("wall is {0}; nesting comparison needs two semicircles")]
    DegenerateWall(&'static str),

    #[error("curve degree must be >= 1, got {0}")]
    BadDegree(i64),

    #[error("polarization is not ample")]
    NotAmple,

    #[error("moduli space is not known to have Picard rank 2: Delta = {delta} <= delta(mu) = {dlp}")]
    NotPicardRankTwo { delta: String, dlp: String },

    #[error("{p}/2^{q} is not a reduced dyadic address")]
    BadDyadic { p: i64, q: u32 },

    #[error("depth {0} exceeds the enumeration bound {1}")]
    DepthTooLarge(u32, u32),

    #[error("no exceptional interval contains the value within depth {0}")]
    DepthExceeded(u32),

    #[error("quadratic has no real root (radicand {0} < 0)")]
    NoRealRoot(String),

    #[error("orthogonal invariants are singular: {0}")]
    SingularCase(&'static str),

    #[error("Delta = {delta} lies below the Drezet-Le Potier curve value {dlp}")]
    BelowDlpCurve { delta: String, dlp: String },

    #[error("discriminant {0} is negative")]
    NegativeDiscriminant(String),

    #[error("cohomology case (H^{e_index}(E), H^{twist_index}(E(-C))) is not determined by the exact sequence: h0(E|C) in [{h0_lo}, {h0_hi}]")]
    UndeterminedCase {
        e_index: u8,
        twist_index: u8,
        h0_lo: String,
        h0_hi: String,
    },

    #[error("hypothesis failed: {reason}")]
    HypothesisFailed {
        reason: String,
        /// Brill-Noether number computed anyway, when it could be.
        rho: Option<String>,
    },

    #[error("peeling did not terminate after {0} steps")]
    NonTermination(usize),

    #[error("invalid rational literal {0:?}")]
    BadRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
