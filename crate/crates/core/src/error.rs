use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // lattice construction and arithmetic
    #[error("Gram matrix is not square")]
    NotSquare,
    #[error("Gram matrix is not symmetric at ({0}, {1})")]
    NonSymmetric(usize, usize),
    #[error("Gram matrix is degenerate (determinant 0)")]
    Degenerate,
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("vector has length {found}, lattice has rank {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero vector has no primitivity")]
    ZeroVector,
    #[error("vector is not primitive (coordinate gcd {0})")]
    NotPrimitive(String),
    #[error("vector is isotropic (v.v = 0)")]
    IsotropicVector,
    #[error("no characteristic element exists (inconsistent system mod 2)")]
    NoCharacteristicElement,
    #[error("unknown block `{0}`")]
    UnknownBlock(String),
    #[error("cannot parse decomposition `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("Gram entry {0} does not fit in a machine integer")]
    EntryTooLarge(String),

    // finite forms
    #[error("lattice is odd; the discriminant quadratic form needs an even lattice")]
    OddLattice,
    #[error("discriminant group of order {0} exceeds the enumeration bound")]
    GroupTooLarge(String),
    #[error("Gauss sum is not a unit multiple of sqrt|A|; the form table is inconsistent")]
    NonUnitGaussSum,
    #[error("invalid finite form: {0}")]
    InvalidForm(String),

    // classifier
    #[error("signature ({0}, {1}) is definite; expected an indefinite form")]
    DefiniteInput(usize, usize),
    #[error("even unimodular form with index {0} not divisible by 8")]
    EvenSignatureNotDivisibleBy8(i64),
    #[error("sign of h.h = {hsq} is incompatible with signature ({pos}, {neg})")]
    SignMismatch { hsq: i64, pos: usize, neg: usize },
    #[error("primitive vectors of an even unimodular lattice are never characteristic")]
    CharacteristicInEven,
    #[error("discriminant group is not cyclic (invariant factors {0})")]
    NonCyclicDiscGroup(String),
    #[error("no primitive ambient vector of norm {norm} found within coordinate bound {bound}")]
    NoAmbientVectorFound { norm: i64, bound: i64 },
    #[error("no lattice has these invariants: {0}")]
    NoSuchGenus(String),
    #[error("c1^2 = {0} is outside the tabulated range 1..=8")]
    OutOfRange(i64),

    // surfaces
    #[error("b1 = {0} is negative")]
    NegativeB1(i64),
    #[error("b1 = {0} is odd; b1 of a Kahler surface is even")]
    OddB1(i64),
    #[error("c1^2 + c2 = {0} is not divisible by 12 (Noether formula)")]
    NoetherNonIntegral(i64),
    #[error("c1^2 - 2 c2 = {0} is not divisible by 3 (index theorem)")]
    IndexNonIntegral(i64),
    #[error("derived p_g = {0} is negative")]
    NegativePg(i64),
    #[error("derived b2 = {0} is not positive")]
    NonPositiveB2(i64),
    #[error("derived h11 = {0} is not positive")]
    NonPositiveH11(i64),
    #[error("an even intersection lattice needs index divisible by 8, got {0}")]
    EvenParityIndexNot8Divisible(i64),
    #[error("H^2 is positive definite (b2 = {0}); the primitive lattice is zero or not defined")]
    PositiveDefiniteTotal(i64),
    #[error("h.h = {0} must be positive for an ample class")]
    NonPositiveHsq(i64),
    #[error("odd primitive lattice with b2 = 4 and non-characteristic h: the uniqueness theorem needs b2 != 4")]
    OddComplementRankGuard,
    #[error("complement rank {rank} is too small for the class-number criterion ({parity})")]
    ComplementRankGuard { rank: usize, parity: &'static str },
    #[error(
        "invariants (q, p_g, c1^2, c2) = (0, 1, 18, 6) describe a ball quotient whose existence is not known; refusing to classify"
    )]
    ExoticBallQuotient,
    #[error("canonical polarization requires h.h = c1^2 = {c1sq} with h characteristic, got h.h = {hsq}")]
    InconsistentPolarization { c1sq: i64, hsq: i64 },
    #[error("unknown surface class `{0}`")]
    UnknownClass(String),

    // oracle
    #[error("lattice is indefinite")]
    IndefiniteInput,
    #[error("rank {rank} exceeds the supported maximum {max}")]
    RankTooLarge { rank: usize, max: usize },
    #[error("search budget of {0} nodes exceeded")]
    SearchBudgetExceeded(u64),
    #[error("search box exhausted without a decision (indefinite bounded search)")]
    SearchInconclusive,
    #[error("no primitive vector of norm {norm} (characteristic = {characteristic}) within coordinate bound {bound}")]
    NotFoundWithinBound {
        norm: i64,
        characteristic: bool,
        bound: i64,
    },
}
