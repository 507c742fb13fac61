use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("invalid field parameters: {0}")]
    BadField(String),
    #[error("modulus is not irreducible over F_{p}")]
    ReducibleModulus { p: u32 },
    #[error("inversion of zero")]
    InversionOfZero,
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("element {value} is out of range for a field of order {q}")]
    ElementOutOfRange { value: u64, q: u32 },
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("vector of length {found} where length {expected} was expected")]
    LengthMismatch { expected: usize, found: usize },
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("enumeration of {size} vectors exceeds the cap {cap}")]
    EnumerationTooLarge { size: u128, cap: u64 },
    #[error("generator matrix has rank zero")]
    ZeroRank,
    #[error("generator polynomial does not divide x^n - a")]
    NotADivisor,
    #[error("constacyclic shift must be nonzero")]
    ZeroShift,
    #[error("subspace code needs at least {needed} members, found {found}")]
    TooFewMembers { needed: usize, found: usize },
    #[error("duplicate member at indices {0} and {1}")]
    DuplicateMember(usize, usize),
    #[error("stacked criterion needs dim C_{c} + dim D_{d} = n")]
    StackedNotSquare { c: usize, d: usize },
    #[error("families have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("family is not constant dimension as required")]
    NotConstantDimension,
    #[error("pair of families is not an LCP")]
    NotLcp,
    #[error("input pair {0} is not an LCP")]
    NotLcpInput(usize),
    #[error("dim C_{c} + dim D_{d} differs from the ambient dimension")]
    DimensionsNotComplementary { c: usize, d: usize },
    #[error("theorem requires odd characteristic")]
    EvenCharacteristic,
    #[error("lambda does not satisfy {0}")]
    LambdaCondition(&'static str),
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("M_{0} - M_{1} is singular")]
    DifferenceSingular(usize, usize),
    #[error("expected {expected} matrices, found {found}")]
    WrongCount { expected: u128, found: usize },
    #[error("split index {s} outside 2..={max}")]
    SplitOutOfRange { s: usize, max: usize },
    #[error("insertion must be one-dimensional, got dimension {0}")]
    BadErrorDimension(usize),
    #[error("received space contains no codeword")]
    NoCodewordContained,
    #[error("received space contains codewords {0} and {1}")]
    MultipleCodewords(usize, usize),
    #[error("invalid channel instance: {0}")]
    BadInstance(String),
    #[error("complement function: {0}")]
    BadComplementFunction(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
