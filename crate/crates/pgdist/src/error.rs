use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),

    #[error("field order {q} exceeds the cap {cap}")]
    CapExceeded { q: u64, cap: u64 },

    #[error("element index {idx} out of range for a field of order {q}")]
    IndexOutOfRange { idx: u64, q: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("operation requires an odd field order, got q = {0}")]
    EvenCharacteristic(u64),

    #[error("operation requires an even field order, got q = {0}")]
    OddCharacteristic(u64),

    #[error("plane order {q} exceeds the supported bound {cap}")]
    PlaneCapExceeded { q: u64, cap: u64 },

    #[error("point set has {got} points, expected {expected}")]
    SizeMismatch { expected: u64, got: u64 },

    #[error("point is not an internal nucleus of the set")]
    NotInternalNucleus,

    #[error("interpolation needs {expected} sample points, got {got}")]
    IncompleteData { expected: u64, got: u64 },

    #[error("polynomial degree {0} outside the supported range")]
    DegreeOutOfRange(u64),

    #[error("family {family} is not applicable over GF({q}): {reason}")]
    FamilyInapplicable {
        family: String,
        q: u64,
        reason: String,
    },

    #[error("the given arc is not a maximal arc of the point set")]
    NotMaximalArc,

    #[error("no configuration of kind `{0}` exists for this field order")]
    NoSuchConfiguration(String),

    #[error("search budget exceeded: needed {needed}, allowed {allowed}")]
    BudgetExceeded { needed: u128, allowed: u128 },
}
