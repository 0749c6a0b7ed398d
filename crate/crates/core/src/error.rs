use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring of {requested} elements exceeds the size cap of {cap}")]
    CapExceeded { requested: u128, cap: usize },

    #[error("unsupported field GF({p}^{k}): {reason}")]
    UnsupportedField { p: u64, k: u32, reason: String },

    #[error("ring axiom `{axiom}` fails at {witness:?}")]
    AxiomViolation {
        axiom: &'static str,
        witness: Vec<usize>,
    },

    #[error("invalid ring tables: {0}")]
    InvalidTables(String),

    #[error("{0} must be commutative")]
    NotCommutative(String),

    #[error("{0} must be a field")]
    NotAField(String),

    #[error("ring map is not a ring homomorphism: {0}")]
    NotRingHom(String),

    #[error("table has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("element index {index} out of range for ring of size {size}")]
    ElementOutOfRange { index: usize, size: usize },

    #[error("search budget exhausted during {stage} after {nodes} nodes")]
    BudgetExhausted { stage: &'static str, nodes: u64 },

    #[error("commutative-subring lattice is incomplete")]
    IncompleteLattice,

    #[error("assignments for subrings {first} and {second} disagree at element {element}")]
    Incompatible {
        first: usize,
        second: usize,
        element: usize,
    },

    #[error("set assigned to subring {subring} is not an ideal of it")]
    NotAnIdeal { subring: usize },

    #[error("not a partial ideal: {0}")]
    NotPartialIdeal(String),

    #[error("not a partial morphism: {0}")]
    NotPartialMorphism(String),

    #[error("preimage is missing from the computed spectrum of {0}")]
    MissingPreimage(String),

    #[error("lattice cache miss for fingerprint {0}")]
    CacheMiss(String),

    #[error("lattice cache fingerprint mismatch: expected {expected}, found {found}")]
    FingerprintMismatch { expected: String, found: String },

    #[error("corrupt lattice cache {path}: {reason}")]
    CorruptCache { path: PathBuf, reason: String },

    #[error("ray has zero coordinates only")]
    ZeroRay,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("ray system bases are incomplete: {0}")]
    IncompleteBases(String),

    #[error("inapplicable: {0}")]
    Inapplicable(String),

    #[error("premise not verified: {0}")]
    UnverifiedPremise(String),

    #[error("invalid ring definition: {0}")]
    Definition(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Budget exhaustion is the only error that signals an incomplete search
    /// rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExhausted { .. })
    }
}
