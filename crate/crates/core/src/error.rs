use num_complex::Complex64;
use thiserror::Error;

use crate::dynamics::Trajectory;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-invertible: series has no nonzero lowest term")]
    NonInvertible,

    #[error("sign substitution needs integer exponents (offending exponent {0})")]
    SignSubstitutionNeedsIntegerExponents(String),

    #[error("composition requires positive valuation")]
    CompositionRequiresPositiveValuation,

    #[error("order exceeds available precision (requested {requested}, available {available})")]
    InsufficientPrecision { requested: String, available: String },

    #[error("exponent {0} is not on the quarter lattice")]
    OffLattice(String),

    #[error("cube-root of zero")]
    CubeRootOfZero,

    #[error("radical collapses at this point: {0} = 0")]
    BranchCollapse(&'static str),

    #[error("u,v not compatible with (P,Q,R): {0}")]
    IncompatibleUv(String),

    #[error("Z undefined: Q = 0")]
    ZUndefined,

    #[error("singular root: 4z - q0 = 0")]
    SingularRoot,

    #[error("root index {0} out of range (expected 0, 1 or 2)")]
    RootIndex(usize),

    #[error("generalised Chazy parameter k = 6 is excluded")]
    ExcludedParameter,

    #[error("invalid hypergeometric parameter c = {0}: nonpositive integer")]
    InvalidHypergeometricC(String),

    #[error("outside convergence margin: |x| = {modulus} > {margin}")]
    OutsideConvergenceMargin { modulus: f64, margin: f64 },

    #[error("degenerate Schwarz state at x = {x}: {reason}")]
    DegenerateSchwarz { x: Complex64, reason: &'static str },

    #[error("non-finite state at x = {x}")]
    NonFinite { x: Complex64 },

    #[error("step-size underflow near x = {last_x}")]
    StepUnderflow {
        last_x: Complex64,
        partial: Box<Trajectory>,
    },

    #[error("state dimension mismatch: system expects {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },

    #[error("{0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
