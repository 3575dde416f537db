use thiserror::Error;

/// Everything that can go wrong when assembling states and operators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("truncation n_max = {n_max} too small, need at least {required}")]
    TruncationTooSmall { n_max: usize, required: usize },

    #[error("operands live on different truncations: n_max {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("mass constant must be a positive integer, got {0}")]
    InvalidMass(i64),

    #[error("trajectory is off shell: A^2 + B^2 = {sum}, expected 2M = {expected}")]
    OffShell { sum: f64, expected: f64 },

    #[error("trajectory carries mass {traj} but the sector has mass {sector}")]
    SectorMismatch { traj: u32, sector: u32 },

    #[error("label (0, 0) does not define a physical state")]
    ZeroLabel,

    #[error("cannot normalize a state of zero norm")]
    ZeroNorm,

    #[error("discarded coherent tail mass {tail:.3e} exceeds 1e-12; raise the truncation")]
    TruncationTail { tail: f64 },

    #[error("{steps} averaging steps alias the constraint spectrum, need at least {required}")]
    StepsTooSmall { steps: usize, required: usize },

    #[error("quadrature order {order} below the exactness threshold {required}")]
    OrderTooSmall { order: usize, required: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
