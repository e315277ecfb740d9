//! Crate-wide error type.

pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by state, protocol, analysis and remote operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A register would exceed the configured qubit capacity.
    #[error("capacity exceeded: {requested} qubits requested, maximum is {max}")]
    Capacity { requested: usize, max: usize },

    /// A qubit index does not address a qubit of the target state.
    #[error("qubit index {index} out of range for a {num_qubits}-qubit state")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    /// The same qubit was named twice in a gate or measurement.
    #[error("duplicate qubit index {index}")]
    DuplicateQubit { index: usize },

    /// Two states (or a gate and a state) have incompatible qubit counts.
    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    /// A matrix failed the unitarity check.
    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    /// An amplitude vector is not normalized or not a power-of-two length.
    #[error("invalid state vector: {reason}")]
    InvalidState { reason: String },

    /// Gate parameters make the success-probability formula undefined.
    #[error("infeasible gate parameters: non-positive denominator at alpha = {alpha}")]
    InfeasibleParams { alpha: f64 },

    /// A quadrature grid is too coarse for the requested register size.
    #[error("quadrature grid too coarse: {points} points, need at least {required}")]
    GridTooCoarse { points: usize, required: usize },

    /// A measurement draw landed on a branch of numerically zero weight.
    #[error("internal consistency error: drawn branch has weight {prob:.3e}")]
    VanishingBranch { prob: f64 },
}
