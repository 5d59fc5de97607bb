use thiserror::Error;

/// Errors produced by construction and consistency checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("dimension {dim} exceeds the configured maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("superposition indices must differ (both are {0})")]
    EqualIndices(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix must be square ({rows} x {cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("state vector norm deviates from 1 by {0:.3e}")]
    NotUnitNorm(f64),

    #[error("cannot normalize a zero vector")]
    ZeroNorm,

    #[error("matrix deviates from hermiticity by {0:.3e}")]
    NotHermitian(f64),

    #[error("trace deviates from 1 by {0:.3e}")]
    NotUnitTrace(f64),

    #[error("matrix deviates from unitarity by {0:.3e}")]
    NotUnitary(f64),

    #[error("imaginary residue {0:.3e} exceeds 1e-8; the point-operator construction is broken")]
    ImaginaryResidue(f64),

    #[error("subgrid symmetry violated at (q={q}, p={p}) by {err:.3e}")]
    SubgridViolation { q: usize, p: usize, err: f64 },

    #[error("line requires (n1, n2) != (0, 0) mod 2N")]
    DegenerateLine,

    #[error("line operator deviates from idempotence by {0:.3e}")]
    NotIdempotent(f64),

    #[error("line rank {rank} does not equal even-even point count {count} / {n}")]
    RankRuleViolation { rank: f64, count: usize, n: usize },

    #[error("marginal check failed: {0}")]
    BadMarginal(String),

    #[error("Z matrix deviates from orthogonality by {0:.3e}")]
    NotOrthogonal(f64),
}
