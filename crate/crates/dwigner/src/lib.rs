//! Discrete Wigner functions for systems with an `N`-dimensional Hilbert space.
//!
//! For arbitrary `N` the Wigner function lives on a doubled grid of
//! `2N x 2N` phase-space points. This crate builds the phase-space point
//! operators on that grid, computes Wigner functions of pure and mixed
//! states, sums them along lines to recover measurement probabilities,
//! propagates them under unitary maps through the real orthogonal `Z`
//! matrix, and runs Grover's search as a trajectory of phase-space
//! snapshots.
//!
//! The modules mirror the layers of the construction:
//!
//! - [`linalg`]: dense complex vectors and matrices, state factories, the
//!   discrete Fourier transform.
//! - [`schwinger`]: the cyclic shift `U`, the phase operator `V`, and the
//!   symmetrized displacement `T(m, k)`.
//! - [`wigner`]: phase-space point operators, Wigner grids, density-matrix
//!   reconstruction, the subgrid symmetry.
//! - [`lines`]: phase-space lines, line-sum projectors, marginals.
//! - [`dynamics`]: the `Z` matrix of a unitary, classification of
//!   deterministic (classical) maps, covariance checks.
//! - [`grover`]: Grover's search and its phase-space trajectory.
//! - [`verify`]: the runnable property suite behind `dwigner verify`.
//!
//! Everything is plain dense double-precision arithmetic; dimensions are
//! capped at [`MAX_DIM`] so every operation stays tractable on a laptop.

pub mod dynamics;
pub mod grover;
pub mod linalg;
pub mod lines;
pub mod sampling;
pub mod schwinger;
pub mod verify;
pub mod wigner;

mod error;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Largest supported Hilbert-space dimension.
///
/// Keeps the grid at or below 128 x 128 and the `Z` matrix at or below
/// 4096 x 4096.
pub const MAX_DIM: usize = 64;

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if n > MAX_DIM {
        return Err(Error::DimensionTooLarge { dim: n, max: MAX_DIM });
    }
    Ok(())
}
