//! Seeded random states, density matrices, and unitaries.
//!
//! Everything random in the crate funnels through these helpers so that
//! property runs are reproducible from a single seed. Unitaries are drawn
//! by Gram-Schmidt orthonormalization of a complex Gaussian matrix.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, DensityMatrix, StateVector, C64};
use crate::{check_dim, Result};

fn gaussian_complex<R: Rng>(rng: &mut R) -> C64 {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-ish random pure state: normalized complex Gaussian amplitudes.
pub fn random_state<R: Rng>(n: usize, rng: &mut R) -> Result<StateVector> {
    check_dim(n)?;
    let amplitudes = (0..n).map(|_| gaussian_complex(rng)).collect();
    StateVector::from_unnormalized(amplitudes)
}

/// Random full-rank mixed state `G G^dagger / Tr(G G^dagger)`.
pub fn random_density<R: Rng>(n: usize, rng: &mut R) -> Result<DensityMatrix> {
    check_dim(n)?;
    let g = ComplexMatrix::from_fn(n, n, |_, _| gaussian_complex(rng));
    let gg = g.multiply(&g.adjoint())?;
    let trace = gg.trace();
    let rho = gg.scale(C64::new(1.0 / trace.re, 0.0));
    // symmetrize away the last bits of roundoff so the constructor's
    // 1e-12 hermiticity gate never trips on sampling noise
    let sym = ComplexMatrix::from_fn(n, n, |r, c| 0.5 * (rho[(r, c)] + rho[(c, r)].conj()));
    DensityMatrix::from_matrix(sym)
}

/// Random unitary: complex Gaussian matrix, columns orthonormalized by
/// modified Gram-Schmidt.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> Result<ComplexMatrix> {
    check_dim(n)?;
    let mut cols: Vec<Vec<C64>> = (0..n)
        .map(|_| (0..n).map(|_| gaussian_complex(rng)).collect())
        .collect();
    for j in 0..n {
        for i in 0..j {
            let proj: C64 = cols[i].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
            for r in 0..n {
                let correction = proj * cols[i][r];
                cols[j][r] -= correction;
            }
        }
        let norm = cols[j].iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in cols[j].iter_mut() {
            *a /= norm;
        }
    }
    Ok(ComplexMatrix::from_fn(n, n, |r, c| cols[c][r]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_state_is_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [2, 5, 32] {
            let s = random_state(n, &mut rng).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn random_density_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rho = random_density(5, &mut rng).unwrap();
        assert!(rho.matrix().hermiticity_error() < 1e-12);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=6 {
            let u = random_unitary(n, &mut rng).unwrap();
            assert!(u.unitarity_error() < 1e-12, "N={n}");
        }
    }

    #[test]
    fn same_seed_same_draw() {
        let mut a = ChaCha8Rng::seed_from_u64(42);
        let mut b = ChaCha8Rng::seed_from_u64(42);
        let ua = random_unitary(4, &mut a).unwrap();
        let ub = random_unitary(4, &mut b).unwrap();
        assert_eq!(ua, ub);
    }
}
