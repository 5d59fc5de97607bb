//! Finite displacement operators.
//!
//! No hermitian position or momentum generator exists at finite `N`; the
//! unitaries below take their place. `U` shifts the position basis
//! cyclically, `V` is diagonal with the `N`-th roots of unity, and the
//! symmetrized displacement is
//!
//! ```text
//! T(m, k) = U^m V^k exp(i pi m k / N)
//! ```
//!
//! `T` is periodic in `(m, k)` modulo `2N`, not `N`: the half-integer
//! phase has period `2N` in each argument, which is what forces the
//! doubled phase-space grid.

use crate::linalg::{half_turn_phase, ComplexMatrix, C64};
use crate::{check_dim, Result};

/// Kronecker delta modulo `modulus`: 1 iff `x` is divisible.
///
/// The modulus is explicit because state formulas use mod-`N` deltas while
/// grid indexing is mod-`2N`.
pub fn delta_mod(x: i64, modulus: i64) -> u8 {
    debug_assert!(modulus >= 1);
    u8::from(x.rem_euclid(modulus) == 0)
}

/// Displacement label `(m, k)` stored as canonical representatives in
/// `[0, 2N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DisplacementIndex {
    pub m: usize,
    pub k: usize,
}

impl DisplacementIndex {
    pub fn new(n: usize, m: i64, k: i64) -> Self {
        let two_n = 2 * n as i64;
        Self { m: m.rem_euclid(two_n) as usize, k: k.rem_euclid(two_n) as usize }
    }
}

/// Cyclic shift power: `U^m |n> = |n + m mod N>`.
pub fn u_power(n: usize, m: i64) -> Result<ComplexMatrix> {
    check_dim(n)?;
    let shift = m.rem_euclid(n as i64) as usize;
    let mut out = ComplexMatrix::zeros(n, n);
    for col in 0..n {
        out[((col + shift) % n, col)] = C64::ONE;
    }
    Ok(out)
}

/// Phase power: `V^k = diag(exp(i 2 pi k n / N))`.
pub fn v_power(n: usize, k: i64) -> Result<ComplexMatrix> {
    check_dim(n)?;
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        out[(i, i)] = half_turn_phase(2 * k * i as i64, n);
    }
    Ok(out)
}

/// Symmetrized displacement `T(m, k) = U^m V^k exp(i pi m k / N)`.
///
/// Arguments are reduced modulo `2N`; the result is unitary for every
/// `(m, k)`.
pub fn t_displacement(n: usize, m: i64, k: i64) -> Result<ComplexMatrix> {
    check_dim(n)?;
    let idx = DisplacementIndex::new(n, m, k);
    Ok(t_canonical(n, idx.m, idx.k))
}

/// `T` for canonical `(m, k)` in `[0, 2N)`, built entrywise:
/// `T[a][b] = exp(i pi m k / N) exp(i 2 pi k b / N)` when `a = b + m mod N`.
pub(crate) fn t_canonical(n: usize, m: usize, k: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(n, n);
    let global = half_turn_phase((m * k) as i64, n);
    for b in 0..n {
        let a = (b + m) % n;
        out[(a, b)] = global * half_turn_phase(2 * (k * b) as i64, n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dft_matrix;

    #[test]
    fn delta_mod_examples() {
        assert_eq!(delta_mod(0, 5), 1);
        assert_eq!(delta_mod(32, 32), 1);
        assert_eq!(delta_mod(33, 32), 0);
        assert_eq!(delta_mod(-4, 2), 1);
        assert_eq!(delta_mod(-3, 2), 0);
    }

    #[test]
    fn u_is_pauli_x_at_n2() {
        let u = u_power(2, 1).unwrap();
        assert_eq!(u[(0, 1)], C64::ONE);
        assert_eq!(u[(1, 0)], C64::ONE);
        assert_eq!(u[(0, 0)], C64::ZERO);
    }

    #[test]
    fn v_is_pauli_z_at_n2() {
        let v = v_power(2, 1).unwrap();
        assert!((v[(0, 0)] - C64::ONE).norm() < 1e-15);
        assert!((v[(1, 1)] + C64::ONE).norm() < 1e-15);
    }

    #[test]
    fn zero_powers_are_identity() {
        for n in 1..=6 {
            let id = ComplexMatrix::identity(n);
            assert_eq!(u_power(n, 0).unwrap(), id);
            assert!(v_power(n, 0).unwrap().max_abs_diff(&id) < 1e-15);
        }
    }

    #[test]
    fn periodicity_mod_n() {
        // U^(N+m) = U^m, checked against the direct product
        let u1 = u_power(3, 1).unwrap();
        let u4 = u_power(3, 4).unwrap();
        assert!(u1.max_abs_diff(&u4) < 1e-15);

        for n in 2..=8 {
            let un = u_power(n, n as i64).unwrap();
            let vn = v_power(n, n as i64).unwrap();
            let id = ComplexMatrix::identity(n);
            assert!(un.max_abs_diff(&id) < 1e-13);
            assert!(vn.max_abs_diff(&id) < 1e-13);
        }
    }

    #[test]
    fn commutation_relation() {
        // U V = V U exp(-2 i pi / N)
        for n in 1..=32 {
            let u = u_power(n, 1).unwrap();
            let v = v_power(n, 1).unwrap();
            let uv = u.multiply(&v).unwrap();
            let vu = v.multiply(&u).unwrap().scale(half_turn_phase(-2, n));
            assert!(uv.max_abs_diff(&vu) < 1e-12, "N={n}");
        }
    }

    #[test]
    fn t_zero_is_identity() {
        for n in 1..=6 {
            let t = t_displacement(n, 0, 0).unwrap();
            assert!(t.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-15);
        }
    }

    #[test]
    fn t_explicit_product_at_n2() {
        // T(1,1) = X diag(1,-1) exp(i pi / 2) = [[0,-i],[i,0]]
        let t = t_displacement(2, 1, 1).unwrap();
        assert!((t[(0, 1)] - C64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((t[(1, 0)] - C64::new(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(t[(0, 0)], C64::ZERO);
        assert_eq!(t[(1, 1)], C64::ZERO);
    }

    #[test]
    fn t_matches_operator_product() {
        for n in 2..=5 {
            for m in 0..2 * n {
                for k in 0..2 * n {
                    let direct = u_power(n, m as i64)
                        .unwrap()
                        .multiply(&v_power(n, k as i64).unwrap())
                        .unwrap()
                        .scale(half_turn_phase((m * k) as i64, n));
                    let t = t_displacement(n, m as i64, k as i64).unwrap();
                    assert!(direct.max_abs_diff(&t) < 1e-13, "N={n} m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn t_unitary_everywhere() {
        for n in 1..=8 {
            for m in 0..2 * n {
                for k in 0..2 * n {
                    let t = t_displacement(n, m as i64, k as i64).unwrap();
                    assert!(t.unitarity_error() < 1e-12, "N={n} m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn t_adjoint_is_inverse_displacement_phase() {
        // T(m,k)^dagger T(m,k) = I and T(m,k)^dagger matches T(-m,-k) up to
        // the phase forced by the definition.
        let n = 4;
        for m in 0..2 * n {
            for k in 0..2 * n {
                let t = t_displacement(n, m as i64, k as i64).unwrap();
                let inv = t_displacement(n, -(m as i64), -(k as i64)).unwrap();
                let prod = t.multiply(&inv).unwrap();
                // product is the identity up to a unit phase
                let phase = prod[(0, 0)];
                assert!((phase.norm() - 1.0).abs() < 1e-12);
                assert!(prod.max_abs_diff(&ComplexMatrix::identity(n).scale(phase)) < 1e-12);
            }
        }
    }

    #[test]
    fn u_diagonal_in_momentum_basis() {
        // F^dagger U F = diag(exp(-i 2 pi k / N))
        for n in 2..=8 {
            let f = dft_matrix(n).unwrap();
            let u = u_power(n, 1).unwrap();
            let d = f.adjoint().multiply(&u).unwrap().multiply(&f).unwrap();
            for r in 0..n {
                for c in 0..n {
                    let expect = if r == c {
                        half_turn_phase(-2 * r as i64, n)
                    } else {
                        C64::ZERO
                    };
                    assert!((d[(r, c)] - expect).norm() < 1e-12, "N={n} ({r},{c})");
                }
            }
        }
    }

    #[test]
    fn displacement_index_canonicalizes() {
        let idx = DisplacementIndex::new(4, -1, 9);
        assert_eq!(idx, DisplacementIndex { m: 7, k: 1 });
    }

    #[test]
    fn v_shifts_momentum_states() {
        // V^m |k> = |k + m mod N> up to no phase at all
        use crate::linalg::StateVector;
        for n in 2..=6 {
            let v = v_power(n, 1).unwrap();
            for k in 0..n {
                let shifted = StateVector::momentum(n, k).unwrap().evolved(&v).unwrap();
                let expect = StateVector::momentum(n, (k + 1) % n).unwrap();
                for (a, b) in shifted.amplitudes().iter().zip(expect.amplitudes()) {
                    assert!((a - b).norm() < 1e-13, "N={n} k={k}");
                }
            }
        }
    }
}
