//! Unitary evolution as maps on the Wigner grid.
//!
//! Conjugating the state by a unitary `U` acts linearly on Wigner values.
//! Restricted to the first `N x N` subgrid the action is the real
//! orthogonal matrix
//!
//! ```text
//! Z[alpha][beta] = 4N Tr(A_alpha U A_beta U^dagger)
//! ```
//!
//! with `W'(alpha) = sum_beta Z[alpha][beta] W(beta)`. The `4N` scale is
//! fixed by `Z(I) = I`; it follows from the subgrid orthogonality
//! `Tr(A_alpha A_beta) = delta / 4N`, which the tests pin down.
//!
//! A unitary has a classical analog exactly when `Z` is a signed
//! permutation: translations `T(m, k)` shift the grid by `(2m, 2k)`,
//! rescaled point operators `2N A(alpha0)` reflect through `alpha0`, and
//! the Fourier transform rotates the grid a quarter turn, sending the
//! point `(q, p)` to `(-p, q)` so that `W'(q, p) = W(p, -q)`. Generic
//! unitaries spread single points over many, and the map is nonlocal.

use crate::linalg::{ComplexMatrix, C64};
use crate::schwinger::t_displacement;
use crate::wigner::{
    fold_to_fundamental, phase_point_operator, reconstruct_density, wigner_of_density,
    OperatorBasis, PhasePoint, WignerGrid,
};
use crate::{check_dim, Error, Result};

/// Scale making `Z(I) = I`; see the module docs.
fn z_scale(n: usize) -> f64 {
    4.0 * n as f64
}

/// Real orthogonal `N^2 x N^2` matrix propagating first-subgrid Wigner
/// values. Row and column indices run over subgrid points in row-major
/// order, `alpha = q * N + p`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl ZMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rows (= columns) `N^2`.
    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn entry(&self, alpha: usize, beta: usize) -> f64 {
        self.entries[alpha * self.dim() + beta]
    }

    pub fn point_of(&self, index: usize) -> PhasePoint {
        PhasePoint { q: index / self.n, p: index % self.n }
    }

    pub fn index_of(&self, pt: PhasePoint) -> usize {
        pt.q * self.n + pt.p
    }

    /// Max deviation of `Z Z^T` from the identity.
    pub fn orthogonality_error(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for r in 0..d {
            for c in 0..d {
                let dot: f64 = (0..d).map(|k| self.entry(r, k) * self.entry(c, k)).sum();
                let expect = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((dot - expect).abs());
            }
        }
        worst
    }

    /// Applies the subgrid action to folded Wigner values (`N^2` reals,
    /// row-major in `q`).
    pub fn apply(&self, folded: &[f64]) -> Result<Vec<f64>> {
        let d = self.dim();
        if folded.len() != d {
            return Err(Error::DimensionMismatch { left: folded.len(), right: d });
        }
        Ok((0..d)
            .map(|alpha| (0..d).map(|beta| self.entry(alpha, beta) * folded[beta]).sum())
            .collect())
    }

    pub fn multiply(&self, other: &ZMatrix) -> Result<ZMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        let d = self.dim();
        let mut entries = vec![0.0; d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.entry(r, k);
                if a == 0.0 {
                    continue;
                }
                for c in 0..d {
                    entries[r * d + c] += a * other.entry(k, c);
                }
            }
        }
        Ok(ZMatrix { n: self.n, entries })
    }

    pub fn max_abs_diff(&self, other: &ZMatrix) -> f64 {
        debug_assert_eq!(self.n, other.n);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn identity(n: usize) -> Result<ZMatrix> {
        check_dim(n)?;
        let d = n * n;
        let mut entries = vec![0.0; d * d];
        for i in 0..d {
            entries[i * d + i] = 1.0;
        }
        Ok(ZMatrix { n, entries })
    }
}

/// Builds `Z` for a unitary, rejecting non-unitary input (1e-10),
/// imaginary residues (1e-8), and non-orthogonal results (1e-9).
pub fn z_matrix(u: &ComplexMatrix) -> Result<ZMatrix> {
    if !u.is_square() {
        return Err(Error::NotSquare { rows: u.rows(), cols: u.cols() });
    }
    let n = u.rows();
    check_dim(n)?;
    let uerr = u.unitarity_error();
    if uerr > 1e-10 {
        return Err(Error::NotUnitary(uerr));
    }

    let basis = OperatorBasis::new(n)?;
    let udag = u.adjoint();
    let conjugated: Vec<ComplexMatrix> = (0..n * n)
        .map(|beta| {
            let op = basis.subgrid(beta / n, beta % n);
            u.multiply(op).unwrap().multiply(&udag).unwrap()
        })
        .collect();

    let d = n * n;
    let scale = z_scale(n);
    let mut entries = vec![0.0; d * d];
    for alpha in 0..d {
        let a_op = basis.subgrid(alpha / n, alpha % n);
        for (beta, b_op) in conjugated.iter().enumerate() {
            let tr = a_op.trace_product(b_op)?;
            let value = tr * scale;
            if value.im.abs() >= 1e-8 {
                return Err(Error::ImaginaryResidue(value.im.abs()));
            }
            entries[alpha * d + beta] = value.re;
        }
    }

    let z = ZMatrix { n, entries };
    let orth = z.orthogonality_error();
    if orth > 1e-9 {
        return Err(Error::NotOrthogonal(orth));
    }
    Ok(z)
}

/// Whether a `Z` matrix acts as a deterministic (classical) map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Deterministic,
    Nonlocal,
}

/// Classification result; `map[alpha] = (beta, sign)` when deterministic,
/// meaning `W'(alpha) = sign * W(beta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MapClassification {
    pub kind: MapKind,
    pub map: Option<Vec<(usize, f64)>>,
}

impl MapClassification {
    pub fn is_deterministic(&self) -> bool {
        self.kind == MapKind::Deterministic
    }
}

/// Deterministic iff every row and every column carries exactly one entry
/// above `epsilon` in magnitude and all such entries are `+-1` to 1e-9.
pub fn classify_map(z: &ZMatrix, epsilon: f64) -> MapClassification {
    let d = z.dim();
    let nonlocal = MapClassification { kind: MapKind::Nonlocal, map: None };
    let mut map = Vec::with_capacity(d);
    let mut column_hits = vec![0usize; d];
    for alpha in 0..d {
        let mut hit = None;
        for beta in 0..d {
            let v = z.entry(alpha, beta);
            if v.abs() > epsilon {
                if hit.is_some() {
                    return nonlocal;
                }
                hit = Some((beta, v));
            }
        }
        let Some((beta, v)) = hit else { return nonlocal };
        if (v.abs() - 1.0).abs() > 1e-9 {
            return nonlocal;
        }
        column_hits[beta] += 1;
        map.push((beta, v.signum()));
    }
    if column_hits.iter().any(|&c| c != 1) {
        return nonlocal;
    }
    MapClassification { kind: MapKind::Deterministic, map: Some(map) }
}

/// Default classification threshold.
pub const CLASSIFY_EPSILON: f64 = 1e-6;

/// Evolves a grid by conjugating the reconstructed state:
/// `W -> rho -> U rho U^dagger -> W'`. Serves as the full-grid oracle the
/// subgrid `Z` action is checked against.
pub fn evolve_grid(w: &WignerGrid, u: &ComplexMatrix) -> Result<WignerGrid> {
    if u.rows() != w.n() {
        return Err(Error::DimensionMismatch { left: u.rows(), right: w.n() });
    }
    let rho = reconstruct_density(w)?;
    wigner_of_density(&rho.conjugated(u)?)
}

/// Fourier transform acts as a quarter-turn rotation: the point `(q, p)`
/// moves to `(-p, q)`, so the evolved grid satisfies
/// `W'(q, p) = W(p, -q)` on the doubled grid. True iff that holds to 1e-10.
pub fn check_fourier_rotation(w: &WignerGrid) -> Result<bool> {
    let n = w.n();
    let f = crate::linalg::dft_matrix(n)?;
    let evolved = evolve_grid(w, &f)?;
    let side = w.side();
    for q in 0..side {
        for p in 0..side {
            let expect = w.value_wrapped(p as i64, -(q as i64));
            if (evolved.value(q, p) - expect).abs() > 1e-10 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Displacements translate the grid with the characteristic factor of two:
/// `T(m, k)` sends `W` to `W'(q, p) = W(q - 2m, p - 2k)`. True iff that
/// holds to 1e-10.
pub fn check_translation_covariance(w: &WignerGrid, m: i64, k: i64) -> Result<bool> {
    let n = w.n();
    let t = t_displacement(n, m, k)?;
    let evolved = evolve_grid(w, &t)?;
    let side = w.side();
    for q in 0..side {
        for p in 0..side {
            let expect = w.value_wrapped(q as i64 - 2 * m, p as i64 - 2 * k);
            if (evolved.value(q, p) - expect).abs() > 1e-10 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `2N A(alpha0)`: hermitian and unitary, the reflection through `alpha0`.
/// Fails if the unitarity deviation exceeds 1e-9.
pub fn reflection_unitary(n: usize, alpha0: PhasePoint) -> Result<ComplexMatrix> {
    let op = phase_point_operator(n, alpha0)?;
    let u = op.matrix.scale(C64::new(2.0 * n as f64, 0.0));
    let uerr = u.unitarity_error();
    if uerr > 1e-9 {
        return Err(Error::NotUnitary(uerr));
    }
    Ok(u)
}

/// Conjugation by `2N A(alpha0)` reflects the grid through `alpha0`:
/// `W'(q, p) = W(2 q0 - q, 2 p0 - p)`. True iff that holds to 1e-10.
pub fn check_reflection(w: &WignerGrid, alpha0: PhasePoint) -> Result<bool> {
    let n = w.n();
    let u = reflection_unitary(n, alpha0)?;
    let evolved = evolve_grid(w, &u)?;
    let side = w.side();
    for q in 0..side {
        for p in 0..side {
            let expect =
                w.value_wrapped(2 * alpha0.q as i64 - q as i64, 2 * alpha0.p as i64 - p as i64);
            if (evolved.value(q, p) - expect).abs() > 1e-10 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Subgrid consistency: `Z * fold(W)` against `fold(evolve(W))`, the
/// full-grid route being the reference. Returns the max deviation.
pub fn subgrid_action_error(w: &WignerGrid, u: &ComplexMatrix) -> Result<f64> {
    let z = z_matrix(u)?;
    let folded = fold_to_fundamental(w)?;
    let via_z = z.apply(&folded)?;
    let via_full = fold_to_fundamental(&evolve_grid(w, u)?)?;
    Ok(via_z
        .iter()
        .zip(&via_full)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Phase flip of the computational states whose binary digit `bit` is set:
/// `diag((-1)^{bit_j(n)})`, the Pauli-Z on one qubit of a register.
/// Requires `N = 2^qubits` and `bit < qubits`.
pub fn pauli_z_on_bit(n: usize, bit: u32) -> Result<ComplexMatrix> {
    check_dim(n)?;
    if !n.is_power_of_two() || bit >= n.trailing_zeros() {
        return Err(Error::IndexOutOfRange { index: bit as usize, dim: n.trailing_zeros() as usize });
    }
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        let sign = if (i >> bit) & 1 == 0 { 1.0 } else { -1.0 };
        m[(i, i)] = C64::new(sign, 0.0);
    }
    Ok(m)
}
