//! Dense complex linear algebra and state factories.
//!
//! Everything downstream works with explicit `N x N` matrices and
//! `N`-component vectors, so this module stays deliberately small: a
//! row-major complex matrix, a unit-norm state vector, a density matrix,
//! and the discrete Fourier transform that ties the position basis to the
//! momentum basis.

use num_complex::Complex;

use crate::{check_dim, Error, Result};

/// Complex scalar used everywhere in the crate.
pub type C64 = Complex<f64>;

/// Unit phase `exp(i pi num / den)` with the integer exponent reduced
/// modulo `2 den` before any floating-point arithmetic.
///
/// All phases in the construction are of this form; reducing first keeps
/// angles in `[0, 2 pi)` so no precision is lost to argument reduction.
pub(crate) fn half_turn_phase(num: i64, den: usize) -> C64 {
    let two = 2 * den as i64;
    let r = num.rem_euclid(two);
    C64::from_polar(1.0, std::f64::consts::PI * r as f64 / den as f64)
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { left: self.cols, right: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == C64::ZERO {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                left: self.rows * self.cols,
                right: other.rows * other.cols,
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * factor).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// `Tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<C64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::DimensionMismatch { left: self.cols, right: other.rows });
        }
        let mut acc = C64::ZERO;
        for r in 0..self.rows {
            for c in 0..self.cols {
                acc += self[(r, c)] * other[(c, r)];
            }
        }
        Ok(acc)
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Max-norm deviation from hermiticity.
    pub fn hermiticity_error(&self) -> f64 {
        debug_assert!(self.is_square());
        let mut worst = 0.0f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Max-norm deviation of `M M^dagger` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        debug_assert!(self.is_square());
        let prod = self.multiply(&self.adjoint()).expect("square");
        prod.max_abs_diff(&Self::identity(self.rows))
    }

    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { left: self.cols, right: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| (0..self.cols).map(|c| self[(r, c)] * v[c]).sum())
            .collect())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

/// Normalized state of an `N`-dimensional system, amplitudes in the
/// computational (position) basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Wraps amplitudes that are already normalized; rejects vectors whose
    /// norm deviates from 1 by more than 1e-12.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        check_dim(amplitudes.len())?;
        let norm_err = (amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() - 1.0).abs();
        if norm_err > 1e-12 {
            return Err(Error::NotUnitNorm(norm_err));
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes and wraps.
    pub fn from_unnormalized(amplitudes: Vec<C64>) -> Result<Self> {
        check_dim(amplitudes.len())?;
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Err(Error::ZeroNorm);
        }
        Ok(Self { amplitudes: amplitudes.into_iter().map(|a| a / norm).collect() })
    }

    /// Position eigenstate `|n0>`.
    pub fn computational(n: usize, n0: usize) -> Result<Self> {
        check_dim(n)?;
        if n0 >= n {
            return Err(Error::IndexOutOfRange { index: n0, dim: n });
        }
        let mut amplitudes = vec![C64::ZERO; n];
        amplitudes[n0] = C64::ONE;
        Ok(Self { amplitudes })
    }

    /// Momentum eigenstate `|k0> = sum_n exp(i 2 pi n k0 / N) |n> / sqrt(N)`.
    pub fn momentum(n: usize, k0: usize) -> Result<Self> {
        check_dim(n)?;
        if k0 >= n {
            return Err(Error::IndexOutOfRange { index: k0, dim: n });
        }
        let scale = 1.0 / (n as f64).sqrt();
        let amplitudes = (0..n)
            .map(|i| half_turn_phase(2 * (i * k0) as i64, n) * scale)
            .collect();
        Ok(Self { amplitudes })
    }

    /// Equal superposition `(|n0> + |n1>) / sqrt(2)` of two distinct
    /// computational states.
    pub fn superposition(n: usize, n0: usize, n1: usize) -> Result<Self> {
        check_dim(n)?;
        if n0 >= n {
            return Err(Error::IndexOutOfRange { index: n0, dim: n });
        }
        if n1 >= n {
            return Err(Error::IndexOutOfRange { index: n1, dim: n });
        }
        if n0 == n1 {
            return Err(Error::EqualIndices(n0));
        }
        let mut amplitudes = vec![C64::ZERO; n];
        let w = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amplitudes[n0] = w;
        amplitudes[n1] = w;
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Applies a matrix, renormalizing only by contract (the caller is
    /// expected to pass a unitary; the norm is validated to 1e-12).
    pub fn evolved(&self, u: &ComplexMatrix) -> Result<Self> {
        let amplitudes = u.apply(&self.amplitudes)?;
        Self::new(amplitudes)
    }
}

/// Density matrix: hermitian, unit trace (a non-normalized identity is
/// allowed through [`DensityMatrix::unnormalized_identity`] only).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates hermiticity and unit trace to 1e-12.
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        check_dim(matrix.rows())?;
        let herm = matrix.hermiticity_error();
        if herm > 1e-12 {
            return Err(Error::NotHermitian(herm));
        }
        let tr = matrix.trace();
        let tr_err = (tr - C64::ONE).norm();
        if tr_err > 1e-12 {
            return Err(Error::NotUnitTrace(tr_err));
        }
        Ok(Self { matrix })
    }

    /// `|s><s|`.
    pub fn pure(s: &StateVector) -> Self {
        let a = s.amplitudes();
        let matrix = ComplexMatrix::from_fn(s.dim(), s.dim(), |r, c| a[r] * a[c].conj());
        Self { matrix }
    }

    /// The identity operator with trace `N`, used by the identity-state
    /// Wigner checks. This is the one value allowed to bypass the trace
    /// normalization.
    pub fn unnormalized_identity(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self { matrix: ComplexMatrix::identity(n) })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `U rho U^dagger`, validating unitarity of `U` to 1e-10.
    pub fn conjugated(&self, u: &ComplexMatrix) -> Result<Self> {
        if !u.is_square() || u.rows() != self.dim() {
            return Err(Error::DimensionMismatch { left: u.rows(), right: self.dim() });
        }
        let uerr = u.unitarity_error();
        if uerr > 1e-10 {
            return Err(Error::NotUnitary(uerr));
        }
        let matrix = u.multiply(&self.matrix)?.multiply(&u.adjoint())?;
        Ok(Self { matrix })
    }
}

/// Discrete Fourier transform, entries `exp(i 2 pi n k / N) / sqrt(N)`.
///
/// Column `k0` is exactly [`StateVector::momentum`]`(N, k0)`.
pub fn dft_matrix(n: usize) -> Result<ComplexMatrix> {
    check_dim(n)?;
    let scale = 1.0 / (n as f64).sqrt();
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        half_turn_phase(2 * (r * c) as i64, n) * scale
    }))
}
