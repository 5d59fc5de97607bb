//! Phase-space lines, line-sum projectors, and marginal distributions.
//!
//! A line is the set of grid points with `n1 q + n2 p = n3 (mod 2N)`.
//! Summing the Wigner function over a line gives a measurement
//! probability, because the summed point operators form a projector. For
//! even `N` the projector rank obeys `d_L = D_L / N`, where `D_L` counts
//! the points of the line with both coordinates even; for odd `N` the rank
//! rule is reported but not enforced.

use crate::linalg::ComplexMatrix;
use crate::wigner::{phase_point_operator, PhasePoint, WignerGrid};
use crate::{check_dim, Error, Result};

/// Line `L(n1, n2, n3)` on the doubled grid of an `N`-dimensional system.
///
/// Coefficients are stored as canonical representatives modulo `2N`;
/// `(n1, n2) = (0, 0)` is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Line {
    n: usize,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
}

impl Line {
    pub fn new(n: usize, n1: i64, n2: i64, n3: i64) -> Result<Self> {
        check_dim(n)?;
        let side = 2 * n as i64;
        let line = Self {
            n,
            n1: n1.rem_euclid(side) as usize,
            n2: n2.rem_euclid(side) as usize,
            n3: n3.rem_euclid(side) as usize,
        };
        if line.n1 == 0 && line.n2 == 0 {
            return Err(Error::DegenerateLine);
        }
        Ok(line)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, pt: PhasePoint) -> bool {
        (self.n1 * pt.q + self.n2 * pt.p) % (2 * self.n) == self.n3
    }

    /// Two lines are parallel when they share `(n1, n2)`.
    pub fn is_parallel_to(&self, other: &Line) -> bool {
        self.n == other.n && self.n1 == other.n1 && self.n2 == other.n2
    }
}

/// All grid points on the line, in lexicographic `(q, p)` order. May be
/// empty (for example `2q = 1 (mod 4)` has no solutions) or larger than
/// `2N` points for degenerate coefficient choices.
pub fn line_points(line: &Line) -> Vec<PhasePoint> {
    let side = 2 * line.n;
    let mut pts = Vec::new();
    for q in 0..side {
        for p in 0..side {
            let pt = PhasePoint { q, p };
            if line.contains(pt) {
                pts.push(pt);
            }
        }
    }
    pts
}

/// `sum_{(q,p) in L} W(q, p)`: the probability attached to the line.
pub fn sum_wigner_on_line(w: &WignerGrid, line: &Line) -> Result<f64> {
    if w.n() != line.n {
        return Err(Error::DimensionMismatch { left: w.n(), right: line.n });
    }
    Ok(line_points(line).iter().map(|pt| w.value(pt.q, pt.p)).sum())
}

/// Sum of the point operators along a line: a validated projector.
#[derive(Debug, Clone)]
pub struct LineProjector {
    pub line: Line,
    /// `A_L = sum of A(q, p) over the line`; hermitian and idempotent.
    pub matrix: ComplexMatrix,
    /// Projector rank `d_L = Tr(A_L)`.
    pub rank: f64,
    /// `D_L`: number of line points with `q` and `p` both even.
    pub even_even_points: usize,
}

/// Builds `A_L`, checking hermiticity, idempotence (1e-10) and, for even
/// `N`, the rank rule `d_L = D_L / N` (1e-9).
pub fn line_projector(line: &Line) -> Result<LineProjector> {
    let n = line.n;
    let pts = line_points(line);
    let mut acc = ComplexMatrix::zeros(n, n);
    let mut even_even = 0usize;
    for pt in &pts {
        acc = acc.add(&phase_point_operator(n, *pt)?.matrix)?;
        if pt.q % 2 == 0 && pt.p % 2 == 0 {
            even_even += 1;
        }
    }

    let herm = acc.hermiticity_error();
    if herm > 1e-12 {
        return Err(Error::NotHermitian(herm));
    }
    let idem = acc.multiply(&acc)?.max_abs_diff(&acc);
    if idem > 1e-10 {
        return Err(Error::NotIdempotent(idem));
    }
    let rank = acc.trace().re;
    if n % 2 == 0 && (rank - even_even as f64 / n as f64).abs() > 1e-9 {
        return Err(Error::RankRuleViolation { rank, count: even_even, n });
    }
    Ok(LineProjector { line: *line, matrix: acc, rank, even_even_points: even_even })
}

/// Position marginal: `m[n0] = sum_p W(2 n0, p)`.
///
/// Checks that odd vertical lines sum to zero (1e-9), entries are
/// nonnegative (to -1e-9), and the total is 1 (1e-9).
pub fn marginal_position(w: &WignerGrid) -> Result<Vec<f64>> {
    marginal(w, true)
}

/// Momentum marginal: `m[k0] = sum_q W(q, 2 k0)` with the same checks.
pub fn marginal_momentum(w: &WignerGrid) -> Result<Vec<f64>> {
    marginal(w, false)
}

fn marginal(w: &WignerGrid, position: bool) -> Result<Vec<f64>> {
    let n = w.n();
    let side = w.side();
    let sum_line = |fixed: usize| -> f64 {
        (0..side)
            .map(|free| if position { w.value(fixed, free) } else { w.value(free, fixed) })
            .sum()
    };
    let label = if position { "position" } else { "momentum" };

    for odd in (1..side).step_by(2) {
        let s = sum_line(odd);
        if s.abs() > 1e-9 {
            return Err(Error::BadMarginal(format!(
                "odd {label} line {odd} sums to {s:.3e}, expected 0"
            )));
        }
    }
    let mut out = Vec::with_capacity(n);
    let mut total = 0.0;
    for i in 0..n {
        let s = sum_line(2 * i);
        if s < -1e-9 {
            return Err(Error::BadMarginal(format!(
                "{label} marginal entry {i} is negative: {s:.3e}"
            )));
        }
        total += s;
        out.push(s);
    }
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::BadMarginal(format!("{label} marginal sums to {total:.12}")));
    }
    Ok(out)
}
