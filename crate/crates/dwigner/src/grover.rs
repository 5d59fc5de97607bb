//! Grover's search as a state-vector iteration with a phase-space trail.
//!
//! One iteration is the oracle reflection `O = I - 2|w><w|` about the
//! marked computational state followed by the diffusion reflection
//! `D = 2|k0><k0| - I` about the initial momentum state. Starting from
//! `|k0>` the walk stays in the plane spanned by `|w>` and `|k0>`, and
//! because `|<w|k0>| = 1 / sqrt(N)` for every `k0`, the success
//! probability after `t` iterations is
//!
//! ```text
//! p(t) = sin^2((2t + 1) theta / 2),   theta = 2 arcsin(1 / sqrt(N))
//! ```
//!
//! independent of which momentum state seeds the run. The trajectory
//! records the state, its Wigner grid, and `p(t)` at every step; the grid
//! starts as horizontal strips and drains into the vertical strips at
//! `q = 2w` and its mirror as `p(t)` approaches one.

use crate::linalg::{ComplexMatrix, StateVector, C64};
use crate::wigner::{wigner_of_state, WignerGrid};
use crate::{Error, Result};

/// Run parameters. `N = 2^qubits`; `marked` is the searched item;
/// `k0` indexes the initial momentum state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroverConfig {
    pub qubits: u32,
    pub marked: usize,
    pub k0: usize,
    pub iterations: usize,
}

impl GroverConfig {
    pub fn dim(&self) -> usize {
        1usize << self.qubits
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        crate::check_dim(n)?;
        if self.marked >= n {
            return Err(Error::IndexOutOfRange { index: self.marked, dim: n });
        }
        if self.k0 >= n {
            return Err(Error::IndexOutOfRange { index: self.k0, dim: n });
        }
        Ok(())
    }
}

/// Oracle `I - 2 |marked><marked|`: diagonal, unitary, self-inverse, with
/// determinant -1.
pub fn grover_oracle(n: usize, marked: usize) -> Result<ComplexMatrix> {
    crate::check_dim(n)?;
    if marked >= n {
        return Err(Error::IndexOutOfRange { index: marked, dim: n });
    }
    let mut m = ComplexMatrix::identity(n);
    m[(marked, marked)] = C64::new(-1.0, 0.0);
    Ok(m)
}

/// Diffusion `2 |k0><k0| - I` about the chosen initial momentum state.
/// For `k0 = 0` this is the textbook reflection about the uniform
/// superposition.
pub fn grover_diffusion(n: usize, k0: usize) -> Result<ComplexMatrix> {
    let state = StateVector::momentum(n, k0)?;
    let a = state.amplitudes();
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let outer = 2.0 * a[r] * a[c].conj();
        if r == c {
            outer - C64::ONE
        } else {
            outer
        }
    }))
}

/// Closed-form success probability after `t` iterations on `N` items.
pub fn success_probability(n: usize, t: usize) -> f64 {
    let theta = 2.0 * (1.0 / (n as f64).sqrt()).asin();
    let s = ((2 * t + 1) as f64 * theta / 2.0).sin();
    s * s
}

/// Iteration counts: the `round(pi sqrt(N) / 4)` estimate alongside the
/// exact argmax of the success formula.
///
/// The argmax is the first peak of the rotation: the walk revisits the
/// neighborhood of the target angle forever (and for irrational
/// `theta / pi` eventually edges arbitrarily close to 1), so "optimal"
/// means the smallest `t` at which one more iteration stops helping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OptimalIterations {
    pub formula_rounded: usize,
    pub exact_argmax: usize,
}

pub fn optimal_iterations(n: usize) -> Result<OptimalIterations> {
    if n < 2 {
        return Err(Error::ZeroDimension);
    }
    let formula = (std::f64::consts::PI * (n as f64).sqrt() / 4.0).round() as usize;
    let mut exact = 1;
    while success_probability(n, exact + 1) > success_probability(n, exact) {
        exact += 1;
    }
    Ok(OptimalIterations { formula_rounded: formula, exact_argmax: exact })
}

/// Full record of a run: states, grids, success probabilities, and the
/// Wigner value at the would-be fixed point `(2 marked, 2 k0)`, one entry
/// per step from 0 through `iterations`.
#[derive(Debug, Clone)]
pub struct GroverTrajectory {
    pub config: GroverConfig,
    pub states: Vec<StateVector>,
    pub grids: Vec<WignerGrid>,
    pub success_prob: Vec<f64>,
    pub fixed_point_value: Vec<f64>,
}

/// Runs `iterations` Grover steps from `|k0>`, recording everything.
pub fn run_grover(cfg: &GroverConfig) -> Result<GroverTrajectory> {
    cfg.validate()?;
    let n = cfg.dim();
    let oracle = grover_oracle(n, cfg.marked)?;
    let diffusion = grover_diffusion(n, cfg.k0)?;

    let mut states = Vec::with_capacity(cfg.iterations + 1);
    states.push(StateVector::momentum(n, cfg.k0)?);
    for _ in 0..cfg.iterations {
        let prev = states.last().expect("nonempty");
        states.push(prev.evolved(&oracle)?.evolved(&diffusion)?);
    }

    let mut grids = Vec::with_capacity(states.len());
    let mut success_prob = Vec::with_capacity(states.len());
    let mut fixed_point_value = Vec::with_capacity(states.len());
    let probe = (2 * cfg.marked % (2 * n), 2 * cfg.k0 % (2 * n));
    for s in &states {
        let grid = wigner_of_state(s)?;
        success_prob.push(s.amplitudes()[cfg.marked].norm_sqr());
        fixed_point_value.push(grid.value(probe.0, probe.1));
        grids.push(grid);
    }

    Ok(GroverTrajectory { config: *cfg, states, grids, success_prob, fixed_point_value })
}
