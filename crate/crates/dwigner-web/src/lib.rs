//! Browser bindings for the dwigner library.
//!
//! Three interactive operations back the demo page: render a state's
//! Wigner grid, evolve it under a named unitary, and trace Grover's
//! search. Grids come back as flat `Float64Array`s (row-major in `q`)
//! plus enough metadata to paint a canvas.
//!
//! The `*_impl` functions carry the logic with plain `String` errors so
//! they stay testable on native targets; the exported wrappers only
//! translate errors into `JsValue`.

use wasm_bindgen::prelude::*;

use dwigner::dynamics::{
    classify_map, evolve_grid, pauli_z_on_bit, reflection_unitary, z_matrix, MapKind,
    CLASSIFY_EPSILON,
};
use dwigner::grover::{optimal_iterations, run_grover, GroverConfig};
use dwigner::linalg::{dft_matrix, ComplexMatrix, StateVector};
use dwigner::schwinger::t_displacement;
use dwigner::wigner::{wigner_of_state, PhasePoint, WignerGrid};

fn build_state(
    kind: &str,
    dim: usize,
    n0: usize,
    n1: usize,
    k0: usize,
) -> Result<StateVector, String> {
    match kind {
        "computational" => StateVector::computational(dim, n0),
        "momentum" => StateVector::momentum(dim, k0),
        "superposition" => StateVector::superposition(dim, n0, n1),
        other => return Err(format!("unknown state kind: {other}")),
    }
    .map_err(|e| e.to_string())
}

/// One rendered Wigner grid.
#[wasm_bindgen]
pub struct GridView {
    n: usize,
    values: Vec<f64>,
}

#[wasm_bindgen]
impl GridView {
    /// Hilbert-space dimension `N`.
    #[wasm_bindgen(getter)]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Grid side length `2N`.
    #[wasm_bindgen(getter)]
    pub fn side(&self) -> usize {
        2 * self.n
    }

    /// Flat values, `side * side` entries, index `q * side + p`.
    #[wasm_bindgen(getter)]
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }

    /// Largest absolute value; the canvas colormap is symmetric about 0.
    #[wasm_bindgen(getter)]
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

impl From<WignerGrid> for GridView {
    fn from(w: WignerGrid) -> Self {
        GridView { n: w.n(), values: w.values().to_vec() }
    }
}

fn state_grid_impl(
    kind: &str,
    dim: usize,
    n0: usize,
    n1: usize,
    k0: usize,
) -> Result<GridView, String> {
    let state = build_state(kind, dim, n0, n1, k0)?;
    let w = wigner_of_state(&state).map_err(|e| e.to_string())?;
    Ok(w.into())
}

/// Wigner grid of a computational, momentum, or superposition state.
#[wasm_bindgen]
pub fn state_grid(
    kind: &str,
    dim: usize,
    n0: usize,
    n1: usize,
    k0: usize,
) -> Result<GridView, JsValue> {
    state_grid_impl(kind, dim, n0, n1, k0).map_err(|e| JsValue::from_str(&e))
}

/// A trajectory of grids under repeated application of one unitary.
#[wasm_bindgen]
pub struct EvolutionView {
    n: usize,
    steps: usize,
    frames: Vec<f64>,
    classification: String,
}

#[wasm_bindgen]
impl EvolutionView {
    #[wasm_bindgen(getter)]
    pub fn n(&self) -> usize {
        self.n
    }

    #[wasm_bindgen(getter)]
    pub fn side(&self) -> usize {
        2 * self.n
    }

    /// Number of stored frames (`steps + 1`, including the initial grid).
    #[wasm_bindgen(getter)]
    pub fn frames(&self) -> usize {
        self.steps + 1
    }

    /// Frame `t` as a flat grid.
    pub fn frame(&self, t: usize) -> Vec<f64> {
        let len = 4 * self.n * self.n;
        self.frames[t * len..(t + 1) * len].to_vec()
    }

    /// "deterministic" or "nonlocal", from the Z-matrix of the unitary.
    #[wasm_bindgen(getter)]
    pub fn classification(&self) -> String {
        self.classification.clone()
    }
}

fn named_unitary(
    name: &str,
    n: usize,
    m: i64,
    k: i64,
    alpha0_q: i64,
    alpha0_p: i64,
) -> Result<ComplexMatrix, String> {
    match name {
        "fourier" => dft_matrix(n).map_err(|e| e.to_string()),
        "translate" => t_displacement(n, m, k).map_err(|e| e.to_string()),
        "reflect" => reflection_unitary(n, PhasePoint::new(n, alpha0_q, alpha0_p))
            .map_err(|e| e.to_string()),
        "sigma-z" => {
            if !n.is_power_of_two() || n < 2 {
                return Err("sigma-z needs N = 2^qubits".into());
            }
            pauli_z_on_bit(n, n.trailing_zeros() - 1).map_err(|e| e.to_string())
        }
        other => Err(format!("unknown unitary: {other}")),
    }
}

#[allow(clippy::too_many_arguments)]
fn evolve_state_impl(
    kind: &str,
    dim: usize,
    n0: usize,
    n1: usize,
    k0: usize,
    unitary: &str,
    m: i64,
    k: i64,
    alpha0_q: i64,
    alpha0_p: i64,
    steps: usize,
) -> Result<EvolutionView, String> {
    let state = build_state(kind, dim, n0, n1, k0)?;
    let u = named_unitary(unitary, dim, m, k, alpha0_q, alpha0_p)?;
    let mut grid = wigner_of_state(&state).map_err(|e| e.to_string())?;
    let mut frames = Vec::with_capacity((steps + 1) * 4 * dim * dim);
    frames.extend_from_slice(grid.values());
    for _ in 0..steps {
        grid = evolve_grid(&grid, &u).map_err(|e| e.to_string())?;
        frames.extend_from_slice(grid.values());
    }
    let class = classify_map(&z_matrix(&u).map_err(|e| e.to_string())?, CLASSIFY_EPSILON);
    let classification = match class.kind {
        MapKind::Deterministic => "deterministic",
        MapKind::Nonlocal => "nonlocal",
    }
    .to_string();
    Ok(EvolutionView { n: dim, steps, frames, classification })
}

/// Applies a named unitary `steps` times to a freshly prepared state,
/// recording every intermediate grid and the map classification.
#[allow(clippy::too_many_arguments)]
#[wasm_bindgen]
pub fn evolve_state(
    kind: &str,
    dim: usize,
    n0: usize,
    n1: usize,
    k0: usize,
    unitary: &str,
    m: i64,
    k: i64,
    alpha0_q: i64,
    alpha0_p: i64,
    steps: usize,
) -> Result<EvolutionView, JsValue> {
    evolve_state_impl(kind, dim, n0, n1, k0, unitary, m, k, alpha0_q, alpha0_p, steps)
        .map_err(|e| JsValue::from_str(&e))
}

/// A full Grover run: one grid per step plus the success curve.
#[wasm_bindgen]
pub struct GroverView {
    n: usize,
    iterations: usize,
    frames: Vec<f64>,
    success: Vec<f64>,
    optimal_formula: usize,
    optimal_exact: usize,
}

#[wasm_bindgen]
impl GroverView {
    #[wasm_bindgen(getter)]
    pub fn n(&self) -> usize {
        self.n
    }

    #[wasm_bindgen(getter)]
    pub fn side(&self) -> usize {
        2 * self.n
    }

    #[wasm_bindgen(getter)]
    pub fn frames(&self) -> usize {
        self.iterations + 1
    }

    pub fn frame(&self, t: usize) -> Vec<f64> {
        let len = 4 * self.n * self.n;
        self.frames[t * len..(t + 1) * len].to_vec()
    }

    /// Success probability after each step, `iterations + 1` entries.
    #[wasm_bindgen(getter)]
    pub fn success(&self) -> Vec<f64> {
        self.success.clone()
    }

    /// `round(pi sqrt(N) / 4)`.
    #[wasm_bindgen(getter)]
    pub fn optimal_formula(&self) -> usize {
        self.optimal_formula
    }

    /// Exact argmax of the success formula.
    #[wasm_bindgen(getter)]
    pub fn optimal_exact(&self) -> usize {
        self.optimal_exact
    }
}

fn grover_trajectory_impl(
    qubits: u32,
    marked: usize,
    k0: usize,
    iterations: usize,
) -> Result<GroverView, String> {
    let cfg = GroverConfig { qubits, marked, k0, iterations };
    cfg.validate().map_err(|e| e.to_string())?;
    let traj = run_grover(&cfg).map_err(|e| e.to_string())?;
    let opt = optimal_iterations(cfg.dim()).map_err(|e| e.to_string())?;
    let len = 4 * cfg.dim() * cfg.dim();
    let mut frames = Vec::with_capacity(traj.grids.len() * len);
    for g in &traj.grids {
        frames.extend_from_slice(g.values());
    }
    Ok(GroverView {
        n: cfg.dim(),
        iterations,
        frames,
        success: traj.success_prob,
        optimal_formula: opt.formula_rounded,
        optimal_exact: opt.exact_argmax,
    })
}

/// Runs Grover's search on `2^qubits` items.
#[wasm_bindgen]
pub fn grover_trajectory(
    qubits: u32,
    marked: usize,
    k0: usize,
    iterations: usize,
) -> Result<GroverView, JsValue> {
    grover_trajectory_impl(qubits, marked, k0, iterations).map_err(|e| JsValue::from_str(&e))
}
