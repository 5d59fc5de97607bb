//! Runnable property suite behind `dwigner verify`.
//!
//! Each property reports a name, the dimension it ran at, the worst
//! deviation observed, and a pass flag against its built-in tolerance.
//! Runs are deterministic given the seed: every property derives its own
//! stream from the seed, so reports are byte-identical across runs.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{
    check_fourier_rotation, check_reflection, check_translation_covariance, classify_map,
    evolve_grid, pauli_z_on_bit, reflection_unitary, subgrid_action_error, z_matrix, MapKind,
    ZMatrix, CLASSIFY_EPSILON,
};
use crate::grover::{optimal_iterations, run_grover, success_probability, GroverConfig};
use crate::linalg::{dft_matrix, ComplexMatrix, DensityMatrix, StateVector};
use crate::lines::{line_projector, marginal_momentum, marginal_position, sum_wigner_on_line, Line};
use crate::sampling;
use crate::schwinger::t_displacement;
use crate::wigner::{
    closed_form_computational, fold_to_fundamental, inner_product_from_grids,
    phase_point_operator, phase_point_operator_definitional, reconstruct_density,
    strip_sign_period, subgrid_gram_rank, wigner_of_density, wigner_of_density_definitional,
    wigner_of_density_fast, wigner_of_state, OperatorBasis, PhasePoint,
};
use crate::Result;

/// Which property group to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Wigner,
    Lines,
    Dynamics,
    Grover,
    All,
}

/// Knobs shared by every suite. `samples` scales the random sampling:
/// at the default 100 the suite draws 100 state pairs, 50 states for line
/// positivity, and 20 unitaries per dimension.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub dim_max: usize,
    pub seed: u64,
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { dim_max: 8, seed: 42, samples: 100 }
    }
}

impl VerifyConfig {
    fn pairs(&self) -> usize {
        self.samples.max(1)
    }

    fn states(&self) -> usize {
        (self.samples / 2).max(1)
    }

    fn unitaries(&self) -> usize {
        (self.samples / 5).max(1)
    }

    fn rng(&self, salt: u64, n: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(
            self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (n as u64) << 32,
        )
    }
}

/// One property outcome; `Display` renders a report line.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub n: usize,
    pub max_err: f64,
    pub pass: bool,
}

impl fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PROP {} N={} max_err={:.3e} {}",
            self.name,
            self.n,
            self.max_err,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

fn record(out: &mut Vec<PropertyResult>, name: &'static str, n: usize, tol: f64, err: Result<f64>) {
    let max_err = err.unwrap_or(f64::INFINITY);
    out.push(PropertyResult { name, n, max_err, pass: max_err <= tol });
}

/// Runs a suite and returns its report lines in deterministic order.
pub fn run(suite: Suite, cfg: &VerifyConfig) -> Vec<PropertyResult> {
    let mut out = Vec::new();
    match suite {
        Suite::Wigner => wigner_suite(cfg, &mut out),
        Suite::Lines => lines_suite(cfg, &mut out),
        Suite::Dynamics => dynamics_suite(cfg, &mut out),
        Suite::Grover => grover_suite(cfg, &mut out),
        Suite::All => {
            wigner_suite(cfg, &mut out);
            lines_suite(cfg, &mut out);
            dynamics_suite(cfg, &mut out);
            grover_suite(cfg, &mut out);
        }
    }
    out
}

fn dims(cfg: &VerifyConfig) -> std::ops::RangeInclusive<usize> {
    2..=cfg.dim_max.max(2)
}

// ---------------------------------------------------------------------
// wigner

fn wigner_suite(cfg: &VerifyConfig, out: &mut Vec<PropertyResult>) {
    for n in dims(cfg) {
        record(out, "a_hermiticity", n, 1e-12, a_hermiticity(n));
        record(out, "a_sum_identity", n, 1e-10, a_sum_identity(n));
        record(out, "a_closed_vs_definitional", n, 1e-12, a_closed_vs_definitional(n));
        record(out, "subgrid_rank", n, 0.5, subgrid_rank(n));
        record(out, "closed_form_computational", n, 1e-12, closed_form_equiv(n));
        record(out, "grid_normalization", n, 1e-10, grid_normalization(n, cfg));
        record(out, "state_vs_density_route", n, 1e-12, state_vs_density(n, cfg));
        record(out, "fast_vs_definitional_grid", n, 1e-10, fast_vs_definitional(n, cfg));
        record(out, "inner_product_identity", n, 1e-10, inner_product_identity(n, cfg));
        record(out, "reconstruction_roundtrip", n, 1e-9, reconstruction_roundtrip(n, cfg));
        record(out, "subgrid_sign_relation", n, 1e-10, subgrid_sign_relation(n, cfg));
    }
    for (n, n0, n1) in [(8usize, 1usize, 3usize), (16, 0, 4)] {
        if cfg.dim_max >= n {
            record(out, "fringe_period", n, 0.5, fringe_period(n, n0, n1));
        }
    }
}

fn a_hermiticity(n: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for q in 0..2 * n {
        for p in 0..2 * n {
            let op = phase_point_operator(n, PhasePoint { q, p })?;
            worst = worst.max(op.matrix.hermiticity_error());
        }
    }
    Ok(worst)
}

fn a_sum_identity(n: usize) -> Result<f64> {
    let mut acc = ComplexMatrix::zeros(n, n);
    let basis = OperatorBasis::new(n)?;
    for q in 0..2 * n {
        for p in 0..2 * n {
            let (sign, op) = basis.at(PhasePoint { q, p });
            acc = acc.add(&op.scale(num_complex::Complex::new(sign, 0.0)))?;
        }
    }
    Ok(acc.max_abs_diff(&ComplexMatrix::identity(n)))
}

fn a_closed_vs_definitional(n: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for q in 0..2 * n {
        for p in 0..2 * n {
            let pt = PhasePoint { q, p };
            let fast = phase_point_operator(n, pt)?;
            let brute = phase_point_operator_definitional(n, pt)?;
            worst = worst.max(fast.matrix.max_abs_diff(&brute.matrix));
        }
    }
    Ok(worst)
}

fn subgrid_rank(n: usize) -> Result<f64> {
    let rank = subgrid_gram_rank(n)?;
    Ok((n * n) as f64 - rank as f64)
}

fn closed_form_equiv(n: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for n0 in 0..n {
        let closed = closed_form_computational(n, n0)?;
        let rho = DensityMatrix::pure(&StateVector::computational(n, n0)?);
        let brute = wigner_of_density_definitional(&rho)?;
        worst = worst.max(closed.max_abs_diff(&brute));
    }
    Ok(worst)
}

fn grid_normalization(n: usize, cfg: &VerifyConfig) -> Result<f64> {
    let mut rng = cfg.rng(1, n);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let w = wigner_of_state(&sampling::random_state(n, &mut rng)?)?;
        worst = worst.max((w.total() - 1.0).abs());
    }
    Ok(worst)
}

fn state_vs_density(n: usize, cfg: &VerifyConfig) -> Result<f64> {
    let mut rng = cfg.rng(2, n);
    let s = sampling::random_state(n, &mut rng)?;
    let a = wigner_of_state(&s)?;
    let b = wigner_of_density(&DensityMatrix::pure(&s))?;
    Ok(a.max_abs_diff(&b))
}

fn fast_vs_definitional(n: usize, cfg: &VerifyConfig) -> Result<f64> {
    let mut rng = cfg.rng(3, n);
    let rho = sampling::random_density(n, &mut rng)?;
    let a = wigner_of_density_fast(&rho)?;
    let b = wigner_of_density_definitional(&rho)?;
    Ok(a.max_abs_diff(&b))
}

fn inner_product_identity(n: usize, cfg: &VerifyConfig) -> Result<f64> {
    let mut rng = cfg.rng(4, n);
    let mut worst = 0.0f64;
    for _ in 0..cfg.pairs() {
        let s1 = sampling::random_state(n, &mut rng)?;
        let s2 = sampling::random_state(n, &mut rng)?;
        let w1 = wigner_of_state(&s1)?;
        let w2 = wigner_of_state(&s2)?;
        let via_grid = inner_product_from_grids(&w1, &w2)?;
        let overlap = s1.inner(&s2)?.norm_sqr();
        worst = worst.max((via_grid - overlap).abs());
    }
    Ok(worst)
}

fn reconstruction_roundtrip(n: usize, cfg: &VerifyConfig) -> Result<f64> {
    let mut rng = cfg.rng(5, n);
    let mut worst = 0.0f64;
    for _ in 0..3 {
        let rho = sampling::random_density(n, &mut rng)?;
        let back = reconstruct_density(&wigner_of_density(&rho)?)?;
        worst = worst.max(back.matrix().frobenius_distance(rho.matrix()));
    }
    let pure = DensityMatrix::pure(&sampling::random_state(n, &mut rng)?);
    let back = reconstruct_density(&wigner_of_density(&pure)?)?;
    Ok(worst.max(back.matrix().frobenius_distance(pure.matrix())))
}

fn subgrid_sign_relation(n: usize, cfg: &VerifyConfig) -> Result<f64> {
    let mut rng = cfg.rng(6, n);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let w = wigner_of_state(&sampling::random_state(n, &mut rng)?)?;
        match fold_to_fundamental(&w) {
            Ok(_) => {}
            Err(crate::Error::SubgridViolation { err, .. }) => worst = worst.max(err),
            Err(e) => return Err(e),
        }
    }
    Ok(worst)
}

fn fringe_period(n: usize, n0: usize, n1: usize) -> Result<f64> {
    let w = wigner_of_state(&StateVector::superposition(n, n0, n1)?)?;
    let mid = (n0 + n1) % (2 * n);
    let expected = 2 * n / (n1 - n0);
    let got = strip_sign_period(&w, mid);
    Ok((got as f64 - expected as f64).abs())
}

// ---------------------------------------------------------------------
// lines

fn lines_suite(cfg: &VerifyConfig, out: &mut Vec<PropertyResult>) {
    for n in dims(cfg) {
        record(out, "line_projector_idempotent", n, 1e-10, line_idempotence(n).map(|r| r.0));
        record(out, "line_projector_hermitian", n, 1e-12, line_idempotence(n).map(|r| r.1));
        if n % 2 == 0 {
            record(out, "line_rank_rule", n, 1e-9, line_rank_rule(n));
        }
        record(out, "line_sum_positivity", n, 1e-9, line_positivity(n, cfg));
        record(out, "line_sum_two_routes", n, 1e-10, line_two_routes(n, cfg));
        record(out, "marginal_position_diag", n, 1e-10, marginal_diag(n, cfg, true));
        record(out, "marginal_momentum_diag", n, 1e-10, marginal_diag(n, cfg, false));
        record(out, "marginal_indicators", n, 1e-10, marginal_indicators(n));
    }
}

fn all_lines(n: usize) -> Vec<Line> {
    let side = 2 * n;
    let mut lines = Vec::new();
    for n1 in 0..side {
        for n2 in 0..side {
            if n1 == 0 && n2 == 0 {
                continue;
            }
            for n3 in 0..side {
                lines.push(Line::new(n, n1 as i64, n2 as i64, n3 as i64).expect("nonzero"));
            }
        }
    }
    lines
}

/// Worst idempotence and hermiticity deviations over every line.
fn line_idempotence(n: usize) -> Result<(f64, f64)> {
    let basis = OperatorBasis::new(n)?;
    let mut worst_idem = 0.0f64;
    let mut worst_herm = 0.0f64;
    for line in all_lines(n) {
        let mut acc = ComplexMatrix::zeros(n, n);
        for q in 0..2 * n {
            for p in 0..2 * n {
                let pt = PhasePoint { q, p };
                if line.contains(pt) {
                    let (sign, op) = basis.at(pt);
                    acc = acc.add(&op.scale(num_complex::Complex::new(sign, 0.0)))?;
                }
            }
        }
        worst_herm = worst_herm.max(acc.hermiticity_error());
        worst_idem = worst_idem.max(acc.multiply(&acc)?.max_abs_diff(&acc));
    }
    Ok((worst_idem, worst_herm))
}

fn line_rank_rule(n: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for line in all_lines(n) {
        let proj = line_projector(&line)?;
        worst = worst.max((proj.rank - proj.even_even_points as f64 / n as f64).abs());
    }
    Ok(worst)
}

fn line_positivity(n: usize, cfg: &VerifyConfig) -> Result<f64> {
    let mut rng = cfg.rng(7, n);
    let lines = all_lines(n);
    let mut min_sum = f64::INFINITY;
    for _ in 0..cfg.states() {
        let w = wigner_of_state(&sampling::random_state(n, &mut rng)?)?;
        for line in &lines {
            min_sum = min_sum.min(sum_wigner_on_line(&w, line)?);
        }
    }
    Ok((-min_sum).max(0.0))
}

fn line_two_routes(n: usize, cfg: &VerifyConfig) -> Result<f64> {
    let mut rng = cfg.rng(8, n);
    let mut worst = 0.0f64;
    for _ in 0..3 {
        let rho = sampling::random_density(n, &mut rng)?;
        let w = wigner_of_density(&rho)?;
        for line in all_lines(n) {
            let via_grid = sum_wigner_on_line(&w, &line)?;
            let proj = line_projector(&line)?;
            let via_op = rho.matrix().trace_product(&proj.matrix)?.re;
            worst = worst.max((via_grid - via_op).abs());
        }
    }
    Ok(worst)
}

fn marginal_diag(n: usize, cfg: &VerifyConfig, position: bool) -> Result<f64> {
    let mut rng = cfg.rng(9, n);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let rho = sampling::random_density(n, &mut rng)?;
        let w = wigner_of_density(&rho)?;
        if position {
            let m = marginal_position(&w)?;
            for i in 0..n {
                worst = worst.max((m[i] - rho.matrix()[(i, i)].re).abs());
            }
        } else {
            let f = dft_matrix(n)?;
            let mom = f.adjoint().multiply(rho.matrix())?.multiply(&f)?;
            let m = marginal_momentum(&w)?;
            for i in 0..n {
                worst = worst.max((m[i] - mom[(i, i)].re).abs());
            }
        }
    }
    Ok(worst)
}

fn marginal_indicators(n: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for i in 0..n {
        let wp = wigner_of_state(&StateVector::computational(n, i)?)?;
        let mp = marginal_position(&wp)?;
        let wk = wigner_of_state(&StateVector::momentum(n, i)?)?;
        let mk = marginal_momentum(&wk)?;
        for j in 0..n {
            let expect = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((mp[j] - expect).abs()).max((mk[j] - expect).abs());
        }
    }
    Ok(worst)
}

// ---------------------------------------------------------------------
// dynamics

fn dynamics_suite(cfg: &VerifyConfig, out: &mut Vec<PropertyResult>) {
    // Z matrices are N^2 x N^2; the heavy properties stop at 6
    let z_max = cfg.dim_max.min(6).max(2);
    for n in 2..=z_max {
        record(out, "z_identity_regression", n, 1e-12, z_identity(n));
        record(out, "z_orthogonality", n, 1e-9, z_orthogonality(n, cfg));
        record(out, "z_composition", n, 1e-9, z_composition(n, cfg));
        record(out, "z_subgrid_consistency", n, 1e-9, z_subgrid(n, cfg));
        record(out, "translation_classify", n, 0.5, translation_classify(n));
        record(out, "reflection_classify", n, 0.5, reflection_classify(n));
        record(out, "fourier_classify", n, 0.5, fourier_classify(n));
    }
    for n in dims(cfg) {
        record(out, "fourier_rotation", n, 0.5, fourier_rotation(n, cfg));
        record(out, "fourier_fourth_power", n, 1e-10, fourier_fourth_power(n, cfg));
        record(out, "translation_covariance", n, 0.5, translation_covariance(n, cfg));
        record(out, "reflection_covariance", n, 0.5, reflection_covariance(n, cfg));
    }
    if cfg.dim_max >= 8 {
        record(out, "sigma_z_nonlocal", 8, 0.5, sigma_z_nonlocal());
        record(out, "sigma_z_row_structure", 8, 1e-9, sigma_z_row_structure());
    }
}

fn z_identity(n: usize) -> Result<f64> {
    let z = z_matrix(&ComplexMatrix::identity(n))?;
    Ok(z.max_abs_diff(&ZMatrix::identity(n)?))
}

fn z_orthogonality(n: usize, cfg: &VerifyConfig) -> Result<f64> {
    let mut rng = cfg.rng(10, n);
    let mut worst = 0.0f64;
    for _ in 0..cfg.unitaries() {
        let u = sampling::random_unitary(n, &mut rng)?;
        worst = worst.max(z_matrix(&u)?.orthogonality_error());
    }
    Ok(worst)
}

fn z_composition(n: usize, cfg: &VerifyConfig) -> Result<f64> {
    let mut rng = cfg.rng(11, n);
    let u1 = sampling::random_unitary(n, &mut rng)?;
    let u2 = sampling::random_unitary(n, &mut rng)?;
    let z12 = z_matrix(&u1.multiply(&u2)?)?;
    let prod = z_matrix(&u1)?.multiply(&z_matrix(&u2)?)?;
    Ok(z12.max_abs_diff(&prod))
}

fn z_subgrid(n: usize, cfg: &VerifyConfig) -> Result<f64> {
    let mut rng = cfg.rng(12, n);
    let mut worst = 0.0f64;
    for _ in 0..3 {
        let s = sampling::random_state(n, &mut rng)?;
        let u = sampling::random_unitary(n, &mut rng)?;
        worst = worst.max(subgrid_action_error(&wigner_of_state(&s)?, &u)?);
    }
    Ok(worst)
}

fn bool_err(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn translation_classify(n: usize) -> Result<f64> {
    let z = z_matrix(&t_displacement(n, 1, 0)?)?;
    Ok(bool_err(classify_map(&z, CLASSIFY_EPSILON).is_deterministic()))
}

fn reflection_classify(n: usize) -> Result<f64> {
    let u = reflection_unitary(n, PhasePoint { q: 1 % n, p: 0 })?;
    let z = z_matrix(&u)?;
    let class = classify_map(&z, CLASSIFY_EPSILON);
    if !class.is_deterministic() {
        return Ok(1.0);
    }
    // the deterministic map must be alpha -> 2 alpha0 - alpha mod N
    let map = class.map.expect("deterministic");
    let alpha0 = PhasePoint { q: 1 % n, p: 0 };
    for alpha in 0..z.dim() {
        let pt = z.point_of(alpha);
        let expect = z.index_of(PhasePoint {
            q: (2 * alpha0.q as i64 - pt.q as i64).rem_euclid(n as i64) as usize,
            p: (2 * alpha0.p as i64 - pt.p as i64).rem_euclid(n as i64) as usize,
        });
        if map[alpha].0 != expect {
            return Ok(1.0);
        }
    }
    Ok(0.0)
}

fn fourier_classify(n: usize) -> Result<f64> {
    let z = z_matrix(&dft_matrix(n)?)?;
    Ok(bool_err(classify_map(&z, CLASSIFY_EPSILON).is_deterministic()))
}

fn fourier_rotation(n: usize, cfg: &VerifyConfig) -> Result<f64> {
    let mut rng = cfg.rng(13, n);
    let mut worst = 0.0f64;
    for _ in 0..3 {
        let w = wigner_of_state(&sampling::random_state(n, &mut rng)?)?;
        worst = worst.max(bool_err(check_fourier_rotation(&w)?));
    }
    Ok(worst)
}

fn fourier_fourth_power(n: usize, cfg: &VerifyConfig) -> Result<f64> {
    let mut rng = cfg.rng(14, n);
    let w = wigner_of_state(&sampling::random_state(n, &mut rng)?)?;
    let f = dft_matrix(n)?;
    let mut cur = w.clone();
    for _ in 0..4 {
        cur = evolve_grid(&cur, &f)?;
    }
    Ok(cur.max_abs_diff(&w))
}

fn translation_covariance(n: usize, cfg: &VerifyConfig) -> Result<f64> {
    let mut rng = cfg.rng(15, n);
    let w = wigner_of_state(&sampling::random_state(n, &mut rng)?)?;
    for m in 0..n as i64 {
        for k in 0..n as i64 {
            if !check_translation_covariance(&w, m, k)? {
                return Ok(1.0);
            }
        }
    }
    Ok(0.0)
}

fn reflection_covariance(n: usize, cfg: &VerifyConfig) -> Result<f64> {
    let mut rng = cfg.rng(16, n);
    let w = wigner_of_state(&sampling::random_state(n, &mut rng)?)?;
    for alpha0 in [
        PhasePoint { q: 0, p: 0 },
        PhasePoint { q: 1 % (2 * n), p: 1 % (2 * n) },
        PhasePoint { q: n, p: 1 },
        PhasePoint { q: 2 % (2 * n), p: n + 1 },
    ] {
        if !check_reflection(&w, alpha0)? {
            return Ok(1.0);
        }
    }
    Ok(0.0)
}

fn sigma_z_nonlocal() -> Result<f64> {
    // phase flip on the weight-N/2 bit of a three-qubit register
    let sz = pauli_z_on_bit(8, 2)?;
    let z = z_matrix(&sz)?;
    Ok(bool_err(classify_map(&z, CLASSIFY_EPSILON).kind == MapKind::Nonlocal))
}

fn sigma_z_row_structure() -> Result<f64> {
    // frozen row alpha=(0,0): -1/2 at (0,0), +1/2 at (0,2), (0,4), (0,6)
    let sz = pauli_z_on_bit(8, 2)?;
    let z = z_matrix(&sz)?;
    let mut worst = 0.0f64;
    for beta in 0..z.dim() {
        let pt = z.point_of(beta);
        let expect = match (pt.q, pt.p) {
            (0, 0) => -0.5,
            (0, 2) | (0, 4) | (0, 6) => 0.5,
            _ => 0.0,
        };
        worst = worst.max((z.entry(0, beta) - expect).abs());
    }
    Ok(worst)
}

// ---------------------------------------------------------------------
// grover

fn grover_suite(cfg: &VerifyConfig, out: &mut Vec<PropertyResult>) {
    let mut scan_dims: Vec<usize> = Vec::new();
    let mut n = 4usize;
    while n <= cfg.dim_max.max(4).min(crate::MAX_DIM) {
        scan_dims.push(n);
        n *= 2;
    }
    for &n in &scan_dims {
        record(out, "grover_success_formula", n, 1e-9, grover_formula(n));
        record(out, "grover_norm_preservation", n, 1e-12, grover_norms(n));
        record(out, "grover_marked_marginal", n, 1e-9, grover_marginal(n));
        record(out, "grover_k0_invariance", n, 1e-9, grover_k0_invariance(n));
    }
    // the optimality bound is a pure scan of the rotation formula
    let mut n = 4usize;
    while n <= crate::MAX_DIM {
        record(out, "grover_optimal_bound", n, 1e-12, grover_bound(n));
        n *= 2;
    }
}

fn grover_cfg(n: usize, iterations: usize) -> GroverConfig {
    GroverConfig { qubits: n.trailing_zeros(), marked: n / 2, k0: 1, iterations }
}

fn grover_formula(n: usize) -> Result<f64> {
    let traj = run_grover(&grover_cfg(n, 20))?;
    let mut worst = 0.0f64;
    for (t, p) in traj.success_prob.iter().enumerate() {
        worst = worst.max((p - success_probability(n, t)).abs());
    }
    Ok(worst)
}

fn grover_norms(n: usize) -> Result<f64> {
    let traj = run_grover(&grover_cfg(n, 20))?;
    Ok(traj
        .states
        .iter()
        .map(|s| (s.norm() - 1.0).abs())
        .fold(0.0, f64::max))
}

fn grover_marginal(n: usize) -> Result<f64> {
    let opt = optimal_iterations(n)?;
    let traj = run_grover(&grover_cfg(n, opt.exact_argmax))?;
    let m = marginal_position(traj.grids.last().expect("nonempty"))?;
    let p_final = *traj.success_prob.last().expect("nonempty");
    Ok((m[n / 2] - p_final).abs())
}

fn grover_k0_invariance(n: usize) -> Result<f64> {
    let steps = 5;
    let mut worst = 0.0f64;
    for k0 in 0..n {
        let cfg = GroverConfig { qubits: n.trailing_zeros(), marked: n / 2, k0, iterations: steps };
        let traj = run_grover(&cfg)?;
        for (t, p) in traj.success_prob.iter().enumerate() {
            worst = worst.max((p - success_probability(n, t)).abs());
        }
    }
    Ok(worst)
}

fn grover_bound(n: usize) -> Result<f64> {
    let opt = optimal_iterations(n)?;
    let p = success_probability(n, opt.exact_argmax);
    Ok((1.0 - 1.0 / n as f64 - p).max(0.0))
}
