//! `dwigner`: discrete Wigner functions from the command line.
//!
//! Subcommands: `state` renders a single Wigner grid, `evolve` applies a
//! named unitary repeatedly, `grover` records a search trajectory, and
//! `verify` runs the property suites. Exit codes: 0 success, 1 numerical
//! or data failure, 2 usage error.

mod format;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dwigner::dynamics::{
    classify_map, evolve_grid, pauli_z_on_bit, reflection_unitary, z_matrix, MapKind,
    CLASSIFY_EPSILON,
};
use dwigner::grover::{optimal_iterations, run_grover, GroverConfig};
use dwigner::linalg::{dft_matrix, ComplexMatrix, StateVector};
use dwigner::schwinger::t_displacement;
use dwigner::verify::{run as run_verify, Suite, VerifyConfig};
use dwigner::wigner::{wigner_of_state, PhasePoint, WignerGrid};

use format::{grid_to_csv, grid_to_pgm, read_grid, write_atomic};

#[derive(Parser)]
#[command(
    name = "dwigner",
    about = "Discrete Wigner functions on the 2N x 2N phase-space grid",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Wigner grid of a single state and write it out.
    State(StateCmd),
    /// Evolve a state (or a stored grid) under a named unitary.
    Evolve(EvolveCmd),
    /// Run Grover's search and record the phase-space trajectory.
    Grover(GroverCmd),
    /// Run the property suites and print one report line per property.
    Verify(VerifyCmd),
}

#[derive(Args, Clone)]
struct StateSpec {
    /// Number of qubits (dimension N = 2^qubits); exclusive with --dim.
    #[arg(long, conflicts_with = "dim")]
    qubits: Option<u32>,
    /// Hilbert-space dimension N; exclusive with --qubits.
    #[arg(long)]
    dim: Option<usize>,
    /// Which state to prepare.
    #[arg(long, value_enum)]
    kind: Option<StateKind>,
    /// Computational index (kinds: computational, superposition).
    #[arg(long)]
    n0: Option<usize>,
    /// Second computational index (kind: superposition).
    #[arg(long)]
    n1: Option<usize>,
    /// Momentum index (kind: momentum).
    #[arg(long)]
    k0: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StateKind {
    Computational,
    Momentum,
    Superposition,
}

#[derive(Args)]
struct StateCmd {
    #[command(flatten)]
    state: StateSpec,
    /// Output path; the format extension is appended when missing.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Csv,
    Pgm,
    Both,
}

#[derive(Args)]
struct EvolveCmd {
    /// Read the initial grid from a CSV file instead of preparing a state.
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    #[command(flatten)]
    state: StateSpec,
    #[arg(long, value_enum)]
    unitary: UnitaryKind,
    /// Position shift for --unitary translate.
    #[arg(long, default_value_t = 0)]
    m: i64,
    /// Momentum shift for --unitary translate.
    #[arg(long, default_value_t = 0)]
    k: i64,
    /// Reflection center, position coordinate (doubled grid).
    #[arg(long = "alpha0-q", default_value_t = 0)]
    alpha0_q: i64,
    /// Reflection center, momentum coordinate (doubled grid).
    #[arg(long = "alpha0-p", default_value_t = 0)]
    alpha0_p: i64,
    /// Number of applications of the unitary.
    #[arg(long, default_value_t = 1)]
    steps: usize,
    #[arg(long = "out-dir")]
    out_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UnitaryKind {
    Fourier,
    Translate,
    Reflect,
    SigmaZ,
}

#[derive(Args)]
struct GroverCmd {
    #[arg(long)]
    qubits: u32,
    /// Marked computational item the oracle flips.
    #[arg(long)]
    marked: usize,
    /// Initial momentum index.
    #[arg(long, default_value_t = 1)]
    k0: usize,
    /// Iterations; defaults to round(pi sqrt(N) / 4).
    #[arg(long)]
    iters: Option<usize>,
    #[arg(long = "out-dir")]
    out_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
}

#[derive(Args)]
struct VerifyCmd {
    /// Largest dimension the suites sweep.
    #[arg(long = "dim-max", default_value_t = 8)]
    dim_max: usize,
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    /// Seed for every sampled property (required: runs must be reproducible).
    #[arg(long)]
    seed: u64,
    /// Sampling budget: at 100, properties draw 100 state pairs, 50
    /// positivity states, and 20 unitaries per dimension.
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Wigner,
    Lines,
    Dynamics,
    Grover,
    All,
}

/// Failure channel deciding the exit code.
enum Failure {
    /// Bad arguments: exit 2.
    Usage(String),
    /// Numerical assertion or data failure: exit 1.
    Numerical(String),
}

impl From<dwigner::Error> for Failure {
    fn from(e: dwigner::Error) -> Self {
        use dwigner::Error::*;
        match e {
            ZeroDimension | DimensionTooLarge { .. } | IndexOutOfRange { .. }
            | EqualIndices(_) | DegenerateLine => Failure::Usage(e.to_string()),
            other => Failure::Numerical(other.to_string()),
        }
    }
}

impl From<format::FormatError> for Failure {
    fn from(e: format::FormatError) -> Self {
        Failure::Numerical(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 2 on usage errors, 0 on --help/--version
            e.exit();
        }
    };
    let result = match cli.command {
        Command::State(cmd) => cmd_state(cmd),
        Command::Evolve(cmd) => cmd_evolve(cmd),
        Command::Grover(cmd) => cmd_grover(cmd),
        Command::Verify(cmd) => cmd_verify(cmd),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

impl StateSpec {
    fn dim(&self) -> Result<usize, Failure> {
        match (self.qubits, self.dim) {
            (Some(q), None) => {
                if q == 0 || q > 6 {
                    return Err(Failure::Usage(format!(
                        "--qubits must be between 1 and 6 (got {q})"
                    )));
                }
                Ok(1usize << q)
            }
            (None, Some(n)) => Ok(n),
            (None, None) => Err(Failure::Usage("one of --qubits or --dim is required".into())),
            (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
        }
    }

    fn build(&self) -> Result<StateVector, Failure> {
        let n = self.dim()?;
        let kind = self
            .kind
            .ok_or_else(|| Failure::Usage("--kind is required to prepare a state".into()))?;
        let state = match kind {
            StateKind::Computational => {
                let n0 = self
                    .n0
                    .ok_or_else(|| Failure::Usage("--n0 is required for computational".into()))?;
                StateVector::computational(n, n0)?
            }
            StateKind::Momentum => {
                let k0 = self
                    .k0
                    .ok_or_else(|| Failure::Usage("--k0 is required for momentum".into()))?;
                StateVector::momentum(n, k0)?
            }
            StateKind::Superposition => {
                let n0 = self
                    .n0
                    .ok_or_else(|| Failure::Usage("--n0 is required for superposition".into()))?;
                let n1 = self
                    .n1
                    .ok_or_else(|| Failure::Usage("--n1 is required for superposition".into()))?;
                StateVector::superposition(n, n0, n1)?
            }
        };
        Ok(state)
    }
}

fn with_extension(path: &Path, ext: &str) -> PathBuf {
    if path.extension().map(|e| e == ext).unwrap_or(false) {
        path.to_path_buf()
    } else {
        let mut name = path.as_os_str().to_os_string();
        name.push(".");
        name.push(ext);
        PathBuf::from(name)
    }
}

fn write_grid(path: &Path, grid: &WignerGrid, fmt: OutFormat) -> Result<(), Failure> {
    if matches!(fmt, OutFormat::Csv | OutFormat::Both) {
        write_atomic(&with_extension(path, "csv"), &grid_to_csv(grid))?;
    }
    if matches!(fmt, OutFormat::Pgm | OutFormat::Both) {
        write_atomic(&with_extension(path, "pgm"), &grid_to_pgm(grid))?;
    }
    Ok(())
}

fn cmd_state(cmd: StateCmd) -> Result<ExitCode, Failure> {
    let state = cmd.state.build()?;
    let grid = wigner_of_state(&state)?;
    write_grid(&cmd.out, &grid, cmd.format)?;
    Ok(ExitCode::SUCCESS)
}

fn build_unitary(cmd: &EvolveCmd, n: usize) -> Result<(ComplexMatrix, &'static str), Failure> {
    match cmd.unitary {
        UnitaryKind::Fourier => Ok((dft_matrix(n)?, "fourier")),
        UnitaryKind::Translate => Ok((t_displacement(n, cmd.m, cmd.k)?, "translate")),
        UnitaryKind::Reflect => {
            let alpha0 = PhasePoint::new(n, cmd.alpha0_q, cmd.alpha0_p);
            Ok((reflection_unitary(n, alpha0)?, "reflect"))
        }
        UnitaryKind::SigmaZ => {
            if !n.is_power_of_two() || n < 2 {
                return Err(Failure::Usage(format!(
                    "--unitary sigma-z needs a qubit register (N = 2^qubits, got N={n})"
                )));
            }
            Ok((pauli_z_on_bit(n, n.trailing_zeros() - 1)?, "sigma-z"))
        }
    }
}

fn cmd_evolve(cmd: EvolveCmd) -> Result<ExitCode, Failure> {
    let initial = match &cmd.input {
        Some(path) => read_grid(path)?,
        None => wigner_of_state(&cmd.state.build()?)?,
    };
    let n = initial.n();
    let (unitary, name) = build_unitary(&cmd, n)?;

    std::fs::create_dir_all(&cmd.out_dir).map_err(|e| Failure::Numerical(e.to_string()))?;
    let mut grid = initial;
    for step in 0..=cmd.steps {
        if step > 0 {
            grid = evolve_grid(&grid, &unitary)?;
        }
        let path = cmd.out_dir.join(format!("step_{step:03}"));
        write_grid(&path, &grid, cmd.format)?;
    }

    let class = classify_map(&z_matrix(&unitary)?, CLASSIFY_EPSILON);
    let label = match class.kind {
        MapKind::Deterministic => "deterministic",
        MapKind::Nonlocal => "nonlocal",
    };
    let summary = format!("unitary={name} N={n} steps={} classification={label}\n", cmd.steps);
    print!("{summary}");
    write_atomic(&cmd.out_dir.join("summary.txt"), &summary)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_grover(cmd: GroverCmd) -> Result<ExitCode, Failure> {
    if cmd.qubits == 0 || cmd.qubits > 6 {
        return Err(Failure::Usage(format!(
            "--qubits must be between 1 and 6 (got {})",
            cmd.qubits
        )));
    }
    let n = 1usize << cmd.qubits;
    let opt = optimal_iterations(n)?;
    let iterations = cmd.iters.unwrap_or(opt.formula_rounded);
    let config = GroverConfig { qubits: cmd.qubits, marked: cmd.marked, k0: cmd.k0, iterations };
    config.validate()?;

    let traj = run_grover(&config)?;
    std::fs::create_dir_all(&cmd.out_dir).map_err(|e| Failure::Numerical(e.to_string()))?;
    for (t, grid) in traj.grids.iter().enumerate() {
        let path = cmd.out_dir.join(format!("step_{t:03}"));
        write_grid(&path, grid, cmd.format)?;
    }

    let mut success = String::from("step,success_prob\n");
    for (t, p) in traj.success_prob.iter().enumerate() {
        success.push_str(&format!("{t},{p:.16e}\n"));
    }
    write_atomic(&cmd.out_dir.join("success.csv"), &success)?;

    println!(
        "grover N={n} marked={} k0={} iterations={iterations} \
         optimal_formula={} optimal_exact={} final_success={:.12}",
        config.marked,
        config.k0,
        opt.formula_rounded,
        opt.exact_argmax,
        traj.success_prob.last().copied().unwrap_or_default(),
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cmd: VerifyCmd) -> Result<ExitCode, Failure> {
    if cmd.dim_max < 2 || cmd.dim_max > dwigner::MAX_DIM {
        return Err(Failure::Usage(format!(
            "--dim-max must be between 2 and {} (got {})",
            dwigner::MAX_DIM,
            cmd.dim_max
        )));
    }
    let suite = match cmd.suite {
        SuiteArg::Wigner => Suite::Wigner,
        SuiteArg::Lines => Suite::Lines,
        SuiteArg::Dynamics => Suite::Dynamics,
        SuiteArg::Grover => Suite::Grover,
        SuiteArg::All => Suite::All,
    };
    let cfg = VerifyConfig { dim_max: cmd.dim_max, seed: cmd.seed, samples: cmd.samples };
    let results = run_verify(suite, &cfg);
    for r in &results {
        println!("{r}");
    }
    if let Some(first_fail) = results.iter().find(|r| !r.pass) {
        eprintln!("verification failed: {} at N={}", first_fail.name, first_fail.n);
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}
