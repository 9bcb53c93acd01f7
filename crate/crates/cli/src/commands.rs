//! Subcommand implementations. Each command writes its report to the given
//! writer so tests can capture output without spawning the binary.

use crate::error::CliError;
use crate::format::{render_pretty, CircuitFile, DiagonalFile};
use clap::{Args, Parser, Subcommand, ValueEnum};
use incant_core::expansion::{brute_force_optimal, expansion_cost, CostModel, Sign};
use incant_core::sim::{check_diagonal_equiv, circuit_unitary_with_cap, DEFAULT_DIM_CAP};
use incant_core::synthesis::{synth_diagonal, ExpansionStrategy};
use incant_core::Circuit;
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(
    name = "incant",
    version,
    about = "Compile diagonal qudit unitaries into increment-gate circuits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize a circuit from a diagonal description and write it as JSON.
    Synth(SynthArgs),
    /// Compute a signed base-d expansion of l and report its cost.
    Expand(ExpandArgs),
    /// Simulate a circuit file and compare it against a diagonal description.
    Verify(VerifyArgs),
    /// Report synthesis gate counts without writing a circuit file.
    Count(CountArgs),
    /// Print the unitary matrix of a small circuit file.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Standard,
    Greedy,
    Brute,
}

impl StrategyArg {
    fn to_strategy(self) -> ExpansionStrategy {
        match self {
            StrategyArg::Standard => ExpansionStrategy::Standard,
            StrategyArg::Greedy => ExpansionStrategy::Greedy,
            StrategyArg::Brute => ExpansionStrategy::BruteForce,
        }
    }

    fn name(self) -> &'static str {
        match self {
            StrategyArg::Standard => "standard",
            StrategyArg::Greedy => "greedy",
            StrategyArg::Brute => "brute",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    ControlLevels,
    LadderGates,
    Lexicographic,
}

impl ModelArg {
    fn to_model(self) -> CostModel {
        match self {
            ModelArg::ControlLevels => CostModel::ControlLevels,
            ModelArg::LadderGates => CostModel::LadderGates,
            ModelArg::Lexicographic => CostModel::Lexicographic,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ModelArg::ControlLevels => "control-levels",
            ModelArg::LadderGates => "ladder-gates",
            ModelArg::Lexicographic => "lexicographic",
        }
    }
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Diagonal description (JSON).
    #[arg(short, long)]
    pub input: PathBuf,
    /// Output circuit file (JSON).
    #[arg(short, long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = StrategyArg::Greedy)]
    pub strategy: StrategyArg,
    /// Run the adjacent-inverse cancellation pass on the result.
    #[arg(long)]
    pub cancel: bool,
    /// Also print a one-gate-per-line rendering of the circuit.
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    /// Entangler parameter, 1 <= l <= d^n.
    pub l: u64,
    /// Qudit dimension.
    pub d: u32,
    /// Register width.
    pub n: u32,
    #[arg(long, value_enum, default_value_t = StrategyArg::Greedy)]
    pub strategy: StrategyArg,
    /// Objective for the brute-force strategy.
    #[arg(long, value_enum, default_value_t = ModelArg::ControlLevels)]
    pub model: ModelArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Circuit file (JSON).
    #[arg(long)]
    pub circuit: PathBuf,
    /// Diagonal description (JSON).
    #[arg(long)]
    pub diagonal: PathBuf,
    /// Tolerance on phase deviation and leakage.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Diagonal description (JSON).
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = StrategyArg::Greedy)]
    pub strategy: StrategyArg,
    #[arg(long)]
    pub cancel: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Circuit file (JSON).
    #[arg(long)]
    pub circuit: PathBuf,
    /// State-space cap; circuits above it are rejected.
    #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
    pub max_dim: u64,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Synth(args) => cmd_synth(&args, out),
        Command::Expand(args) => cmd_expand(&args, out),
        Command::Verify(args) => cmd_verify(&args, out),
        Command::Count(args) => cmd_count(&args, out),
        Command::Simulate(args) => cmd_simulate(&args, out),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("reports are serializable");
    writeln!(out, "{text}").map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

#[derive(Serialize)]
struct CountsReport {
    runs: usize,
    single_qudit: u64,
    phase: u64,
    controlled_1: u64,
    controlled_2: u64,
    controlled_many: u64,
    control_levels: u64,
    ancillas_used: u64,
    ancilla_wires: usize,
    total_gates: u64,
}

impl CountsReport {
    fn new(circuit: &Circuit, runs: usize) -> Self {
        let counts = circuit.counts();
        CountsReport {
            runs,
            single_qudit: counts.single_qudit,
            phase: counts.phase,
            controlled_1: counts.controlled_1,
            controlled_2: counts.controlled_2,
            controlled_many: counts.controlled_many,
            control_levels: counts.control_levels,
            ancillas_used: counts.ancillas_used,
            ancilla_wires: circuit.ancilla_wires(),
            total_gates: counts.total_gates(),
        }
    }
}

fn synthesize(
    input: &Path,
    strategy: StrategyArg,
    cancel: bool,
) -> Result<(Circuit, usize), CliError> {
    let file: DiagonalFile = read_json(input)?;
    let spec = file.to_spec()?;
    let circuit = synth_diagonal(&spec, strategy.to_strategy(), cancel)?;
    Ok((circuit, spec.run_count()))
}

fn cmd_synth(args: &SynthArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (circuit, runs) = synthesize(&args.input, args.strategy, args.cancel)?;
    write_text(&args.out, &CircuitFile::from_circuit(&circuit).to_json())?;
    emit(out, &CountsReport::new(&circuit, runs))?;
    if args.pretty {
        write!(out, "{}", render_pretty(&circuit)).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })?;
    }
    Ok(())
}

fn cmd_count(args: &CountArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (circuit, runs) = synthesize(&args.input, args.strategy, args.cancel)?;
    emit(out, &CountsReport::new(&circuit, runs))
}

#[derive(Serialize)]
struct TermReport {
    sign: i64,
    exponent: u32,
}

#[derive(Serialize)]
struct ExpandReport {
    l: u64,
    d: u32,
    n: u32,
    strategy: &'static str,
    model: &'static str,
    terms: Vec<TermReport>,
    control_levels: u64,
    ladder_gates: u64,
}

fn cmd_expand(args: &ExpandArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let expansion = match args.strategy {
        StrategyArg::Brute => brute_force_optimal(args.l, args.d, args.n, args.model.to_model())?,
        other => other.to_strategy().expand(args.l, args.d, args.n)?,
    };
    let cost = expansion_cost(&expansion)?;
    let terms = expansion
        .terms
        .iter()
        .map(|t| TermReport {
            sign: match t.sign {
                Sign::Pos => 1,
                Sign::Neg => -1,
            },
            exponent: t.exponent,
        })
        .collect();
    emit(
        out,
        &ExpandReport {
            l: args.l,
            d: args.d,
            n: args.n,
            strategy: args.strategy.name(),
            model: args.model.name(),
            terms,
            control_levels: cost.control_levels,
            ladder_gates: cost.ladder_gates,
        },
    )
}

#[derive(Serialize)]
struct VerifyReport {
    passed: bool,
    max_deviation: f64,
    max_leakage: f64,
    tolerance: f64,
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let circuit_file: CircuitFile = read_json(&args.circuit)?;
    let diagonal: DiagonalFile = read_json(&args.diagonal)?;
    let circuit = circuit_file.to_circuit()?;
    let spec = diagonal.to_spec()?;
    let report = check_diagonal_equiv(&circuit, &spec, args.tol)?;
    let verdict = if report.passed { "PASS" } else { "FAIL" };
    writeln!(
        out,
        "{verdict}: max deviation {:e}, max leakage {:e} (tolerance {:e})",
        report.max_deviation, report.max_leakage, report.tolerance
    )
    .map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })?;
    emit(
        out,
        &VerifyReport {
            passed: report.passed,
            max_deviation: report.max_deviation,
            max_leakage: report.max_leakage,
            tolerance: report.tolerance,
        },
    )?;
    if !report.passed {
        return Err(CliError::VerificationFailed {
            max_deviation: report.max_deviation,
            max_leakage: report.max_leakage,
        });
    }
    Ok(())
}

fn format_complex(z: num_complex::Complex64) -> String {
    format!("{:.6}{:+.6}i", z.re, z.im)
}

fn cmd_simulate(args: &SimulateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let circuit_file: CircuitFile = read_json(&args.circuit)?;
    let circuit = circuit_file.to_circuit()?;
    let unitary = circuit_unitary_with_cap(&circuit, args.max_dim)?;
    let io_err = |source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    };
    writeln!(
        out,
        "dim={} global_phase_theta={:?}",
        unitary.dim(),
        circuit.global_phase()
    )
    .map_err(io_err)?;
    for row in 0..unitary.dim() {
        let cells: Vec<String> = (0..unitary.dim())
            .map(|col| format_complex(unitary.get(row, col)))
            .collect();
        writeln!(out, "{}", cells.join(" ")).map_err(io_err)?;
    }
    Ok(())
}
