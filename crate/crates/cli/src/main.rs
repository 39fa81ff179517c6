//! `spin-dicke`: prepare, verify and analyse spin-s Dicke states from the shell.
//!
//! Exit codes: 0 ok, 1 verification failed, 2 bad arguments, 3 register too large.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spin_dicke::dicke::{decomposition_state, decomposition_text, reference_state};
use spin_dicke::entropy::{entropy_csv, EntropyBase};
use spin_dicke::gates::GateKind;
use spin_dicke::qudit::checked_dimension;
use spin_dicke::spin::lowering_oracle_state;
use spin_dicke::synth::{build_u, build_u_simplified, full_t_count, gate_count_n, Synthesis};
use spin_dicke::{closed_form_state, fidelity, run, Circuit, DickeSpec, Error, Gate, GateTally};

#[derive(Parser)]
#[command(version, about = "Spin-s Dicke states on qudit chains", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate the preparation circuit and write the resulting state
    Prepare {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the prepared state against three independent constructions
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Maximum allowed infidelity
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        /// Add this offset to every rotation angle before simulating
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        perturb: f64,
    },
    /// Write the preparation circuit as JSON
    Synth {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Print one line per T block to stderr
        #[arg(long)]
        describe: bool,
    },
    /// Print T-operator and gate counts
    Count {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Expand the state over qudit Dicke states: `k_0 .. k_2s  p q` per line,
    /// coefficient sqrt(p/q)
    Decompose {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Entanglement entropy table (CSV); sweeps l = 1..n-1 unless --l is given
    Entropy {
        #[command(flatten)]
        spec: SpecArgs,
        /// Size of the low-index block
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, value_enum, default_value_t = BaseArg::D)]
        entropy_base: BaseArg,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// Twice the spin: s = s2/2, qudit dimension s2 + 1
    #[arg(long)]
    s2: usize,
    /// Number of qudits
    #[arg(long)]
    n: usize,
    /// Number of lowering steps, 0..=s2*n
    #[arg(long)]
    k: usize,
    /// Use the k-dependent circuit with redundant T blocks removed
    #[arg(long)]
    simplified: bool,
}

impl SpecArgs {
    fn spec(&self) -> Result<DickeSpec, Failure> {
        Ok(DickeSpec::new(self.s2, self.n, self.k)?)
    }

    fn synthesize(&self) -> Result<Synthesis, Failure> {
        let spec = self.spec()?;
        Ok(if self.simplified { build_u_simplified(&spec)? } else { build_u(spec.s2(), spec.n())? })
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    CircuitJson,
    StateText,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    /// log base 2s+1
    D,
    /// bits
    #[value(name = "2")]
    Two,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::CapacityExceeded { .. }) { 3 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(format!("i/o: {e}"))
    }
}

fn expect_format(output: &OutputArgs, allowed: &[Format], default: Format) -> Result<Format, Failure> {
    let f = output.format.unwrap_or(default);
    if !allowed.contains(&f) {
        return Err(Failure::usage("--format not supported by this subcommand"));
    }
    Ok(f)
}

/// Writes to a sibling temp file and renames it into place, so a failed run
/// never leaves a partial file behind.
fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| Failure::from(e.error))?;
            Ok(())
        }
    }
}

fn simulate(spec: &DickeSpec, circuit: &Circuit) -> Result<spin_dicke::StateVector, Failure> {
    checked_dimension(spec.d(), spec.n())?;
    Ok(run(&reference_state(spec), circuit)?)
}

fn tally_line(label: &str, t: &GateTally) -> String {
    format!(
        "{label}: total={} X={} R={} C={} uncontrolled={} single-controlled={} double-controlled={}\n",
        t.total(),
        t.x,
        t.r,
        t.c,
        t.count_with_controls(0),
        t.count_with_controls(1),
        t.count_with_controls(2),
    )
}

fn check_line(report: &mut String, name: &str, infidelity: f64, tolerance: f64) -> bool {
    // rounding can push the overlap a hair above one
    let infidelity = infidelity.max(0.0);
    let pass = infidelity <= tolerance;
    let verdict = if pass { "PASS" } else { "FAIL" };
    writeln!(report, "{name}: fidelity = 1 - {infidelity:.3e}  {verdict}").unwrap();
    pass
}

fn verify(args: &SpecArgs, tolerance: f64, perturb: f64) -> Result<(String, bool), Failure> {
    let spec = args.spec()?;
    checked_dimension(spec.d(), spec.n())?;
    let mut circuit = args.synthesize()?.circuit;
    if perturb != 0.0 {
        for g in circuit.gates_mut() {
            if let GateKind::R { theta, .. } = &mut g.kind {
                *theta += perturb;
            }
        }
    }
    let target = closed_form_state(&spec)?;
    let mut report = format!("state: {spec}\n");
    let mut ok = true;

    let prepared = simulate(&spec, &circuit)?;
    let label = if args.simplified { "circuit (simplified)" } else { "circuit (full)" };
    ok &= check_line(&mut report, label, 1.0 - fidelity(&prepared, &target)?, tolerance);
    let lowered = lowering_oracle_state(&spec)?;
    ok &= check_line(&mut report, "lowering operator", 1.0 - fidelity(&lowered, &target)?, tolerance);
    let decomposed = decomposition_state(&spec)?;
    ok &= check_line(&mut report, "qudit-Dicke expansion", 1.0 - fidelity(&decomposed, &target)?, tolerance);

    let mut flip = Circuit::new(spec.d(), spec.n());
    for w in 0..spec.n() {
        flip.push(Gate::c(w));
    }
    let dual_exact = run(&target, &flip)? == closed_form_state(&spec.dual())?;
    ok &= dual_exact;
    writeln!(report, "duality: {}", if dual_exact { "exact  PASS" } else { "mismatch  FAIL" }).unwrap();
    writeln!(report, "verdict: {}", if ok { "PASS" } else { "FAIL" }).unwrap();
    Ok((report, ok))
}

fn execute(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Prepare { spec, output } => {
            let format = expect_format(&output, &[Format::StateText, Format::CircuitJson], Format::StateText)?;
            let dicke = spec.spec()?;
            let syn = spec.synthesize()?;
            let text = match format {
                Format::CircuitJson => {
                    checked_dimension(dicke.d(), dicke.n())?;
                    syn.circuit.to_json()
                }
                _ => simulate(&dicke, &syn.circuit)?.to_text(),
            };
            emit(output.out.as_deref(), &text)
        }
        Command::Verify { spec, tolerance, perturb } => {
            let (report, ok) = verify(&spec, tolerance, perturb)?;
            print!("{report}");
            if ok {
                Ok(())
            } else {
                Err(Failure { code: 1, message: "verification failed".into() })
            }
        }
        Command::Synth { spec, output, describe } => {
            expect_format(&output, &[Format::CircuitJson], Format::CircuitJson)?;
            let syn = spec.synthesize()?;
            if describe {
                eprint!("{}", syn.describe());
            }
            emit(output.out.as_deref(), &syn.circuit.to_json())
        }
        Command::Count { spec } => {
            let dicke = spec.spec()?;
            let simplified = build_u_simplified(&dicke)?;
            let full = build_u(dicke.s2(), dicke.n())?;
            let mut text = format!(
                "T operators (simplified): {}\nT operators (full): {}\n",
                gate_count_n(&dicke),
                full_t_count(dicke.s2(), dicke.n())
            );
            text += &tally_line("gates (simplified)", &simplified.circuit.tally());
            text += &tally_line("gates (full)", &full.circuit.tally());
            emit(None, &text)
        }
        Command::Decompose { spec, output } => {
            if output.format.is_some() {
                return Err(Failure::usage("decompose has a single output format"));
            }
            emit(output.out.as_deref(), &decomposition_text(&spec.spec()?))
        }
        Command::Entropy { spec, l, entropy_base, output } => {
            expect_format(&output, &[Format::Csv], Format::Csv)?;
            let dicke = spec.spec()?;
            let ls: Vec<usize> = match l {
                Some(l) => vec![l],
                None => (1..dicke.n()).collect(),
            };
            let base = match entropy_base {
                BaseArg::D => EntropyBase::Qudit,
                BaseArg::Two => EntropyBase::Bits,
            };
            emit(output.out.as_deref(), &entropy_csv(&dicke, &ls, base)?)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
