use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lambek_chase::campaign::{run_campaign, CampaignSpec, Mode, Phase, Suite};
use lambek_chase::checks::run_check;
use lambek_chase::diagram::{load_diagram, save_diagram, Backend, Diagram, Shape};
use lambek_chase::generate::{generate_file, rng_for, Constraint, Constraints};
use lambek_chase::report::{Format, Report};
use lambek_chase::{enum_cap_from_env, pset_category};
use lambek_core::Fgab;

/// Verifies diagram lemmas on finitely generated abelian groups and pointed sets.
#[derive(Parser)]
#[command(name = "lambek-chase", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// `text` or `structured` (JSON).
    #[arg(long, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    /// Diagram file.
    #[arg(long)]
    input: PathBuf,
    /// Seed for the random probes of the abelian oracles.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand)]
enum Command {
    /// Universal properties, closure under composition and the homology comparison.
    CheckAxioms(CheckArgs),
    /// Homology of every null pair, plus the composition sequence of a pair.
    Homology(CheckArgs),
    /// Lambek invariants of every square.
    Invariants(CheckArgs),
    /// Lambek isomorphism of a two-square diagram.
    Lambek(CheckArgs),
    /// First exact sequence and its short exact corollary.
    Nomura1(CheckArgs),
    /// Second exact sequence and the kernel-row theorem.
    Nomura2(CheckArgs),
    /// Homology comparison for five-column diagrams.
    Fivelemma(CheckArgs),
    /// Writes a random diagram file.
    Generate {
        /// `fgab` or `pset`
        #[arg(long)]
        backend: Backend,
        /// `pair`, `square`, `two-square` or `five-column`
        #[arg(long)]
        shape: Shape,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated from rows-exact, b-exact, f-exact, g'-exact, b-kernel,
        /// verticals-identity, f'-mono, g-epi
        #[arg(long, value_delimiter = ',')]
        constraints: Vec<Constraint>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Runs a verification suite over random or enumerated diagrams.
    Campaign {
        /// axioms, homology, composition, lambek-formula, lambek-iso, nomura1,
        /// nomura2, kernel-row, fivelemma or duality
        #[arg(long)]
        suite: Suite,
        /// `fgab` or `pset`
        #[arg(long)]
        backend: Backend,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Enumerate all small pointed-set diagrams instead of sampling.
        #[arg(long, conflicts_with_all = ["trials", "seed"])]
        exhaustive: bool,
        /// Largest object size for --exhaustive (replaces the suite default).
        #[arg(long, requires = "exhaustive")]
        max_size: Option<usize>,
        /// Bound on the sum of (size - 1) over all objects for --exhaustive.
        #[arg(long, requires = "max_size")]
        budget: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
}

/// Failure before any verification ran.
struct Usage(String);

fn emit(report: &Report, out: &Output) -> Result<ExitCode, Usage> {
    let text = report.render(out.format);
    match &out.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn check(command: &str, args: &CheckArgs) -> Result<ExitCode, Usage> {
    let (file, diagram) = load_diagram(&args.input).map_err(|e| Usage(e.to_string()))?;
    let mut report = Report::new(command, file.backend.name(), Some(file.shape.name()));
    let mut rng = rng_for(args.seed);
    let outcome = match &diagram {
        Diagram::Fgab(p) => run_check(&Fgab::new(), command, p, &mut rng),
        Diagram::Pset(p) => run_check(&pset_category(), command, p, &mut rng),
    }
    .map_err(Usage)?;
    outcome.into_report(&mut report);
    emit(&report.finish(Some(&file)), &args.out)
}

fn write_or_print(text: &str, path: Option<&Path>) -> Result<(), Usage> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Usage> {
    enum_cap_from_env().map_err(Usage)?;
    match &cli.command {
        Command::CheckAxioms(a) => check("check-axioms", a),
        Command::Homology(a) => check("homology", a),
        Command::Invariants(a) => check("invariants", a),
        Command::Lambek(a) => check("lambek", a),
        Command::Nomura1(a) => check("nomura1", a),
        Command::Nomura2(a) => check("nomura2", a),
        Command::Fivelemma(a) => check("fivelemma", a),
        Command::Generate { backend, shape, seed, constraints, output } => {
            let cs: Constraints = constraints.iter().copied().collect();
            match generate_file(*backend, *shape, *seed, &cs) {
                Ok(file) => {
                    match output {
                        Some(path) => save_diagram(&file, path)
                            .map_err(|e| Usage(format!("cannot write {}: {e}", path.display())))?,
                        None => write_or_print(&file.to_toml(), None)?,
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(e @ lambek_chase::generate::GenerateError::Unsupported { .. }) => Err(Usage(e.to_string())),
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Campaign { suite, backend, trials, seed, exhaustive, max_size, budget, out } => {
            let mode = if *exhaustive {
                let mut phases = suite.default_phases();
                if let Some(m) = max_size {
                    let mut shapes: Vec<(usize, usize)> = phases.iter().map(|p| (p.columns, p.rows)).collect();
                    shapes.dedup();
                    phases = shapes
                        .into_iter()
                        .map(|(columns, rows)| Phase {
                            columns,
                            rows,
                            max_size: *m,
                            budget: budget.unwrap_or(columns * rows * m.saturating_sub(1)),
                        })
                        .collect();
                }
                Mode::Exhaustive { phases }
            } else {
                Mode::Random { trials: *trials, seed: *seed }
            };
            let spec = CampaignSpec { suite: *suite, backend: *backend, mode };
            let report = run_campaign(&spec).map_err(|e| Usage(e.to_string()))?;
            emit(&report, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
