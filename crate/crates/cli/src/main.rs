//! `cdomain`: command-line front end for the finite order-theory toolkit.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage or
//! input errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use cdomain_core::acceptance::Selector;
use cdomain_core::order::Path;
use cdomain_core::partitions::Orientation;
use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{CliError, Inputs, RunReport, Versions};

#[derive(Parser)]
#[command(name = "cdomain", version, about = "Finite checks on posets, partitions, *-algebras and orthomodular posets")]
struct Cli {
    /// Print a JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite posets.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Equivalence relations on {0..n-1}.
    #[command(subcommand)]
    Eqrel(EqrelCmd),
    /// Triadic relations on [0,1].
    #[command(subcommand)]
    Cantor(CantorCmd),
    /// Commutative subalgebras of matrix *-algebras.
    #[command(subcommand)]
    Calg(CalgCmd),
    /// Orthomodular posets.
    #[command(subcommand)]
    Omp(OmpCmd),
    /// Cantor-Bendixson rank.
    #[command(subcommand)]
    Cb(CbCmd),
    /// Finite topological spaces.
    #[command(subcommand)]
    Topo(TopoCmd),
    /// Run the acceptance suite.
    Accept {
        #[arg(value_parser = parse_selector)]
        suite: Selector,
    },
}

#[derive(Args)]
struct InputArg {
    /// JSON input file.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct DotArg {
    /// Write a DOT diagram here.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathArg {
    Definitional,
    Principal,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    Refinement,
    Subalgebra,
}

#[derive(Subcommand)]
enum PosetCmd {
    /// Validate a poset and summarize it.
    Check(InputArg),
    /// The seven domain-theoretic properties.
    Report {
        #[command(flatten)]
        input: InputArg,
        /// Subset-size bound for fin(C).
        #[arg(long)]
        fin_bound: Option<usize>,
        #[arg(long, value_enum)]
        path: Option<PathArg>,
        /// Search order-dense chains generically.
        #[arg(long)]
        generic_dense_chain: bool,
    },
    /// Covering pairs.
    Hasse {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        dot: DotArg,
    },
}

#[derive(Args)]
struct PairArgs {
    /// JSON file or inline classes such as `{0,1}{2}`.
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
}

#[derive(Subcommand)]
enum EqrelCmd {
    Join(PairArgs),
    Meet(PairArgs),
    /// All partitions of an n-set.
    Lattice {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "subalgebra")]
        orientation: OrientationArg,
        #[command(flatten)]
        dot: DotArg,
    },
}

#[derive(Subcommand)]
enum CantorCmd {
    /// Check the counterexample construction at a depth.
    Verify {
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Finite stage of the order-dense chain.
    Chain {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum CalgCmd {
    /// Generated *-algebra.
    Generate(InputArg),
    /// Lattice of commutative subalgebras.
    Lattice {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        dot: DotArg,
    },
    Atoms(InputArg),
    Spectrum(InputArg),
    /// Subalgebras against Boolean subalgebras of projections.
    CafIso(InputArg),
}

#[derive(Subcommand)]
enum OmpCmd {
    /// Check the five axioms.
    Validate(InputArg),
    /// Boolean subalgebras.
    Boolsub {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        dot: DotArg,
    },
}

#[derive(Subcommand)]
enum CbCmd {
    /// Rank of `[0, α]` for an ordinal such as `w^2*3+w+1`, or of a finite space.
    Rank {
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        ordinal: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TopoCmd {
    /// Stonean and scattered, with separation properties.
    Check(InputArg),
}

fn parse_selector(s: &str) -> Result<Selector, String> {
    s.parse()
}

impl From<PathArg> for Path {
    fn from(p: PathArg) -> Path {
        match p {
            PathArg::Definitional => Path::Definitional,
            PathArg::Principal => Path::Principal,
        }
    }
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Orientation {
        match o {
            OrientationArg::Refinement => Orientation::Refinement,
            OrientationArg::Subalgebra => Orientation::Subalgebra,
        }
    }
}

fn dispatch(command: Command, inputs: &mut Inputs) -> Result<(String, report::Done, Option<PathBuf>), CliError> {
    use commands as c;
    Ok(match command {
        Command::Poset(PosetCmd::Check(a)) => ("poset check".into(), c::poset_check(&a.input, inputs)?, None),
        Command::Poset(PosetCmd::Report { input, fin_bound, path, generic_dense_chain }) => (
            "poset report".into(),
            c::poset_report(&input.input, fin_bound, path.map(Into::into), generic_dense_chain, inputs)?,
            None,
        ),
        Command::Poset(PosetCmd::Hasse { input, dot }) => ("poset hasse".into(), c::poset_hasse(&input.input, inputs)?, dot.dot),
        Command::Eqrel(EqrelCmd::Join(p)) => ("eqrel join".into(), c::eqrel_pair(&p.left, &p.right, true, inputs)?, None),
        Command::Eqrel(EqrelCmd::Meet(p)) => ("eqrel meet".into(), c::eqrel_pair(&p.left, &p.right, false, inputs)?, None),
        Command::Eqrel(EqrelCmd::Lattice { n, orientation, dot }) => {
            ("eqrel lattice".into(), c::eqrel_lattice(n, orientation.into(), inputs)?, dot.dot)
        }
        Command::Cantor(CantorCmd::Verify { depth }) => ("cantor verify".into(), c::cantor_verify(depth, inputs)?, None),
        Command::Cantor(CantorCmd::Chain { n }) => ("cantor chain".into(), c::cantor_chain(n, inputs)?, None),
        Command::Calg(CalgCmd::Generate(a)) => ("calg generate".into(), c::calg_generate(&a.input, inputs)?, None),
        Command::Calg(CalgCmd::Lattice { input, dot }) => ("calg lattice".into(), c::calg_lattice(&input.input, inputs)?, dot.dot),
        Command::Calg(CalgCmd::Atoms(a)) => ("calg atoms".into(), c::calg_atoms(&a.input, inputs)?, None),
        Command::Calg(CalgCmd::Spectrum(a)) => ("calg spectrum".into(), c::calg_spectrum(&a.input, inputs)?, None),
        Command::Calg(CalgCmd::CafIso(a)) => ("calg caf-iso".into(), c::calg_caf_iso(&a.input, inputs)?, None),
        Command::Omp(OmpCmd::Validate(a)) => ("omp validate".into(), c::omp_validate(&a.input, inputs)?, None),
        Command::Omp(OmpCmd::Boolsub { input, dot }) => ("omp boolsub".into(), c::omp_boolsub(&input.input, inputs)?, dot.dot),
        Command::Cb(CbCmd::Rank { ordinal, input }) => ("cb rank".into(), c::cb_rank(ordinal.as_deref(), input.as_deref(), inputs)?, None),
        Command::Topo(TopoCmd::Check(a)) => ("topo check".into(), c::topo_check(&a.input, inputs)?, None),
        Command::Accept { suite } => ("accept".into(), c::accept(suite, inputs), None),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let (command, done, dot_path) = match dispatch(cli.command, &mut inputs) {
        Ok(v) => v,
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = dot_path {
        let Some(dot) = &done.dot else {
            eprintln!("error: no diagram for this command");
            return ExitCode::from(2);
        };
        if let Err(e) = std::fs::write(&path, dot) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if cli.json {
        let report = RunReport {
            command,
            inputs_digest: inputs.digest(),
            pass: done.pass,
            results: done.results,
            versions: Versions { cdomain: env!("CARGO_PKG_VERSION") },
            wall_time_ms: start.elapsed().as_millis(),
        };
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print!("{}", done.text);
    }
    if done.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
