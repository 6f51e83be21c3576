//! Command-line surface: analyze a graph end to end, reproduce the family
//! classifications, dump fidelity traces, and export the walk matrices.

use clap::{Args, Parser, Subcommand};
use grover_pst::error::Error;
use grover_pst::graph::{FamilySpec, Graph};
use grover_pst::{oracle, pst, report, walk};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

mod classify;

#[derive(Parser)]
#[command(
    name = "grover-pst",
    version,
    about = "Perfect state transfer and periodicity of Grover walks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline on one graph: walk, spectrum, periodicity, transfer
    /// certificates, oracle verification.
    Analyze(AnalyzeArgs),
    /// Sweep a family's parameter space and tabulate the transfer verdicts.
    Classify(classify::ClassifyArgs),
    /// Fidelity traces by direct unitary evolution.
    Simulate(SimulateArgs),
    /// Write S.csv, N.csv, K.csv, U.csv, P.csv for a graph.
    DumpMatrices(DumpArgs),
}

#[derive(Args)]
struct GraphInput {
    /// Family spec: cycle:N, complete:N, multipartite:P1,P2,..., hypercube:D,
    /// hamming:D,Q,I, johnson:N,K,I, petersen
    #[arg(long, conflicts_with = "edges")]
    family: Option<String>,
    /// Edge-list file: first line n, then one "u v" pair per line (0-indexed)
    #[arg(long)]
    edges: Option<PathBuf>,
}

impl GraphInput {
    fn load(&self) -> Result<(Graph, String), Error> {
        match (&self.family, &self.edges) {
            (Some(f), None) => {
                let spec = FamilySpec::from_str(f)?;
                Ok((spec.build()?, spec.name()))
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)?;
                let name = path.file_name().map_or_else(
                    || path.display().to_string(),
                    |s| s.to_string_lossy().into_owned(),
                );
                Ok((Graph::from_edge_list_text(&text)?, name))
            }
            _ => Err(Error::Parse(
                "exactly one of --family or --edges is required".into(),
            )),
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Emit the JSON report instead of human-readable text
    #[arg(long)]
    json: bool,
    /// Time cap for generic transfer scans and aperiodic oracle sweeps
    #[arg(long, default_value_t = pst::DEFAULT_TAU_MAX)]
    tau_max: usize,
    /// Oracle fidelity tolerance: a transfer counts when fidelity >= 1 - X
    #[arg(long, default_value_t = 1e-8)]
    tolerance: f64,
    /// Skip the brute-force oracle cross-check
    #[arg(long)]
    no_oracle: bool,
    /// Also write report.json and graph.json into this directory
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Source vertex; omit to trace every source
    #[arg(long)]
    source: Option<usize>,
    /// Number of time steps to evolve
    #[arg(long, default_value_t = 64)]
    tau_max: usize,
    /// Directory for trace CSVs (required when tracing every source)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DumpArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Output directory for the CSV files
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    let started = Instant::now();
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Classify(args) => classify::run(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::DumpMatrices(args) => cmd_dump(args),
    };
    match result {
        Ok(()) => {
            eprintln!("completed in {} ms", started.elapsed().as_millis());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// GROVER_PST_THREADS caps the rayon pool used by the oracle sweeps.
fn init_thread_pool() {
    if let Ok(v) = std::env::var("GROVER_PST_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

/// 2 for capacity refusals, 1 for parse errors and everything else.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Capacity { .. } => 2,
        _ => 1,
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), Error> {
    let (g, name) = args.input.load()?;
    let r =
        report::analyze_with_tolerance(&g, &name, args.tau_max, !args.no_oracle, args.tolerance)?;
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir)?;
        let json = serde_json::to_string_pretty(&r).expect("report serializes");
        std::fs::write(dir.join("report.json"), json)?;
        std::fs::write(
            dir.join("graph.json"),
            serde_json::to_string_pretty(&g.to_json()).expect("graph serializes"),
        )?;
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
    } else {
        print!("{}", report::render_human(&r));
    }
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), Error> {
    let (g, _name) = args.input.load()?;
    let w = walk::build_walk(&g)?;
    match (args.source, &args.out) {
        (Some(u), None) => {
            let trace = oracle::fidelity_trace(&w, u, args.tau_max)?;
            let mut stdout = std::io::stdout().lock();
            oracle::write_trace_csv(&trace, &mut stdout)?;
        }
        (source, Some(dir)) => {
            std::fs::create_dir_all(dir)?;
            let sources: Vec<usize> = match source {
                Some(u) => vec![u],
                None => (0..g.vertex_count()).collect(),
            };
            for u in sources {
                let trace = oracle::fidelity_trace(&w, u, args.tau_max)?;
                let mut file = std::io::BufWriter::new(std::fs::File::create(
                    dir.join(format!("trace_source_{u}.csv")),
                )?);
                oracle::write_trace_csv(&trace, &mut file)?;
            }
        }
        (None, None) => {
            return Err(Error::Parse(
                "tracing every source needs --out DIR (or pass --source U)".into(),
            ))
        }
    }
    Ok(())
}

fn cmd_dump(args: DumpArgs) -> Result<(), Error> {
    let (g, _name) = args.input.load()?;
    let w = walk::build_walk(&g)?;
    w.dump_matrices_csv(&args.out)?;
    Ok(())
}
