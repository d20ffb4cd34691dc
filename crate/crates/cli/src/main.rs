//! `fzgraph`: exact graph counts from algebraic traces, cross-checked
//! against brute-force oracles.
//!
//! Exit codes: 0 success (and, for `verify`, full agreement), 1 verify
//! disagreement, 2 input or usage error, 3 size-guard refusal, 4 internal
//! consistency failure.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use fzgraph_core::corpus;
use fzgraph_core::graph::{parse_edge_list, Graph, GraphError};
use fzgraph_core::index::{k_subsets, MultiIndex, MAX_GENERATORS};
use fzgraph_core::linalg::{det, LinalgError};
use fzgraph_core::operators::{self, OperatorError, SizePolicy};
use fzgraph_core::oracles::{self, OracleError};

#[derive(Parser)]
#[command(
    name = "fzgraph",
    version,
    about = "Exact spanning-tree, cycle-cover and Hamiltonian-cycle counts via fermion/zeon operator traces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count one quantity with one method and print a report
    Count(CountArgs),
    /// Run every applicable method plus the matching brute-force oracle
    /// and report agreement
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CountArgs {
    /// What to count
    #[arg(value_enum)]
    quantity: Quantity,
    /// Counting method; see long help for the per-quantity lists
    #[arg(long)]
    method: String,
    /// Edge-list file, or `-` for standard input
    #[arg(long)]
    input: String,
    /// Fix the vertex count instead of inferring it from the largest id
    #[arg(long)]
    vertices: Option<usize>,
    /// Subset size for cycle-matching traces (defaults to all vertices)
    #[arg(long)]
    level: Option<usize>,
    /// Anchor vertex for the goulden-jackson method
    #[arg(long, default_value_t = 0)]
    anchor: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Lift the vertex guard on formulas with 2^n terms
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Edge-list file, or `-` for standard input
    #[arg(long, conflicts_with = "builtin")]
    input: Option<String>,
    /// Check the built-in corpus of named graphs instead of a file
    #[arg(long)]
    builtin: bool,
    /// Fix the vertex count instead of inferring it from the largest id
    #[arg(long)]
    vertices: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quantity {
    SpanningTrees,
    Hamiltonian,
    CycleMatching,
}

impl Quantity {
    fn name(self) -> &'static str {
        match self {
            Quantity::SpanningTrees => "spanning-trees",
            Quantity::Hamiltonian => "hamiltonian",
            Quantity::CycleMatching => "cycle-matching",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// A failure carrying its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::new(2, e.to_string())
    }
}

impl From<OperatorError> for Failure {
    fn from(e: OperatorError) -> Self {
        let code = match &e {
            OperatorError::SubsetGuard { .. } => 3,
            OperatorError::Inconsistent { .. } => 4,
            OperatorError::Linalg(LinalgError::SizeLimit { .. }) => 3,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match &e {
            OracleError::SizeLimit { .. } => 3,
            OracleError::AmbientMismatch { .. } => 2,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(2, e.to_string())
    }
}

#[derive(Serialize)]
struct GraphMeta {
    n: usize,
    m: usize,
}

#[derive(Serialize)]
struct RunReport {
    graph: GraphMeta,
    quantity: String,
    method: String,
    value: String,
    elapsed_ms: f64,
}

#[derive(Serialize)]
struct CheckReport {
    quantity: String,
    values: BTreeMap<String, String>,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    name: String,
    graph: GraphMeta,
    checks: Vec<CheckReport>,
    pass: bool,
}

#[derive(Serialize)]
struct VerifySummary {
    reports: Vec<VerifyReport>,
    pass: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Count(args) => cmd_count(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn load_graph(input: &str, vertices: Option<usize>) -> Result<Graph, Failure> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        fs::read_to_string(input)?
    };
    Ok(parse_edge_list(&text, vertices)?)
}

fn cmd_count(args: &CountArgs) -> Result<ExitCode, Failure> {
    let graph = load_graph(&args.input, args.vertices)?;
    let policy = if args.allow_large { SizePolicy::AllowLarge } else { SizePolicy::Guarded };
    let started = Instant::now();
    let value = dispatch_count(&graph, args, policy)?;
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    let report = RunReport {
        graph: GraphMeta { n: graph.n(), m: graph.edge_count() },
        quantity: args.quantity.name().to_string(),
        method: args.method.clone(),
        value: value.to_string(),
        elapsed_ms,
    };
    match args.format {
        Format::Json => println!("{}", serde_json::to_string(&report).expect("report serializes")),
        Format::Text => println!(
            "{} ({}) = {}  [n={} m={} {:.3}ms]",
            report.quantity, report.method, report.value, report.graph.n, report.graph.m, report.elapsed_ms
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn dispatch_count(graph: &Graph, args: &CountArgs, policy: SizePolicy) -> Result<BigInt, Failure> {
    let method = args.method.as_str();
    match args.quantity {
        Quantity::SpanningTrees => match method {
            "fermion-trace" => Ok(operators::spanning_tree_count(graph)?),
            "kirchhoff-cofactor" => kirchhoff_cofactor(graph, 0),
            "oracle" => Ok(oracles::count_spanning_trees_bruteforce(graph)?),
            _ => Err(unknown_method(method, &["fermion-trace", "kirchhoff-cofactor", "oracle"])),
        },
        Quantity::Hamiltonian => match method {
            "fz-trace" => Ok(operators::hamiltonian_fz_trace(graph, policy)?),
            "fz-integral" => Ok(operators::fz_convolution_integral(graph, policy)?),
            "liu" => Ok(operators::hamiltonian_liu(graph, policy)?),
            "nilpotent" => Ok(operators::hamiltonian_nilpotent(graph, policy)?),
            "goulden-jackson" => goulden_jackson_undirected(graph, args.anchor, policy),
            "oracle" => Ok(oracles::count_hamiltonian_cycles_bruteforce(graph)?),
            _ => Err(unknown_method(
                method,
                &["fz-trace", "fz-integral", "liu", "goulden-jackson", "nilpotent", "oracle"],
            )),
        },
        Quantity::CycleMatching => {
            let level = args.level.unwrap_or(graph.n());
            match method {
                "zeon-trace" => Ok(operators::zeon_level_trace(&graph.adjacency(), level, policy)?),
                "oracle" => cycle_matching_oracle(graph, level),
                _ => Err(unknown_method(method, &["zeon-trace", "oracle"])),
            }
        }
    }
}

fn unknown_method(method: &str, valid: &[&str]) -> Failure {
    Failure::new(2, format!("unknown method {method:?}; expected one of {}", valid.join(", ")))
}

/// The matrix-tree count as a single principal cofactor of the Laplacian.
fn kirchhoff_cofactor(graph: &Graph, vertex: usize) -> Result<BigInt, Failure> {
    if graph.n() == 0 {
        return Err(OperatorError::EmptyGraph.into());
    }
    let lap = graph.laplacian();
    Ok(det(&lap.deleted(vertex, vertex)).map_err(OperatorError::from)?)
}

/// The anchored determinant-permanent sum counts directed circuits; halve
/// it for the undirected count (zero below three vertices, where no cycle
/// exists).
fn goulden_jackson_undirected(graph: &Graph, anchor: usize, policy: SizePolicy) -> Result<BigInt, Failure> {
    if graph.n() < 3 {
        // still validate the anchor against the graph
        let _ = operators::hamiltonian_goulden_jackson(graph, anchor, policy)?;
        return Ok(BigInt::zero());
    }
    let directed = operators::hamiltonian_goulden_jackson(graph, anchor, policy)?;
    let (half, parity) = directed.div_rem(&BigInt::from(2));
    if !parity.is_zero() {
        return Err(Failure::new(
            4,
            format!("internal consistency failure: directed circuit count {directed} is odd"),
        ));
    }
    Ok(half)
}

/// Sum of cycle-matching covers over all level-sized vertex subsets,
/// straight from the enumeration oracles.
fn cycle_matching_oracle(graph: &Graph, level: usize) -> Result<BigInt, Failure> {
    let n = graph.n();
    if n > MAX_GENERATORS {
        return Err(Failure::new(3, format!("{n} vertices exceed the {MAX_GENERATORS}-vertex subset cap")));
    }
    if level > n {
        return Err(OperatorError::LevelOutOfRange { level, n }.into());
    }
    let mut total = BigInt::zero();
    for mask in k_subsets(n, level) {
        let verts = MultiIndex::from_bits(mask, n).map_err(OperatorError::from)?;
        total += oracles::cycle_matching_covers(graph, &verts)?;
    }
    Ok(total)
}

/// Caps under which `verify` can afford every oracle.
fn within_oracle_caps(graph: &Graph) -> bool {
    graph.n() <= oracles::CYCLE_COVER_MAX_VERTICES && graph.edge_count() <= oracles::SPANNING_TREE_MAX_EDGES
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, Failure> {
    let targets: Vec<(String, Graph)> = if args.builtin {
        corpus::builtin().into_iter().map(|(name, g)| (name.to_string(), g)).collect()
    } else {
        let input = args.input.as_deref().ok_or_else(|| {
            Failure::new(2, "verify needs --input FILE or --builtin")
        })?;
        vec![(input.to_string(), load_graph(input, args.vertices)?)]
    };

    let mut reports = Vec::new();
    for (name, graph) in &targets {
        reports.push(verify_graph(name, graph)?);
    }
    let pass = reports.iter().all(|r| r.pass);

    match args.format {
        Format::Json => {
            let summary = VerifySummary { reports, pass };
            println!("{}", serde_json::to_string(&summary).expect("summary serializes"));
        }
        Format::Text => {
            for report in &reports {
                println!("== {} (n={} m={})", report.name, report.graph.n, report.graph.m);
                for check in &report.checks {
                    let values = check
                        .values
                        .iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect::<Vec<_>>()
                        .join(" ");
                    let tag = if check.pass { "PASS" } else { "FAIL" };
                    println!("{:<16} {values}  {tag}", check.quantity);
                }
            }
            println!("verify: {}", if pass { "PASS" } else { "FAIL" });
        }
    }
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn verify_graph(name: &str, graph: &Graph) -> Result<VerifyReport, Failure> {
    let n = graph.n();
    if n == 0 {
        return Err(Failure::new(2, format!("{name}: graph has no vertices")));
    }
    if !within_oracle_caps(graph) {
        return Err(Failure::new(
            3,
            format!(
                "{name}: graph exceeds the oracle caps (n <= {}, m <= {})",
                oracles::CYCLE_COVER_MAX_VERTICES,
                oracles::SPANNING_TREE_MAX_EDGES
            ),
        ));
    }
    let policy = SizePolicy::Guarded;
    let mut checks = Vec::new();

    let mut trees = BTreeMap::new();
    trees.insert("fermion-trace".to_string(), operators::spanning_tree_count(graph)?.to_string());
    trees.insert("kirchhoff-cofactor".to_string(), kirchhoff_cofactor(graph, 0)?.to_string());
    trees.insert("oracle".to_string(), oracles::count_spanning_trees_bruteforce(graph)?.to_string());
    checks.push(check_from("spanning-trees", trees));

    let mut cycles = BTreeMap::new();
    cycles.insert("fz-trace".to_string(), operators::hamiltonian_fz_trace(graph, policy)?.to_string());
    cycles.insert("fz-integral".to_string(), operators::fz_convolution_integral(graph, policy)?.to_string());
    cycles.insert("liu".to_string(), operators::hamiltonian_liu(graph, policy)?.to_string());
    cycles.insert("nilpotent".to_string(), operators::hamiltonian_nilpotent(graph, policy)?.to_string());
    if n >= 3 {
        cycles.insert(
            "goulden-jackson/2".to_string(),
            goulden_jackson_undirected(graph, 0, policy)?.to_string(),
        );
    }
    cycles.insert(
        "oracle".to_string(),
        oracles::count_hamiltonian_cycles_bruteforce(graph)?.to_string(),
    );
    checks.push(check_from("hamiltonian", cycles));

    let mut covers = BTreeMap::new();
    covers.insert(
        "zeon-trace".to_string(),
        operators::cycle_matching_convolution(graph, policy)?.to_string(),
    );
    covers.insert("oracle".to_string(), cycle_matching_oracle(graph, n)?.to_string());
    checks.push(check_from("cycle-matching", covers));

    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        name: name.to_string(),
        graph: GraphMeta { n, m: graph.edge_count() },
        checks,
        pass,
    })
}

fn check_from(quantity: &str, values: BTreeMap<String, String>) -> CheckReport {
    let mut iter = values.values();
    let first = iter.next().cloned();
    let pass = match first {
        Some(ref v) => iter.all(|other| other == v),
        None => true,
    };
    CheckReport { quantity: quantity.to_string(), values, pass }
}
