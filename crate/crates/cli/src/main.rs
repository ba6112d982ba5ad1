use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use edgereg::betti::{self, EngineConfig, DEFAULT_CHARACTERISTIC};
use edgereg::closed_forms::{predict_reg_cycle_power, predict_reg_path_power, CyclePowerQuery};
use edgereg::graph::{Shape, WeightedGraph};
use edgereg::monomial::MonomialIdeal;
use edgereg::power::{OneEdgeCycle, PowerStructure};
use edgereg::sweep::{join_weights, run_verification_sweep, ReportFormat, SweepConfig};
use edgereg::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "edgereg",
    version,
    about = "Regularity of powers of edge ideals of weighted paths and cycles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form reg(S/I^t) for an integrally closed weighted path or cycle.
    Predict(InstanceArgs),
    /// Regularity computed from the exact Betti table.
    Reg(EngineArgs),
    /// Integral-closure verdicts of the combinatorial and Newton-polyhedron checkers.
    Closure(GraphArgs),
    /// Graded Betti table.
    Betti(EngineArgs),
    /// Squarefree polarization of an ideal, as JSON.
    Polarize(SourceArgs),
    /// Ordered generators of I^t, with edge factorizations, for a cycle with one weighted edge.
    Factorize(StructureArgs),
    /// The colon ideals (L_{i+1}, ..., L_r) : L_i against their closed form.
    ColonTail(ColonArgs),
    /// Compare engine and closed forms over every weight vector in a range.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long, default_value = "cycle")]
    shape: Shape,
    /// Edge weights, comma- or dash-separated.
    #[arg(long)]
    weights: List,
}

#[derive(Args)]
struct InstanceArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, default_value_t = 1)]
    t: u32,
}

#[derive(Args)]
struct SourceArgs {
    #[arg(long)]
    shape: Option<Shape>,
    #[arg(long)]
    weights: Option<List>,
    #[arg(long, default_value_t = 1)]
    t: u32,
    /// Ideal JSON file: {"n": 3, "gens": [[1,1,0], ...]}.
    #[arg(long, conflicts_with_all = ["shape", "weights", "graph"])]
    ideal: Option<PathBuf>,
    /// Graph JSON file; the edge ideal is raised to the power --t.
    #[arg(long, conflicts_with_all = ["shape", "weights"])]
    graph: Option<PathBuf>,
}

#[derive(Args)]
struct EngineArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long = "char", default_value_t = DEFAULT_CHARACTERISTIC)]
    characteristic: u32,
    #[arg(long, default_value_t = EngineConfig::default().max_lattice)]
    max_lattice: usize,
    /// Print the full Betti table as well.
    #[arg(long)]
    table: bool,
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct StructureArgs {
    #[arg(long)]
    weights: List,
    #[arg(long, default_value_t = 1)]
    t: u32,
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct ColonArgs {
    #[command(flatten)]
    structure: StructureArgs,
    /// Position in the generator order; every position in C when omitted.
    #[arg(long)]
    i: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value = "cycle")]
    shape: Shape,
    /// Vertex counts, `a..b` or a single value.
    #[arg(long, default_value = "3..7", value_parser = parse_range)]
    n: (u32, u32),
    #[arg(long, default_value = "1..2", value_parser = parse_range)]
    t: (u32, u32),
    #[arg(long, default_value = "1,2,3")]
    alphabet: List,
    /// Characteristics, comma-separated.
    #[arg(long = "char", default_value = "32003,2")]
    characteristics: List,
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, default_value_t = EngineConfig::default().max_lattice)]
    max_lattice: usize,
    #[arg(long)]
    no_dedup: bool,
    #[arg(long)]
    no_timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: ReportFormat,
}

/// Positive integers separated by commas or dashes, e.g. `2,1,1` or `2-1-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct List(Vec<u32>);

impl std::str::FromStr for List {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split([',', '-'])
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse::<u32>().map_err(|e| format!("{p:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(List)
    }
}

impl std::ops::Deref for List {
    type Target = Vec<u32>;

    fn deref(&self) -> &Vec<u32> {
        &self.0
    }
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let parse = |p: &str| p.trim().parse::<u32>().map_err(|e| format!("{p:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok((parse(a)?, parse(b.trim_start_matches('='))?)),
        None => parse(s).map(|v| (v, v)),
    }
}

enum Failure {
    Check(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<(), Failure>;

fn graph_of(shape: Shape, weights: &[u32]) -> Result<WeightedGraph, Error> {
    match shape {
        Shape::Cycle => WeightedGraph::cycle(weights),
        Shape::Path => WeightedGraph::path(weights),
        Shape::General => Err(Error::Config(
            "use --graph with a JSON file for general graphs".into(),
        )),
    }
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_ideal(src: &SourceArgs) -> Result<MonomialIdeal, Error> {
    if let Some(path) = &src.ideal {
        return MonomialIdeal::from_json_str(&read(path)?);
    }
    let graph = match (&src.graph, &src.weights) {
        (Some(path), _) => WeightedGraph::from_json_str(&read(path)?)?,
        (None, Some(w)) => graph_of(src.shape.unwrap_or(Shape::Cycle), w)?,
        (None, None) => return Err(Error::Config("give --weights, --ideal or --graph".into())),
    };
    graph.edge_ideal()?.power(src.t)
}

fn predict(args: &InstanceArgs) -> CmdResult {
    let w = &args.graph.weights;
    let reg = match args.graph.shape {
        Shape::Cycle => predict_reg_cycle_power(&CyclePowerQuery::new(w.to_vec(), args.t))?,
        Shape::Path => predict_reg_path_power(w, args.t)?,
        Shape::General => {
            return Err(Error::Config("predictions exist for paths and cycles only".into()).into())
        }
    };
    println!("reg(S/I^{}) = {reg}", args.t);
    println!("reg(I^{}) = {}", args.t, reg + 1);
    Ok(())
}

fn engine_config(max_lattice: usize) -> EngineConfig {
    EngineConfig {
        max_lattice,
        ..EngineConfig::default()
    }
}

fn reg(args: &EngineArgs) -> CmdResult {
    let ideal = load_ideal(&args.source)?;
    let table = betti::betti_table(
        &ideal,
        args.characteristic,
        &engine_config(args.max_lattice),
    )?;
    let reg_i = table.regularity().ok_or(Error::ZeroIdeal)?;
    if args.format == "json" {
        let mut out = json!({ "characteristic": args.characteristic, "reg_quotient": reg_i - 1, "reg_ideal": reg_i });
        if args.table {
            out["betti"] =
                serde_json::to_value(table.to_json()).map_err(|e| Error::Io(e.to_string()))?;
        }
        println!("{out}");
    } else {
        println!("reg(S/I) = {}", reg_i - 1);
        println!("reg(I) = {reg_i}");
        if args.table {
            print!("{}", table.render());
        }
    }
    Ok(())
}

fn betti_cmd(args: &EngineArgs) -> CmdResult {
    let ideal = load_ideal(&args.source)?;
    let table = betti::betti_table(
        &ideal,
        args.characteristic,
        &engine_config(args.max_lattice),
    )?;
    if args.format == "json" {
        println!(
            "{}",
            serde_json::to_string(&table.to_json()).map_err(|e| Error::Io(e.to_string()))?
        );
    } else {
        print!("{}", table.render());
    }
    Ok(())
}

fn closure(args: &GraphArgs) -> CmdResult {
    let g = graph_of(args.shape, &args.weights)?;
    let combinatorial = g.is_integrally_closed_combinatorial();
    let algebraic = g.is_integrally_closed_algebraic()?;
    println!("combinatorial: {combinatorial}");
    println!("algebraic: {algebraic}");
    if let Some(vs) = g.forbidden_subgraph() {
        let names: Vec<String> = vs.iter().map(|v| format!("x{}", v + 1)).collect();
        println!("forbidden induced subgraph on {}", names.join(", "));
    }
    if combinatorial != algebraic {
        println!("agree: false");
        return Err(Failure::Check("the two closure checkers disagree".into()));
    }
    println!("agree: true");
    Ok(())
}

fn polarize(args: &SourceArgs) -> CmdResult {
    let polar = load_ideal(args)?.polarize()?;
    let out = json!({ "ideal": polar.ideal.to_json(), "variables": polar.variables });
    println!("{out}");
    Ok(())
}

fn factorize(args: &StructureArgs) -> CmdResult {
    let cycle = OneEdgeCycle::new(&args.weights)?;
    let gens = cycle.ordered_generators(args.t)?;
    if args.format == "json" {
        let out =
            json!({ "weights": cycle.weights(), "rotation": cycle.rotation(), "generators": gens });
        println!("{out}");
        return Ok(());
    }
    if cycle.rotation() != 0 {
        println!(
            "rotated by {}: weights {}",
            cycle.rotation(),
            join_weights(cycle.weights())
        );
    }
    println!("|G(I^{})| = {}, c = {}", args.t, gens.len(), gens.c);
    for (k, e) in gens.entries.iter().enumerate() {
        let exps: Vec<String> = e
            .factorization
            .exponents
            .iter()
            .map(u32::to_string)
            .collect();
        let marker = if k < gens.c { "*" } else { " " };
        println!(
            "{marker} L{:<3} ({})  {}",
            k + 1,
            exps.join(","),
            e.monomial
        );
    }
    Ok(())
}

fn colon_tail(args: &ColonArgs) -> CmdResult {
    let s = &args.structure;
    let ps = PowerStructure::new(&s.weights, s.t)?;
    let positions: Vec<usize> = match args.i {
        Some(i) => vec![i],
        None => (1..=ps.c()).collect(),
    };
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    for i in positions {
        let computed = ps.colon_tail(i)?;
        let predicted = ps.predicted_colon_tail(i)?;
        let agree = computed == predicted;
        if !agree {
            failed.push(i);
        }
        rows.push((i, computed, predicted, agree));
    }
    if s.format == "json" {
        let out: Vec<_> = rows
      .iter()
      .map(|(i, c, p, a)| json!({ "i": i, "computed": c.to_json(), "predicted": p.to_json(), "agree": a }))
      .collect();
        println!("{}", serde_json::Value::Array(out));
    } else {
        for (i, c, p, a) in &rows {
            println!("i={i} computed={c} predicted={p} agree={a}");
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "colon tails differ from the closed form at {failed:?}"
        )))
    }
}

fn sweep(args: &SweepArgs) -> CmdResult {
    let mut cfg = SweepConfig::new(
        args.shape,
        args.n.0 as usize,
        args.n.1 as usize,
        args.t.0,
        args.t.1,
    );
    cfg.alphabet = args.alphabet.to_vec();
    cfg.characteristics = args.characteristics.to_vec();
    cfg.workers = args.workers;
    cfg.engine = engine_config(args.max_lattice);
    cfg.dedup = !args.no_dedup;
    cfg.timing = !args.no_timing;
    cfg.output = args.out.clone();
    cfg.format = args.format;
    let report = run_verification_sweep(&cfg)?;
    if cfg.output.is_none() {
        print!("{}", report.render(cfg.format)?);
    }
    let s = report.summary;
    eprintln!(
        "total {} matched {} mismatched {} not-closed {} capped {} oracle-disagreements {}",
        s.total,
        s.matched,
        s.mismatched,
        s.skipped_not_closed,
        s.skipped_capped,
        s.oracle_disagreements
    );
    if report.passed() {
        Ok(())
    } else {
        for r in report.mismatches() {
            eprintln!(
                "mismatch: {} {} t={} predicted {:?} engine {:?}",
                r.shape,
                join_weights(&r.weights),
                r.t,
                r.predicted,
                r.regs
            );
        }
        Err(Failure::Check("sweep found mismatches".into()))
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::LatticeCapExceeded { .. } | Error::VariableCapExceeded { .. } => EXIT_CAP,
        Error::StructureViolation(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Predict(a) => predict(a),
        Command::Reg(a) => reg(a),
        Command::Closure(a) => closure(a),
        Command::Betti(a) => betti_cmd(a),
        Command::Polarize(a) => polarize(a),
        Command::Factorize(a) => factorize(a),
        Command::ColonTail(a) => colon_tail(a),
        Command::Sweep(a) => sweep(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("edgereg: {msg}");
            ExitCode::from(EXIT_FAIL)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("edgereg: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
