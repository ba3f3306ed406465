//! Command-line front end: argument handling, commands and output.

pub mod input;
pub mod report;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use edgerees::polytope::{facet_system, FacetSource, FacetSystem, Inequality, PointQuery};
use edgerees::regularity::{
    analyze, betti_table, default_j_max, invariants, normality, regularity_from_table, AnalyzeOptions, BettiOptions,
    RegStatus,
};
use edgerees::{FieldChoice, Graph, ToricPresentation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use input::{parse_graph, parse_presentation, read_source, InputError};
use report::{
    to_json, BatchDocument, BatchRow, BettiSection, InputSection, PolytopeSection, ReportDocument, RouteSection,
    TOOL_VERSION,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{0}")]
    Compute(#[from] edgerees::Error),
    #[error("cannot write {path}: {message}")]
    Output { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Compute(_) | CliError::Output { .. } => 3,
        }
    }
}

pub const EXIT_TRUNCATED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "edgerees", version, about = "Regularity of Rees algebras of edge ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants, normality and regularity of the Rees algebra of a graph.
    Analyze(AnalyzeArgs),
    /// Graded Betti diagram of the edge ring, the Rees algebra or a raw presentation.
    Betti(BettiArgs),
    /// Facets and lattice points of the edge polytope of the cone graph.
    Polytope(PolytopeArgs),
    /// One report row per graph of a family.
    Batch(BatchArgs),
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write the JSON document here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Record wall-clock time in `timing_ms`.
    #[arg(long)]
    pub timing: bool,
    /// Print only the JSON document.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct AnalyzeArgs {
    /// Edge-list or JSON file, `-` for standard input.
    pub input: String,
    #[arg(long)]
    pub jmax: Option<usize>,
    #[arg(long, default_value = "rational")]
    pub field: FieldChoice,
    /// Also run the Betti route on normal inputs.
    #[arg(long)]
    pub cross_check: bool,
    #[arg(long)]
    pub max_degrees: Option<usize>,
    /// Exit with status 4 when only a lower bound is available.
    #[arg(long)]
    pub require_exact: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ring {
    Edge,
    Rees,
}

#[derive(Args, Debug, Clone)]
pub struct BettiArgs {
    /// Edge-list or JSON file, `-` for standard input.
    #[arg(required_unless_present = "presentation", conflicts_with = "presentation")]
    pub input: Option<String>,
    /// Raw generators such as "2,0;1,1;0,2" instead of a graph.
    #[arg(long)]
    pub presentation: Option<String>,
    #[arg(long, value_enum, default_value = "rees")]
    pub ring: Ring,
    #[arg(long)]
    pub jmax: Option<usize>,
    #[arg(long, default_value = "rational")]
    pub field: FieldChoice,
    #[arg(long)]
    pub max_degrees: Option<usize>,
    #[arg(long)]
    pub require_exact: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct PolytopeArgs {
    /// Edge-list or JSON file, `-` for standard input.
    pub input: String,
    /// Dilation whose lattice points are listed.
    #[arg(long)]
    pub q: Option<u32>,
    /// Relative interior points only.
    #[arg(long)]
    pub interior: bool,
    /// Points with every coordinate positive only.
    #[arg(long)]
    pub positive_only: bool,
    #[arg(long)]
    pub max_points: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Paths,
    Cycles,
    DisjointEdges,
    /// `m` disjoint triangles.
    DisjointUnions,
    Random,
}

#[derive(Args, Debug, Clone)]
pub struct BatchArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// First parameter of the range (vertices, or copies for the disjoint families).
    #[arg(long, default_value_t = 1)]
    pub from: usize,
    #[arg(long, default_value_t = 5)]
    pub to: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Vertices of each random graph.
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    /// Edge probability of each random graph.
    #[arg(long, default_value_t = 0.3)]
    pub p: f64,
    /// Number of random graphs.
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long)]
    pub jmax: Option<usize>,
    #[arg(long, default_value = "rational")]
    pub field: FieldChoice,
    #[arg(long)]
    pub max_degrees: Option<usize>,
    #[arg(long)]
    pub require_exact: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// What a command produced: optional human-readable text, the JSON
/// document, and whether some regularity is only a lower bound.
pub struct Output {
    pub text: Option<String>,
    pub json: String,
    pub truncated: bool,
}

fn read_graph(path: &str) -> Result<Graph, CliError> {
    Ok(parse_graph(&read_source(path)?)?)
}

fn graph_input(command: &str, source: &str, g: &Graph, field: FieldChoice, j_max: Option<usize>) -> InputSection {
    InputSection {
        command: command.into(),
        source: source.into(),
        n: Some(g.n()),
        edges: Some(g.edges().into_iter().map(|(i, j)| [i, j]).collect()),
        generators: None,
        field,
        j_max,
    }
}

fn elapsed_ms(start: Instant, enabled: bool) -> Option<u64> {
    enabled.then(|| start.elapsed().as_millis() as u64)
}

fn polytope_section(fs: &FacetSystem, q0: u32) -> PolytopeSection {
    PolytopeSection {
        graph: "cone".into(),
        ambient_dim: fs.ambient_dim,
        dimension: fs.dimension(),
        q0,
        facets: fs.inequalities.clone(),
        q: None,
        interior: false,
        positive_only: false,
        points: Vec::new(),
    }
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<Output, CliError> {
    let start = Instant::now();
    let g = read_graph(&args.input)?;
    let opts = AnalyzeOptions {
        j_max: args.jmax,
        field: args.field,
        cross_check: args.cross_check,
        max_degrees: args.max_degrees,
    };
    let report = analyze(&g, opts)?;
    let polytope = match report.q0 {
        Some(q0) => Some(polytope_section(&facet_system(&g.cone_graph()?)?, q0)),
        None => None,
    };
    let betti = report.betti.as_ref().map(|b| BettiSection {
        ring: "rees".into(),
        j_max: b.j_max,
        regularity: b.regularity,
        homological_bound: b.table.homological_bound,
        multidegrees_examined: b.table.multidegrees_examined,
        entries: b.table.entries.clone(),
        totals: b.table.totals(),
        diagram: b.table.render(),
    });
    let j_max = report.betti.as_ref().map(|b| b.j_max);
    let doc = ReportDocument {
        tool_version: TOOL_VERSION.into(),
        input: graph_input("analyze", &args.input, &g, args.field, j_max),
        invariants: Some(report.invariants),
        normality: Some(report.normality),
        route: Some(RouteSection {
            kind: report.route,
            q0: report.q0,
            regularity: report.regularity,
            discrepancy: report.discrepancy,
        }),
        betti,
        polytope,
        verdicts: report.verdicts,
        timing_ms: elapsed_ms(start, args.output.timing),
    };
    Ok(Output { text: None, json: to_json(&doc), truncated: report.regularity.status == RegStatus::LowerBound })
}

pub fn cmd_betti(args: &BettiArgs) -> Result<Output, CliError> {
    let start = Instant::now();
    let (presentation, graph, ring, source) = match (&args.presentation, &args.input) {
        (Some(spec), _) => (parse_presentation(spec)?, None, "presentation", spec.clone()),
        (None, Some(path)) => {
            let g = read_graph(path)?;
            let p = match args.ring {
                Ring::Edge => ToricPresentation::edge_ring(&g)?,
                Ring::Rees => ToricPresentation::rees_algebra(&g)?,
            };
            let ring = if args.ring == Ring::Edge { "edge" } else { "rees" };
            (p, Some(g), ring, path.clone())
        }
        (None, None) => return Err(InputError::Invalid("an input file or --presentation is required".into()).into()),
    };
    let j_max = args.jmax.unwrap_or_else(|| match &graph {
        Some(g) => default_j_max(g),
        None => presentation.num_generators() + 1,
    });
    let table = betti_table(
        &presentation,
        j_max,
        BettiOptions { field: args.field, multigraded: false, max_degrees: args.max_degrees },
    )?;
    let regularity = regularity_from_table(&table)?;
    let diagram = table.render();
    let input = match &graph {
        Some(g) => graph_input("betti", &source, g, args.field, Some(j_max)),
        None => InputSection {
            command: "betti".into(),
            source: "presentation".into(),
            n: None,
            edges: None,
            generators: Some(presentation.generators().to_vec()),
            field: args.field,
            j_max: Some(j_max),
        },
    };
    let doc = ReportDocument {
        tool_version: TOOL_VERSION.into(),
        input,
        invariants: graph.as_ref().map(invariants),
        normality: graph.as_ref().map(normality),
        route: None,
        betti: Some(BettiSection {
            ring: ring.into(),
            j_max,
            regularity,
            homological_bound: table.homological_bound,
            multidegrees_examined: table.multidegrees_examined,
            entries: table.entries.clone(),
            totals: table.totals(),
            diagram: diagram.clone(),
        }),
        polytope: None,
        verdicts: Vec::new(),
        timing_ms: elapsed_ms(start, args.output.timing),
    };
    let status = match regularity.status {
        RegStatus::Exact => "exact",
        RegStatus::LowerBound => "lower bound",
    };
    let text = format!("{diagram}reg = {} ({status}, j_max = {j_max})\n", regularity.value);
    Ok(Output { text: Some(text), json: to_json(&doc), truncated: regularity.status == RegStatus::LowerBound })
}

fn describe(ineq: &Inequality) -> String {
    let term = |k: usize| format!("z{}", k + 1);
    let pos: Vec<String> = (0..ineq.coeffs.len()).filter(|&k| ineq.coeffs[k] > 0).map(term).collect();
    let neg: Vec<String> = (0..ineq.coeffs.len()).filter(|&k| ineq.coeffs[k] < 0).map(term).collect();
    let mut lhs = pos.join(" + ");
    for t in neg {
        lhs.push_str(" - ");
        lhs.push_str(&t);
    }
    let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let tag = match &ineq.source {
        FacetSource::RegularVertex { vertex } => format!("regular vertex {vertex}"),
        FacetSource::Fundamental { set, neighbors } => {
            format!("fundamental set {{{}}}, neighbours {{{}}}", list(set), list(neighbors))
        }
    };
    format!("  {lhs} >= 0    [{tag}]")
}

pub fn cmd_polytope(args: &PolytopeArgs) -> Result<Output, CliError> {
    let start = Instant::now();
    let g = read_graph(&args.input)?;
    if g.num_edges() == 0 {
        return Err(edgerees::Error::EmptyEdgeSet.into());
    }
    let cone = g.cone_graph()?;
    let fs = facet_system(&cone)?;
    let q0 = fs.interior_threshold()?;
    let mut section = polytope_section(&fs, q0);
    let mut text = format!(
        "edge polytope of the cone graph: ambient dimension {}, dimension {}, q0 = {q0}\n",
        section.ambient_dim, section.dimension
    );
    text.push_str(&format!("affine hull: z1 + ... + z{} = 2q\n", fs.ambient_dim));
    text.push_str(&format!("facets ({}):\n", fs.inequalities.len()));
    for ineq in &fs.inequalities {
        text.push_str(&describe(ineq));
        text.push('\n');
    }
    if let Some(q) = args.q {
        let query = PointQuery { strict: args.interior, positive_only: args.positive_only, limit: args.max_points };
        let points = fs.dilation_points(q, query)?;
        let kind = match (args.interior, args.positive_only) {
            (true, true) => "interior, positive",
            (true, false) => "interior",
            (false, true) => "positive",
            (false, false) => "all",
        };
        text.push_str(&format!("lattice points of {q}P ({kind}): {}\n", points.len()));
        for z in &points {
            text.push_str(&format!("  {z}\n"));
        }
        section.q = Some(q);
        section.interior = args.interior;
        section.positive_only = args.positive_only;
        section.points = points;
    }
    let doc = ReportDocument {
        tool_version: TOOL_VERSION.into(),
        input: graph_input("polytope", &args.input, &g, FieldChoice::Rationals, None),
        invariants: Some(invariants(&g)),
        normality: Some(normality(&g)),
        route: None,
        betti: None,
        polytope: Some(section),
        verdicts: Vec::new(),
        timing_ms: elapsed_ms(start, args.output.timing),
    };
    Ok(Output { text: Some(text), json: to_json(&doc), truncated: false })
}

/// The graphs of a family with their labels, in order.
pub fn family_members(args: &BatchArgs) -> Result<Vec<(String, Graph)>, CliError> {
    let range = args.from..=args.to;
    let members: edgerees::Result<Vec<(String, Graph)>> = match args.family {
        Family::Paths => range.map(|n| Ok((format!("P{n}"), Graph::path(n)?))).collect(),
        Family::Cycles => range.map(|n| Ok((format!("C{n}"), Graph::cycle(n)?))).collect(),
        Family::DisjointEdges => range.map(|m| Ok((format!("{m}K2"), Graph::disjoint_edges(m)?))).collect(),
        Family::DisjointUnions => range
            .map(|m| {
                let triangle = Graph::cycle(3)?;
                let mut g = triangle.clone();
                for _ in 1..m {
                    g = g.disjoint_union(&triangle)?;
                }
                Ok((format!("{m}K3"), g))
            })
            .collect(),
        Family::Random => {
            if !(0.0..=1.0).contains(&args.p) {
                return Err(InputError::Invalid(format!("edge probability {} outside [0, 1]", args.p)).into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            (0..args.count)
                .map(|k| {
                    let n = args.n;
                    let edges: Vec<(usize, usize)> = (1..=n)
                        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                        .filter(|_| rng.gen_bool(args.p))
                        .collect();
                    Ok((format!("random#{k}"), Graph::new(n, edges)?))
                })
                .collect()
        }
    };
    Ok(members?)
}

fn batch_row(index: usize, label: String, g: &Graph, opts: AnalyzeOptions) -> BatchRow {
    let mut row = BatchRow {
        index,
        label,
        n: g.n(),
        edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        invariants: invariants(g),
        isolated_vertices: g.isolated_vertices().len(),
        rees_normal: g.rees_is_normal().normal,
        route: None,
        q0: None,
        regularity: None,
        error: None,
    };
    match analyze(g, opts) {
        Ok(r) => {
            row.route = Some(r.route);
            row.q0 = r.q0;
            row.regularity = Some(r.regularity);
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

fn batch_table(rows: &[BatchRow]) -> String {
    let mut out = String::from("label      n  |E|  mat  indmat  cover  normal  q0  reg\n");
    for r in rows {
        let cover = r.invariants.edge_cover_number.map_or("-".into(), |c| c.to_string());
        let q0 = r.q0.map_or("-".into(), |q| q.to_string());
        let reg = match (&r.regularity, &r.error) {
            (Some(v), _) if v.status == RegStatus::Exact => v.value.to_string(),
            (Some(v), _) => format!(">={}", v.value),
            (None, Some(e)) => format!("error: {e}"),
            (None, None) => "-".into(),
        };
        out.push_str(&format!(
            "{:<9} {:>2} {:>4} {:>4} {:>7} {:>6} {:>7} {:>3}  {}\n",
            r.label,
            r.n,
            r.edges.len(),
            r.invariants.matching_number,
            r.invariants.induced_matching_number,
            cover,
            r.rees_normal,
            q0,
            reg
        ));
    }
    out
}

pub fn cmd_batch(args: &BatchArgs) -> Result<Output, CliError> {
    let start = Instant::now();
    let members = family_members(args)?;
    let opts =
        AnalyzeOptions { j_max: args.jmax, field: args.field, cross_check: false, max_degrees: args.max_degrees };
    let rows: Vec<BatchRow> =
        members.into_par_iter().enumerate().map(|(k, (label, g))| batch_row(k, label, &g, opts)).collect();
    let truncated = rows.iter().any(|r| r.regularity.is_some_and(|v| v.status == RegStatus::LowerBound));
    let family = match args.family {
        Family::Random => format!("random(seed={}, n={}, p={}) x {}", args.seed, args.n, args.p, args.count),
        f => format!("{}({}..={})", f.to_possible_value().expect("named").get_name(), args.from, args.to),
    };
    let doc = BatchDocument {
        tool_version: TOOL_VERSION.into(),
        family,
        field: args.field,
        j_max: args.jmax,
        rows,
        timing_ms: elapsed_ms(start, args.output.timing),
    };
    Ok(Output { text: Some(batch_table(&doc.rows)), json: to_json(&doc), truncated })
}

fn output_args(cmd: &Command) -> &OutputArgs {
    match cmd {
        Command::Analyze(a) => &a.output,
        Command::Betti(a) => &a.output,
        Command::Polytope(a) => &a.output,
        Command::Batch(a) => &a.output,
    }
}

fn require_exact(cmd: &Command) -> bool {
    match cmd {
        Command::Analyze(a) => a.require_exact,
        Command::Betti(a) => a.require_exact,
        Command::Polytope(_) => false,
        Command::Batch(a) => a.require_exact,
    }
}

/// Runs a parsed command, writing to `stdout`/`stderr`, and returns the
/// exit status.
pub fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Betti(a) => cmd_betti(a),
        Command::Polytope(a) => cmd_polytope(a),
        Command::Batch(a) => cmd_batch(a),
    };
    let out = match result {
        Ok(out) => out,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let opts = output_args(&cli.command);
    let written = (|| -> Result<(), CliError> {
        let io = |path: String| move |e: std::io::Error| CliError::Output { path, message: e.to_string() };
        if let (Some(text), false) = (&out.text, opts.json) {
            stdout.write_all(text.as_bytes()).map_err(io("standard output".into()))?;
            if opts.out.is_none() {
                stdout.write_all(b"\n").map_err(io("standard output".into()))?;
            }
        }
        match &opts.out {
            Some(path) => std::fs::write(path, &out.json).map_err(io(path.display().to_string()))?,
            None => stdout.write_all(out.json.as_bytes()).map_err(io("standard output".into()))?,
        }
        Ok(())
    })();
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return e.exit_code();
    }
    if out.truncated && require_exact(&cli.command) {
        let _ = writeln!(stderr, "error: only a lower bound for the regularity is available; raise --jmax");
        return EXIT_TRUNCATED;
    }
    0
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, stdout, stderr),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            code
        }
    }
}
