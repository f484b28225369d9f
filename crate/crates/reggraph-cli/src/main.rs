//! Command-line surface: validate graph files, answer independence queries,
//! test Markov equivalence, marginalize/condition into summary graphs,
//! report confounding, run the numerical oracle, and export DOT.
//!
//! Reports are line-oriented `key=value` pairs on stdout. Exit code 0 means
//! success, 1 a domain error (reported as `error=<Name>`), 2 a usage error.

use clap::{Args, Parser, Subcommand};
use reggraph::oracle::{TOL_NONZERO, TOL_ZERO};
use reggraph::{
    detect_conditioning_distortions, detect_direct_confounding, detect_indirect_confounding,
    d_separate, export_dot, markov_equivalent, pairwise_statements, parse_graph,
    partial_correlation, rg_separate, sample_system, separate_concentration, serialize,
    summary_graph, IndependenceQuery, MixedGraph, NodeId, ParsedGraph, QueryVerdict,
    RegressionGraph, Subclass, TransformSpec, Witness,
};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "reggraph",
    about = "Regression graphs: validation, queries, equivalence, summary graphs, oracles",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a graph file, reporting its subclass.
    Validate(ValidateArgs),
    /// Answer an implied-independence query `alpha | beta | c`.
    Query(QueryArgs),
    /// Test two graph files for Markov equivalence.
    Equiv(EquivArgs),
    /// Marginalize over nodes (optionally also condition) into a summary graph.
    Marginalize(MarginalizeArgs),
    /// Condition on nodes (optionally also marginalize) into a summary graph.
    Condition(ConditionArgs),
    /// Report direct/indirect confounding and conditioning distortions.
    Confounding(ConfoundingArgs),
    /// Check every pairwise graph statement against sampled Gaussian systems.
    Oracle(OracleArgs),
    /// Export a graph file as DOT.
    Export(ExportArgs),
}

#[derive(Args)]
struct ValidateArgs {
    file: PathBuf,
    /// Add a human-readable summary as comment lines.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct QueryArgs {
    file: PathBuf,
    /// Query in the form "alpha | beta | c" with comma-separated labels;
    /// the conditioning part may be omitted or empty.
    query: Option<String>,
    /// Batch file with one query per line; `#` starts a comment.
    #[arg(long, conflicts_with = "query")]
    batch: Option<PathBuf>,
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct EquivArgs {
    file1: PathBuf,
    file2: PathBuf,
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct MarginalizeArgs {
    file: PathBuf,
    /// Comma-separated labels to marginalize over.
    #[arg(long, value_delimiter = ',')]
    nodes: Vec<String>,
    /// Additional labels to condition on.
    #[arg(long, value_delimiter = ',', default_value = "")]
    condition: Vec<String>,
    /// Write the summary graph here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ConditionArgs {
    file: PathBuf,
    /// Comma-separated labels to condition on.
    #[arg(long, value_delimiter = ',')]
    nodes: Vec<String>,
    /// Additional labels to marginalize over.
    #[arg(long, value_delimiter = ',', default_value = "")]
    marginalize: Vec<String>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ConfoundingArgs {
    file: PathBuf,
    /// Labels to marginalize over.
    #[arg(long, value_delimiter = ',', default_value = "")]
    marginalize: Vec<String>,
    /// Labels to condition on.
    #[arg(long, value_delimiter = ',', default_value = "")]
    condition: Vec<String>,
    /// Response whose dependence is inspected.
    #[arg(long)]
    response: Option<String>,
    /// Regressor whose dependence is inspected.
    #[arg(long)]
    regressor: Option<String>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Parameter draws per statement.
    #[arg(long, default_value_t = 100)]
    reps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Partial correlations below this count as zero.
    #[arg(long, default_value_t = TOL_ZERO)]
    tol: f64,
    /// Dependences must exceed this for at least one draw.
    #[arg(long, default_value_t = TOL_NONZERO)]
    tol_dep: f64,
}

#[derive(Args)]
struct ExportArgs {
    file: PathBuf,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli.command));
}

/// Extract the module error name from its display form `Name: details`.
fn error_name(display: &str) -> &str {
    let end = display
        .find(|c: char| !c.is_ascii_alphanumeric())
        .unwrap_or(display.len());
    &display[..end]
}

fn fail(err: impl std::fmt::Display) -> i32 {
    let msg = err.to_string();
    println!("error={}", error_name(&msg));
    eprintln!("{msg}");
    1
}

fn load(path: &Path) -> Result<ParsedGraph, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("IoError: cannot read {}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| e.to_string())
}

fn load_regression(path: &Path) -> Result<RegressionGraph, String> {
    match load(path)? {
        ParsedGraph::Regression(g) => Ok(g),
        ParsedGraph::Summary(_) => Err(format!(
            "SubclassMismatch: {} holds a summary graph where a regression graph is needed",
            path.display()
        )),
    }
}

fn labels_of(g: &MixedGraph, ids: impl IntoIterator<Item = usize>) -> String {
    let v: Vec<&str> = ids.into_iter().map(|i| g.label(i)).collect();
    if v.is_empty() {
        "none".to_string()
    } else {
        v.join(",")
    }
}

fn run(cmd: Command) -> i32 {
    match cmd {
        Command::Validate(a) => cmd_validate(a),
        Command::Query(a) => cmd_query(a),
        Command::Equiv(a) => cmd_equiv(a),
        Command::Marginalize(a) => cmd_transform(a.file, a.nodes, a.condition, a.output, true),
        Command::Condition(a) => cmd_transform(a.file, a.marginalize, a.nodes, a.output, false),
        Command::Confounding(a) => cmd_confounding(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Export(a) => cmd_export(a),
    }
}

fn cmd_validate(a: ValidateArgs) -> i32 {
    let parsed = match load(&a.file) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let g = parsed.mixed();
    let kind = match &parsed {
        ParsedGraph::Regression(_) => "regression",
        ParsedGraph::Summary(_) => "summary",
    };
    println!("valid=true");
    println!("kind={kind}");
    println!("subclass={}", g.classify());
    println!("nodes={}", g.node_count());
    println!("edges={}", g.edge_count());
    if a.verbose {
        println!("# blocks: {} response + context of {}", g.response_blocks().len(), g.context().len());
        for v in g.enumerate_vs() {
            println!(
                "# v-configuration inner={} outer={},{} kind={:?}",
                g.label(v.inner.0),
                g.label(v.outer.0 .0),
                g.label(v.outer.1 .0),
                v.kind
            );
        }
    }
    0
}

fn parse_query_line(g: &MixedGraph, line: &str) -> Result<IndependenceQuery, String> {
    let parts: Vec<&str> = line.split('|').collect();
    if parts.len() != 2 && parts.len() != 3 {
        return Err(format!("UsageError: query must be \"alpha | beta | c\", got {line:?}"));
    }
    fn split(s: &str) -> Vec<&str> {
        s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect()
    }
    let alpha = split(parts[0]);
    let beta = split(parts[1]);
    let c = if parts.len() == 3 { split(parts[2]) } else { Vec::new() };
    IndependenceQuery::from_labels(g, &alpha, &beta, &c).map_err(|e| e.to_string())
}

fn answer(g: &MixedGraph, q: &IndependenceQuery) -> Result<(QueryVerdict, &'static str), String> {
    // dispatch to the matching criterion; they agree wherever they overlap
    let (verdict, criterion) = match g.classify() {
        Subclass::ConcentrationGraph => (
            separate_concentration(g, q).map_err(|e| e.to_string())?,
            "undirected-separation",
        ),
        Subclass::Dag => (d_separate(g, q).map_err(|e| e.to_string())?, "d-separation"),
        _ => (rg_separate(g, q).map_err(|e| e.to_string())?, "edge-matrix"),
    };
    Ok((verdict, criterion))
}

fn verdict_line(v: &QueryVerdict) -> String {
    let mut s = format!("independent={}", v.implied_independent);
    let _ = write!(
        s,
        " dependent_if_traceable={}",
        v.implied_dependent_for_traceable
    );
    match &v.witness {
        Witness::ConnectingRoute { rendered, .. } => {
            let _ = write!(s, " witness={rendered}");
        }
        Witness::Separation { .. } => {
            let _ = write!(s, " witness=none");
        }
    }
    s
}

fn cmd_query(a: QueryArgs) -> i32 {
    let parsed = match load(&a.file) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let g = parsed.mixed();
    let lines: Vec<String> = if let Some(batch) = &a.batch {
        match std::fs::read_to_string(batch) {
            Ok(text) => text
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
                .filter(|l| !l.is_empty())
                .collect(),
            Err(e) => return fail(format!("IoError: cannot read {}: {e}", batch.display())),
        }
    } else if let Some(q) = &a.query {
        vec![q.clone()]
    } else {
        println!("error=UsageError");
        eprintln!("a query string or --batch file is required");
        return 2;
    };

    let single = lines.len() == 1 && a.batch.is_none();
    for line in &lines {
        let q = match parse_query_line(g, line) {
            Ok(q) => q,
            Err(e) => return fail(e),
        };
        let (verdict, criterion) = match answer(g, &q) {
            Ok(v) => v,
            Err(e) => return fail(e),
        };
        if single {
            println!("{}", verdict_line(&verdict));
        } else {
            println!("query={} {}", line.replace(' ', ""), verdict_line(&verdict));
        }
        if a.verbose {
            println!("# criterion={criterion}");
            if let Witness::Separation { argument } = &verdict.witness {
                println!("# {argument}");
            }
            if criterion == "edge-matrix" {
                let p = reggraph::NodePartition::with_rest_marginalized(g, q.alpha, q.beta, q.c)
                    .expect("validated query");
                let pm = reggraph::induced_edge_matrix(g, &p);
                println!("# induced indicator matrix, rows then columns:");
                let row_labels: Vec<&str> = pm.rows.iter().map(|r| g.label(r.0)).collect();
                let col_labels: Vec<&str> = pm.cols.iter().map(|c| g.label(c.0)).collect();
                println!("# rows: {}", row_labels.join(","));
                println!("# cols: {}", col_labels.join(","));
                for line in pm.to_grid().lines() {
                    println!("# {line}");
                }
            }
        }
    }
    0
}

fn cmd_equiv(a: EquivArgs) -> i32 {
    let (g1, g2) = match (load_regression(&a.file1), load_regression(&a.file2)) {
        (Ok(g1), Ok(g2)) => (g1, g2),
        (Err(e), _) | (_, Err(e)) => return fail(e),
    };
    let rep = match markov_equivalent(&g1, &g2) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    println!("equivalent={}", rep.equivalent);
    let skel: Vec<String> = rep
        .skeleton_diff
        .iter()
        .map(|(a, b)| format!("{a}-{b}"))
        .collect();
    println!(
        "skeleton_diff={}",
        if skel.is_empty() { "none".into() } else { skel.join(";") }
    );
    let coll: Vec<String> = rep
        .collision_diff
        .iter()
        .map(|(inner, (a, b))| format!("{a}-{inner}-{b}"))
        .collect();
    println!(
        "collision_diff={}",
        if coll.is_empty() { "none".into() } else { coll.join(";") }
    );
    println!("block_orders_differ={}", rep.block_orders_differ);
    if a.verbose {
        println!("# same skeleton and same collision-V triples decide equivalence");
    }
    0
}

fn cmd_transform(
    file: PathBuf,
    marginalize: Vec<String>,
    condition: Vec<String>,
    output: Option<PathBuf>,
    _primary_marg: bool,
) -> i32 {
    let g = match load_regression(&file) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let m: Vec<&str> = marginalize.iter().map(|s| s.as_str()).filter(|s| !s.is_empty()).collect();
    let c: Vec<&str> = condition.iter().map(|s| s.as_str()).filter(|s| !s.is_empty()).collect();
    let spec = match TransformSpec::from_labels(&g, &m, &c) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let sg = match summary_graph(&g, &spec) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let text = serialize(&sg);
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &text) {
                return fail(format!("IoError: cannot write {}: {e}", path.display()));
            }
            println!("written={}", path.display());
        }
        None => print!("{text}"),
    }
    0
}

fn cmd_confounding(a: ConfoundingArgs) -> i32 {
    let g = match load_regression(&a.file) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let m: Vec<&str> = a.marginalize.iter().map(|s| s.as_str()).filter(|s| !s.is_empty()).collect();
    let c: Vec<&str> = a.condition.iter().map(|s| s.as_str()).filter(|s| !s.is_empty()).collect();
    let spec = match TransformSpec::from_labels(&g, &m, &c) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let sg = match summary_graph(&g, &spec) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };

    // direct confounding: double edges of a marginalization-only summary
    match detect_direct_confounding(&sg) {
        Ok(doubles) => {
            let items: Vec<String> = doubles
                .iter()
                .map(|(t, h)| format!("{}<->{}", sg.label(h.0), sg.label(t.0)))
                .collect();
            println!(
                "direct={}",
                if items.is_empty() { "none".into() } else { items.join(";") }
            );
        }
        Err(_) => println!("direct=inapplicable"),
    }

    let pair = match (&a.response, &a.regressor) {
        (Some(y), Some(x)) => match (g.node_by_label(y), g.node_by_label(x)) {
            (Some(ry), Some(rx)) => Some((y, x, ry, rx)),
            _ => return fail(format!("UnknownNode: {y} or {x}")),
        },
        _ => None,
    };

    if let Some((y_label, x_label, y, x)) = pair {
        // ids differ between the original graph and the shrunken summary
        match (sg.node_by_label(y_label), sg.node_by_label(x_label)) {
            (Some(sy), Some(sx)) => {
                match detect_indirect_confounding(&sg, NodeId(sy), NodeId(sx)) {
                    Ok(paths) => {
                        let items: Vec<String> = paths
                            .iter()
                            .map(|p| render_confounding_path(sg.graph(), p))
                            .collect();
                        println!(
                            "indirect={}",
                            if items.is_empty() { "none".into() } else { items.join(";") }
                        );
                    }
                    Err(e) => return fail(e),
                }
            }
            _ => println!("indirect=inapplicable"),
        }
        let rep = detect_conditioning_distortions(&g, &spec, NodeId(y), NodeId(x));
        println!(
            "under={}",
            if rep.under_conditioning.is_empty() {
                "none".into()
            } else {
                labels_of(g.graph(), rep.under_conditioning.iter().map(|n| n.0))
            }
        );
        let chains: Vec<String> = rep
            .over_conditioning
            .iter()
            .map(|chain| {
                chain
                    .iter()
                    .map(|n| g.label(n.0))
                    .collect::<Vec<_>>()
                    .join("-")
            })
            .collect();
        println!(
            "over={}",
            if chains.is_empty() { "none".into() } else { chains.join(";") }
        );
    }
    0
}

/// Render an indirect-confounding route: dashed hops as `-`, the final hop
/// as `<-` when it is the arrow out of the regressor.
fn render_confounding_path(g: &MixedGraph, path: &[NodeId]) -> String {
    let mut s = g.label(path[0].0).to_string();
    for w in path.windows(2) {
        let (a, b) = (w[0].0, w[1].0);
        let comp = g.components(a, b);
        let glyph = if comp.arrow == Some((b, a)) { "<-" } else { "-" };
        s.push_str(glyph);
        s.push_str(g.label(b));
    }
    s
}

fn cmd_oracle(a: OracleArgs) -> i32 {
    let g = match load_regression(&a.graph) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let stmts = pairwise_statements(&g);
    let mut all_pass = true;
    let mut systems = Vec::new();
    for rep in 0..a.reps {
        match sample_system(&g, a.seed.wrapping_add(rep)) {
            Ok(s) => systems.push(s),
            Err(e) => return fail(e),
        }
    }
    for st in &stmts {
        let given: Vec<usize> = st.given.to_vec();
        let mut max_abs: f64 = 0.0;
        for sys in &systems {
            match partial_correlation(&sys.sigma, st.i.0, st.k.0, &given) {
                Ok(r) => max_abs = max_abs.max(r.abs()),
                Err(e) => return fail(e),
            }
        }
        let pass = if st.edge_present {
            max_abs > a.tol_dep
        } else {
            max_abs < a.tol
        };
        all_pass &= pass;
        println!(
            "pair={},{} given={} expect={} max_abs_pcor={max_abs:.3e} pass={pass}",
            g.label(st.i.0),
            g.label(st.k.0),
            labels_of(&g, given.iter().copied()),
            if st.edge_present { "dependent" } else { "independent" },
        );
    }
    println!("overall={}", if all_pass { "pass" } else { "fail" });
    if all_pass {
        0
    } else {
        1
    }
}

fn cmd_export(a: ExportArgs) -> i32 {
    let parsed = match load(&a.file) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let dot = export_dot(parsed.mixed());
    match a.output {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &dot) {
                return fail(format!("IoError: cannot write {}: {e}", path.display()));
            }
            println!("written={}", path.display());
        }
        None => print!("{dot}"),
    }
    0
}
