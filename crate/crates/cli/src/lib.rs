//! Command-line front end. [`run`] takes the argument list and returns what
//! would be written to stdout and stderr together with the exit code, so the
//! binary is a thin wrapper and tests can drive it in-process.
//!
//! Exit codes: 0 success or `Certified`; 1 a negative verdict (violations,
//! `Rejected`, blocked reduction, failed preconditions); 2 input or
//! operation errors.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use qbs_core::analysis::{ball, classify_tree, gbs_components, DEFAULT_BALL_BUDGET};
use qbs_core::canonical::fingerprint;
use qbs_core::certifier::{certify_jsj, universality_preconditions, Status, Verdict};
use qbs_core::covers::{delta_subgraph, glued_surface, hat_delta, Orientability};
use qbs_core::format::{parse, print, to_dot};
use qbs_core::moves::{fold, reduce};
use qbs_core::presentation::{abelianization, presentation};
use qbs_core::validate::validate;
use qbs_core::{corpus, EdgeId, GraphOfGroups, Side, VertexId};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EndArg {
    Source,
    Target,
}

#[derive(Debug, Parser)]
#[command(name = "qbs", version, about = "Graphs of groups with cyclic and surface vertex groups")]
pub struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Emit DOT instead of the report, for subcommands that produce a graph or ball.
    #[arg(long, global = true)]
    pub dot: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check well-formedness.
    Validate { input: String },
    /// Edge labels at both ends.
    Labels { input: String },
    /// Collapse until no supported collapse remains; prints the result.
    Reduce { input: String },
    /// Check the JSJ recognition hypotheses.
    Certify { input: String },
    /// Presentation of the fundamental group.
    Present { input: String },
    /// First homology.
    Homology { input: String },
    /// GBS components.
    Components { input: String },
    /// Bass-Serre tree shape of each GBS component.
    Classify { input: String },
    /// Finite ball in the Bass-Serre tree of a GBS graph.
    Ball {
        input: String,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value_t = DEFAULT_BALL_BUDGET)]
        budget: usize,
    },
    /// Subgraph of (2,2) surface edges, its four-sheeted cover, and the glued surface.
    Cover {
        input: String,
        #[arg(long)]
        edge: String,
    },
    /// Fold an edge end by a divisor of its exponent.
    Fold {
        input: String,
        #[arg(long)]
        edge: String,
        #[arg(long, value_enum)]
        end: EndArg,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Preconditions for a set of surface vertices (comma separated).
    Universality {
        input: String,
        #[arg(long, value_delimiter = ',')]
        vertices: Vec<String>,
    },
    /// List bundled example files, or print one.
    Corpus { name: Option<String> },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Labels { .. } => "labels",
            Command::Reduce { .. } => "reduce",
            Command::Certify { .. } => "certify",
            Command::Present { .. } => "present",
            Command::Homology { .. } => "homology",
            Command::Components { .. } => "components",
            Command::Classify { .. } => "classify",
            Command::Ball { .. } => "ball",
            Command::Cover { .. } => "cover",
            Command::Fold { .. } => "fold",
            Command::Universality { .. } => "universality",
            Command::Corpus { .. } => "corpus",
        }
    }

    fn input(&self) -> Option<&str> {
        match self {
            Command::Validate { input }
            | Command::Labels { input }
            | Command::Reduce { input }
            | Command::Certify { input }
            | Command::Present { input }
            | Command::Homology { input }
            | Command::Components { input }
            | Command::Classify { input }
            | Command::Ball { input, .. }
            | Command::Cover { input, .. }
            | Command::Fold { input, .. }
            | Command::Universality { input, .. } => Some(input),
            Command::Corpus { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Structured report; the same schema for every subcommand.
#[derive(Debug, Serialize)]
pub struct Report {
    pub tool_version: &'static str,
    pub command: &'static str,
    pub input: Option<String>,
    pub fingerprint: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    pub result: Value,
    pub witnesses: Vec<String>,
}

/// What a subcommand produced, before rendering.
struct Output {
    text: String,
    dot: Option<String>,
    verdict: Option<String>,
    result: Value,
    witnesses: Vec<String>,
    code: i32,
}

impl Output {
    fn ok(text: String, result: Value) -> Self {
        Output { text, dot: None, verdict: None, result, witnesses: Vec::new(), code: 0 }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: rendered, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: rendered, code }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    let graph = match cli.command.input().map(load).transpose() {
        Ok(g) => g,
        Err(message) => return input_error(message),
    };
    let output = match dispatch(&cli.command, graph.as_ref()) {
        Ok(o) => o,
        Err(message) => return input_error(message),
    };
    if cli.dot {
        return match output.dot {
            Some(dot) => Outcome { stdout: dot, stderr: String::new(), code: output.code },
            None => input_error(format!("--dot is not available for `{}`", cli.command.name())),
        };
    }
    let stdout = match cli.format {
        Format::Text => output.text,
        Format::Structured => {
            let report = Report {
                tool_version: TOOL_VERSION,
                command: cli.command.name(),
                input: cli.command.input().map(str::to_string),
                fingerprint: graph.as_ref().map(fingerprint),
                verdict: output.verdict,
                result: output.result,
                witnesses: output.witnesses,
            };
            let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
            s.push('\n');
            s
        }
    };
    Outcome { stdout, stderr: String::new(), code: output.code }
}

fn input_error(message: String) -> Outcome {
    Outcome { stdout: String::new(), stderr: format!("error: {message}\n"), code: 2 }
}

/// Reads a file, falling back to the bundled corpus when no such file exists.
fn load(input: &str) -> Result<GraphOfGroups, String> {
    let text = if Path::new(input).exists() {
        std::fs::read_to_string(input).map_err(|e| format!("{input}: {e}"))?
    } else if let Some(text) = corpus::get(input) {
        text.to_string()
    } else {
        return Err(format!("{input}: no such file or bundled example"));
    };
    parse(&text).map_err(|e| format!("{input}:{e}"))
}

fn resolve_vertex(g: &GraphOfGroups, key: &str) -> Result<VertexId, String> {
    g.vertex_by_name(key)
        .or_else(|| key.parse().ok().filter(|&id: &usize| id < g.vertex_count()))
        .ok_or_else(|| format!("unknown vertex `{key}`"))
}

fn resolve_edge(g: &GraphOfGroups, key: &str) -> Result<EdgeId, String> {
    g.edge_by_name(key)
        .or_else(|| key.parse().ok().filter(|&id: &usize| id < g.edge_count()))
        .ok_or_else(|| format!("unknown edge `{key}`"))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn dispatch(command: &Command, graph: Option<&GraphOfGroups>) -> Result<Output, String> {
    let g = || graph.expect("subcommand has an input");
    match command {
        Command::Validate { .. } => Ok(cmd_validate(g())),
        Command::Labels { .. } => Ok(cmd_labels(g())),
        Command::Reduce { .. } => cmd_reduce(g()),
        Command::Certify { .. } => Ok(cmd_certify(g())),
        Command::Present { .. } => Ok(cmd_present(g())),
        Command::Homology { .. } => Ok(cmd_homology(g())),
        Command::Components { .. } => Ok(cmd_components(g())),
        Command::Classify { .. } => cmd_classify(g()),
        Command::Ball { vertex, radius, budget, .. } => cmd_ball(g(), vertex, *radius, *budget),
        Command::Cover { edge, .. } => cmd_cover(g(), edge),
        Command::Fold { edge, end, k, .. } => cmd_fold(g(), edge, *end, *k),
        Command::Universality { vertices, .. } => cmd_universality(g(), vertices),
        Command::Corpus { name } => cmd_corpus(name.as_deref()),
    }
}

fn cmd_validate(g: &GraphOfGroups) -> Output {
    let report = validate(g);
    let witnesses: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
    let valid = report.is_valid();
    let text = if valid { "valid\n".to_string() } else { witnesses.iter().map(|w| format!("{w}\n")).collect() };
    Output {
        text,
        dot: Some(to_dot(g)),
        verdict: Some(if valid { "valid" } else { "invalid" }.into()),
        result: to_value(&report),
        witnesses,
        code: i32::from(!valid),
    }
}

fn cmd_labels(g: &GraphOfGroups) -> Output {
    let mut text = String::new();
    let mut rows = Vec::new();
    for e in g.edges() {
        let (s, t) = (e.label(Side::Source), e.label(Side::Target));
        let _ = writeln!(text, "{} {} {}", e.name, s, t);
        rows.push(json!({ "edge": e.name, "source": s, "target": t }));
    }
    Output::ok(text, Value::Array(rows))
}

fn site_text(g: &GraphOfGroups, edge: EdgeId, side: Side) -> String {
    format!("edge {} at {} end", g.edges()[edge].name, side)
}

fn cmd_reduce(g: &GraphOfGroups) -> Result<Output, String> {
    let r = reduce(g).map_err(|e| e.to_string())?;
    let witnesses: Vec<String> =
        r.blocked.iter().map(|s| format!("blocked: {}", site_text(&r.graph, s.edge, s.collapsed_end))).collect();
    let mut text = print(&r.graph);
    for w in &witnesses {
        let _ = writeln!(text, "# {w}");
    }
    let blocked = !r.fully_reduced();
    Ok(Output {
        text,
        dot: Some(to_dot(&r.graph)),
        verdict: Some(if blocked { "blocked" } else { "reduced" }.into()),
        result: json!({ "collapses": r.collapses, "graph": print(&r.graph) }),
        witnesses,
        code: i32::from(blocked),
    })
}

fn cmd_certify(g: &GraphOfGroups) -> Output {
    let c = certify_jsj(g);
    let mut text = format!("{}\nfingerprint: {}\n", c.verdict, c.fingerprint);
    let mut witnesses = Vec::new();
    for cond in &c.conditions {
        let _ = writeln!(text, "{}: {}", cond.name, cond.status);
        for w in &cond.witnesses {
            let _ = writeln!(text, "  {w}");
            if cond.status != Status::Pass {
                witnesses.push(format!("{}: {w}", cond.name));
            }
        }
    }
    let _ = writeln!(text, "note: {}", c.note);
    Output {
        text,
        dot: None,
        verdict: Some(c.verdict.to_string()),
        result: to_value(&c),
        witnesses,
        code: i32::from(c.verdict != Verdict::Certified),
    }
}

fn cmd_present(g: &GraphOfGroups) -> Output {
    let p = presentation(g);
    let relators: Vec<String> = p.relators.iter().map(|r| p.word_to_string(r)).collect();
    Output::ok(p.to_string(), json!({ "generators": p.generators, "relators": relators }))
}

fn cmd_homology(g: &GraphOfGroups) -> Output {
    let h = abelianization(&presentation(g));
    Output::ok(format!("{h}\n"), json!({ "group": h.to_string(), "free_rank": h.free_rank, "torsion": to_value(&h)["torsion"] }))
}

fn names(g: &GraphOfGroups, vs: &[VertexId]) -> Vec<String> {
    vs.iter().map(|&v| g.vertices()[v].name.clone()).collect()
}

fn cmd_components(g: &GraphOfGroups) -> Output {
    let mut text = String::new();
    let mut rows = Vec::new();
    for c in gbs_components(g) {
        let vs = names(g, &c.vertex_map);
        let es: Vec<String> = c.edge_map.iter().map(|&e| g.edges()[e].name.clone()).collect();
        let _ = writeln!(text, "{{{}}} edges: {}", vs.join(","), if es.is_empty() { "-".into() } else { es.join(",") });
        rows.push(json!({ "vertices": vs, "edges": es }));
    }
    Output::ok(text, Value::Array(rows))
}

fn cmd_classify(g: &GraphOfGroups) -> Result<Output, String> {
    let comps = gbs_components(g);
    let mut text = String::new();
    let mut rows = Vec::new();
    for c in &comps {
        let shape = classify_tree(&c.graph).map_err(|e| e.to_string())?;
        let vs = names(g, &c.vertex_map);
        if comps.len() == 1 && c.vertex_map.len() == g.vertex_count() {
            let _ = writeln!(text, "{shape}");
        } else {
            let _ = writeln!(text, "{{{}}}: {shape}", vs.join(","));
        }
        rows.push(json!({ "vertices": vs, "shape": shape }));
    }
    Ok(Output::ok(text, Value::Array(rows)))
}

fn cmd_ball(g: &GraphOfGroups, vertex: &str, radius: usize, budget: usize) -> Result<Output, String> {
    let v = resolve_vertex(g, vertex)?;
    let b = ball(g, v, radius, budget).map_err(|e| e.to_string())?;
    let mut per_depth = vec![0usize; radius + 1];
    for n in &b.nodes {
        per_depth[n.depth] += 1;
    }
    let text = format!(
        "nodes: {}\nmax_degree: {}\npath: {}\nper_depth: {}\n",
        b.nodes.len(),
        b.max_degree(),
        b.is_path(),
        per_depth.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    );
    let result = json!({
        "radius": radius,
        "nodes": b.nodes.len(),
        "max_degree": b.max_degree(),
        "path": b.is_path(),
        "per_depth": per_depth,
    });
    Ok(Output { dot: Some(b.to_dot()), ..Output::ok(text, result) })
}

fn cmd_cover(g: &GraphOfGroups, edge: &str) -> Result<Output, String> {
    let e = resolve_edge(g, edge)?;
    let delta = delta_subgraph(g, e).map_err(|e| e.to_string())?;
    let cg = hat_delta(&delta).map_err(|e| e.to_string())?;
    let s = glued_surface(&cg);
    let orient = match s.orientability {
        Orientability::Orientable => "orientable",
        Orientability::NonOrientable => "nonorientable",
    };
    let mut text = format!("# delta\n{}# hat_delta\n{}# map\n{}", print(&delta.graph), print(&cg.graph), cg.sidecar());
    let _ = writeln!(text, "# covers");
    for (v, c) in delta.graph.vertices().iter().zip(&cg.covers) {
        let _ = writeln!(
            text,
            "{}: chi={} boundary={} {} genus={}",
            v.name,
            c.cover_chi,
            c.cover_boundary_count,
            if c.cover.orientable { "orientable" } else { "nonorientable" },
            c.cover.genus
        );
    }
    let _ = writeln!(
        text,
        "# glued surface\nchi={} glued_pairs={} boundary={} components={} {}{}",
        s.chi,
        s.glued_pairs,
        s.boundary_count,
        s.component_count,
        orient,
        s.genus.map(|g| format!(" genus={g}")).unwrap_or_default()
    );
    let result = json!({
        "delta": print(&delta.graph),
        "hat_delta": print(&cg.graph),
        "map": cg.sidecar(),
        "covers": to_value(&cg.covers),
        "glued_surface": to_value(&s),
    });
    Ok(Output { dot: Some(to_dot(&cg.graph)), ..Output::ok(text, result) })
}

fn cmd_fold(g: &GraphOfGroups, edge: &str, end: EndArg, k: i64) -> Result<Output, String> {
    let e = resolve_edge(g, edge)?;
    let side = match end {
        EndArg::Source => Side::Source,
        EndArg::Target => Side::Target,
    };
    let folded = fold(g, e, side, k).map_err(|e| e.to_string())?;
    let text = print(&folded);
    Ok(Output { dot: Some(to_dot(&folded)), ..Output::ok(text.clone(), json!({ "graph": text })) })
}

fn cmd_universality(g: &GraphOfGroups, vertices: &[String]) -> Result<Output, String> {
    let set: BTreeSet<VertexId> = vertices.iter().map(|v| resolve_vertex(g, v)).collect::<Result<_, _>>()?;
    let r = universality_preconditions(g, &set).map_err(|e| e.to_string())?;
    let mut text = String::new();
    let mut witnesses = Vec::new();
    for c in &r.conditions {
        let _ = writeln!(text, "{}: {}", c.name, c.status);
        for w in &c.witnesses {
            let _ = writeln!(text, "  {w}");
            witnesses.push(format!("{}: {w}", c.name));
        }
    }
    let holds = r.holds();
    Ok(Output {
        text,
        dot: None,
        verdict: Some(if holds { "holds" } else { "not_established" }.into()),
        result: to_value(&r),
        witnesses,
        code: i32::from(!holds),
    })
}

fn cmd_corpus(name: Option<&str>) -> Result<Output, String> {
    match name {
        None => {
            let names: Vec<&str> = corpus::FILES.iter().map(|(n, _)| *n).collect();
            Ok(Output::ok(names.iter().map(|n| format!("{n}\n")).collect(), json!(names)))
        }
        Some(n) => {
            let text = corpus::get(n).ok_or_else(|| format!("no bundled example `{n}`"))?;
            Ok(Output::ok(text.to_string(), json!({ "name": n, "text": text })))
        }
    }
}
