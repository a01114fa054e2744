//! Command-line front end: generators, layout constructors, drawing
//! builders, exact verifiers, and brute-force oracles wired into
//! reproducible pipelines.
//!
//! Stages exchange a single JSON envelope on standard streams (or files via
//! `--input`/`--output`), so `generate … | layout track | draw balanced |
//! stats` works with no hidden state. Every artifact-producing stage runs
//! the exact verifier before emitting anything and embeds a SHA-256 hash of
//! the verifier report in the envelope.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 resource limit.

use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use tracklay::{
    balance, box_edge_capacity, cohen_mod_p, draw_aspect, draw_from_track,
    exact_pathwidth, exact_queue_number, exact_track_number, exact_treewidth, extents,
    from_path_decomposition, generate, generate_gk, ktree_peo, ktree_track_layout, max_span,
    moment_curve, nominal_box, queues_from_ordering, to_obj, to_svg, tree_1queue, tree_1stack,
    tree_3track, verify_drawing, verify_queue_layout, verify_stack_layout, verify_track_layout,
    Drawing3D, Error, Family, Graph, QueueLayout, Ratio, StackLayout, TrackLayout,
    DEFAULT_GK_VERTEX_BUDGET, DEFAULT_QUEUE_ORACLE_LIMIT, DEFAULT_TRACK_ORACLE_LIMIT,
    DEFAULT_WIDTH_ORACLE_LIMIT,
};

#[derive(Parser)]
#[command(name = "tracklay", version, about = "Track, queue, and stack layouts with crossing-free 3D grid drawings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a corpus graph and start a pipeline envelope.
    Generate(GenerateArgs),
    /// Compute a layout and add it to the envelope.
    #[command(subcommand)]
    Layout(LayoutCmd),
    /// Compute a crossing-free 3D drawing and add it to the envelope.
    #[command(subcommand)]
    Draw(DrawCmd),
    /// Re-run the exact verifier for one artifact and print its report.
    Verify(VerifyArgs),
    /// Exact brute-force value of a layout invariant (small graphs only).
    Oracle(OracleArgs),
    /// Summarize the envelope as a CSV header and row.
    Stats(SourceArgs),
}

#[derive(Subcommand)]
enum LayoutCmd {
    /// Track layout: forests on <= 3 tracks, k-trees via the partition
    /// engine, otherwise a pathwidth-based interval layout.
    Track(SourceArgs),
    /// Queue layout: forests on one queue, otherwise greedy assignment
    /// along a construction order.
    Queue(SourceArgs),
    /// Stack layout from a depth-first order (forests only).
    Stack(SourceArgs),
}

#[derive(Subcommand)]
enum DrawCmd {
    /// Vertices on the moment curve (v+1, (v+1)^2, (v+1)^3); any graph.
    Moment(DrawArgs),
    /// Moment curve reduced modulo a prime; n x 2n x 2n box.
    Cohen(DrawArgs),
    /// Straight-line drawing of the envelope's track layout.
    Track(DrawArgs),
    /// Balance the track layout to cap track sizes, then draw.
    Balanced(DrawArgs),
    /// Aspect-controlled drawing: volume <= 32n^3/r^2, aspect ratio <= 2r.
    Aspect(AspectArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Output file for the envelope, or - for standard output.
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Args)]
struct FamilyArgs {
    /// Graph family to generate.
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    /// Vertex count (path, cycle, star, complete, tree, ktree).
    #[arg(long)]
    n: Option<usize>,
    /// Width parameter (ktree, gk).
    #[arg(long)]
    k: Option<usize>,
    /// Grid rows.
    #[arg(long)]
    rows: Option<usize>,
    /// Grid columns.
    #[arg(long)]
    cols: Option<usize>,
    /// RNG seed; mandatory for the randomized families tree and ktree.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Path,
    Cycle,
    Star,
    Complete,
    Grid,
    Tree,
    Ktree,
    Gk,
}

#[derive(Args)]
struct SourceArgs {
    /// Envelope JSON file, or - for standard input. Ignored when --family
    /// generates the graph inline.
    #[arg(long, default_value = "-")]
    input: String,
    #[command(flatten)]
    family: FamilyArgs,
    /// Output file, or - for standard output.
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Args)]
struct DrawArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Output format; obj and svg export the drawing instead of the
    /// envelope, translated so the bounding box starts at the origin.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct AspectArgs {
    #[command(flatten)]
    draw: DrawArgs,
    /// Aspect parameter: r >= 1 and r * tracks <= n.
    #[arg(long)]
    r: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Obj,
    Svg,
}

#[derive(Args)]
struct VerifyArgs {
    /// Artifact to check.
    #[arg(value_enum)]
    kind: ArtifactKind,
    #[command(flatten)]
    source: SourceArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ArtifactKind {
    Track,
    Queue,
    Stack,
    Drawing,
}

#[derive(Args)]
struct OracleArgs {
    /// Invariant to compute exactly.
    #[arg(value_enum)]
    kind: OracleKind,
    #[command(flatten)]
    source: SourceArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    QueueNumber,
    TrackNumber,
    Pathwidth,
    Treewidth,
}

/// The pipeline artifact: a graph plus whatever layouts and drawings later
/// stages have attached, each in its module's JSON format.
#[derive(Serialize, Deserialize)]
struct Envelope {
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    graph: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    track_layout: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    queue_layout: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stack_layout: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    drawing: Option<serde_json::Value>,
    /// Guaranteed bounding box of `drawing`, when one was promised.
    #[serde(skip_serializing_if = "Option::is_none")]
    drawing_box: Option<(u64, u64, u64)>,
    /// SHA-256 of each artifact's verifier report at emission time.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    verifier_hashes: BTreeMap<String, String>,
}

enum Failure {
    /// Malformed arguments or inputs; exit 2.
    Usage(String),
    /// An exact verifier rejected an artifact; exit 1.
    Check(String),
    /// Instance too large for an exhaustive computation; exit 3.
    Limit(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Limit(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Check(m) | Failure::Limit(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge { .. } | Error::ResourceLimit(_) => Failure::Limit(e.to_string()),
            Error::Internal(_) => Failure::Check(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("tracklay: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Generate(args) => {
            let env = envelope_from_family(&args.family)?;
            write_output(&args.output, &envelope_json(&env))
        }
        Command::Layout(cmd) => run_layout(cmd),
        Command::Draw(cmd) => run_draw(cmd),
        Command::Verify(args) => run_verify(args),
        Command::Oracle(args) => run_oracle(args),
        Command::Stats(source) => run_stats(source),
    }
}

// ---------------------------------------------------------------- plumbing

fn read_input(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Usage(format!("reading standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("reading {path}: {e}")))
    }
}

fn write_output(path: &str, text: &str) -> CliResult<()> {
    if path == "-" {
        print!("{text}");
        Ok(())
    } else {
        std::fs::write(path, text).map_err(|e| Failure::Usage(format!("writing {path}: {e}")))
    }
}

fn envelope_json(env: &Envelope) -> String {
    let mut s = serde_json::to_string(env).expect("envelope serialization cannot fail");
    s.push('\n');
    s
}

fn value_of(json: &str) -> serde_json::Value {
    serde_json::from_str(json).expect("canonical artifact JSON always parses")
}

fn report_hash(lines: &[String]) -> String {
    let mut h = Sha256::new();
    for line in lines {
        h.update(line.as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn envelope_from_family(args: &FamilyArgs) -> CliResult<Envelope> {
    let kind = args
        .family
        .ok_or_else(|| Failure::Usage("--family is required".into()))?;
    let need_n = || {
        args.n
            .ok_or_else(|| Failure::Usage("this family needs --n".into()))
    };
    let need_k = || {
        args.k
            .ok_or_else(|| Failure::Usage("this family needs --k".into()))
    };
    let need_seed = || {
        args.seed
            .ok_or_else(|| Failure::Usage("randomized families need --seed".into()))
    };
    let (name, graph, seed) = match kind {
        FamilyKind::Path => ("path", family_graph(Family::Path { n: need_n()? }, args.seed)?, args.seed),
        FamilyKind::Cycle => ("cycle", family_graph(Family::Cycle { n: need_n()? }, args.seed)?, args.seed),
        FamilyKind::Star => ("star", family_graph(Family::Star { n: need_n()? }, args.seed)?, args.seed),
        FamilyKind::Complete => {
            ("complete", family_graph(Family::Complete { n: need_n()? }, args.seed)?, args.seed)
        }
        FamilyKind::Grid => {
            let rows = args
                .rows
                .ok_or_else(|| Failure::Usage("grid needs --rows".into()))?;
            let cols = args
                .cols
                .ok_or_else(|| Failure::Usage("grid needs --cols".into()))?;
            ("grid", family_graph(Family::Grid { rows, cols }, args.seed)?, args.seed)
        }
        FamilyKind::Tree => {
            let seed = need_seed()?;
            ("tree", family_graph(Family::RandomTree { n: need_n()? }, Some(seed))?, Some(seed))
        }
        FamilyKind::Ktree => {
            let seed = need_seed()?;
            let f = Family::RandomKTree { k: need_k()?, n: need_n()? };
            ("ktree", family_graph(f, Some(seed))?, Some(seed))
        }
        FamilyKind::Gk => {
            let (g, _) = generate_gk(need_k()?, DEFAULT_GK_VERTEX_BUDGET)?;
            ("gk", g, args.seed)
        }
    };
    Ok(Envelope {
        family: Some(name.to_string()),
        seed,
        graph: value_of(&graph.to_json()),
        track_layout: None,
        queue_layout: None,
        stack_layout: None,
        drawing: None,
        drawing_box: None,
        verifier_hashes: BTreeMap::new(),
    })
}

fn family_graph(family: Family, seed: Option<u64>) -> CliResult<Graph> {
    Ok(generate(family, seed.unwrap_or(0))?.graph)
}

/// Load the pipeline envelope: inline generation when --family is present,
/// otherwise parse the JSON stream named by --input.
fn load(source: &SourceArgs) -> CliResult<(Envelope, Graph)> {
    let env = if source.family.family.is_some() {
        envelope_from_family(&source.family)?
    } else {
        serde_json::from_str(&read_input(&source.input)?)
            .map_err(|e| Failure::Usage(format!("envelope JSON: {e}")))?
    };
    let graph = Graph::from_json(&env.graph.to_string())?;
    Ok((env, graph))
}

fn track_layout_of(env: &Envelope) -> CliResult<TrackLayout> {
    let v = env.track_layout.as_ref().ok_or_else(|| {
        Failure::Usage("no track layout in the envelope; run `layout track` first".into())
    })?;
    Ok(TrackLayout::from_json(&v.to_string())?)
}

fn oracle_limit(default: usize) -> CliResult<usize> {
    match std::env::var("TRACKLAY_ORACLE_LIMIT") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("TRACKLAY_ORACLE_LIMIT: not a size: {s:?}"))),
        Err(_) => Ok(default),
    }
}

// ------------------------------------------------------------------ layout

fn run_layout(cmd: LayoutCmd) -> CliResult<()> {
    let (source, kind) = match &cmd {
        LayoutCmd::Track(s) => (s, ArtifactKind::Track),
        LayoutCmd::Queue(s) => (s, ArtifactKind::Queue),
        LayoutCmd::Stack(s) => (s, ArtifactKind::Stack),
    };
    let (mut env, graph) = load(source)?;
    match kind {
        ArtifactKind::Track => {
            let tl = best_track_layout(&graph)?;
            let report = verify_track_layout(&graph, &tl);
            if !report.pass() {
                return Err(Failure::Check(format!(
                    "track layout failed verification:\n{}",
                    report.summary_lines().join("\n")
                )));
            }
            env.verifier_hashes
                .insert("track_layout".into(), report_hash(&report.summary_lines()));
            env.track_layout = Some(value_of(&tl.to_json()));
        }
        ArtifactKind::Queue => {
            let ql = best_queue_layout(&graph)?;
            let report = verify_queue_layout(&graph, &ql);
            if !report.pass() {
                return Err(Failure::Check(format!(
                    "queue layout failed verification:\n{}",
                    report.summary_lines().join("\n")
                )));
            }
            env.verifier_hashes
                .insert("queue_layout".into(), report_hash(&report.summary_lines()));
            env.queue_layout = Some(value_of(&ql.to_json()));
        }
        ArtifactKind::Stack => {
            if !graph.is_forest() {
                return Err(Failure::Usage(
                    "stack layouts are implemented for forests only".into(),
                ));
            }
            let sl = tree_1stack(&graph)?;
            let report = verify_stack_layout(&graph, &sl);
            if !report.pass() {
                return Err(Failure::Check(format!(
                    "stack layout failed verification:\n{}",
                    report.summary_lines().join("\n")
                )));
            }
            env.verifier_hashes
                .insert("stack_layout".into(), report_hash(&report.summary_lines()));
            env.stack_layout = Some(value_of(&sl.to_json()));
        }
        ArtifactKind::Drawing => unreachable!("layout has no drawing variant"),
    }
    write_output(&source.output, &envelope_json(&env))
}

/// Strategy chain: forests get the 3-track construction, k-trees the
/// partition engine at their detected width, and anything else falls back
/// to an interval layout from an optimal path decomposition (small graphs).
fn best_track_layout(g: &Graph) -> CliResult<TrackLayout> {
    if g.is_forest() {
        return Ok(tree_3track(g)?);
    }
    if let Ok((k, _)) = ktree_peo(g) {
        return Ok(ktree_track_layout(g, k)?);
    }
    let pw = exact_pathwidth(g, oracle_limit(DEFAULT_WIDTH_ORACLE_LIMIT)?)?;
    Ok(from_path_decomposition(g, &pw.witness)?)
}

fn best_queue_layout(g: &Graph) -> CliResult<QueueLayout> {
    if g.is_forest() {
        return Ok(tree_1queue(g)?);
    }
    let order: Vec<usize> = match ktree_peo(g) {
        Ok((_, o)) => o.sequence().to_vec(),
        Err(_) => (0..g.n()).collect(),
    };
    Ok(queues_from_ordering(g, &order)?)
}

// -------------------------------------------------------------------- draw

fn run_draw(cmd: DrawCmd) -> CliResult<()> {
    let (args, r) = match &cmd {
        DrawCmd::Moment(a) | DrawCmd::Cohen(a) | DrawCmd::Track(a) | DrawCmd::Balanced(a) => {
            (a, None)
        }
        DrawCmd::Aspect(a) => (&a.draw, Some(a.r)),
    };
    let (mut env, graph) = load(&args.source)?;
    let n = graph.n() as u64;
    let (drawing, promised) = match &cmd {
        DrawCmd::Moment(_) => (moment_curve(graph.n())?, (n, n * n, n * n * n)),
        DrawCmd::Cohen(_) => (cohen_mod_p(graph.n())?, (n, 2 * n, 2 * n)),
        DrawCmd::Track(_) => {
            let tl = track_layout_of(&env)?;
            (draw_from_track(&graph, &tl)?, nominal_box(&tl))
        }
        DrawCmd::Balanced(_) => {
            let tl = track_layout_of(&env)?;
            let balanced = balance(&tl, Ratio::integer(tl.track_count().max(1) as u64))?;
            let report = verify_track_layout(&graph, &balanced);
            if !report.pass() {
                return Err(Failure::Check(format!(
                    "balanced layout failed verification:\n{}",
                    report.summary_lines().join("\n")
                )));
            }
            // The envelope's layout becomes the balanced one so the drawing
            // and the layout it came from travel together.
            env.track_layout = Some(value_of(&balanced.to_json()));
            env.verifier_hashes
                .insert("track_layout".into(), report_hash(&report.summary_lines()));
            (draw_from_track(&graph, &balanced)?, nominal_box(&balanced))
        }
        DrawCmd::Aspect(_) => {
            let tl = track_layout_of(&env)?;
            let (d, bx) = draw_aspect(&graph, &tl, r.expect("aspect always has --r"))?;
            (d, bx)
        }
    };
    let report = verify_drawing(&graph, &drawing);
    if !report.pass() {
        return Err(Failure::Check(format!(
            "drawing failed verification:\n{}",
            report.summary_lines().join("\n")
        )));
    }
    match args.format {
        Format::Json => {
            env.verifier_hashes
                .insert("drawing".into(), report_hash(&report.summary_lines()));
            env.drawing = Some(value_of(&drawing.to_json()));
            env.drawing_box = Some(promised);
            write_output(&args.source.output, &envelope_json(&env))
        }
        Format::Obj => write_output(&args.source.output, &to_obj(&graph, &to_origin(&drawing))),
        Format::Svg => write_output(&args.source.output, &to_svg(&graph, &to_origin(&drawing))),
    }
}

/// Translate so the bounding box starts at the origin; exports only, the
/// JSON artifact keeps the constructors' coordinates.
fn to_origin(d: &Drawing3D) -> Drawing3D {
    let pts = d.points();
    if pts.is_empty() {
        return d.clone();
    }
    let mx = pts.iter().map(|p| p.0).min().unwrap();
    let my = pts.iter().map(|p| p.1).min().unwrap();
    let mz = pts.iter().map(|p| p.2).min().unwrap();
    Drawing3D::new(pts.iter().map(|&(x, y, z)| (x - mx, y - my, z - mz)).collect())
        .expect("translation preserves distinctness and bounds")
}

// ------------------------------------------------------------------ verify

fn run_verify(args: VerifyArgs) -> CliResult<()> {
    let (env, graph) = load(&args.source)?;
    let (name, lines, pass) = match args.kind {
        ArtifactKind::Track => {
            let tl = track_layout_of(&env)?;
            let report = verify_track_layout(&graph, &tl);
            ("track_layout", report.summary_lines(), report.pass())
        }
        ArtifactKind::Queue => {
            let v = env.queue_layout.as_ref().ok_or_else(|| {
                Failure::Usage("no queue layout in the envelope; run `layout queue` first".into())
            })?;
            let ql = QueueLayout::from_json(&v.to_string())?;
            let report = verify_queue_layout(&graph, &ql);
            ("queue_layout", report.summary_lines(), report.pass())
        }
        ArtifactKind::Stack => {
            let v = env.stack_layout.as_ref().ok_or_else(|| {
                Failure::Usage("no stack layout in the envelope; run `layout stack` first".into())
            })?;
            let sl = StackLayout::from_json(&v.to_string())?;
            let report = verify_stack_layout(&graph, &sl);
            ("stack_layout", report.summary_lines(), report.pass())
        }
        ArtifactKind::Drawing => {
            let v = env.drawing.as_ref().ok_or_else(|| {
                Failure::Usage("no drawing in the envelope; run a `draw` stage first".into())
            })?;
            let d = Drawing3D::from_json(&v.to_string())?;
            let report = verify_drawing(&graph, &d);
            ("drawing", report.summary_lines(), report.pass())
        }
    };
    let mut out: Vec<String> = lines;
    let hash = report_hash(&out);
    let mut ok = pass;
    match env.verifier_hashes.get(name) {
        Some(stored) if *stored == hash => out.push("stored report hash: match".into()),
        Some(_) => {
            ok = false;
            out.push("stored report hash: MISMATCH (artifact or graph changed since emission)".into());
        }
        None => out.push("stored report hash: none".into()),
    }
    out.push(format!("report hash: {hash}"));
    out.push(format!("verdict: {}", if ok { "pass" } else { "FAIL" }));
    write_output(&args.source.output, &format!("{}\n", out.join("\n")))?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Check(format!("{name} verification failed")))
    }
}

// ------------------------------------------------------------------ oracle

fn run_oracle(args: OracleArgs) -> CliResult<()> {
    let (_, graph) = load(&args.source)?;
    let value = match args.kind {
        OracleKind::QueueNumber => {
            exact_queue_number(&graph, oracle_limit(DEFAULT_QUEUE_ORACLE_LIMIT)?)?.value
        }
        OracleKind::TrackNumber => {
            exact_track_number(&graph, oracle_limit(DEFAULT_TRACK_ORACLE_LIMIT)?)?.value
        }
        OracleKind::Pathwidth => {
            exact_pathwidth(&graph, oracle_limit(DEFAULT_WIDTH_ORACLE_LIMIT)?)?.value
        }
        OracleKind::Treewidth => {
            exact_treewidth(&graph, oracle_limit(DEFAULT_WIDTH_ORACLE_LIMIT)?)?.value
        }
    };
    write_output(&args.source.output, &format!("{value}\n"))
}

// ------------------------------------------------------------------- stats

/// One CSV row over whatever the envelope carries; absent artifacts leave
/// their columns empty. Schema documented in the README.
fn run_stats(source: SourceArgs) -> CliResult<()> {
    let (env, graph) = load(&source)?;
    let mut cols: Vec<(&str, String)> = vec![
        ("family", env.family.clone().unwrap_or_default()),
        ("seed", env.seed.map(|s| s.to_string()).unwrap_or_default()),
        ("n", graph.n().to_string()),
        ("m", graph.m().to_string()),
    ];
    let mut all_pass = true;

    fn blank<'a>(cols: &mut Vec<(&'a str, String)>, names: &[&'a str]) {
        for &name in names {
            cols.push((name, String::new()));
        }
    }

    if let Some(v) = &env.track_layout {
        let tl = TrackLayout::from_json(&v.to_string())?;
        let report = verify_track_layout(&graph, &tl);
        all_pass &= report.pass();
        cols.push(("tracks", tl.track_count().to_string()));
        cols.push(("span", max_span(&graph, &tl).to_string()));
        cols.push(("track_crossings", report.crossing_count.to_string()));
    } else {
        blank(&mut cols, &["tracks", "span", "track_crossings"]);
    }

    if let Some(v) = &env.queue_layout {
        let ql = QueueLayout::from_json(&v.to_string())?;
        let report = verify_queue_layout(&graph, &ql);
        all_pass &= report.pass();
        cols.push(("queues", ql.queue_count().to_string()));
        cols.push(("queue_nestings", report.nested_count.to_string()));
    } else {
        blank(&mut cols, &["queues", "queue_nestings"]);
    }

    if let Some(v) = &env.stack_layout {
        let sl = StackLayout::from_json(&v.to_string())?;
        let report = verify_stack_layout(&graph, &sl);
        all_pass &= report.pass();
        cols.push(("stacks", sl.stack_count().to_string()));
        cols.push(("stack_crossings", report.crossing_count.to_string()));
    } else {
        blank(&mut cols, &["stacks", "stack_crossings"]);
    }

    if let Some(v) = &env.drawing {
        let d = Drawing3D::from_json(&v.to_string())?;
        let report = verify_drawing(&graph, &d);
        all_pass &= report.pass();
        let (x, y, z) = extents(&d);
        let volume = x as u128 * y as u128 * z as u128;
        let (hi, lo) = (x.max(y).max(z), x.min(y).min(z).max(1));
        let capacity_ok = graph.m() as u128 <= box_edge_capacity(x, y, z);
        all_pass &= capacity_ok;
        let defects = report.duplicate_count + report.vertex_on_edge_count + report.crossing_count;
        cols.push(("box_x", x.to_string()));
        cols.push(("box_y", y.to_string()));
        cols.push(("box_z", z.to_string()));
        cols.push(("volume", volume.to_string()));
        cols.push(("aspect", format!("{:.3}", hi as f64 / lo as f64)));
        cols.push(("drawing_defects", defects.to_string()));
        cols.push(("capacity_ok", capacity_ok.to_string()));
    } else {
        blank(
            &mut cols,
            &["box_x", "box_y", "box_z", "volume", "aspect", "drawing_defects", "capacity_ok"],
        );
    }

    cols.push(("all_pass", all_pass.to_string()));
    let header: Vec<&str> = cols.iter().map(|(h, _)| *h).collect();
    let row: Vec<String> = cols.iter().map(|(_, v)| v.clone()).collect();
    write_output(
        &source.output,
        &format!("{}\n{}\n", header.join(","), row.join(",")),
    )?;
    if all_pass {
        Ok(())
    } else {
        Err(Failure::Check("an artifact failed verification".into()))
    }
}
