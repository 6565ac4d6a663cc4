//! Front end for `ikdetect`: reads a graph, runs the requested test and
//! renders a text or JSON report.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use ikdetect_core::certificate::{Certificate, CertificateMode};
use ikdetect_core::generators;
use ikdetect_core::graph::{parse_graph, Graph};
use ikdetect_core::il::{detect_il, detect_zero_linking, verify_linking_certificate, IlVerdict};
use ikdetect_core::linsys::Ring;
use ikdetect_core::pipeline::{prepare, Prepared, Timings};
use ikdetect_core::quads::QuadOptions;
use ikdetect_core::search::{
    indispensable_equations, search_d4less, verify_certificate, IntegerMethod, SearchOptions, SearchStats,
    VerdictKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Ik,
    Il,
    ZeroLinking,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    Z2,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QuadMode {
    All,
    Chordless,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Decide whether a graph is intrinsically knotted (by searching for an
/// embedding with no double-linked quad) or intrinsically linked.
#[derive(Clone, Debug, Parser)]
#[command(name = "ikdetect", version)]
pub struct RunConfig {
    #[arg(long, value_enum, default_value = "ik")]
    pub mode: Mode,
    /// Ring for the knottedness search.
    #[arg(long, value_enum, default_value = "z")]
    pub ring: RingArg,
    #[arg(long, value_enum, default_value = "all")]
    pub quads: QuadMode,
    /// Require connecting paths to avoid the shared-vertex witnesses too.
    #[arg(long)]
    pub strict_witness: bool,
    /// Accept an integer solution only when the rational one is integral.
    #[arg(long)]
    pub paper_compat: bool,
    /// Skip the indispensable-equation preprocessing.
    #[arg(long)]
    pub no_indispensable: bool,
    /// Disable nogood skipping; every complete selection is solved.
    #[arg(long)]
    pub no_skip: bool,
    /// Wall-clock limit for the search, in seconds.
    #[arg(long)]
    pub timeout: Option<f64>,
    /// Limit on branching decisions in the search.
    #[arg(long)]
    pub node_limit: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Graph file: an edge list (`u v` per line) or a 0/1 adjacency matrix.
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    pub input: Option<PathBuf>,
    /// Built-in graph, e.g. k7, k3311, petersen, cube, wheel:6, random:8,14,1.
    #[arg(long)]
    pub gen: Option<String>,
    /// Certificate (or a JSON report containing one) to check in verify mode.
    #[arg(long, required_if_eq("mode", "verify"))]
    pub certificate: Option<PathBuf>,
    /// Also write the produced certificate to this file.
    #[arg(long)]
    pub certificate_out: Option<PathBuf>,
}

/// Exit status and the text to print (stdout on success, stderr on error).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub exit_code: i32,
    pub report: String,
}

fn failure(message: String) -> RunOutput {
    RunOutput { exit_code: 1, report: message }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GraphInfo {
    vertices: usize,
    edges: usize,
    hash: String,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Settings {
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    ring: Option<Ring>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quads: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    strict_witness: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    paper_compat: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    indispensable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    skipping: Option<bool>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Stats {
    cycles: usize,
    disjoint_pairs: usize,
    variables: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    quads: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    search: Option<SearchStats>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Report {
    graph: GraphInfo,
    settings: Settings,
    verdict: &'static str,
    certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate_verified: Option<bool>,
    /// Disjoint cycle pairs of an unsolvable linking system.
    #[serde(skip_serializing_if = "Option::is_none")]
    core: Option<Vec<(usize, usize)>>,
    stats: Stats,
    /// Seconds per phase; the only field that varies between runs.
    timings: Vec<(&'static str, f64)>,
}

fn load_graph(cfg: &RunConfig) -> Result<Graph, String> {
    if let Some(name) = &cfg.gen {
        return generators::by_name(name).ok_or_else(|| format!("unknown generator `{name}`"));
    }
    let path = cfg.input.as_ref().ok_or("no input graph given")?;
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| format!("malformed graph in {}: {e}", path.display()))
}

fn load_certificate(path: &PathBuf) -> Result<Certificate, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("malformed certificate in {}: {e}", path.display()))?;
    let inner = match value.get("certificate") {
        Some(c) if value.get("entries").is_none() => c.clone(),
        _ => value,
    };
    serde_json::from_value(inner).map_err(|e| format!("malformed certificate in {}: {e}", path.display()))
}

fn quad_options(quads: QuadMode, strict_witness: bool) -> QuadOptions {
    QuadOptions { chordless_only: quads == QuadMode::Chordless, strict_witness }
}

fn quad_mode_name(q: QuadMode) -> &'static str {
    match q {
        QuadMode::All => "all",
        QuadMode::Chordless => "chordless",
    }
}

fn base_stats(p: &Prepared) -> Stats {
    Stats { cycles: p.cycles.len(), disjoint_pairs: p.links.len(), variables: p.vars.len(), quads: None, search: None }
}

fn run_ik(cfg: &RunConfig, p: &Prepared, timings: &mut Timings) -> (Report, i32) {
    let ring = match cfg.ring {
        RingArg::Z2 => Ring::Z2,
        RingArg::Z => Ring::Z,
    };
    let qopts = quad_options(cfg.quads, cfg.strict_witness);
    let quads = p.quads(qopts, timings);
    let eqs = p.equations(&quads, timings);
    let indispensables =
        (!cfg.no_indispensable).then(|| timings.time("indispensable", || indispensable_equations(&eqs, ring)));
    let opts = SearchOptions {
        ring,
        indispensable: !cfg.no_indispensable,
        skipping: !cfg.no_skip,
        integer_method: if cfg.paper_compat { IntegerMethod::RationalIntegral } else { IntegerMethod::Exact },
        time_limit: cfg.timeout.map(Duration::from_secs_f64),
        node_limit: cfg.node_limit,
        workers: cfg.workers.max(1),
        ..Default::default()
    };
    let verdict = timings.time("search", || search_d4less(&eqs, indispensables.as_ref(), &opts));
    let certificate = verdict.certificate(&p.graph, &p.vars).map(|mut c| {
        c.quads = Some(quad_mode_name(cfg.quads).into());
        c.strict_witness = Some(cfg.strict_witness);
        c
    });
    let verified = certificate.as_ref().map(|c| {
        timings.time("verify", || verify_certificate(&p.graph, &p.cycles, &quads, &p.links, c).unwrap_or(false))
    });
    let exit_code = match (verdict.kind, verified) {
        (_, Some(false)) => 1,
        (VerdictKind::Timeout, _) => 2,
        _ => 0,
    };
    let report = Report {
        graph: graph_info(&p.graph),
        settings: Settings {
            mode: "ik",
            ring: Some(ring),
            quads: Some(quad_mode_name(cfg.quads)),
            strict_witness: Some(cfg.strict_witness),
            paper_compat: Some(cfg.paper_compat),
            indispensable: Some(!cfg.no_indispensable),
            skipping: Some(!cfg.no_skip),
        },
        verdict: verdict.kind.as_str(),
        certificate,
        certificate_verified: verified,
        core: None,
        stats: Stats { quads: Some(quads.len()), search: Some(verdict.stats), ..base_stats(p) },
        timings: Vec::new(),
    };
    (report, exit_code)
}

fn run_linking(cfg: &RunConfig, p: &Prepared, timings: &mut Timings) -> (Report, i32) {
    let (name, verdict): (&'static str, IlVerdict) = if cfg.mode == Mode::Il {
        ("il", timings.time("solve", || detect_il(&p.cycles, &p.links, &p.vars)))
    } else {
        ("zero-linking", timings.time("solve", || detect_zero_linking(&p.cycles, &p.links, &p.vars)))
    };
    let certificate = verdict.certificate(&p.graph, &p.vars);
    let verified = certificate.as_ref().map(|c| {
        timings.time("verify", || verify_linking_certificate(&p.graph, &p.cycles, &p.links, c).unwrap_or(false))
    });
    let report = Report {
        graph: graph_info(&p.graph),
        settings: Settings {
            mode: name,
            ring: None,
            quads: None,
            strict_witness: None,
            paper_compat: None,
            indispensable: None,
            skipping: None,
        },
        verdict: verdict.kind.as_str(),
        certificate,
        certificate_verified: verified,
        core: verdict.core,
        stats: base_stats(p),
        timings: Vec::new(),
    };
    (report, if verified == Some(false) { 1 } else { 0 })
}

fn run_verify(cfg: &RunConfig, p: &Prepared, timings: &mut Timings) -> Result<(Report, i32), String> {
    let path = cfg.certificate.as_ref().ok_or("verify mode needs --certificate")?;
    let cert = load_certificate(path)?;
    let mut quad_count = None;
    let result = match cert.mode {
        CertificateMode::Ik => {
            let quads = match cert.quads.as_deref() {
                None | Some("all") => QuadMode::All,
                Some("chordless") => QuadMode::Chordless,
                Some(other) => return Err(format!("malformed certificate: unknown quad mode `{other}`")),
            };
            let qs = p.quads(quad_options(quads, cert.strict_witness.unwrap_or(false)), timings);
            quad_count = Some(qs.len());
            timings.time("verify", || verify_certificate(&p.graph, &p.cycles, &qs, &p.links, &cert))
        }
        CertificateMode::Il | CertificateMode::ZeroLinking => {
            timings.time("verify", || verify_linking_certificate(&p.graph, &p.cycles, &p.links, &cert))
        }
    };
    match result {
        Ok(true) => {}
        Ok(false) => return Err("certificate rejected: some required linking number does not vanish".into()),
        Err(e) => return Err(format!("certificate rejected: {e}")),
    }
    let report = Report {
        graph: graph_info(&p.graph),
        settings: Settings {
            mode: "verify",
            ring: Some(cert.ring),
            quads: None,
            strict_witness: None,
            paper_compat: None,
            indispensable: None,
            skipping: None,
        },
        verdict: "ACCEPTED",
        certificate: Some(cert),
        certificate_verified: Some(true),
        core: None,
        stats: Stats { quads: quad_count, ..base_stats(p) },
        timings: Vec::new(),
    };
    Ok((report, 0))
}

fn graph_info(g: &Graph) -> GraphInfo {
    GraphInfo { vertices: g.vertex_count(), edges: g.edge_count(), hash: g.fingerprint() }
}

pub fn run(cfg: &RunConfig) -> RunOutput {
    let graph = match load_graph(cfg) {
        Ok(g) => g,
        Err(e) => return failure(e),
    };
    let mut timings = Timings::default();
    let prepared = prepare(graph, &mut timings);
    let (mut report, exit_code) = match cfg.mode {
        Mode::Ik => run_ik(cfg, &prepared, &mut timings),
        Mode::Il | Mode::ZeroLinking => run_linking(cfg, &prepared, &mut timings),
        Mode::Verify => match run_verify(cfg, &prepared, &mut timings) {
            Ok(r) => r,
            Err(e) => return failure(e),
        },
    };
    report.timings = timings.phases.iter().map(|&(name, d)| (name, d.as_secs_f64())).collect();
    if exit_code == 1 {
        return failure(format!("internal error: produced certificate failed verification ({})", report.verdict));
    }
    if let (Some(path), Some(cert)) = (&cfg.certificate_out, &report.certificate) {
        let json = serde_json::to_string_pretty(cert).expect("certificate serializes");
        if let Err(e) = std::fs::write(path, json + "\n") {
            return failure(format!("cannot write {}: {e}", path.display()));
        }
    }
    let text = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Text => render_text(&report),
    };
    RunOutput { exit_code, report: text }
}

fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let g = &r.graph;
    let _ = writeln!(s, "graph: {} vertices, {} edges, hash {}", g.vertices, g.edges, g.hash);
    let mut settings = format!("mode: {}", r.settings.mode);
    if let Some(ring) = r.settings.ring {
        let _ = write!(settings, ", ring {ring}");
    }
    if let Some(q) = r.settings.quads {
        let _ = write!(settings, ", quads {q}");
    }
    let _ = writeln!(s, "{settings}");
    let _ = writeln!(s, "verdict: {}", r.verdict);
    if let Some(v) = r.certificate_verified {
        let _ = writeln!(s, "certificate verified: {v}");
    }
    if let Some(c) = &r.certificate {
        let nonzero: Vec<String> = c
            .entries
            .iter()
            .filter(|e| e.twists != 0)
            .map(|e| format!("({},{}):{}", e.edge_pair[0], e.edge_pair[1], e.twists))
            .collect();
        let _ = writeln!(s, "crossing changes: {}", if nonzero.is_empty() { "none".into() } else { nonzero.join(" ") });
    }
    if let Some(core) = &r.core {
        let _ = writeln!(s, "unsolvable pairs: {}", core.len());
    }
    let st = &r.stats;
    let _ = writeln!(s, "cycles: {}", st.cycles);
    let _ = writeln!(s, "disjoint pairs: {}", st.disjoint_pairs);
    let _ = writeln!(s, "variables: {}", st.variables);
    if let Some(q) = st.quads {
        let _ = writeln!(s, "quads: {q}");
    }
    if let Some(x) = &st.search {
        let _ = writeln!(s, "equations: {}", x.equations);
        let _ = writeln!(s, "indispensable: {}", x.indispensable);
        let _ = writeln!(s, "strings examined: {}", x.strings_examined);
        let _ = writeln!(s, "strings skipped: {}", x.strings_skipped);
        let _ = writeln!(s, "nogoods learned: {}", x.nogoods_learned);
        let _ = writeln!(s, "integer solves: {}", x.integer_solves);
    }
    for (name, secs) in &r.timings {
        let _ = writeln!(s, "time {name}: {secs:.3}s");
    }
    s
}
