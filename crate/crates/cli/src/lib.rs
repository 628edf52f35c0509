//! Subcommands of the `citerank` binary.
//!
//! Each command reads its inputs, writes its artifacts into an output
//! directory (created if absent) together with a `manifest.json`, and
//! returns the list of files written.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use citerank::citegraph::{centrality_distribution, network_summary, write_distribution_csv, CitationNetwork};
use citerank::fmt::round_sig;
use citerank::ingest::{apply_threshold, build_network, parse_records, publication_counts, read_node_csv, write_node_csv};
use citerank::pagerank::{pagerank, write_ranking_csv, DanglingPolicy, PageRankConfig};
use citerank::profile::{default_profiles, find_profile, load_profiles, SubjectProfile};
use citerank::rankstats::{compare, pca, CorrelationMatrix};
use citerank::scoring::{composite_score, compress_indicators, normalize_pagerank, ScoreTable};
use citerank::synthnet::{generate, CartelSpec, SynthConfig};
use citerank::Error;
use serde::Serialize;
use serde_json::{Map, Value};

pub type Result<T> = std::result::Result<T, Error>;

pub const MANIFEST_FILE: &str = "manifest.json";

/// Input and flag record written beside every command's outputs.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub subject: Option<String>,
    pub inputs: Vec<PathBuf>,
    pub flags: Map<String, Value>,
    pub outputs: Vec<String>,
    pub timestamp_unix: u64,
}

impl RunManifest {
    fn new(command: &str, subject: Option<String>, inputs: Vec<PathBuf>, flags: Value) -> Self {
        Self {
            tool: "citerank",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            subject,
            inputs,
            flags: match flags {
                Value::Object(m) => m,
                _ => Map::new(),
            },
            outputs: Vec::new(),
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }
}

/// Serializes `value` as pretty JSON with every float rounded to 15
/// significant digits.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    fn round(v: &mut Value) {
        match v {
            Value::Number(n) if n.is_f64() => {
                if let Some(x) = n.as_f64().and_then(|x| serde_json::Number::from_f64(round_sig(x))) {
                    *n = x;
                }
            }
            Value::Array(items) => items.iter_mut().for_each(round),
            Value::Object(map) => map.values_mut().for_each(round),
            _ => {}
        }
    }
    let mut v = serde_json::to_value(value)?;
    round(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

struct OutDir {
    root: PathBuf,
    written: Vec<String>,
}

impl OutDir {
    fn create(root: &Path) -> Result<Self> {
        fs::create_dir_all(root)?;
        Ok(Self { root: root.to_path_buf(), written: Vec::new() })
    }

    fn write_with(&mut self, name: &str, f: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<()> {
        let mut w = BufWriter::new(File::create(self.root.join(name))?);
        f(&mut w)?;
        w.flush()?;
        self.written.push(name.to_string());
        Ok(())
    }

    fn write_text(&mut self, name: &str, text: &str) -> Result<()> {
        self.write_with(name, |w| Ok(w.write_all(text.as_bytes())?))
    }

    fn finish(mut self, mut manifest: RunManifest) -> Result<Vec<PathBuf>> {
        manifest.outputs = self.written.clone();
        let text = to_json(&manifest)?;
        self.write_text(MANIFEST_FILE, &text)?;
        Ok(self.written.iter().map(|n| self.root.join(n)).collect())
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

/// Resolves a subject profile from a config file (or the shipped defaults)
/// and applies a threshold override.
pub fn resolve_profile(subject: &str, config: Option<&Path>, threshold: Option<u32>) -> Result<SubjectProfile> {
    let profiles = match config {
        Some(path) => load_profiles(path)?,
        None => default_profiles(),
    };
    let mut profile = find_profile(&profiles, subject)?;
    if let Some(t) = threshold {
        profile.publication_threshold = t;
    }
    profile.validate()?;
    Ok(profile)
}

#[derive(Debug, Clone)]
pub struct BuildArgs {
    pub records: PathBuf,
    pub subject: String,
    pub config: Option<PathBuf>,
    pub threshold: Option<u32>,
    pub self_loops: bool,
    pub strict: bool,
    pub out: PathBuf,
}

/// Parses records, thresholds institutions and writes the network files:
/// `nodes.csv`, `edges.csv`, `summary.json`, `centrality.csv`.
pub fn cmd_build(args: &BuildArgs) -> Result<Vec<PathBuf>> {
    let profile = resolve_profile(&args.subject, args.config.as_deref(), args.threshold)?;
    let parsed = parse_records(open(&args.records)?, args.strict)?;
    for issue in &parsed.issues {
        eprintln!("warning: {}: line {}: {}", args.records.display(), issue.line, issue.message);
    }
    if parsed.records.is_empty() {
        return Err(Error::NoRecords);
    }
    let retained = apply_threshold(&parsed.records, &profile);
    let net = build_network(&parsed.records, &retained, &profile, args.self_loops)?;
    let counts = publication_counts(&parsed.records, &profile);
    let summary = network_summary(&net);
    let dist = centrality_distribution(&net)?;

    let mut out = OutDir::create(&args.out)?;
    out.write_with("nodes.csv", |w| write_node_csv(&net, &counts, w))?;
    out.write_with("edges.csv", |w| net.write_edge_csv(w))?;
    out.write_text("summary.json", &to_json(&summary)?)?;
    out.write_with("centrality.csv", |w| write_distribution_csv(&dist, w))?;
    if !parsed.issues.is_empty() {
        out.write_text("parse_issues.json", &to_json(&parsed.issues)?)?;
    }
    let manifest = RunManifest::new(
        "build",
        Some(profile.name.clone()),
        [Some(args.records.clone()), args.config.clone()].into_iter().flatten().collect(),
        serde_json::json!({
            "threshold": profile.publication_threshold,
            "year_range": profile.year_range,
            "category": profile.category,
            "self_loops": args.self_loops,
            "strict": args.strict,
        }),
    );
    out.finish(manifest)
}

#[derive(Debug, Clone)]
pub struct PageRankArgs {
    pub edges: PathBuf,
    pub nodes: Option<PathBuf>,
    pub config: PageRankConfig,
    pub self_loops: bool,
    pub subject: Option<String>,
    pub out: PathBuf,
}

#[derive(Serialize)]
struct SolverReport<'a> {
    nodes: usize,
    iterations_used: usize,
    converged: bool,
    final_delta: f64,
    config: &'a PageRankConfig,
}

/// Solves PageRank on an edge list and writes `ranking.csv` and
/// `pagerank.json`.
pub fn cmd_pagerank(args: &PageRankArgs) -> Result<Vec<PathBuf>> {
    let extra = match &args.nodes {
        Some(p) => read_node_csv(open(p)?)?,
        None => Vec::new(),
    };
    let subject = args.subject.clone().unwrap_or_default();
    let net = CitationNetwork::read_edge_csv(open(&args.edges)?, &extra, subject, args.self_loops)?;
    let result = pagerank(&net, &args.config)?;
    if !result.converged {
        eprintln!(
            "warning: not converged after {} iterations (delta {:e})",
            result.iterations_used, result.final_delta
        );
    }
    let normalized = normalize_pagerank(&result);

    let mut out = OutDir::create(&args.out)?;
    out.write_with("ranking.csv", |w| {
        write_ranking_csv(net.node_ids(), &result.scores, &[("normalized_score", &normalized)], w)
    })?;
    let report = SolverReport {
        nodes: net.len(),
        iterations_used: result.iterations_used,
        converged: result.converged,
        final_delta: result.final_delta,
        config: &args.config,
    };
    out.write_text("pagerank.json", &to_json(&report)?)?;
    let manifest = RunManifest::new(
        "pagerank",
        args.subject.clone(),
        [Some(args.edges.clone()), args.nodes.clone()].into_iter().flatten().collect(),
        serde_json::json!({
            "damping": args.config.damping,
            "tol": args.config.tolerance,
            "max_iter": args.config.max_iterations,
            "dangling": args.config.dangling_policy,
            "self_loops": args.self_loops,
        }),
    );
    out.finish(manifest)
}

#[derive(Debug, Clone)]
pub struct CompareArgs {
    pub table: PathBuf,
    pub column_a: String,
    pub column_b: String,
    pub controls: Vec<String>,
    pub subject: Option<String>,
    pub out: PathBuf,
}

/// Runs the comparison battery and writes `comparison.json` and
/// `comparison.csv`.
pub fn cmd_compare(args: &CompareArgs) -> Result<Vec<PathBuf>> {
    let subject = args.subject.clone().unwrap_or_default();
    let table = ScoreTable::read_csv(open(&args.table)?, subject)?;
    let report = compare(&table, &args.column_a, &args.column_b, &args.controls)?;

    let mut out = OutDir::create(&args.out)?;
    out.write_text("comparison.json", &to_json(&report)?)?;
    out.write_with("comparison.csv", |w| report.write_csv(w))?;
    let manifest = RunManifest::new(
        "compare",
        args.subject.clone(),
        vec![args.table.clone()],
        serde_json::json!({
            "a": args.column_a,
            "b": args.column_b,
            "controls": args.controls,
        }),
    );
    out.finish(manifest)
}

#[derive(Debug, Clone)]
pub enum PcaInput {
    Correlation(PathBuf),
    /// Score table plus the columns to use (all columns when empty).
    Table(PathBuf, Vec<String>),
}

#[derive(Debug, Clone)]
pub struct PcaArgs {
    pub input: PcaInput,
    pub retain: usize,
    pub out: PathBuf,
}

/// Principal components with varimax; writes `pca.json`, `eigen.csv`,
/// `loadings.csv` and `rotated_loadings.csv`.
pub fn cmd_pca(args: &PcaArgs) -> Result<Vec<PathBuf>> {
    let (corr, input_path, from_table) = match &args.input {
        PcaInput::Correlation(path) => (CorrelationMatrix::read_csv(open(path)?)?, path.clone(), false),
        PcaInput::Table(path, columns) => {
            let table = ScoreTable::read_csv(open(path)?, "")?;
            let names: Vec<String> = if columns.is_empty() {
                table.column_names().map(str::to_string).collect()
            } else {
                columns.clone()
            };
            let cols = names.iter().map(|c| table.column(c)).collect::<Result<Vec<_>>>()?;
            (CorrelationMatrix::from_columns(names, &cols)?, path.clone(), true)
        }
    };
    let result = pca(&corr, args.retain)?;

    let mut out = OutDir::create(&args.out)?;
    if from_table {
        out.write_with("correlation.csv", |w| corr.write_csv(w))?;
    }
    out.write_text("pca.json", &to_json(&result)?)?;
    out.write_with("eigen.csv", |w| result.write_eigen_csv(w))?;
    out.write_with("loadings.csv", |w| result.write_loadings_csv(false, w))?;
    out.write_with("rotated_loadings.csv", |w| result.write_loadings_csv(true, w))?;
    let manifest = RunManifest::new(
        "pca",
        None,
        vec![input_path],
        serde_json::json!({ "retain": args.retain, "from_table": from_table }),
    );
    out.finish(manifest)
}

#[derive(Debug, Clone)]
pub struct ScoreArgs {
    pub table: PathBuf,
    pub subject: String,
    pub config: Option<PathBuf>,
    pub out: PathBuf,
}

/// Compresses raw indicator columns and adds the weighted `arwu_score`;
/// writes `scores.csv`.
pub fn cmd_score(args: &ScoreArgs) -> Result<Vec<PathBuf>> {
    let profile = resolve_profile(&args.subject, args.config.as_deref(), None)?;
    let mut table = ScoreTable::read_csv(open(&args.table)?, profile.name.clone())?;
    compress_indicators(&mut table, &profile)?;
    let composite = composite_score(&table, &profile)?;
    table.insert("arwu_score", composite)?;

    let mut out = OutDir::create(&args.out)?;
    out.write_with("scores.csv", |w| table.write_csv(w))?;
    let manifest = RunManifest::new(
        "score",
        Some(profile.name.clone()),
        [Some(args.table.clone()), args.config.clone()].into_iter().flatten().collect(),
        serde_json::json!({ "indicator_weights": profile.indicator_weights }),
    );
    out.finish(manifest)
}

#[derive(Debug, Clone)]
pub struct SynthArgs {
    pub config: SynthConfig,
    pub out: PathBuf,
}

/// Writes a synthetic network as `edges.csv` and `nodes.csv`.
pub fn cmd_synth(args: &SynthArgs) -> Result<Vec<PathBuf>> {
    let net = generate(&args.config)?;
    let mut out = OutDir::create(&args.out)?;
    out.write_with("edges.csv", |w| net.write_edge_csv(w))?;
    out.write_with("nodes.csv", |w| write_node_csv(&net, &Default::default(), w))?;
    let manifest = RunManifest::new(
        "synth",
        None,
        Vec::new(),
        serde_json::to_value(args.config)?,
    );
    out.finish(manifest)
}

/// Shorthand used by the binary for the cartel flags.
pub fn cartel(size: Option<usize>, boost: f64) -> Option<CartelSpec> {
    size.map(|member_count| CartelSpec { member_count, internal_weight_boost: boost })
}

pub fn dangling(policy: &str) -> Result<DanglingPolicy> {
    policy.parse()
}
