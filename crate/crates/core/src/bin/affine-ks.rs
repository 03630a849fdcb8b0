use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use affine_ks::artifact::{peek_kind, Artifact, ArtifactKind};
use affine_ks::dangerous::{enumerate_dangerous, DangerousKind};
use affine_ks::lll::scan_threshold;
use affine_ks::pipeline::{clique_check, execute, ConstructionConfig, Mode};
use affine_ks::report::{checks_to_csv, Check, Verdict};
use affine_ks::spartite::sparsify;
use affine_ks::{clique, ClassId, Error, Hypergraph, PartiteLineGraph, Result, TruncatedPlane};

#[derive(Parser)]
#[command(name = "affine-ks", version, about = "Clique-constrained graphs from random affine-plane line systems")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Output file (default: stdout)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest graph searched exactly for cliques
    #[arg(long, global = true, default_value_t = affine_ks::pipeline::DEFAULT_EXACT_BUDGET)]
    budget: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Truncated plane of order q
    Plane {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value = "vertical")]
        remove_class: ClassId,
    },
    /// Random kept-line hypergraph
    Hyper {
        #[arg(long, required_unless_present = "input")]
        q: Option<u32>,
        #[arg(long, default_value = "vertical")]
        remove_class: ClassId,
        /// Truncated-plane artifact to sample from
        #[arg(long)]
        input: Option<PathBuf>,
        /// Default: alpha / q
        #[arg(long)]
        keep_prob: Option<f64>,
        /// Default: (ln q)^2
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random sets per sampled property
        #[arg(long, default_value_t = affine_ks::pipeline::DEFAULT_H_SAMPLES)]
        samples: usize,
    },
    /// Random s-partite replacement of every kept line
    Build {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Dangerous-set census of a hypergraph or graph artifact
    Census {
        #[arg(long)]
        input: PathBuf,
    },
    /// Delete every dangerous set and search the rest for K_(s+2)
    Prune {
        #[arg(long)]
        input: PathBuf,
    },
    /// Keep each edge independently and search for K_(s+1)
    Sparsify {
        #[arg(long)]
        input: PathBuf,
        /// Default: (ln q)^-8
        #[arg(long)]
        edge_keep_prob: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Hypergraph properties and a sampled K_s cover check on a graph
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Default: min(q^2, 16 s q)
        #[arg(long)]
        subset_size: Option<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Local Lemma inequalities and the first prime at which they all hold
    Lll {
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 3)]
        q_min: u64,
        #[arg(long, default_value_t = 100_000)]
        q_max: u64,
    },
    /// End-to-end construction
    Pipeline {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        keep_prob: Option<f64>,
        #[arg(long)]
        edge_keep_prob: Option<f64>,
        #[arg(long)]
        subset_size: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
    },
}

/// What a command produced: a JSON document and its checks.
struct Outcome {
    json: String,
    checks: Vec<Check>,
    /// Extra files to write next to `--out`, by suffix.
    side_files: Vec<(String, String)>,
}

impl Outcome {
    fn new(json: String, checks: Vec<Check>) -> Self {
        Outcome { json, checks, side_files: Vec::new() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|o| emit(&cli.common, o)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let budget = cli.common.budget;
    match &cli.cmd {
        Cmd::Plane { q, remove_class } => {
            let tp = TruncatedPlane::new(*q, *remove_class)?;
            Ok(Outcome::new(tp.to_json(), tp.structure_checks()))
        }
        Cmd::Hyper { q, remove_class, input, keep_prob, alpha, seed, samples } => {
            let tp = match input {
                Some(path) => TruncatedPlane::load(path)?,
                None => TruncatedPlane::new(q.expect("clap requires q"), *remove_class)?,
            };
            let ln_q = (tp.q() as f64).ln();
            let alpha = alpha.unwrap_or(ln_q * ln_q);
            let p = keep_prob.unwrap_or(alpha / tp.q() as f64);
            let h = Hypergraph::sample(&tp, p, *seed)?;
            let report = h.verify_properties(alpha, *samples, *seed);
            Ok(Outcome::new(h.to_json(), report.checks()))
        }
        Cmd::Build { input, s, seed } => {
            let h = Hypergraph::load(input)?;
            let g = PartiteLineGraph::build(&h, *s, *seed)?;
            Ok(Outcome::new(g.to_json(), graph_checks(&g, budget)))
        }
        Cmd::Census { input } => {
            let h = load_hypergraph(input)?;
            let census = enumerate_dangerous(&h);
            let valid = census.iter().all(|d| {
                d.is_valid_in(&h) && d.witness_lines(&h).len() == d.kind.witness_line_count()
            });
            let per = |k: DangerousKind| census.iter().filter(|d| d.kind == k).count();
            let sets: Vec<_> = census
                .iter()
                .map(|d| json!({"kind": d.kind, "core": d.core, "extras": d.extras()}))
                .collect();
            let doc = json!({
                "q": h.q(),
                "kept_lines": h.kept().len(),
                "count": census.len(),
                "type1": per(DangerousKind::Type1),
                "type2": per(DangerousKind::Type2),
                "type3": per(DangerousKind::Type3),
                "sets": sets,
            });
            let checks = vec![Check::new("census members valid", valid, true, Verdict::from_bool(valid))
                .seeded(h.seed())];
            Ok(Outcome::new(pretty(&doc), checks))
        }
        Cmd::Prune { input } => {
            let g = PartiteLineGraph::load(input)?;
            let census = enumerate_dangerous(g.hypergraph());
            let pruned = g.prune_dangerous(&census);
            let k = g.s() + 2;
            let check = clique_check(&pruned.kept_graph, k, budget, 100, g.provenance().1);
            let mut checks = vec![Check::new(
                format!("K_{k} absent after pruning"),
                check.witness.as_ref().map_or("absent".into(), |w| format!("{w:?}")),
                "absent",
                if g.s() >= 4 { check.verdict } else { Verdict::NotApplicable },
            )];
            let mut audit_json = serde_json::Value::Null;
            if g.s() >= 4 && g.n() <= budget {
                let audit = g.ks2_dangerous_audit(&census)?;
                let ok = audit.violations.is_empty();
                checks.push(Check::new(
                    format!("every K_{k} holds a dangerous set"),
                    format!("{} violations in {} cliques", audit.violations.len(), audit.cliques_checked),
                    "0 violations",
                    Verdict::from_bool(ok),
                ));
                audit_json = serde_json::to_value(&audit).expect("audit serialises");
            }
            let doc = json!({
                "q": g.hypergraph().q(),
                "s": g.s(),
                "dangerous_count": census.len(),
                "removed": pruned.removed,
                "kept_vertices": pruned.survivors.len(),
                "kept_edges": pruned.kept_graph.edge_count(),
                "clique_check": check,
                "audit": audit_json,
            });
            Ok(Outcome::new(pretty(&doc), checks))
        }
        Cmd::Sparsify { input, edge_keep_prob, seed } => {
            let g = PartiteLineGraph::load(input)?;
            let ln_q = (g.hypergraph().q() as f64).ln();
            let p = edge_keep_prob.unwrap_or(ln_q.powi(-8));
            let sparse = sparsify(g.graph(), p, *seed)?;
            let k = g.s() + 1;
            let check = clique_check(&sparse, k, budget, 100, *seed);
            let checks = vec![Check::new(
                format!("K_{k} absent after sparsification"),
                check.witness.as_ref().map_or("absent".into(), |w| format!("{w:?}")),
                "absent",
                check.verdict,
            )
            .seeded(*seed)];
            let doc = json!({
                "edge_keep_prob": p,
                "seed": seed,
                "edges_before": g.graph().edge_count(),
                "edges_after": sparse.edge_count(),
                "clique_check": check,
            });
            Ok(Outcome::new(pretty(&doc), checks))
        }
        Cmd::Verify { input, subset_size, trials, alpha, seed } => {
            let g = PartiteLineGraph::load(input)?;
            let h = g.hypergraph();
            let q = h.q() as usize;
            let ln_q = (q as f64).ln();
            let h_report = h.verify_properties(alpha.unwrap_or(ln_q * ln_q), *trials, *seed);
            let claimed_size = 16 * g.s() * q;
            let w = subset_size.unwrap_or(claimed_size).min(g.n());
            let claimed = subset_size.is_some() || claimed_size <= g.n();
            let cover = clique::sampled_cover_check(g.graph(), g.s(), w, *trials, *seed)?;
            let mut checks = h_report.checks();
            checks.extend(graph_checks(&g, budget));
            checks.push(
                Check::new(
                    format!("K_{} in every sampled {w}-subset", g.s()),
                    format!("{}/{}", cover.hits, cover.trials),
                    format!("{}/{}", cover.trials, cover.trials),
                    match (claimed, cover.hits == cover.trials) {
                        (false, _) => Verdict::NotApplicable,
                        (true, true) => Verdict::Sampled,
                        (true, false) => Verdict::Fail,
                    },
                )
                .seeded(*seed),
            );
            let mut out = Outcome::new(pretty(&json!({"hypergraph": h_report, "cover": cover})), checks);
            if !cover.miss_examples.is_empty() {
                out.side_files.push(("misses.json".into(), pretty(&json!(cover.miss_examples))));
            }
            Ok(out)
        }
        Cmd::Lll { s, q_min, q_max } => {
            let scan = scan_threshold(*s, *q_min, *q_max)?;
            let mut checks: Vec<Check> = scan
                .table
                .margins
                .iter()
                .map(|m| {
                    Check::new(
                        format!("{} at q = {}", m.name, scan.table.q),
                        format!("{:.6}", m.margin),
                        ">= 0",
                        Verdict::from_bool(m.holds()),
                    )
                })
                .collect();
            checks.push(Check::new(
                "threshold",
                scan.threshold.map_or("none".into(), |q| q.to_string()),
                format!("<= {q_max}"),
                Verdict::from_bool(scan.threshold.is_some()),
            ));
            Ok(Outcome::new(pretty(&scan), checks))
        }
        Cmd::Pipeline { n, s, mode, seed, alpha, keep_prob, edge_keep_prob, subset_size, trials } => {
            let mut config = ConstructionConfig::new(*n, *s, *mode, *seed);
            config.exact_budget = budget;
            let o = &mut config.overrides;
            o.alpha = *alpha;
            o.keep_prob = *keep_prob;
            o.edge_keep_prob = *edge_keep_prob;
            o.subset_size = *subset_size;
            o.cover_trials = *trials;
            let run = execute(&config)?;
            for (stage, secs) in &run.timings.stages {
                eprintln!("{stage:<12} {secs:>9.3}s");
            }
            let r = run.report;
            let mut out = Outcome::new(r.to_json(), r.checks.clone());
            if let Some(f) = &r.failure {
                eprintln!("stopped: {f}");
                out.checks.push(Check::new("run completed", false, true, Verdict::Fail));
            }
            if let Some(c) = r.cover.as_ref().filter(|c| !c.miss_examples.is_empty()) {
                out.side_files.push(("misses.json".into(), pretty(&json!(c.miss_examples))));
            }
            Ok(out)
        }
    }
}

fn load_hypergraph(path: &Path) -> Result<Hypergraph> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
    match peek_kind(&text)? {
        ArtifactKind::Hypergraph => Hypergraph::from_json(&text),
        ArtifactKind::PartiteGraph => Ok(PartiteLineGraph::from_json(&text)?.hypergraph().clone()),
        ArtifactKind::TruncatedPlane => Err(Error::Format {
            what: "census input".into(),
            detail: "expected a hypergraph or partite_graph artifact".into(),
        }),
    }
}

fn graph_checks(g: &PartiteLineGraph, budget: usize) -> Vec<Check> {
    let seed = g.provenance().1;
    let structure = g.line_structure_holds();
    let mut out = vec![Check::new("line-local s-partite structure", structure, true, Verdict::from_bool(structure))
        .seeded(seed)];
    if g.n() <= budget {
        let m = g.max_ks1_per_edge();
        let bound = g.ks1_edge_bound();
        out.push(
            Check::new("G3 max K_(s+1) per edge", m, format!("<= {bound:.3e}"), Verdict::from_bool(m as f64 <= bound))
                .seeded(seed),
        );
    }
    out
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialise");
    s.push('\n');
    s
}

/// Writes the outcome; returns whether every check passed.
fn emit(common: &Common, o: Outcome) -> Result<bool> {
    let body = match common.format {
        Format::Json => o.json,
        Format::Csv => checks_to_csv(&o.checks),
    };
    let table: String = o
        .checks
        .iter()
        .map(|c| format!("{:<44} {:>16} {:>20}  {}\n", c.name, c.value, c.threshold, c.verdict))
        .collect();
    let write = |path: &Path, text: &str| {
        fs::write(path, text).map_err(|source| Error::Io { path: path.into(), source })
    };
    match &common.out {
        Some(path) => {
            write(path, &body)?;
            for (suffix, text) in &o.side_files {
                let side = PathBuf::from(format!("{}.{suffix}", path.display()));
                write(&side, text)?;
                eprintln!("wrote {}", side.display());
            }
            print!("{table}");
        }
        None => {
            std::io::stdout().write_all(body.as_bytes()).map_err(|source| Error::Io { path: "<stdout>".into(), source })?;
            eprint!("{table}");
        }
    }
    Ok(!o.checks.iter().any(|c| c.verdict.is_failure()))
}
