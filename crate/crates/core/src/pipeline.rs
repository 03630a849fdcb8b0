//! End-to-end constructions.
//!
//! `Ks2Free`: sample `H`, build `G`, take the dangerous-set census, delete its
//! vertices and keep the `n` smallest survivors. `Ks1Free`: sample `H`, build
//! `G`, keep each edge with probability `1/gamma`, and keep vertices `0..n`.
//! Both end with a clique search on the final graph, a sampled cover check and
//! a greedy s-independent witness.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::clique::{
    exact_s_independence, find_clique, find_clique_within, greedy_s_independent, sample_subset, sampled_cover_check,
    CoverEstimate, EXACT_ALPHA_LIMIT,
};
use crate::dangerous::enumerate_dangerous;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::{HReport, Hypergraph, CENSUS_Q_LIMIT};
use crate::plane::{ClassId, TruncatedPlane};
use crate::primes::bertrand_prime;
use crate::report::{Check, Verdict};
use crate::rng::derive_seed;
use crate::spartite::{sparsify, PartiteLineGraph};

pub const DEFAULT_EXACT_BUDGET: usize = 2000;
pub const DEFAULT_COVER_TRIALS: usize = 100;
pub const DEFAULT_H_SAMPLES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "KS1_FREE")]
    Ks1Free,
    #[serde(rename = "KS2_FREE")]
    Ks2Free,
}

impl Mode {
    /// Size of the clique the final graph must avoid.
    pub fn forbidden(self, s: usize) -> usize {
        match self {
            Mode::Ks1Free => s + 1,
            Mode::Ks2Free => s + 2,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Ks1Free => "KS1_FREE",
            Mode::Ks2Free => "KS2_FREE",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "ks1_free" | "ks1" => Ok(Mode::Ks1Free),
            "ks2_free" | "ks2" => Ok(Mode::Ks2Free),
            _ => Err(Error::InvalidConfig(format!("unknown mode `{s}` (expected KS1_FREE or KS2_FREE)"))),
        }
    }
}

/// Replacements for the default parameter formulas.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Overrides {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub keep_prob: Option<f64>,
    pub edge_keep_prob: Option<f64>,
    pub subset_size: Option<usize>,
    pub cover_trials: Option<usize>,
    pub h_samples: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionConfig {
    pub n: u64,
    pub s: usize,
    pub mode: Mode,
    pub seed: u64,
    pub overrides: Overrides,
    /// Largest final graph searched exactly for the forbidden clique.
    pub exact_budget: usize,
}

impl ConstructionConfig {
    pub fn new(n: u64, s: usize, mode: Mode, seed: u64) -> Self {
        ConstructionConfig { n, s, mode, seed, overrides: Overrides::default(), exact_budget: DEFAULT_EXACT_BUDGET }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if self.s < 3 {
            return bad(format!("s = {} must be at least 3", self.s));
        }
        if self.mode == Mode::Ks2Free && self.s < 4 {
            return bad(format!("KS2_FREE needs s >= 4, got {}", self.s));
        }
        for (name, p) in [("keep_prob", self.overrides.keep_prob), ("edge_keep_prob", self.overrides.edge_keep_prob)] {
            if let Some(p) = p {
                if !(0.0..=1.0).contains(&p) {
                    return bad(format!("{name} = {p} is outside [0, 1]"));
                }
            }
        }
        if let Some(a) = self.overrides.alpha {
            if !(a > 0.0 && a.is_finite()) {
                return bad(format!("alpha = {a} must be positive"));
            }
        }
        if self.overrides.cover_trials == Some(0) || self.overrides.h_samples == Some(0) {
            return bad("trial budgets must be positive".into());
        }
        if self.overrides.subset_size == Some(0) {
            return bad("subset size must be positive".into());
        }
        Ok(())
    }

    /// Parameters after applying the overrides to the default formulas.
    pub fn resolve(&self) -> Result<ResolvedParams> {
        self.validate()?;
        let q = bertrand_prime(self.n);
        if q < 3 {
            return Err(Error::InvalidConfig(format!("n = {} gives q = {q}; the construction needs q >= 3", self.n)));
        }
        let ln_q = (q as f64).ln();
        let o = &self.overrides;
        let alpha = o.alpha.unwrap_or(ln_q * ln_q);
        let keep_prob = o.keep_prob.unwrap_or(alpha / q as f64);
        if !(0.0..=1.0).contains(&keep_prob) {
            return Err(Error::InvalidConfig(format!("keep_prob = alpha/q = {keep_prob} is outside [0, 1]")));
        }
        let n = self.n as usize;
        let beta = o.beta.unwrap_or(ln_q.powi(4 * (self.s * self.s) as i32));
        let claimed_subset_size = match self.mode {
            Mode::Ks2Free => (16 * self.s) as f64 * q as f64,
            Mode::Ks1Free => (64.0 * self.s as f64 * beta * q as f64).ceil(),
        };
        Ok(ResolvedParams {
            q,
            alpha,
            beta,
            keep_prob,
            edge_keep_prob: o.edge_keep_prob.unwrap_or(1.0 / ln_q.powi(8)),
            subset_size: o.subset_size.map_or(claimed_subset_size.min(n as f64) as usize, |w| w.min(n)),
            claimed_subset_size,
            cover_trials: o.cover_trials.unwrap_or(DEFAULT_COVER_TRIALS),
            h_samples: o.h_samples.unwrap_or(DEFAULT_H_SAMPLES),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolvedParams {
    pub q: u64,
    pub alpha: f64,
    pub beta: f64,
    pub keep_prob: f64,
    /// Used by `Ks1Free` only.
    pub edge_keep_prob: f64,
    /// Cover-check subset size, capped at `n`.
    pub subset_size: usize,
    /// Size from which every set is claimed to contain a `K_s`: `16 s q`
    /// for `Ks2Free`, `64 s beta q` for `Ks1Free`.
    pub claimed_subset_size: f64,
    pub cover_trials: usize,
    pub h_samples: usize,
}

/// Stage seeds, each `derive_seed(master, tag)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageSeeds {
    pub master: u64,
    pub hypergraph: u64,
    pub partition: u64,
    pub sparsify: u64,
    pub h_verify: u64,
    pub clique: u64,
    pub cover: u64,
}

impl StageSeeds {
    pub fn derive(master: u64) -> Self {
        StageSeeds {
            master,
            hypergraph: derive_seed(master, "hypergraph"),
            partition: derive_seed(master, "partition"),
            sparsify: derive_seed(master, "sparsify"),
            h_verify: derive_seed(master, "h-verify"),
            clique: derive_seed(master, "clique"),
            cover: derive_seed(master, "cover"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    /// Largest number of `K_(s+1)` through one edge; only computed when the
    /// graph is within the exact budget.
    pub max_ks1_per_edge: Option<u64>,
    pub ks1_edge_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    Exact,
    /// Exact search inside `trials` uniform subsets of `subset_size` vertices.
    Sampled { subset_size: usize, trials: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliqueCheck {
    pub k: usize,
    pub method: SearchMethod,
    /// A `K_k` found in the final graph, in original vertex ids.
    pub witness: Option<Vec<usize>>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: ConstructionConfig,
    pub params: ResolvedParams,
    pub seeds: StageSeeds,
    pub hypergraph: HReport,
    pub graph: GraphStats,
    pub dangerous_count: Option<usize>,
    pub removed: Option<usize>,
    /// `q^2 - n`.
    pub removal_budget: usize,
    /// Edge count after sparsification (`Ks1Free`).
    pub sparsified_edges: Option<usize>,
    pub final_vertices: usize,
    pub final_edges: usize,
    pub clique_check: Option<CliqueCheck>,
    /// Subsets in original vertex ids.
    pub cover: Option<CoverEstimate>,
    pub greedy_witness: Option<usize>,
    /// Greedy witness size over `sqrt n` and over `(ln n)^(4s^2) sqrt n`.
    pub witness_ratios: Option<(f64, f64)>,
    pub exact_alpha_s: Option<usize>,
    pub checks: Vec<Check>,
    /// Set when the run stopped before producing a final graph.
    pub failure: Option<String>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && !self.checks.iter().any(|c| c.verdict.is_failure())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialise");
        s.push('\n');
        s
    }
}

/// Wall-clock seconds per stage, kept out of the report so reports compare
/// byte for byte.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub stages: Vec<(String, f64)>,
}

impl Timings {
    fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.stages.push((stage.into(), start.elapsed().as_secs_f64()));
        out
    }
}

pub struct PipelineRun {
    pub report: RunReport,
    pub timings: Timings,
    /// The graph before pruning or sparsification.
    pub graph: PartiteLineGraph,
    /// The final `n`-vertex graph, vertex `i` being original vertex
    /// `selected[i]`.
    pub final_graph: Option<Graph>,
    pub selected: Vec<usize>,
}

/// Runs every stage and reports, including a removal set larger than
/// `q^2 - n` (recorded in `failure`).
pub fn execute(config: &ConstructionConfig) -> Result<PipelineRun> {
    let params = config.resolve()?;
    let seeds = StageSeeds::derive(config.seed);
    let mut timings = Timings::default();
    let s = config.s;
    let n = config.n as usize;
    let q = params.q as u32;
    let total = (q * q) as usize;

    let tp = TruncatedPlane::new(q, ClassId::Vertical)?;
    let h = timings.time("hypergraph", || Hypergraph::sample(&tp, params.keep_prob, seeds.hypergraph))?;
    let census = match config.mode {
        Mode::Ks2Free => Some(timings.time("census", || enumerate_dangerous(&h))),
        Mode::Ks1Free if q <= CENSUS_Q_LIMIT => Some(timings.time("census", || enumerate_dangerous(&h))),
        Mode::Ks1Free => None,
    };
    let h_report = timings.time("h-verify", || {
        h.verify_properties_with_census(params.alpha, params.h_samples, seeds.h_verify, census.as_ref().map(Vec::len))
    });
    let g = timings.time("build", || PartiteLineGraph::build(&h, s, seeds.partition))?;

    let within_budget = total <= config.exact_budget;
    let graph = GraphStats {
        vertices: total,
        edges: g.graph().edge_count(),
        max_ks1_per_edge: within_budget.then(|| timings.time("g3", || g.max_ks1_per_edge())),
        ks1_edge_bound: g.ks1_edge_bound(),
    };

    let mut checks = h_report.checks();
    if let Some(m) = graph.max_ks1_per_edge {
        checks.push(
            Check::new(
                "G3 max K_(s+1) per edge",
                m,
                format!("<= {:.3e}", graph.ks1_edge_bound),
                Verdict::from_bool(m as f64 <= graph.ks1_edge_bound),
            )
            .seeded(seeds.partition),
        );
    }

    let mut report = RunReport {
        config: config.clone(),
        params: params.clone(),
        seeds: seeds.clone(),
        hypergraph: h_report,
        graph,
        dangerous_count: census.as_ref().map(Vec::len),
        removed: None,
        removal_budget: total.saturating_sub(n),
        sparsified_edges: None,
        final_vertices: 0,
        final_edges: 0,
        clique_check: None,
        cover: None,
        greedy_witness: None,
        witness_ratios: None,
        exact_alpha_s: None,
        checks,
        failure: None,
    };

    if n > total {
        report.failure = Some(format!("n = {n} exceeds q^2 = {total}"));
        return Ok(PipelineRun { report, timings, graph: g, final_graph: None, selected: Vec::new() });
    }

    let (pool_graph, pool): (Graph, Vec<usize>) = match config.mode {
        Mode::Ks2Free => {
            let census = census.as_deref().unwrap_or_default();
            let pruned = timings.time("prune", || g.prune_dangerous(census));
            let removed = pruned.removed.len();
            report.removed = Some(removed);
            let ok = removed <= report.removal_budget;
            report.checks.push(
                Check::new("removed vertices", removed, format!("<= {}", report.removal_budget), Verdict::from_bool(ok))
                    .seeded(seeds.hypergraph),
            );
            if !ok {
                report.failure = Some(
                    Error::RemovalTooLarge { removed, budget: report.removal_budget }.to_string(),
                );
                return Ok(PipelineRun { report, timings, graph: g, final_graph: None, selected: Vec::new() });
            }
            (pruned.kept_graph, pruned.survivors)
        }
        Mode::Ks1Free => {
            let sparse = timings.time("sparsify", || sparsify(g.graph(), params.edge_keep_prob, seeds.sparsify))?;
            report.sparsified_edges = Some(sparse.edge_count());
            (sparse, (0..total).collect())
        }
    };

    // the n smallest vertices of the pool; pool is increasing so these are
    // its first n entries, at local indices 0..n
    let selected: Vec<usize> = pool[..n].to_vec();
    let fin = pool_graph.induced(&(0..n).collect::<Vec<_>>());
    report.final_vertices = fin.n();
    report.final_edges = fin.edge_count();

    let k = config.mode.forbidden(s);
    let mut check =
        timings.time("clique", || clique_check(&fin, k, config.exact_budget, params.cover_trials, seeds.clique));
    if let Some(w) = &mut check.witness {
        w.iter_mut().for_each(|v| *v = selected[*v]);
    }
    report.checks.push(
        Check::new(
            format!("K_{k} absent ({})", if check.method == SearchMethod::Exact { "exact" } else { "sampled" }),
            check.witness.as_ref().map_or("absent".to_string(), |w| format!("{w:?}")),
            "absent",
            check.verdict,
        )
        .seeded(seeds.clique),
    );
    report.clique_check = Some(check);

    let mut cover = timings.time("cover", || {
        sampled_cover_check(&fin, s, params.subset_size, params.cover_trials, seeds.cover)
    })?;
    // an explicit subset size is checked as given; a default one capped at n
    // below the claimed size carries no claim
    let claimed = config.overrides.subset_size.is_some() || params.subset_size as f64 >= params.claimed_subset_size;
    for m in &mut cover.miss_examples {
        m.iter_mut().for_each(|v| *v = selected[*v]);
    }
    report.checks.push(
        Check::new(
            format!("K_{s} in every sampled {}-subset", cover.subset_size),
            format!("{}/{}", cover.hits, cover.trials),
            if claimed {
                format!("{}/{}", cover.trials, cover.trials)
            } else {
                format!("no claim below {} vertices", fmt_count(params.claimed_subset_size))
            },
            match (claimed, cover.hits == cover.trials) {
                (false, _) => Verdict::NotApplicable,
                (true, true) => Verdict::Sampled,
                (true, false) => Verdict::Fail,
            },
        )
        .seeded(seeds.cover),
    );
    report.cover = Some(cover);

    let witness = greedy_s_independent(&fin, s, 0..fin.n());
    let nf = n as f64;
    let ratio = witness.len() as f64 / nf.sqrt();
    let polylog = nf.ln().powi(4 * (s * s) as i32) * nf.sqrt();
    report.greedy_witness = Some(witness.len());
    report.witness_ratios = Some((ratio, witness.len() as f64 / polylog));
    if n <= EXACT_ALPHA_LIMIT {
        report.exact_alpha_s = Some(exact_s_independence(&fin, s)?);
    }

    Ok(PipelineRun { report, timings, graph: g, final_graph: Some(fin), selected })
}

fn fmt_count(x: f64) -> String {
    if x < 1e9 {
        format!("{x:.0}")
    } else {
        format!("{x:.3e}")
    }
}

/// [`execute`], with a too-large removal set returned as
/// [`Error::RemovalTooLarge`].
pub fn run_pipeline(config: &ConstructionConfig) -> Result<RunReport> {
    let run = execute(config)?;
    let r = run.report;
    if let (Some(removed), true) = (r.removed, r.failure.is_some()) {
        if removed > r.removal_budget {
            return Err(Error::RemovalTooLarge { removed, budget: r.removal_budget });
        }
    }
    Ok(r)
}

/// Exact search when the graph fits the budget, otherwise exact search inside
/// `trials` random `budget`-subsets.
pub fn clique_check(g: &Graph, k: usize, budget: usize, trials: usize, seed: u64) -> CliqueCheck {
    if g.n() <= budget {
        let witness = find_clique(g, k).map(|w| w.vertices);
        let verdict = Verdict::from_bool(witness.is_none());
        return CliqueCheck { k, method: SearchMethod::Exact, witness, verdict };
    }
    let mut witness = None;
    for t in 0..trials.max(1) {
        let mut mask = FixedBitSet::with_capacity(g.n());
        sample_subset(g.n(), budget, seed, t as u64).into_iter().for_each(|v| mask.insert(v));
        if let Some(w) = find_clique_within(g, Some(&mask), k) {
            witness = Some(w.vertices);
            break;
        }
    }
    let verdict = if witness.is_some() { Verdict::Fail } else { Verdict::Sampled };
    CliqueCheck { k, method: SearchMethod::Sampled { subset_size: budget, trials: trials.max(1) }, witness, verdict }
}
