//! The graph obtained by replacing every kept line with a random complete
//! s-partite graph, and the operations that certify it.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::clique::{count_cliques_within, find_clique_within, for_each_clique};
use crate::dangerous::{vertex_union, DangerousSet};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::Hypergraph;
use crate::plane::{LineId, PointId};
use crate::rng;

/// Class labels of one kept line, parallel to the line's sorted points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinePartition {
    pub line_id: LineId,
    /// Labels in `1..=s`.
    pub labels: Vec<u16>,
}

impl LinePartition {
    /// Points of `line_points` carrying `label`.
    pub fn class<'a>(&'a self, line_points: &'a [PointId], label: u16) -> impl Iterator<Item = PointId> + 'a {
        line_points.iter().zip(&self.labels).filter(move |(_, &l)| l == label).map(|(&p, _)| p)
    }

    /// Edges contributed by this line: `C(q,2) - sum_i C(|class i|, 2)`.
    pub fn edge_count(&self, s: usize) -> usize {
        let q = self.labels.len();
        let mut sizes = vec![0usize; s + 1];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        q * (q - 1) / 2 - sizes.iter().map(|&c| c * c.saturating_sub(1) / 2).sum::<usize>()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartiteLineGraph {
    hyper: Hypergraph,
    s: usize,
    partitions: Vec<LinePartition>,
    graph: Graph,
    partition_seed: u64,
    /// For each point, `(line, label)` for every kept line through it.
    labels_at: Vec<Vec<(LineId, u16)>>,
}

impl PartiteLineGraph {
    /// Labels every point of every kept line uniformly in `1..=s`, the labels
    /// of line `id` drawn from the stream keyed by `(seed, id)`.
    pub fn build(h: &Hypergraph, s: usize, seed: u64) -> Result<Self> {
        if s < 2 || s > u16::MAX as usize {
            return Err(Error::BadS(s, 2));
        }
        let partitions = h
            .kept()
            .iter()
            .map(|&id| {
                let mut r = rng::item_rng(seed, id as u64);
                let labels = (0..h.q()).map(|_| r.gen_range(1..=s as u16)).collect();
                LinePartition { line_id: id, labels }
            })
            .collect();
        Self::from_partitions(h, s, partitions, seed)
    }

    /// Assembles the graph from explicit partitions, one per kept line in
    /// kept-line order.
    pub fn from_partitions(h: &Hypergraph, s: usize, partitions: Vec<LinePartition>, seed: u64) -> Result<Self> {
        if s < 2 || s > u16::MAX as usize {
            return Err(Error::BadS(s, 2));
        }
        let bad = |detail: String| Error::Format { what: "line partitions".into(), detail };
        if partitions.len() != h.kept().len() {
            return Err(bad(format!("{} partitions for {} kept lines", partitions.len(), h.kept().len())));
        }
        let mut graph = Graph::empty(h.num_points());
        let mut labels_at = vec![Vec::new(); h.num_points()];
        for (part, &id) in partitions.iter().zip(h.kept()) {
            if part.line_id != id {
                return Err(bad(format!("partition for line {} where line {id} was expected", part.line_id)));
            }
            if part.labels.len() != h.q() as usize {
                return Err(bad(format!("line {id} has {} labels, expected {}", part.labels.len(), h.q())));
            }
            if let Some(&l) = part.labels.iter().find(|&&l| l == 0 || l as usize > s) {
                return Err(bad(format!("line {id} has label {l} outside 1..={s}")));
            }
            let pts = h.line_points(id);
            for i in 0..pts.len() {
                labels_at[pts[i] as usize].push((id, part.labels[i]));
                for j in i + 1..pts.len() {
                    if part.labels[i] != part.labels[j] {
                        graph.add_edge(pts[i] as usize, pts[j] as usize);
                    }
                }
            }
        }
        Ok(PartiteLineGraph { hyper: h.clone(), s, partitions, graph, partition_seed: seed, labels_at })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hyper
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn partitions(&self) -> &[LinePartition] {
        &self.partitions
    }

    /// `(hypergraph seed, partition seed)`.
    pub fn provenance(&self) -> (u64, u64) {
        (self.hyper.seed(), self.partition_seed)
    }

    pub fn partition(&self, id: LineId) -> Option<&LinePartition> {
        self.hyper.kept().binary_search(&id).ok().map(|i| &self.partitions[i])
    }

    /// Label of point `p` on kept line `id`.
    pub fn label(&self, id: LineId, p: PointId) -> Option<u16> {
        self.labels_at[p as usize].iter().find(|&&(l, _)| l == id).map(|&(_, c)| c)
    }

    /// Sum over kept lines of the edges each contributes.
    pub fn edge_count_from_partitions(&self) -> usize {
        self.partitions.iter().map(|p| p.edge_count(self.s)).sum()
    }

    /// Checks `u ~ v <=> labels differ` for every pair on every kept line, and
    /// that no edge joins points without a common kept line.
    pub fn line_structure_holds(&self) -> bool {
        let mut line_pairs = 0;
        for part in &self.partitions {
            let pts = self.hyper.line_points(part.line_id);
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    let want = part.labels[i] != part.labels[j];
                    if self.graph.has_edge(pts[i] as usize, pts[j] as usize) != want {
                        return false;
                    }
                    line_pairs += want as usize;
                }
            }
        }
        line_pairs == self.graph.edge_count()
    }

    /// `s` pairwise-adjacent vertices inside `c`, if any. Kept lines meeting
    /// `c` in at least `s` points are tried first (one point per class); the
    /// fallback is an exact clique search on `G[C]`.
    pub fn ks_witness(&self, c: &[usize]) -> Option<Vec<usize>> {
        let s = self.s;
        let mut mask = FixedBitSet::with_capacity(self.n());
        c.iter().for_each(|&v| mask.insert(v));
        for part in &self.partitions {
            let pts = self.hyper.line_points(part.line_id);
            let mut pick: Vec<Option<usize>> = vec![None; s + 1];
            let mut inside = 0;
            for (i, &p) in pts.iter().enumerate() {
                if mask.contains(p as usize) {
                    inside += 1;
                    pick[part.labels[i] as usize].get_or_insert(p as usize);
                }
            }
            if inside < s {
                continue;
            }
            if pick[1..].iter().all(Option::is_some) {
                let mut w: Vec<usize> = pick[1..].iter().map(|p| p.unwrap()).collect();
                w.sort_unstable();
                return Some(w);
            }
        }
        find_clique_within(&self.graph, Some(&mask), s).map(|w| w.vertices)
    }

    /// Number of `K_(s+1)` containing the edge `uv`.
    pub fn count_ks1_per_edge(&self, u: usize, v: usize) -> Result<u64> {
        if u == v || !self.graph.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let mut common = self.graph.neighbors(u).clone();
        common.intersect_with(self.graph.neighbors(v));
        Ok(count_cliques_within(&self.graph, &common, self.s - 1))
    }

    /// `4a^2 (4a^2 + 2a)^(s-2)` with `a = max_degree(H) / 2`: the per-edge
    /// `K_(s+1)` bound that follows from the degree bound alone.
    pub fn ks1_edge_bound(&self) -> f64 {
        let a = self.hyper.max_degree() as f64 / 2.0;
        4.0 * a * a * (4.0 * a * a + 2.0 * a).powi(self.s as i32 - 2)
    }

    /// Largest per-edge `K_(s+1)` count over all edges.
    pub fn max_ks1_per_edge(&self) -> u64 {
        self.graph
            .edges()
            .map(|(u, v)| self.count_ks1_per_edge(u, v).expect("listed edges exist"))
            .max()
            .unwrap_or(0)
    }

    /// Removes every vertex of every set in `census`.
    pub fn prune_dangerous(&self, census: &[DangerousSet]) -> PruneResult {
        let removed: Vec<usize> = vertex_union(census).into_iter().map(|p| p as usize).collect();
        let mut gone = vec![false; self.n()];
        removed.iter().for_each(|&v| gone[v] = true);
        let survivors: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        let kept_graph = self.graph.induced(&survivors);
        PruneResult { removed, survivors, kept_graph }
    }

    /// Enumerates every `K_(s+2)` and checks it contains a member of
    /// `census`.
    pub fn ks2_dangerous_audit(&self, census: &[DangerousSet]) -> Result<AuditReport> {
        if self.s < 4 {
            return Err(Error::STooSmall(self.s));
        }
        let index = CensusIndex::new(census);
        let mut report = AuditReport { cliques_checked: 0, violations: Vec::new() };
        for_each_clique(&self.graph, self.s + 2, |c| {
            report.cliques_checked += 1;
            if index.find_within(c).is_none() {
                let mut v = c.to_vec();
                v.sort_unstable();
                report.violations.push(v);
            }
        });
        report.violations.sort_unstable();
        Ok(report)
    }
}

/// `build_graph`.
pub fn build_graph(h: &Hypergraph, s: usize, seed: u64) -> Result<PartiteLineGraph> {
    PartiteLineGraph::build(h, s, seed)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PruneResult {
    /// Removed vertices, increasing.
    pub removed: Vec<usize>,
    /// Remaining vertices, increasing; `survivors[i]` is vertex `i` of
    /// `kept_graph`.
    pub survivors: Vec<usize>,
    pub kept_graph: Graph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub cliques_checked: u64,
    /// Cliques with no dangerous subset; empty when the construction is sound.
    pub violations: Vec<Vec<usize>>,
}

/// Lookup of census members by vertex set.
pub struct CensusIndex<'a> {
    sets: &'a [DangerousSet],
    by_key: HashMap<[PointId; 6], usize>,
}

impl<'a> CensusIndex<'a> {
    pub fn new(sets: &'a [DangerousSet]) -> Self {
        let by_key = sets.iter().enumerate().map(|(i, d)| (d.key(), i)).collect();
        CensusIndex { sets, by_key }
    }

    fn lookup(&self, pts: &[usize]) -> Option<&'a DangerousSet> {
        let mut key = [PointId::MAX; 6];
        for (slot, &p) in key.iter_mut().zip(pts) {
            *slot = p as PointId;
        }
        key[..pts.len()].sort_unstable();
        self.by_key.get(&key).map(|&i| &self.sets[i])
    }

    /// A census member whose vertex set lies inside `clique`.
    pub fn find_within(&self, clique: &[usize]) -> Option<&'a DangerousSet> {
        let mut v = clique.to_vec();
        v.sort_unstable();
        let k = v.len();
        let mut buf = Vec::with_capacity(6);
        // all 5- and 6-subsets
        for size in [5usize, 6] {
            if size > k {
                continue;
            }
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                buf.clear();
                buf.extend(idx.iter().map(|&i| v[i]));
                if let Some(d) = self.lookup(&buf) {
                    return Some(d);
                }
                // next combination
                let mut i = size;
                while i > 0 && idx[i - 1] == k - size + i - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                idx[i - 1] += 1;
                for j in i..size {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
        None
    }
}

/// Keeps each edge independently with probability `p`, keyed by
/// `(seed, min(u,v) * n + max(u,v))`.
pub fn sparsify(g: &Graph, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadProbability(p));
    }
    let n = g.n() as u64;
    Ok(g.filter_edges(|u, v| rng::bernoulli(seed, u as u64 * n + v as u64, p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clique::find_clique;
    use crate::plane::{ClassId, TruncatedPlane};

    fn hyper(q: u32, p: f64, seed: u64) -> Hypergraph {
        let tp = TruncatedPlane::new(q, ClassId::Vertical).unwrap();
        Hypergraph::sample(&tp, p, seed).unwrap()
    }

    #[test]
    fn edgeless_without_lines() {
        let g = PartiteLineGraph::build(&hyper(5, 0.0, 1), 3, 1).unwrap();
        assert_eq!(g.graph().edge_count(), 0);
        assert!(g.ks_witness(&(0..25).collect::<Vec<_>>()).is_none());
    }

    #[test]
    fn rejects_small_s() {
        assert!(matches!(PartiteLineGraph::build(&hyper(5, 0.5, 1), 1, 1), Err(Error::BadS(1, 2))));
    }

    #[test]
    fn edge_count_matches_partitions() {
        let g = PartiteLineGraph::build(&hyper(7, 0.5, 3), 3, 4).unwrap();
        assert_eq!(g.graph().edge_count(), g.edge_count_from_partitions());
        assert!(g.line_structure_holds());
    }

    #[test]
    fn single_line_has_no_ks1() {
        let tp = TruncatedPlane::new(7, ClassId::Vertical).unwrap();
        let h = Hypergraph::from_kept(&tp, vec![10], 1.0, 0).unwrap();
        let g = PartiteLineGraph::build(&h, 3, 5).unwrap();
        for (u, v) in g.graph().edges() {
            assert_eq!(g.count_ks1_per_edge(u, v).unwrap(), 0);
        }
        assert!(find_clique(g.graph(), 4).is_none());
        assert!(matches!(g.count_ks1_per_edge(0, 1), Err(Error::NotAnEdge(0, 1))));
    }

    #[test]
    fn audit_needs_s4() {
        let g = PartiteLineGraph::build(&hyper(5, 0.5, 1), 3, 1).unwrap();
        assert!(matches!(g.ks2_dangerous_audit(&[]), Err(Error::STooSmall(3))));
    }

    #[test]
    fn prune_nothing() {
        let g = PartiteLineGraph::build(&hyper(5, 0.5, 1), 4, 1).unwrap();
        let r = g.prune_dangerous(&[]);
        assert!(r.removed.is_empty());
        assert_eq!(&r.kept_graph, g.graph());
    }

    #[test]
    fn sparsify_extremes() {
        let g = PartiteLineGraph::build(&hyper(7, 0.6, 1), 3, 2).unwrap();
        assert_eq!(&sparsify(g.graph(), 1.0, 9).unwrap(), g.graph());
        assert_eq!(sparsify(g.graph(), 0.0, 9).unwrap().edge_count(), 0);
        assert!(sparsify(g.graph(), -0.1, 9).is_err());
    }
}
