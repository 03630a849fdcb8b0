//! Exact clique search and enumeration, exact `alpha_s` on small graphs, and
//! sampled "every w-subset contains K_s" checks.
//!
//! All searches work vertex by vertex over a degeneracy ordering: a clique is
//! found from its first vertex in the order, so each subproblem only sees that
//! vertex's later neighbours. Subproblems are relabelled into small local
//! bitsets and searched with greedy-colouring bounds.

use fixedbitset::FixedBitSet;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;

/// Largest graph accepted by [`exact_s_independence`].
pub const EXACT_ALPHA_LIMIT: usize = 30;

/// Sorted vertex tuple, pairwise adjacent in the graph it came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CliqueWitness {
    pub vertices: Vec<usize>,
}

impl CliqueWitness {
    fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        CliqueWitness { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Induced subgraph on a candidate list, relabelled `0..verts.len()`.
struct Local {
    verts: Vec<usize>,
    adj: Vec<FixedBitSet>,
}

impl Local {
    fn new(g: &Graph, verts: Vec<usize>) -> Self {
        let m = verts.len();
        let mut adj = vec![FixedBitSet::with_capacity(m); m];
        for i in 0..m {
            let row = g.neighbors(verts[i]);
            for j in i + 1..m {
                if row.contains(verts[j]) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        Local { verts, adj }
    }

    fn all(&self) -> FixedBitSet {
        let mut p = FixedBitSet::with_capacity(self.verts.len());
        p.insert_range(..);
        p
    }

    /// Greedy sequential colouring of `p`; returns vertices in colour order
    /// with their colour numbers (1-based, nondecreasing).
    fn colour_sort(&self, p: &FixedBitSet) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = p.clone();
        let mut order = Vec::with_capacity(p.count_ones(..));
        let mut colours = Vec::with_capacity(order.capacity());
        let mut colour = 0;
        while !uncoloured.is_clear() {
            colour += 1;
            let mut avail = uncoloured.clone();
            while let Some(v) = avail.ones().next() {
                uncoloured.set(v, false);
                avail.set(v, false);
                avail.difference_with(&self.adj[v]);
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }

    /// Extends `stack` by `need` more pairwise-adjacent vertices from `p`.
    fn search(&self, mut p: FixedBitSet, need: usize, stack: &mut Vec<usize>) -> bool {
        if need == 0 {
            return true;
        }
        if p.count_ones(..) < need {
            return false;
        }
        let (order, colours) = self.colour_sort(&p);
        for idx in (0..order.len()).rev() {
            // Everything at or before idx can be coloured with colours[idx]
            // colours, so no larger clique lives there.
            if colours[idx] < need {
                return false;
            }
            let v = order[idx];
            let mut next = p.clone();
            next.intersect_with(&self.adj[v]);
            stack.push(v);
            if self.search(next, need - 1, stack) {
                return true;
            }
            stack.pop();
            p.set(v, false);
        }
        false
    }

    /// Calls `emit` on every `need`-clique of `p` (local ids, increasing).
    fn enumerate(&self, p: &FixedBitSet, need: usize, stack: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
        if need == 0 {
            emit(stack);
            return;
        }
        if p.count_ones(..) < need {
            return;
        }
        for v in p.ones() {
            let mut next = self.adj[v].clone();
            next.intersect_with(p);
            // only later vertices, so each clique is produced once
            next.remove_range(..v + 1);
            stack.push(v);
            self.enumerate(&next, need - 1, stack, emit);
            stack.pop();
        }
    }
}

/// Vertices of `g` in degeneracy order with each vertex's position.
fn ordering(g: &Graph) -> (Vec<usize>, Vec<usize>) {
    let order = g.degeneracy_order();
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    (order, pos)
}

fn forward(g: &Graph, v: usize, pos: &[usize], mask: Option<&FixedBitSet>) -> Vec<usize> {
    g.neighbors(v)
        .ones()
        .filter(|&w| pos[w] > pos[v] && mask.is_none_or(|m| m.contains(w)))
        .collect()
}

/// A `k`-clique of `g` restricted to `mask` (all of `g` when `None`).
pub fn find_clique_within(g: &Graph, mask: Option<&FixedBitSet>, k: usize) -> Option<CliqueWitness> {
    assert!(k >= 1, "clique size must be at least 1");
    let in_mask = |v: usize| mask.is_none_or(|m| m.contains(v));
    if k == 1 {
        return (0..g.n()).find(|&v| in_mask(v)).map(|v| CliqueWitness::new(vec![v]));
    }
    let (order, pos) = ordering(g);
    for &v in &order {
        if !in_mask(v) {
            continue;
        }
        let fwd = forward(g, v, &pos, mask);
        if fwd.len() < k - 1 {
            continue;
        }
        let local = Local::new(g, fwd);
        let mut stack = Vec::with_capacity(k);
        if local.search(local.all(), k - 1, &mut stack) {
            let mut vs: Vec<usize> = stack.iter().map(|&i| local.verts[i]).collect();
            vs.push(v);
            return Some(CliqueWitness::new(vs));
        }
    }
    None
}

/// A `k`-clique of `g`, if one exists.
pub fn find_clique(g: &Graph, k: usize) -> Option<CliqueWitness> {
    find_clique_within(g, None, k)
}

/// Calls `visit` once per `k`-clique of `g` (vertices in arbitrary order).
pub fn for_each_clique(g: &Graph, k: usize, mut visit: impl FnMut(&[usize])) {
    assert!(k >= 1, "clique size must be at least 1");
    if k == 1 {
        for v in 0..g.n() {
            visit(&[v]);
        }
        return;
    }
    let (order, pos) = ordering(g);
    let mut buf = Vec::with_capacity(k);
    for &v in &order {
        let fwd = forward(g, v, &pos, None);
        if fwd.len() < k - 1 {
            continue;
        }
        let local = Local::new(g, fwd);
        let mut stack = Vec::with_capacity(k);
        local.enumerate(&local.all(), k - 1, &mut stack, &mut |c| {
            buf.clear();
            buf.push(v);
            buf.extend(c.iter().map(|&i| local.verts[i]));
            visit(&buf);
        });
    }
}

/// Every `k`-clique of `g`, sorted, without duplicates.
pub fn enumerate_cliques(g: &Graph, k: usize) -> Vec<CliqueWitness> {
    let mut out = Vec::new();
    for_each_clique(g, k, |c| out.push(CliqueWitness::new(c.to_vec())));
    out.sort_unstable();
    out
}

pub fn count_cliques(g: &Graph, k: usize) -> u64 {
    let mut n = 0;
    for_each_clique(g, k, |_| n += 1);
    n
}

/// Number of `k`-cliques of `g` using only vertices of `set`.
pub fn count_cliques_within(g: &Graph, set: &FixedBitSet, k: usize) -> u64 {
    let verts: Vec<usize> = set.ones().collect();
    if verts.len() < k {
        return 0;
    }
    if k == 0 {
        return 1;
    }
    let local = Local::new(g, verts);
    let mut n = 0;
    let mut stack = Vec::with_capacity(k);
    local.enumerate(&local.all(), k, &mut stack, &mut |_| n += 1);
    n
}

fn has_clique_mask(adj: &[u32], mask: u32, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if (mask.count_ones() as usize) < k {
        return false;
    }
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if has_clique_mask(adj, rest & adj[v], k - 1) {
            return true;
        }
    }
    false
}

/// `alpha_s(G)`: the largest vertex set inducing no `K_s`. Exact, so limited
/// to [`EXACT_ALPHA_LIMIT`] vertices.
pub fn exact_s_independence(g: &Graph, s: usize) -> Result<usize> {
    let n = g.n();
    if n > EXACT_ALPHA_LIMIT {
        return Err(Error::TooLarge { n, limit: EXACT_ALPHA_LIMIT });
    }
    if s == 0 {
        return Err(Error::BadS(s, 1));
    }
    if s == 1 {
        return Ok(0);
    }
    // low-degree vertices first: good incumbents early
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let adj: Vec<u32> = order
        .iter()
        .map(|&v| {
            order
                .iter()
                .enumerate()
                .filter(|&(_, &w)| g.has_edge(v, w))
                .fold(0u32, |m, (j, _)| m | (1 << j))
        })
        .collect();

    struct Search<'a> {
        adj: &'a [u32],
        n: usize,
        s: usize,
        best: usize,
    }
    impl Search<'_> {
        fn grow(&mut self, v: usize, chosen: u32, size: usize) {
            if size > self.best {
                self.best = size;
            }
            if v == self.n || size + (self.n - v) <= self.best {
                return;
            }
            if !has_clique_mask(self.adj, chosen & self.adj[v], self.s - 1) {
                self.grow(v + 1, chosen | (1 << v), size + 1);
            }
            self.grow(v + 1, chosen, size);
        }
    }
    let mut search = Search { adj: &adj, n, s, best: 0 };
    search.grow(0, 0, 0);
    Ok(search.best)
}

/// Greedy `K_s`-free set: scan `order`, keeping a vertex whenever it does not
/// complete a `K_s` with the vertices kept so far. A lower-bound witness for
/// `alpha_s`.
pub fn greedy_s_independent(g: &Graph, s: usize, order: impl IntoIterator<Item = usize>) -> Vec<usize> {
    assert!(s >= 2, "s must be at least 2");
    let mut chosen = FixedBitSet::with_capacity(g.n());
    let mut out = Vec::new();
    for v in order {
        let mut nbrs = g.neighbors(v).clone();
        nbrs.intersect_with(&chosen);
        let blocked = if s == 2 {
            !nbrs.is_clear()
        } else {
            find_clique_within(g, Some(&nbrs), s - 1).is_some()
        };
        if !blocked {
            chosen.insert(v);
            out.push(v);
        }
    }
    out.sort_unstable();
    out
}

/// Result of testing random `w`-subsets for a `K_s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEstimate {
    pub subset_size: usize,
    pub trials: usize,
    /// Subsets that contained a `K_s`.
    pub hits: usize,
    /// Up to ten `K_s`-free subsets found, sorted.
    pub miss_examples: Vec<Vec<usize>>,
}

pub const MAX_MISS_EXAMPLES: usize = 10;

/// Uniform `w`-subset of `0..n` for trial `trial` (partial Fisher-Yates).
pub fn sample_subset(n: usize, w: usize, seed: u64, trial: u64) -> Vec<usize> {
    let mut rng = rng::item_rng(seed, trial);
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..w {
        let j = rng.gen_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(w);
    pool.sort_unstable();
    pool
}

/// Draws `trials` uniform `w`-subsets and checks each for a `K_s`. When
/// `w == n` every draw is the whole vertex set, so a single test is run.
pub fn sampled_cover_check(g: &Graph, s: usize, w: usize, trials: usize, seed: u64) -> Result<CoverEstimate> {
    let n = g.n();
    if w > n || trials == 0 || s == 0 {
        return Err(Error::BadSize { w, n, trials });
    }
    let trials = if w == n { 1 } else { trials };
    let mut est = CoverEstimate { subset_size: w, trials, hits: 0, miss_examples: Vec::new() };
    for t in 0..trials {
        let subset = sample_subset(n, w, seed, t as u64);
        let mut mask = FixedBitSet::with_capacity(n);
        subset.iter().for_each(|&v| mask.insert(v));
        if find_clique_within(g, Some(&mask), s).is_some() {
            est.hits += 1;
        } else if est.miss_examples.len() < MAX_MISS_EXAMPLES {
            est.miss_examples.push(subset);
        }
    }
    Ok(est)
}
