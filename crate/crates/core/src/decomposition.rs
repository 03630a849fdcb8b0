//! Edge-disjoint `K_s` packings: the transversal decomposition of the
//! balanced complete s-partite graph, and its embedding into kept lines.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::{is_prime, largest_prime_in, next_prime};
use crate::spartite::PartiteLineGraph;

/// `p^2` copies of `K_s` in `K_(p,...,p)`. Vertex `(i, j)` is the `j`-th
/// vertex of class `i`; a copy lists `j` for each class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KsDecomposition {
    pub p: usize,
    pub s: usize,
    pub copies: Vec<Vec<usize>>,
}

/// Copy `(a, b)` takes vertex `a + b*i mod p` in class `i`.
pub fn spartite_decomposition(s: usize, p: usize) -> Result<KsDecomposition> {
    if s < 2 {
        return Err(Error::BadS(s, 2));
    }
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if p < s {
        return Err(Error::PTooSmall { p: p as u64, s });
    }
    let copies = (0..p)
        .flat_map(|a| (0..p).map(move |b| (0..s).map(|i| (a + b * i) % p).collect()))
        .collect();
    Ok(KsDecomposition { p, s, copies })
}

impl KsDecomposition {
    /// Multiplicity of every edge `((i, x), (k, y))`, `i < k`, indexed
    /// `((pair index) * p + x) * p + y`.
    pub fn edge_tally(&self) -> Vec<u32> {
        let (p, s) = (self.p, self.s);
        let mut tally = vec![0u32; s * (s - 1) / 2 * p * p];
        for copy in &self.copies {
            let mut pair = 0;
            for i in 0..s {
                for k in i + 1..s {
                    tally[(pair * p + copy[i]) * p + copy[k]] += 1;
                    pair += 1;
                }
            }
        }
        tally
    }

    /// Every edge of `K_(p,...,p)` is covered exactly once.
    pub fn is_perfect(&self) -> bool {
        self.copies.len() == self.p * self.p && self.edge_tally().iter().all(|&c| c == 1)
    }
}

/// Prime used for a packing with parameter `beta`: the largest prime in
/// `[max(beta, s), 2 beta]`, else the smallest prime `>= max(beta, s)`.
pub fn packing_prime(s: usize, beta: usize) -> usize {
    let lo = beta.max(s) as u64;
    largest_prime_in(lo, 2 * beta as u64).unwrap_or_else(|| next_prime(lo)) as usize
}

/// Edge-disjoint `K_s` copies inside `G[U]`, each as `s` vertices in class
/// order.
///
/// A kept line qualifies when `|L ∩ U| >= 4 s beta` and each class meets
/// `L ∩ U` in at least `max(2 beta, p)` points. Every qualifying line, in
/// line-id order and at most `max_lines` of them, receives a copy of
/// [`spartite_decomposition`] on the `p` smallest points of each class.
pub fn edge_disjoint_ks(
    g: &PartiteLineGraph,
    u: &[usize],
    beta: usize,
    max_lines: Option<usize>,
) -> Result<Vec<Vec<usize>>> {
    if beta == 0 {
        return Err(Error::BadRange("beta must be at least 1".into()));
    }
    let s = g.s();
    let p = packing_prime(s, beta);
    let template = spartite_decomposition(s, p)?;
    let mut in_u = vec![false; g.n()];
    u.iter().for_each(|&v| in_u[v] = true);

    let mut out = Vec::new();
    let mut used = 0;
    for part in g.partitions() {
        if max_lines.is_some_and(|m| used >= m) {
            break;
        }
        let pts = g.hypergraph().line_points(part.line_id);
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); s];
        for (&pt, &label) in pts.iter().zip(&part.labels) {
            if in_u[pt as usize] {
                classes[label as usize - 1].push(pt as usize);
            }
        }
        let inside: usize = classes.iter().map(Vec::len).sum();
        let need = (2 * beta).max(p);
        if inside < 4 * s * beta || classes.iter().any(|c| c.len() < need) {
            continue;
        }
        used += 1;
        // line points are sorted, so each class list is already increasing
        out.extend(template.copies.iter().map(|copy| (0..s).map(|i| classes[i][copy[i]]).collect()));
    }
    Ok(out)
}
