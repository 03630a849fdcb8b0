//! Test-side oracles. Nothing here calls into the library's geometry,
//! clique or log-domain code.

#![allow(dead_code)]

pub mod bigfloat;

use std::collections::{BTreeSet, HashSet};

/// AG(2,q) with the vertical class removed, from first principles.
pub struct Geometry {
    pub q: u32,
    kept: HashSet<u32>,
}

impl Geometry {
    pub fn new(q: u32, kept: impl IntoIterator<Item = u32>) -> Self {
        Geometry { q, kept: kept.into_iter().collect() }
    }

    pub fn xy(&self, p: u32) -> (i64, i64) {
        ((p / self.q) as i64, (p % self.q) as i64)
    }

    fn inv(&self, a: i64) -> i64 {
        let q = self.q as i64;
        (1..q).find(|&b| (a.rem_euclid(q) * b) % q == 1).expect("q prime")
    }

    /// Id `m q + b` of the non-vertical line through two points with
    /// different x, none otherwise.
    pub fn line_id(&self, a: u32, b: u32) -> Option<u32> {
        let q = self.q as i64;
        let ((xa, ya), (xb, yb)) = (self.xy(a), self.xy(b));
        if xa == xb {
            return None;
        }
        let m = ((yb - ya).rem_euclid(q) * self.inv(xb - xa)).rem_euclid(q);
        let c = (ya - m * xa).rem_euclid(q);
        Some((m * q + c) as u32)
    }

    pub fn covered(&self, a: u32, b: u32) -> bool {
        self.line_id(a, b).is_some_and(|id| self.kept.contains(&id))
    }

    pub fn complete(&self, s: &[u32]) -> bool {
        s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| self.covered(a, b)))
    }

    /// Three points on a common non-vertical line.
    pub fn collinear(&self, a: u32, b: u32, c: u32) -> bool {
        let q = self.q as i64;
        let ((xa, ya), (xb, yb), (xc, yc)) = (self.xy(a), self.xy(b), self.xy(c));
        if xa == xb && xb == xc {
            return false;
        }
        ((xb - xa) * (yc - ya) - (yb - ya) * (xc - xa)).rem_euclid(q) == 0
    }

    pub fn general_position(&self, s: &[u32]) -> bool {
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                for k in j + 1..s.len() {
                    if self.collinear(s[i], s[j], s[k]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Pairs `{i, j}` of `core` whose line passes through `x`.
    fn core_lines_through(&self, core: &[u32; 4], x: u32) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                if self.collinear(core[i], core[j], x) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// `(sorted points, kind)` with kind 1, 2 or 3.
pub type OracleSet = (Vec<u32>, u8);

fn is_matching(p: &[(usize, usize)]) -> bool {
    p.len() == 2 && {
        let (a, b) = (p[0], p[1]);
        a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1
    }
}

/// Every 5- and 6-subset tested against the definitions. Subsets are grown
/// point by point and abandoned as soon as a pair is uncovered.
pub fn brute_force_census(g: &Geometry) -> BTreeSet<OracleSet> {
    let n = g.q * g.q;
    let mut out = BTreeSet::new();
    let mut stack = Vec::with_capacity(6);
    grow(g, n, 0, &mut stack, &mut out);
    out
}

fn grow(g: &Geometry, n: u32, from: u32, stack: &mut Vec<u32>, out: &mut BTreeSet<OracleSet>) {
    match stack.len() {
        5 => classify5(g, stack, out),
        6 => {
            classify6(g, stack, out);
            return;
        }
        _ => {}
    }
    for v in from..n {
        if stack.iter().all(|&u| g.covered(u, v)) {
            stack.push(v);
            grow(g, n, v + 1, stack, out);
            stack.pop();
        }
    }
}

fn classify5(g: &Geometry, s: &[u32], out: &mut BTreeSet<OracleSet>) {
    for xi in 0..5 {
        let core: Vec<u32> = (0..5).filter(|&i| i != xi).map(|i| s[i]).collect();
        let core: [u32; 4] = core.try_into().unwrap();
        if !g.general_position(&core) {
            continue;
        }
        match g.core_lines_through(&core, s[xi]).len() {
            0 => {
                out.insert((s.to_vec(), 1));
                return;
            }
            1 => {
                out.insert((s.to_vec(), 2));
                return;
            }
            _ => {}
        }
    }
}

fn classify6(g: &Geometry, s: &[u32], out: &mut BTreeSet<OracleSet>) {
    for yi in 0..6 {
        for zi in 0..6 {
            if yi == zi {
                continue;
            }
            let core: Vec<u32> = (0..6).filter(|&i| i != yi && i != zi).map(|i| s[i]).collect();
            let core: [u32; 4] = core.try_into().unwrap();
            if !g.general_position(&core) {
                continue;
            }
            let ly = g.core_lines_through(&core, s[yi]);
            let lz = g.core_lines_through(&core, s[zi]);
            if is_matching(&ly) && is_matching(&lz) && ly != lz {
                out.insert((s.to_vec(), 3));
                return;
            }
        }
    }
}

/// Every `k`-clique of an adjacency predicate on `0..n`, by plain nested
/// extension in increasing order.
pub fn naive_cliques(n: usize, k: usize, adj: &dyn Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, adj: &dyn Fn(usize, usize) -> bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let from = cur.last().map_or(0, |&v| v + 1);
        for v in from..n {
            if cur.iter().all(|&u| adj(u, v)) {
                cur.push(v);
                rec(n, k, adj, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, k, adj, &mut Vec::new(), &mut out);
    out
}

/// Primality by trial division.
pub fn trial_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}
