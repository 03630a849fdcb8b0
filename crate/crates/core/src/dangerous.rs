//! Census of dangerous sets: kept-line-complete configurations built on four
//! points in general position.
//!
//! With core `v1..v4` (no three on a common line) and the whole vertex set
//! pairwise covered by kept lines:
//!
//! - Type 1: a fifth point `x` such that all five points are in general
//!   position (10 witness lines);
//! - Type 2: `x` lies on exactly one core line, labelled `L(v2, v3)`
//!   (8 witness lines);
//! - Type 3: two points with `y ∈ L(v1,v3) ∩ L(v2,v4)` and
//!   `z ∈ L(v1,v2) ∩ L(v3,v4)` (7 witness lines).
//!
//! The census walks complete 4-sets of the pair graph instead of all 5- and
//! 6-subsets, and extends each core through the intersections of its six
//! lines. Each vertex set is reported once, with a canonical labelling:
//!
//! - Type 1: core sorted, `x` the largest point;
//! - Type 2: `x` the largest point of the unique collinear triple,
//!   `v2 < v3` its two partners, `v1 < v4` the remaining two;
//! - Type 3: the lexicographically smallest `(v1, v2, v3, v4, y, z)` among
//!   all valid labellings of the six points.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::hypergraph::Hypergraph;
use crate::plane::{LineId, LineSystem, Point, PointId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DangerousKind {
    Type1,
    Type2,
    Type3,
}

impl DangerousKind {
    /// Number of distinct kept lines covering the pairs of such a set.
    pub fn witness_line_count(self) -> usize {
        match self {
            DangerousKind::Type1 => 10,
            DangerousKind::Type2 => 8,
            DangerousKind::Type3 => 7,
        }
    }

    pub fn size(self) -> usize {
        match self {
            DangerousKind::Type3 => 6,
            _ => 5,
        }
    }
}

const NO_POINT: PointId = PointId::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DangerousSet {
    pub kind: DangerousKind,
    /// `v1..v4` in their canonical roles.
    pub core: [PointId; 4],
    extras: [PointId; 2],
}

impl DangerousSet {
    pub fn type1(core: [PointId; 4], x: PointId) -> Self {
        DangerousSet { kind: DangerousKind::Type1, core, extras: [x, NO_POINT] }
    }

    pub fn type2(core: [PointId; 4], x: PointId) -> Self {
        DangerousSet { kind: DangerousKind::Type2, core, extras: [x, NO_POINT] }
    }

    pub fn type3(core: [PointId; 4], y: PointId, z: PointId) -> Self {
        DangerousSet { kind: DangerousKind::Type3, core, extras: [y, z] }
    }

    /// `[x]` for Types 1-2, `[y, z]` for Type 3.
    pub fn extras(&self) -> &[PointId] {
        match self.kind {
            DangerousKind::Type3 => &self.extras,
            _ => &self.extras[..1],
        }
    }

    /// All 5 or 6 points, sorted.
    pub fn points(&self) -> Vec<PointId> {
        let mut v: Vec<PointId> = self.core.iter().chain(self.extras()).copied().collect();
        v.sort_unstable();
        v
    }

    /// Sorted points padded with `PointId::MAX` to six entries.
    pub fn key(&self) -> [PointId; 6] {
        let mut k = [NO_POINT; 6];
        for (slot, p) in k.iter_mut().zip(self.points()) {
            *slot = p;
        }
        k
    }

    /// Distinct kept lines covering the pairs of the set, increasing. For a
    /// set from the census this has `kind.witness_line_count()` entries.
    pub fn witness_lines(&self, h: &Hypergraph) -> Vec<LineId> {
        let pts = self.points();
        let mut lines: Vec<LineId> = pts
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| pts[i + 1..].iter().filter_map(move |&b| h.covering_line(a, b)))
            .collect();
        lines.sort_unstable();
        lines.dedup();
        lines
    }

    /// Re-checks the definition of this set's kind against `h`, including the
    /// labelling roles.
    pub fn is_valid_in(&self, h: &Hypergraph) -> bool {
        let base = h.base();
        let pts = self.points();
        if pts.windows(2).any(|w| w[0] == w[1]) || !h.complete_set(&pts) {
            return false;
        }
        let core: Vec<Point> = self.core.iter().map(|&p| base.point_at(p)).collect();
        if !base.general_position(&core).unwrap_or(false) {
            return false;
        }
        let geo = CoreGeometry::new(h, self.core);
        match self.kind {
            DangerousKind::Type1 => geo.lines_containing(self.extras[0]).is_empty(),
            DangerousKind::Type2 => geo.lines_containing(self.extras[0]) == [pair_index(1, 2)],
            DangerousKind::Type3 => {
                let y = geo.lines_containing(self.extras[0]);
                let z = geo.lines_containing(self.extras[1]);
                y == [pair_index(0, 2), pair_index(1, 3)] && z == [pair_index(0, 1), pair_index(2, 3)]
            }
        }
    }
}

/// Core index pairs in a fixed order: 01, 02, 03, 12, 13, 23.
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn pair_index(i: usize, j: usize) -> usize {
    PAIRS.iter().position(|&p| p == (i, j)).expect("valid core pair")
}

/// The six lines of a core and incidence queries against them.
struct CoreGeometry<'a> {
    h: &'a Hypergraph,
    lines: [LineId; 6],
}

impl<'a> CoreGeometry<'a> {
    fn new(h: &'a Hypergraph, core: [PointId; 4]) -> Self {
        let base = h.base();
        let pts = core.map(|p| base.point_at(p));
        let lines = PAIRS.map(|(i, j)| base.field().join(pts[i], pts[j]));
        CoreGeometry { h, lines }
    }

    /// Indices (into `PAIRS`) of the core lines through `x`, increasing.
    fn lines_containing(&self, x: PointId) -> Vec<usize> {
        let base = self.h.base();
        let p = base.point_at(x);
        (0..6).filter(|&k| base.incident(self.lines[k], p)).collect()
    }
}

/// Every valid Type-3 labelling of a six-point set, as
/// `(v1, v2, v3, v4, y, z)` tuples.
fn type3_labellings(h: &Hypergraph, six: [PointId; 6]) -> Vec<[PointId; 6]> {
    let base = h.base();
    let mut out = Vec::new();
    for skip_a in 0..6 {
        for skip_b in skip_a + 1..6 {
            let core: Vec<PointId> = (0..6).filter(|&i| i != skip_a && i != skip_b).map(|i| six[i]).collect();
            let pts: Vec<Point> = core.iter().map(|&p| base.point_at(p)).collect();
            if !base.general_position(&pts).unwrap_or(false) {
                continue;
            }
            let (u, w) = (six[skip_a], six[skip_b]);
            for perm in permutations4() {
                let c = [core[perm[0]], core[perm[1]], core[perm[2]], core[perm[3]]];
                let geo = CoreGeometry::new(h, c);
                let want_y = [pair_index(0, 2), pair_index(1, 3)];
                let want_z = [pair_index(0, 1), pair_index(2, 3)];
                for (y, z) in [(u, w), (w, u)] {
                    if geo.lines_containing(y) == want_y && geo.lines_containing(z) == want_z {
                        out.push([c[0], c[1], c[2], c[3], y, z]);
                    }
                }
            }
        }
    }
    out
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| p.contains(&i)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Complete census of dangerous sets of `h`, sorted by (points, kind).
pub fn enumerate_dangerous(h: &Hypergraph) -> Vec<DangerousSet> {
    let mut out = Vec::new();
    for_each_dangerous(h, |d| out.push(d));
    out.sort_unstable_by_key(|d| (d.key(), d.kind));
    out
}

/// Streams the census without collecting it.
pub fn for_each_dangerous(h: &Hypergraph, mut emit: impl FnMut(DangerousSet)) {
    let base = h.base();
    let g = h.pair_graph();
    let n = g.n();
    let mut seen_type3: HashSet<[PointId; 6]> = HashSet::new();
    let pt = |i: usize| base.point_at(i as PointId);

    for a in 0..n {
        let na = g.neighbors(a);
        for b in na.ones().filter(|&b| b > a) {
            let mut nab = na.clone();
            nab.intersect_with(g.neighbors(b));
            for c in nab.ones().filter(|&c| c > b) {
                if base.collinear(pt(a), pt(b), pt(c)) {
                    continue;
                }
                let mut nabc = nab.clone();
                nabc.intersect_with(g.neighbors(c));
                for d in nabc.ones().filter(|&d| d > c) {
                    if base.collinear(pt(a), pt(b), pt(d))
                        || base.collinear(pt(a), pt(c), pt(d))
                        || base.collinear(pt(b), pt(c), pt(d))
                    {
                        continue;
                    }
                    let core = [a as PointId, b as PointId, c as PointId, d as PointId];
                    let geo = CoreGeometry::new(h, core);
                    let mut common = nabc.clone();
                    common.intersect_with(g.neighbors(d));
                    // diagonal points found so far, with the pairing they realise
                    let mut diagonals: Vec<(PointId, usize)> = Vec::with_capacity(3);
                    for x in common.ones() {
                        let x = x as PointId;
                        let on = geo.lines_containing(x);
                        match on.as_slice() {
                            [] => {
                                if x > core[3] {
                                    emit(DangerousSet::type1(core, x));
                                }
                            }
                            [k] => {
                                let (i, j) = PAIRS[*k];
                                if x > core[i] && x > core[j] {
                                    let rest: Vec<PointId> =
                                        (0..4).filter(|&r| r != i && r != j).map(|r| core[r]).collect();
                                    emit(DangerousSet::type2([rest[0], core[i], core[j], rest[1]], x));
                                }
                            }
                            [k1, _] => diagonals.push((x, *k1)),
                            _ => unreachable!("a point off the core lies on at most two core lines"),
                        }
                    }
                    for (i, &(y, py)) in diagonals.iter().enumerate() {
                        for &(z, pz) in &diagonals[i + 1..] {
                            if py == pz || h.covering_line(y, z).is_none() {
                                continue;
                            }
                            let mut six = [core[0], core[1], core[2], core[3], y, z];
                            six.sort_unstable();
                            if !seen_type3.insert(six) {
                                continue;
                            }
                            let best = type3_labellings(h, six)
                                .into_iter()
                                .min()
                                .expect("the generating labelling is valid up to role assignment");
                            emit(DangerousSet::type3([best[0], best[1], best[2], best[3]], best[4], best[5]));
                        }
                    }
                }
            }
        }
    }
}

/// Sorted union of the vertices of `sets`.
pub fn vertex_union(sets: &[DangerousSet]) -> Vec<PointId> {
    let mut v: Vec<PointId> = sets.iter().flat_map(|d| d.points()).collect();
    v.sort_unstable();
    v.dedup();
    v
}
