//! The affine plane AG(2, q) over a prime field, and the truncated line
//! system obtained by deleting one parallel class.
//!
//! Points are pairs `(x, y)` of residues mod `q`, indexed `x * q + y`.
//! Lines are identified by a stable id that does not change under
//! truncation:
//!
//! - slope `m`, intercept `b` (the points `(x, m x + b)`): id `m * q + b`
//! - vertical line `x = c`: id `q^2 + c`
//!
//! so the slope-`m` class is the id range `[m q, m q + q)` and the vertical
//! class is `[q^2, q^2 + q)`.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::{is_prime, pow_mod};
use crate::report::{Check, Verdict};

pub type PointId = u32;
pub type LineId = u32;

/// Largest supported order; keeps `q^2 + q` inside `u32` with room to spare.
pub const MAX_ORDER: u32 = 46_337;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: u32,
    pub y: u32,
    pub index: PointId,
}

impl Point {
    pub fn new(q: u32, x: u32, y: u32) -> Self {
        debug_assert!(x < q && y < q);
        Point { x, y, index: x * q + y }
    }

    pub fn from_index(q: u32, index: PointId) -> Self {
        Point { x: index / q, y: index % q, index }
    }
}

/// A parallel class: all lines of one slope, or the vertical lines.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassId {
    Slope(u32),
    #[default]
    Vertical,
}

impl ClassId {
    /// Position of the class in `0..=q` (vertical is last).
    pub fn ordinal(self, q: u32) -> u32 {
        match self {
            ClassId::Slope(m) => m,
            ClassId::Vertical => q,
        }
    }

    pub fn from_ordinal(q: u32, k: u32) -> Option<Self> {
        match k {
            k if k < q => Some(ClassId::Slope(k)),
            k if k == q => Some(ClassId::Vertical),
            _ => None,
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::Slope(m) => write!(f, "{m}"),
            ClassId::Vertical => f.write_str("vertical"),
        }
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "v" | "vertical" | "inf" => Ok(ClassId::Vertical),
            other => other
                .parse::<u32>()
                .map(ClassId::Slope)
                .map_err(|_| Error::UnknownClass(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub id: LineId,
    pub class_id: ClassId,
    /// Sorted point indices; always exactly `q` of them.
    pub points: Vec<PointId>,
}

impl Line {
    pub fn contains(&self, p: PointId) -> bool {
        self.points.binary_search(&p).is_ok()
    }
}

/// Arithmetic of the prime field GF(q) as used by the line geometry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    q: u32,
    inv: Vec<u32>,
}

impl PrimeField {
    pub fn new(q: u32) -> Self {
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { pow_mod(a as u64, q as u64 - 2, q as u64) as u32 })
            .collect();
        PrimeField { q, inv }
    }

    pub fn class_of_line(&self, id: LineId) -> ClassId {
        let q = self.q;
        if id >= q * q {
            ClassId::Vertical
        } else {
            ClassId::Slope(id / q)
        }
    }

    /// Id of the unique line of AG(2, q) through two distinct points.
    pub fn join(&self, a: Point, b: Point) -> LineId {
        let q = self.q;
        if a.x == b.x {
            return q * q + a.x;
        }
        let dx = (b.x + q - a.x) % q;
        let dy = (b.y + q - a.y) % q;
        let m = (dy as u64 * self.inv[dx as usize] as u64 % q as u64) as u32;
        let b0 = (a.y as u64 + q as u64 * q as u64 - m as u64 * a.x as u64) % q as u64;
        m * q + b0 as u32
    }

    /// Id of the line of class `class` through `p`.
    pub fn line_in_class(&self, p: Point, class: ClassId) -> LineId {
        let q = self.q;
        match class {
            ClassId::Vertical => q * q + p.x,
            ClassId::Slope(m) => {
                let b = (p.y as u64 + q as u64 * q as u64 - m as u64 * p.x as u64) % q as u64;
                m * q + b as u32
            }
        }
    }

    pub fn on_line(&self, id: LineId, p: Point) -> bool {
        let q = self.q;
        if id >= q * q {
            p.x == id - q * q
        } else {
            let (m, b) = (id / q, id % q);
            p.y as u64 == (m as u64 * p.x as u64 + b as u64) % q as u64
        }
    }

    pub fn line_points(&self, id: LineId) -> Vec<PointId> {
        let q = self.q;
        if id >= q * q {
            let c = id - q * q;
            (0..q).map(|y| c * q + y).collect()
        } else {
            let (m, b) = (id / q, id % q);
            (0..q)
                .map(|x| x * q + ((m as u64 * x as u64 + b as u64) % q as u64) as u32)
                .collect()
        }
    }
}

/// Queries common to the full plane and the truncated line system.
pub trait LineSystem {
    fn order(&self) -> u32;

    /// The line with this id, if it belongs to the structure.
    fn line(&self, id: LineId) -> Option<&Line>;

    fn field(&self) -> &PrimeField;

    fn point(&self, x: u32, y: u32) -> Point {
        Point::new(self.order(), x % self.order(), y % self.order())
    }

    fn point_at(&self, index: PointId) -> Point {
        Point::from_index(self.order(), index)
    }

    fn num_points(&self) -> usize {
        let q = self.order() as usize;
        q * q
    }

    /// `L(p1, p2)`: the line of this structure through both points, if any.
    fn line_through(&self, p1: Point, p2: Point) -> Result<Option<&Line>> {
        if p1.index == p2.index {
            return Err(Error::SamePoint);
        }
        Ok(self.line(self.field().join(p1, p2)))
    }

    /// Id of `L(p1, p2)` without touching the line table.
    fn join_id(&self, p1: Point, p2: Point) -> Option<LineId> {
        if p1.index == p2.index {
            return None;
        }
        let id = self.field().join(p1, p2);
        self.line(id).map(|l| l.id)
    }

    /// Whether the three points lie on a common line of this structure.
    fn collinear(&self, a: Point, b: Point, c: Point) -> bool {
        if a.index == b.index || a.index == c.index || b.index == c.index {
            return true;
        }
        match self.join_id(a, b) {
            Some(id) => self.field().on_line(id, c),
            None => false,
        }
    }

    /// True iff no three of `pts` lie on a common line of the structure.
    fn general_position(&self, pts: &[Point]) -> Result<bool> {
        if pts.len() < 3 {
            return Err(Error::TooFew(pts.len()));
        }
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    if self.collinear(pts[i], pts[j], pts[k]) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Whether point `p` lies on line `id` (of the full plane).
    fn incident(&self, id: LineId, p: Point) -> bool {
        self.field().on_line(id, p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePlane {
    q: u32,
    field: PrimeField,
    points: Vec<Point>,
    lines: Vec<Line>,
    classes: Vec<Vec<LineId>>,
}

impl AffinePlane {
    /// Build AG(2, q) for a prime `q`.
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q as u64) || q > MAX_ORDER {
            return Err(Error::NotPrime(q as u64));
        }
        let field = PrimeField::new(q);
        let points = (0..q * q).map(|i| Point::from_index(q, i)).collect();
        let lines: Vec<Line> = (0..q * q + q)
            .map(|id| Line {
                id,
                class_id: field.class_of_line(id),
                points: field.line_points(id),
            })
            .collect();
        let classes = (0..=q).map(|k| (k * q..k * q + q).collect()).collect();
        Ok(AffinePlane { q, field, points, lines, classes })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    /// The `q + 1` parallel classes, slopes first and the vertical class last.
    pub fn classes(&self) -> &[Vec<LineId>] {
        &self.classes
    }

    pub fn class(&self, class: ClassId) -> Result<&[LineId]> {
        let k = class.ordinal(self.q);
        self.classes
            .get(k as usize)
            .filter(|_| matches!(class, ClassId::Vertical) || k < self.q)
            .map(|v| v.as_slice())
            .ok_or_else(|| Error::UnknownClass(class.to_string()))
    }

    /// Remove one parallel class.
    pub fn truncate(&self, class: ClassId) -> Result<TruncatedPlane> {
        self.class(class)?;
        TruncatedPlane::new(self.q, class)
    }
}

impl LineSystem for AffinePlane {
    fn order(&self) -> u32 {
        self.q
    }

    fn line(&self, id: LineId) -> Option<&Line> {
        self.lines.get(id as usize)
    }

    fn field(&self) -> &PrimeField {
        &self.field
    }
}

/// `build_affine_plane`.
pub fn build_affine_plane(q: u32) -> Result<AffinePlane> {
    AffinePlane::new(q)
}

/// AG(2, q) minus one parallel class: `q^2` points, `q^2` lines, q-uniform
/// and q-regular, and any two points share at most one line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPlane {
    q: u32,
    field: PrimeField,
    removed_class: ClassId,
    lines: Vec<Line>,
    /// `slot[id]` is the position of line `id` in `lines`, or `u32::MAX` if
    /// the line was removed.
    slot: Vec<u32>,
}

impl TruncatedPlane {
    /// Build the truncated structure directly (no full plane needed).
    pub fn new(q: u32, removed_class: ClassId) -> Result<Self> {
        if !is_prime(q as u64) || q > MAX_ORDER {
            return Err(Error::NotPrime(q as u64));
        }
        if let ClassId::Slope(m) = removed_class {
            if m >= q {
                return Err(Error::UnknownClass(removed_class.to_string()));
            }
        }
        let field = PrimeField::new(q);
        let removed = removed_class.ordinal(q);
        let mut lines = Vec::with_capacity((q * q) as usize);
        let mut slot = vec![u32::MAX; (q * q + q) as usize];
        for id in 0..q * q + q {
            if id / q == removed {
                continue;
            }
            slot[id as usize] = lines.len() as u32;
            lines.push(Line {
                id,
                class_id: field.class_of_line(id),
                points: field.line_points(id),
            });
        }
        Ok(TruncatedPlane { q, field, removed_class, lines, slot })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn removed_class(&self) -> ClassId {
        self.removed_class
    }

    /// The `q^2` remaining lines, in increasing id order.
    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn contains_line(&self, id: LineId) -> bool {
        self.slot.get(id as usize).is_some_and(|&s| s != u32::MAX)
    }

    /// Position of line `id` in [`lines`](Self::lines).
    pub fn slot(&self, id: LineId) -> Option<usize> {
        self.slot
            .get(id as usize)
            .filter(|&&s| s != u32::MAX)
            .map(|&s| s as usize)
    }

    /// Ids of the `q` lines through `p`, in increasing class order.
    pub fn lines_through_point(&self, p: Point) -> impl Iterator<Item = LineId> + '_ {
        let removed = self.removed_class.ordinal(self.q);
        (0..=self.q)
            .filter(move |&k| k != removed)
            .map(move |k| {
                let class = ClassId::from_ordinal(self.q, k).expect("k <= q");
                self.field.line_in_class(p, class)
            })
    }

    /// `|{L : L ∩ A ≠ ∅}|`.
    pub fn lines_meeting(&self, a: &[Point]) -> usize {
        let mut seen = FixedBitSet::with_capacity((self.q * self.q + self.q) as usize);
        for &p in a {
            for id in self.lines_through_point(p) {
                seen.insert(id as usize);
            }
        }
        seen.count_ones(..)
    }

    /// Largest number of lines through a point pair, and the number of pairs
    /// on no line. Quadratic in `q^2`.
    pub fn pair_coverage(&self) -> (u32, usize) {
        let n = (self.q * self.q) as usize;
        let mut count = vec![0u32; n * n];
        for line in &self.lines {
            for (i, &a) in line.points.iter().enumerate() {
                for &b in &line.points[i + 1..] {
                    count[a as usize * n + b as usize] += 1;
                }
            }
        }
        let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        pairs.fold((0, 0), |(max, zero), (a, b)| {
            let c = count[a * n + b];
            (max.max(c), zero + (c == 0) as usize)
        })
    }

    /// Line count, uniformity, regularity, P1 and the uncovered-pair count.
    pub fn structure_checks(&self) -> Vec<Check> {
        let q = self.q as usize;
        let uniform = self.lines.iter().all(|l| l.points.len() == q);
        let mut degree = vec![0usize; q * q];
        self.lines.iter().flat_map(|l| &l.points).for_each(|&p| degree[p as usize] += 1);
        let regular = degree.iter().all(|&d| d == q);
        let (max_cover, uncovered) = self.pair_coverage();
        let want_uncovered = q * q * (q - 1) / 2;
        vec![
            Check::new("lines", self.lines.len(), q * q, Verdict::from_bool(self.lines.len() == q * q)),
            Check::new("q-uniform", uniform, true, Verdict::from_bool(uniform)),
            Check::new("q-regular", regular, true, Verdict::from_bool(regular)),
            Check::new("P1 max lines per pair", max_cover, "<= 1", Verdict::from_bool(max_cover <= 1)),
            Check::new("uncovered pairs", uncovered, want_uncovered, Verdict::from_bool(uncovered == want_uncovered)),
        ]
    }
}

impl LineSystem for TruncatedPlane {
    fn order(&self) -> u32 {
        self.q
    }

    fn line(&self, id: LineId) -> Option<&Line> {
        self.slot(id).map(|s| &self.lines[s])
    }

    fn field(&self) -> &PrimeField {
        &self.field
    }
}
