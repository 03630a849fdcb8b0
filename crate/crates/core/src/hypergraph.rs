//! Random sub-systems of the truncated plane: every line is kept
//! independently with a fixed probability.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::clique::sample_subset;
use crate::dangerous::enumerate_dangerous;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::plane::{LineId, LineSystem, PointId, TruncatedPlane};
use crate::report::{Check, Verdict};
use crate::rng;

/// Largest order at which [`Hypergraph::verify_properties`] runs the full
/// dangerous-set census on its own.
pub const CENSUS_Q_LIMIT: u32 = 17;

#[derive(Clone, Debug, PartialEq)]
pub struct Hypergraph {
    base: TruncatedPlane,
    kept: Vec<LineId>,
    kept_mask: FixedBitSet,
    /// Kept lines through each point, increasing.
    incidence: Vec<Vec<LineId>>,
    keep_prob: f64,
    seed: u64,
}

impl Hypergraph {
    /// Keeps each line of `base` independently with probability `keep_prob`,
    /// one draw per line keyed by `(seed, line id)`.
    pub fn sample(base: &TruncatedPlane, keep_prob: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&keep_prob) {
            return Err(Error::BadProbability(keep_prob));
        }
        let kept = base
            .lines()
            .iter()
            .map(|l| l.id)
            .filter(|&id| rng::bernoulli(seed, id as u64, keep_prob))
            .collect();
        Self::from_kept(base, kept, keep_prob, seed)
    }

    /// A hypergraph with an explicit kept-line set (ids must be lines of
    /// `base`; order and duplicates are normalised away).
    pub fn from_kept(base: &TruncatedPlane, mut kept: Vec<LineId>, keep_prob: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&keep_prob) {
            return Err(Error::BadProbability(keep_prob));
        }
        kept.sort_unstable();
        kept.dedup();
        let q = base.q();
        let mut kept_mask = FixedBitSet::with_capacity((q * q + q) as usize);
        let mut incidence = vec![Vec::new(); base.num_points()];
        for &id in &kept {
            let line = base.line(id).ok_or_else(|| Error::Format {
                what: "kept line set".into(),
                detail: format!("line {id} is not a line of the truncated plane"),
            })?;
            kept_mask.insert(id as usize);
            for &p in &line.points {
                incidence[p as usize].push(id);
            }
        }
        Ok(Hypergraph { base: base.clone(), kept, kept_mask, incidence, keep_prob, seed })
    }

    pub fn base(&self) -> &TruncatedPlane {
        &self.base
    }

    pub fn q(&self) -> u32 {
        self.base.q()
    }

    pub fn num_points(&self) -> usize {
        self.base.num_points()
    }

    /// Kept line ids, increasing.
    pub fn kept(&self) -> &[LineId] {
        &self.kept
    }

    pub fn is_kept(&self, id: LineId) -> bool {
        self.kept_mask.contains(id as usize)
    }

    pub fn keep_prob(&self) -> f64 {
        self.keep_prob
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn lines_at(&self, p: PointId) -> &[LineId] {
        &self.incidence[p as usize]
    }

    pub fn degree(&self, p: PointId) -> usize {
        self.incidence[p as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn line_points(&self, id: LineId) -> &[PointId] {
        &self.base.line(id).expect("kept lines belong to the base").points
    }

    /// The kept line through `a` and `b`, if there is one.
    pub fn covering_line(&self, a: PointId, b: PointId) -> Option<LineId> {
        let (pa, pb) = (self.base.point_at(a), self.base.point_at(b));
        self.base.join_id(pa, pb).filter(|&id| self.is_kept(id))
    }

    /// Whether every pair of `set` lies on a kept line.
    pub fn complete_set(&self, set: &[PointId]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| a != b && self.covering_line(a, b).is_some()))
    }

    /// `|L'_A|`: kept lines meeting `a`.
    pub fn lines_meeting_subset(&self, a: &[PointId]) -> usize {
        let mut seen = FixedBitSet::with_capacity(self.kept_mask.len());
        for &p in a {
            for &id in self.lines_at(p) {
                seen.insert(id as usize);
            }
        }
        seen.count_ones(..)
    }

    /// `|L'_{B,t}|`: kept lines with at least `t` points in `b`. With `t = 0`
    /// every kept line counts.
    pub fn heavy_lines(&self, b: &[PointId], t: usize) -> usize {
        if t == 0 {
            return self.kept.len();
        }
        let mut hits = vec![0usize; self.kept_mask.len()];
        let mut count = 0;
        for &p in b {
            for &id in self.lines_at(p) {
                hits[id as usize] += 1;
                if hits[id as usize] == t {
                    count += 1;
                }
            }
        }
        count
    }

    /// H0: no pair of points lies on two kept lines.
    pub fn pairs_covered_at_most_once(&self) -> bool {
        let n = self.num_points();
        let mut covered = FixedBitSet::with_capacity(n * n);
        for &id in &self.kept {
            let pts = self.line_points(id);
            for (i, &a) in pts.iter().enumerate() {
                for &b in &pts[i + 1..] {
                    let key = a as usize * n + b as usize;
                    if covered.put(key) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Graph on the points joining every pair that lies on a kept line.
    pub fn pair_graph(&self) -> Graph {
        let mut g = Graph::empty(self.num_points());
        for &id in &self.kept {
            let pts = self.line_points(id);
            for (i, &a) in pts.iter().enumerate() {
                for &b in &pts[i + 1..] {
                    g.add_edge(a as usize, b as usize);
                }
            }
        }
        g
    }

    /// Measures H0, H3, H4, H1 and H5 and the aux-graph implication. The
    /// dangerous-set census runs when `q <= CENSUS_Q_LIMIT`.
    pub fn verify_properties(&self, alpha: f64, sample_budget: usize, seed: u64) -> HReport {
        let census = (self.q() <= CENSUS_Q_LIMIT).then(|| enumerate_dangerous(self).len());
        self.verify_properties_with_census(alpha, sample_budget, seed, census)
    }

    /// As [`verify_properties`](Self::verify_properties), with a census size
    /// computed elsewhere (`None` marks H4 as not evaluated).
    pub fn verify_properties_with_census(
        &self,
        alpha: f64,
        sample_budget: usize,
        seed: u64,
        dangerous_count: Option<usize>,
    ) -> HReport {
        let budget = sample_budget.max(1);
        let q = self.q() as usize;
        let n = self.num_points();
        let mut notices = Vec::new();

        let h0_ok = self.pairs_covered_at_most_once();
        let max_degree = self.max_degree();
        let h3_threshold = 2.0 * alpha;
        let h4_threshold = 2.0 * alpha.powi(8) * q as f64;
        if dangerous_count.is_none() {
            notices.push(format!("H4 census skipped: q = {q} exceeds the census limit {CENSUS_Q_LIMIT}"));
        }

        let h1_seed = rng::derive_seed(seed, "h1");
        let h1_min_sampled = (0..budget)
            .map(|t| {
                let a = to_points(sample_subset(n, q, h1_seed, t as u64));
                self.lines_meeting_subset(&a)
            })
            .min()
            .unwrap_or(0);
        let h1_threshold = (alpha * q as f64 / 4.0).ceil() as usize;

        let kept_over_16 = self.kept.len().div_ceil(16);
        let derived_h5_bound = h1_min_sampled as i64 - kept_over_16 as i64;

        let h5_threshold = (alpha * q as f64 / 8.0).ceil() as usize;
        let max_t = q / 16;
        if max_t == 0 {
            notices.push(format!("H5 not applicable: no integer t with 1 <= t <= q/16 = {:.3}", q as f64 / 16.0));
        }
        let h5 = (1..=max_t)
            .map(|t| {
                let size = 16 * t * q;
                let t_seed = rng::derive_seed(seed, &format!("h5/{t}"));
                let mut min_heavy = usize::MAX;
                let mut min_aux_bound = i64::MAX;
                let mut aux_ok = true;
                for trial in 0..budget {
                    let b = to_points(sample_subset(n, size, t_seed, trial as u64));
                    let heavy = self.heavy_lines(&b, t);
                    // Aux double count over a partition of B into q-sets.
                    let part_min = b.chunks(q).map(|part| self.lines_meeting_subset(part)).min().unwrap_or(0);
                    let bound = part_min as i64 - kept_over_16 as i64;
                    aux_ok &= heavy as i64 >= bound;
                    min_heavy = min_heavy.min(heavy);
                    min_aux_bound = min_aux_bound.min(bound);
                }
                H5Row {
                    t,
                    set_size: size,
                    samples: budget,
                    min_heavy,
                    threshold: h5_threshold,
                    aux_bound: min_aux_bound,
                    aux_implication_ok: aux_ok,
                }
            })
            .collect();

        HReport {
            q: self.q(),
            kept_lines: self.kept.len(),
            alpha,
            seed,
            h0_ok,
            max_degree,
            h3_threshold,
            dangerous_count,
            h4_threshold,
            h1_min_sampled,
            h1_samples: budget,
            h1_threshold,
            h5,
            derived_h5_bound,
            notices,
        }
    }
}

fn to_points(v: Vec<usize>) -> Vec<PointId> {
    v.into_iter().map(|p| p as PointId).collect()
}

/// `sample_hypergraph`.
pub fn sample_hypergraph(tp: &TruncatedPlane, keep_prob: f64, seed: u64) -> Result<Hypergraph> {
    Hypergraph::sample(tp, keep_prob, seed)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct H5Row {
    pub t: usize,
    pub set_size: usize,
    pub samples: usize,
    pub min_heavy: usize,
    pub threshold: usize,
    /// Smallest `min_i |L'_{B_i}| - ceil(|L'|/16)` over the sampled sets.
    pub aux_bound: i64,
    /// `heavy_lines(B, t)` met its own aux-graph bound on every sample.
    pub aux_implication_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HReport {
    pub q: u32,
    pub kept_lines: usize,
    pub alpha: f64,
    pub seed: u64,
    pub h0_ok: bool,
    pub max_degree: usize,
    pub h3_threshold: f64,
    pub dangerous_count: Option<usize>,
    pub h4_threshold: f64,
    pub h1_min_sampled: usize,
    pub h1_samples: usize,
    pub h1_threshold: usize,
    pub h5: Vec<H5Row>,
    /// `h1_min_sampled - ceil(|L'| / 16)`.
    pub derived_h5_bound: i64,
    pub notices: Vec<String>,
}

impl HReport {
    pub fn checks(&self) -> Vec<Check> {
        let mut out = vec![
            Check::new("H0 pairs on <= 1 kept line", self.h0_ok, true, Verdict::from_bool(self.h0_ok)),
            Check::new(
                "H3 max degree",
                self.max_degree,
                format!("<= {:.3}", self.h3_threshold),
                Verdict::from_bool(self.max_degree as f64 <= self.h3_threshold),
            ),
        ];
        out.push(match self.dangerous_count {
            Some(d) => Check::new(
                "H4 dangerous sets",
                d,
                format!("<= {:.3e}", self.h4_threshold),
                Verdict::from_bool(d as f64 <= self.h4_threshold),
            ),
            None => Check::new("H4 dangerous sets", "-", format!("<= {:.3e}", self.h4_threshold), Verdict::NotApplicable),
        });
        out.push(Check::new(
            format!("H1 min |L'_A| over {} samples", self.h1_samples),
            self.h1_min_sampled,
            format!(">= {}", self.h1_threshold),
            if self.h1_min_sampled >= self.h1_threshold { Verdict::Sampled } else { Verdict::Fail },
        ));
        if self.h5.is_empty() {
            out.push(Check::new("H5 heavy lines", "-", "t <= q/16", Verdict::NotApplicable));
        }
        for row in &self.h5 {
            out.push(Check::new(
                format!("H5 min |L'_(B,{})| over {} samples", row.t, row.samples),
                row.min_heavy,
                format!(">= {}", row.threshold),
                if row.min_heavy >= row.threshold { Verdict::Sampled } else { Verdict::Fail },
            ));
            out.push(Check::new(
                format!("H5 aux-graph implication t={}", row.t),
                row.aux_implication_ok,
                format!("heavy >= {}", row.aux_bound),
                Verdict::from_bool(row.aux_implication_ok),
            ));
        }
        for c in &mut out {
            c.seed = Some(self.seed);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::ClassId;

    fn tp(q: u32) -> TruncatedPlane {
        TruncatedPlane::new(q, ClassId::Vertical).unwrap()
    }

    #[test]
    fn extreme_probabilities() {
        let base = tp(5);
        let all = Hypergraph::sample(&base, 1.0, 9).unwrap();
        assert_eq!(all.kept().len(), 25);
        assert_eq!(all.max_degree(), 5);
        let none = Hypergraph::sample(&base, 0.0, 9).unwrap();
        assert!(none.kept().is_empty());
        assert_eq!(none.max_degree(), 0);
        assert!(matches!(Hypergraph::sample(&base, 1.5, 9), Err(Error::BadProbability(_))));
    }

    #[test]
    fn deterministic_per_seed() {
        let base = tp(7);
        let a = Hypergraph::sample(&base, 0.4, 11).unwrap();
        let b = Hypergraph::sample(&base, 0.4, 11).unwrap();
        assert_eq!(a.kept(), b.kept());
        let c = Hypergraph::sample(&base, 0.4, 12).unwrap();
        assert_ne!(a.kept(), c.kept());
    }

    #[test]
    fn complete_sets() {
        let base = tp(5);
        let h = Hypergraph::sample(&base, 1.0, 1).unwrap();
        let line = &base.lines()[3];
        assert!(h.complete_set(&line.points));
        assert!(h.complete_set(&line.points[..2]));
        // (0,0) and (0,1) share only the removed vertical line
        assert!(!h.complete_set(&[0, 1]));
    }

    #[test]
    fn meeting_and_heavy_counts() {
        let base = tp(5);
        let h = Hypergraph::sample(&base, 1.0, 1).unwrap();
        assert_eq!(h.lines_meeting_subset(&[]), 0);
        assert_eq!(h.lines_meeting_subset(&[7]), 5);
        let line = base.lines()[6].points.clone();
        assert_eq!(h.heavy_lines(&line, 5), 1);
        assert_eq!(h.heavy_lines(&line, 6), 0);
        assert_eq!(h.heavy_lines(&line, 1), h.lines_meeting_subset(&line));
    }

    #[test]
    fn empty_hypergraph_report() {
        let h = Hypergraph::sample(&tp(3), 0.0, 1).unwrap();
        let r = h.verify_properties(1.0, 5, 2);
        assert!(r.h0_ok);
        assert_eq!(r.max_degree, 0);
        assert_eq!(r.dangerous_count, Some(0));
        assert_eq!(r.h1_min_sampled, 0);
        assert!(r.h5.is_empty());
    }
}
