mod common;

use std::collections::{BTreeSet, HashSet};

use affine_ks::dangerous::{enumerate_dangerous, DangerousKind};
use affine_ks::{ClassId, Hypergraph, TruncatedPlane};
use common::{brute_force_census, Geometry, OracleSet};

fn hyper(q: u32, p: f64, seed: u64) -> Hypergraph {
    Hypergraph::sample(&TruncatedPlane::new(q, ClassId::Vertical).unwrap(), p, seed).unwrap()
}

fn census_as_oracle_sets(h: &Hypergraph) -> BTreeSet<OracleSet> {
    enumerate_dangerous(h)
        .iter()
        .map(|d| {
            let kind = match d.kind {
                DangerousKind::Type1 => 1,
                DangerousKind::Type2 => 2,
                DangerousKind::Type3 => 3,
            };
            (d.points(), kind)
        })
        .collect()
}

fn oracle(h: &Hypergraph) -> BTreeSet<OracleSet> {
    brute_force_census(&Geometry::new(h.q(), h.kept().iter().copied()))
}

#[test]
fn full_plane_q5_matches_oracle() {
    let h = hyper(5, 1.0, 1);
    let ours = census_as_oracle_sets(&h);
    assert_eq!(ours.len(), enumerate_dangerous(&h).len(), "duplicate vertex sets");
    assert_eq!(ours, oracle(&h));
}

#[test]
fn sparse_q7_matches_oracle() {
    for seed in 1..=3 {
        let h = hyper(7, 0.4, seed);
        assert_eq!(census_as_oracle_sets(&h), oracle(&h), "seed {seed}");
    }
}

#[test]
fn q3_full_plane() {
    let h = hyper(3, 1.0, 0);
    assert_eq!(census_as_oracle_sets(&h), oracle(&h));
}

#[test]
fn census_is_deterministic_and_sound() {
    let h = hyper(7, 0.6, 9);
    let a = enumerate_dangerous(&h);
    assert_eq!(a, enumerate_dangerous(&hyper(7, 0.6, 9)));
    let keys: HashSet<_> = a.iter().map(|d| d.key()).collect();
    assert_eq!(keys.len(), a.len());
    for d in &a {
        assert!(d.is_valid_in(&h));
        assert_eq!(d.witness_lines(&h).len(), d.kind.witness_line_count());
        assert!(d.witness_lines(&h).iter().all(|&l| h.is_kept(l)));
    }
}

#[test]
fn canonical_roles() {
    let h = hyper(7, 1.0, 0);
    let g = Geometry::new(7, h.kept().iter().copied());
    for d in enumerate_dangerous(&h) {
        let c = d.core;
        match d.kind {
            DangerousKind::Type1 => {
                assert!(c.windows(2).all(|w| w[0] < w[1]));
                assert!(d.extras()[0] > c[3]);
            }
            DangerousKind::Type2 => {
                let x = d.extras()[0];
                assert!(g.collinear(c[1], c[2], x));
                assert!(c[1] < c[2] && c[0] < c[3] && x > c[2]);
            }
            DangerousKind::Type3 => {
                let (y, z) = (d.extras()[0], d.extras()[1]);
                assert!(g.collinear(c[0], c[2], y) && g.collinear(c[1], c[3], y));
                assert!(g.collinear(c[0], c[1], z) && g.collinear(c[2], c[3], z));
            }
        }
    }
}

#[test]
fn census_is_monotone_in_kept_lines() {
    let tp = TruncatedPlane::new(7, ClassId::Vertical).unwrap();
    // bernoulli draws are coupled across probabilities for a fixed seed
    let small = Hypergraph::sample(&tp, 0.35, 4).unwrap();
    let large = Hypergraph::sample(&tp, 0.6, 4).unwrap();
    assert!(small.kept().iter().all(|l| large.is_kept(*l)));
    let a = census_as_oracle_sets(&small);
    let b = census_as_oracle_sets(&large);
    assert!(a.is_subset(&b));
}
