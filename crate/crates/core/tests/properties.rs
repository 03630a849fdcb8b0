mod common;

use affine_ks::artifact::Artifact;
use affine_ks::clique::{exact_s_independence, find_clique, greedy_s_independent};
use affine_ks::dangerous::enumerate_dangerous;
use affine_ks::decomposition::spartite_decomposition;
use affine_ks::hypergraph::Hypergraph;
use affine_ks::lll::{check_inequalities, compute_params};
use affine_ks::plane::{ClassId, LineSystem, Point, TruncatedPlane};
use affine_ks::primes::{bertrand_prime, is_prime};
use affine_ks::spartite::{sparsify, PartiteLineGraph};
use affine_ks::Graph;
use proptest::prelude::*;

fn small_prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![3u32, 5, 7, 11, 13])
}

fn tp(q: u32) -> TruncatedPlane {
    TruncatedPlane::new(q, ClassId::Vertical).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn two_points_share_at_most_one_line(q in small_prime(), k in 0u32..14, a in 0u32..169, b in 0u32..169) {
        let (a, b) = (a % (q * q), b % (q * q));
        prop_assume!(a != b);
        let class = ClassId::from_ordinal(q, k % (q + 1)).unwrap();
        let t = TruncatedPlane::new(q, class).unwrap();
        let through = t.lines().iter().filter(|l| l.contains(a) && l.contains(b)).count();
        prop_assert!(through <= 1);
        let (pa, pb) = (Point::from_index(q, a), Point::from_index(q, b));
        let l = t.line_through(pa, pb).unwrap();
        prop_assert_eq!(l.is_some(), through == 1);
        prop_assert_eq!(l.map(|l| l.id), t.line_through(pb, pa).unwrap().map(|l| l.id));
    }

    #[test]
    fn sampling_is_deterministic_and_coupled(q in small_prime(), p1 in 0.0f64..1.0, p2 in 0.0f64..1.0, seed in any::<u64>()) {
        let base = tp(q);
        let (lo, hi) = (p1.min(p2), p1.max(p2));
        let a = Hypergraph::sample(&base, lo, seed).unwrap();
        let b = Hypergraph::sample(&base, hi, seed).unwrap();
        prop_assert_eq!(&a, &Hypergraph::sample(&base, lo, seed).unwrap());
        prop_assert!(a.kept().iter().all(|&id| b.is_kept(id)));
        prop_assert!(a.pairs_covered_at_most_once());
        prop_assert!(a.max_degree() <= b.max_degree());
    }

    #[test]
    fn heavy_lines_monotone(q in small_prime(), p in 0.1f64..1.0, seed in any::<u64>(), pts in prop::collection::vec(0u32..169, 1..60)) {
        let h = Hypergraph::sample(&tp(q), p, seed).unwrap();
        let mut b: Vec<u32> = pts.into_iter().map(|x| x % (q * q)).collect();
        b.sort_unstable();
        b.dedup();
        prop_assert_eq!(h.heavy_lines(&b, 1), h.lines_meeting_subset(&b));
        let counts: Vec<usize> = (1..=q as usize + 1).map(|t| h.heavy_lines(&b, t)).collect();
        prop_assert!(counts.windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(counts[q as usize], 0);
    }

    #[test]
    fn graph_structure(q in small_prime(), p in 0.1f64..1.0, s in 2usize..6, seed in any::<u64>()) {
        let h = Hypergraph::sample(&tp(q), p, seed).unwrap();
        let g = PartiteLineGraph::build(&h, s, seed ^ 0x5a5a).unwrap();
        prop_assert!(g.line_structure_holds());
        prop_assert_eq!(g.graph().edge_count(), g.edge_count_from_partitions());
        prop_assert_eq!(g.graph().edge_count(), g.graph().edges().count());
        if s >= 3 && q <= 7 {
            prop_assert!(g.max_ks1_per_edge() as f64 <= g.ks1_edge_bound());
        }
    }

    #[test]
    fn sparsify_coupling(n in 2usize..40, dens in 0.0f64..1.0, p1 in 0.0f64..1.0, p2 in 0.0f64..1.0, seed in any::<u64>()) {
        let g = sparsify(&Graph::complete(n), dens, seed).unwrap();
        let (lo, hi) = (p1.min(p2), p1.max(p2));
        let a = sparsify(&g, lo, seed.wrapping_add(1)).unwrap();
        let b = sparsify(&g, hi, seed.wrapping_add(1)).unwrap();
        prop_assert!(a.edges().all(|(u, v)| b.has_edge(u, v) && g.has_edge(u, v)));
    }

    #[test]
    fn decomposition_is_perfect(s in 2usize..8, pick in 0usize..6) {
        let p = [2usize, 3, 5, 7, 11, 13].into_iter().filter(|&p| p >= s).nth(pick % 3).unwrap();
        let d = spartite_decomposition(s, p).unwrap();
        prop_assert_eq!(d.copies.len(), p * p);
        prop_assert!(d.is_perfect());
    }

    #[test]
    fn lll_identities(q_raw in 3u64..10_000_000, s in 3usize..8) {
        let q = affine_ks::primes::next_prime(q_raw);
        let p = compute_params(q, s).unwrap();
        let r = check_inequalities(&p).unwrap();
        prop_assert_eq!(r.margins[0].margin, 0.0);
        let closed = std::f64::consts::LN_2 - 4.0 * (s * s) as f64 * p.ll;
        prop_assert!((p.ln_two_y_d_ab() - closed).abs() < 1e-12 * closed.abs().max(1.0));
        prop_assert!(p.x() > 0.0 && p.x() < 1.0);
        let b2 = 4.0 * p.ll - (6.0 * (s * (s - 1) / 2) as f64 * 6f64.powi(s as i32)).ln();
        prop_assert!((r.margins[4].margin - b2).abs() < 1e-8);
    }

    #[test]
    fn bertrand_window(n in 1u64..5_000_000) {
        let q = bertrand_prime(n);
        prop_assert!(is_prime(q));
        prop_assert!(q * q >= 4 * n && q * q <= 16 * n);
    }

    #[test]
    fn primality_agrees_with_trial_division(n in 0u64..2_000_000) {
        prop_assert_eq!(is_prime(n), common::trial_prime(n));
    }

    #[test]
    fn artifacts_round_trip(q in small_prime(), p in 0.0f64..1.0, s in 2usize..6, seed in any::<u64>()) {
        let h = Hypergraph::sample(&tp(q), p, seed).unwrap();
        prop_assert_eq!(&Hypergraph::from_json(&h.to_json()).unwrap(), &h);
        let g = PartiteLineGraph::build(&h, s, seed.rotate_left(7)).unwrap();
        prop_assert_eq!(&PartiteLineGraph::from_json(&g.to_json()).unwrap(), &g);
    }

    #[test]
    fn clique_search_is_sound(n in 1usize..16, dens in 0.0f64..1.0, k in 2usize..6, seed in any::<u64>()) {
        let g = sparsify(&Graph::complete(n), dens, seed).unwrap();
        let naive = common::naive_cliques(n, k, &|u, v| g.has_edge(u, v));
        match find_clique(&g, k) {
            Some(w) => {
                prop_assert!(g.is_clique(&w.vertices));
                prop_assert_eq!(w.len(), k);
            }
            None => prop_assert!(naive.is_empty()),
        }
        let greedy = greedy_s_independent(&g, k, 0..n);
        prop_assert!(greedy.len() <= exact_s_independence(&g, k).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn census_is_sound(q in prop::sample::select(vec![5u32, 7]), p in 0.2f64..0.7, seed in any::<u64>()) {
        let h = Hypergraph::sample(&tp(q), p, seed).unwrap();
        let census = enumerate_dangerous(&h);
        let mut keys: Vec<_> = census.iter().map(|d| d.key()).collect();
        keys.sort_unstable();
        keys.dedup();
        prop_assert_eq!(keys.len(), census.len());
        for d in &census {
            prop_assert!(d.is_valid_in(&h));
            prop_assert!(h.complete_set(&d.points()));
            prop_assert_eq!(d.witness_lines(&h).len(), d.kind.witness_line_count());
        }
    }
}
