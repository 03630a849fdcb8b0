//! Replace every kept line by a random complete s-partite graph, then look
//! for K_s inside random vertex sets and count K_(s+1) through each edge.
//!
//! cargo run --release --example partite_graph -- [q] [s] [seed]

use affine_ks::clique::sample_subset;
use affine_ks::hypergraph::Hypergraph;
use affine_ks::plane::{ClassId, TruncatedPlane};
use affine_ks::spartite::PartiteLineGraph;

fn main() -> affine_ks::Result<()> {
    let mut args = std::env::args().skip(1);
    let q: u32 = args.next().map_or(11, |a| a.parse().expect("q"));
    let s: usize = args.next().map_or(3, |a| a.parse().expect("s"));
    let seed: u64 = args.next().map_or(1, |a| a.parse().expect("seed"));

    let keep = ((q as f64).ln().powi(2) / q as f64).min(1.0);
    let h = Hypergraph::sample(&TruncatedPlane::new(q, ClassId::Vertical)?, keep, seed)?;
    let g = PartiteLineGraph::build(&h, s, seed + 1)?;
    println!("{} vertices, {} edges from {} lines", g.n(), g.graph().edge_count(), h.kept().len());
    println!("line-local structure holds: {}", g.line_structure_holds());

    for w in [s + 1, 2 * q as usize, 4 * q as usize] {
        let c = sample_subset(g.n(), w, seed, w as u64);
        match g.ks_witness(&c) {
            Some(k) => println!("random {w}-set: K_{s} at {k:?}"),
            None => println!("random {w}-set: no K_{s}"),
        }
    }
    println!("max K_{} per edge = {}, degree bound {:.3e}", s + 1, g.max_ks1_per_edge(), g.ks1_edge_bound());
    Ok(())
}
