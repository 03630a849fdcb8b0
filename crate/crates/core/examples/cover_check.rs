//! Sampled cover check: every sampled w-subset of the partite graph should
//! contain a K_s. Reports hits and the first few misses.
//!
//! cargo run --release --example cover_check -- [q] [s] [w] [trials]

use affine_ks::clique::sampled_cover_check;
use affine_ks::hypergraph::Hypergraph;
use affine_ks::plane::{ClassId, TruncatedPlane};
use affine_ks::spartite::PartiteLineGraph;

fn main() -> affine_ks::Result<()> {
    let mut args = std::env::args().skip(1);
    let q: u32 = args.next().map_or(29, |a| a.parse().expect("q"));
    let s: usize = args.next().map_or(3, |a| a.parse().expect("s"));
    let w: usize = args.next().map_or(3 * q as usize, |a| a.parse().expect("w"));
    let trials: usize = args.next().map_or(200, |a| a.parse().expect("trials"));

    let keep = (q as f64).ln().powi(2) / q as f64;
    let h = Hypergraph::sample(&TruncatedPlane::new(q, ClassId::Vertical)?, keep.min(1.0), 1)?;
    let g = PartiteLineGraph::build(&h, s, 2)?;
    let est = sampled_cover_check(g.graph(), s, w, trials, 3)?;
    println!("{} of {} random {w}-subsets contain a K_{s}", est.hits, est.trials);
    for m in est.miss_examples.iter().take(3) {
        println!("  miss: {m:?}");
    }
    Ok(())
}
