//! Edge-disjoint K_s copies: the p^2 transversals of K_(p,...,p), and their
//! placement on kept lines of a random partite graph.
//!
//! cargo run --release --example ks_decomposition -- [s] [p]

use affine_ks::clique::sample_subset;
use affine_ks::decomposition::{edge_disjoint_ks, packing_prime, spartite_decomposition};
use affine_ks::hypergraph::Hypergraph;
use affine_ks::plane::{ClassId, TruncatedPlane};
use affine_ks::spartite::PartiteLineGraph;

fn main() -> affine_ks::Result<()> {
    let mut args = std::env::args().skip(1);
    let s: usize = args.next().map_or(3, |a| a.parse().expect("s"));
    let p: usize = args.next().map_or(5, |a| a.parse().expect("p"));

    let d = spartite_decomposition(s, p)?;
    println!("K_({p} x {s}) splits into {} copies of K_{s}; perfect: {}", d.copies.len(), d.is_perfect());
    for c in d.copies.iter().take(4) {
        println!("  {c:?}");
    }

    let q = 17;
    let h = Hypergraph::sample(&TruncatedPlane::new(q, ClassId::Vertical)?, 0.5, 4)?;
    let g = PartiteLineGraph::build(&h, s, 4)?;
    let u = sample_subset(g.n(), 200, 4, 0);
    for beta in [1, 2] {
        let copies = edge_disjoint_ks(&g, &u, beta, None)?;
        println!("beta = {beta} (p = {}): {} edge-disjoint K_{s} inside a 200-set", packing_prime(s, beta), copies.len());
    }
    Ok(())
}
