//! Save a hypergraph and a partite graph as JSON and load them back.
//!
//! cargo run --example artifacts -- [dir]

use affine_ks::artifact::Artifact;
use affine_ks::hypergraph::Hypergraph;
use affine_ks::plane::{ClassId, TruncatedPlane};
use affine_ks::spartite::PartiteLineGraph;

fn main() -> affine_ks::Result<()> {
    let dir = std::env::args().nth(1).map_or_else(std::env::temp_dir, Into::into);
    let h = Hypergraph::sample(&TruncatedPlane::new(11, ClassId::Slope(0))?, 0.4, 21)?;
    let g = PartiteLineGraph::build(&h, 4, 22)?;

    let hp = dir.join("affine_ks_hypergraph.json");
    let gp = dir.join("affine_ks_graph.json");
    h.save(&hp)?;
    g.save(&gp)?;
    println!("wrote {} and {}", hp.display(), gp.display());

    let g2 = PartiteLineGraph::load(&gp)?;
    println!("graph reloads equal: {}, {} edges", g2 == g, g2.graph().edge_count());
    println!("hypergraph reloads equal: {}", Hypergraph::load(&hp)? == h);
    Ok(())
}
