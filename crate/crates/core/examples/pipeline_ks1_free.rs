//! The K_(s+1)-free construction: build the partite graph, keep each edge
//! with probability 1/(ln q)^8, take the first n vertices.
//!
//! cargo run --release --example pipeline_ks1_free -- [n] [s] [seed]

use affine_ks::pipeline::{execute, ConstructionConfig, Mode};

fn main() -> affine_ks::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u64 = args.next().map_or(100, |a| a.parse().expect("n"));
    let s: usize = args.next().map_or(3, |a| a.parse().expect("s"));
    let seed: u64 = args.next().map_or(1, |a| a.parse().expect("seed"));

    let config = ConstructionConfig::new(n, s, Mode::Ks1Free, seed);
    let run = execute(&config)?;
    let r = &run.report;
    println!("n = {n}, q = {}, edge keep = {:.2e}", r.params.q, r.params.edge_keep_prob);
    println!("G: {} edges; after sparsifying: {:?}; final: {} edges", r.graph.edges, r.sparsified_edges, r.final_edges);
    if let (Some(w), Some((a, b))) = (r.greedy_witness, r.witness_ratios) {
        println!("greedy K_{s}-free set: {w} vertices, {a:.3} sqrt(n), {b:.3e} polylog sqrt(n)");
    }
    for c in &r.checks {
        println!("{:<40} {:>12} {:>24}  {}", c.name, c.value, c.threshold, c.verdict);
    }
    Ok(())
}
