//! A K_6-free graph on 25 vertices with s = 4: sample the kept lines of
//! AG(2,11), replace each with a random complete 4-partite graph, delete
//! every dangerous set and keep the 25 smallest surviving vertices.
//!
//! cargo run --release --example pipeline_ks2_free -- [seed] [keep_prob]

use affine_ks::pipeline::{execute, ConstructionConfig, Mode};

fn main() -> affine_ks::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().map_or(1, |a| a.parse().expect("seed"));
    let keep: f64 = args.next().map_or(0.3, |a| a.parse().expect("keep_prob"));

    let mut config = ConstructionConfig::new(25, 4, Mode::Ks2Free, seed);
    // alpha/q keeps so many lines at q = 11 that the dangerous sets cover
    // nearly every vertex
    config.overrides.keep_prob = Some(keep);
    let run = execute(&config)?;
    let r = &run.report;
    println!("q = {}, kept lines = {}, edges = {}", r.params.q, r.hypergraph.kept_lines, r.graph.edges);
    println!("dangerous sets = {:?}, removed = {:?} (budget {})", r.dangerous_count, r.removed, r.removal_budget);
    if let Some(f) = &r.failure {
        println!("stopped: {f}");
    }
    for c in &r.checks {
        println!("{:<40} {:>12} {:>14}  {}", c.name, c.value, c.threshold, c.verdict);
    }
    for (stage, secs) in &run.timings.stages {
        println!("  {stage:<10} {secs:.3}s");
    }
    Ok(())
}
