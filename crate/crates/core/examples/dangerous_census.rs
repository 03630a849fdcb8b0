//! Sample kept lines and list the dangerous 5- and 6-point sets by type.
//!
//! cargo run --release --example dangerous_census -- [q] [keep_prob] [seed]

use affine_ks::dangerous::{enumerate_dangerous, DangerousKind};
use affine_ks::hypergraph::Hypergraph;
use affine_ks::plane::{ClassId, TruncatedPlane};

fn main() -> affine_ks::Result<()> {
    let mut args = std::env::args().skip(1);
    let q: u32 = args.next().map_or(7, |a| a.parse().expect("q"));
    let default_keep = ((q as f64).ln().powi(2) / q as f64).min(1.0);
    let keep: f64 = args.next().map_or(default_keep, |a| a.parse().expect("keep_prob"));
    let seed: u64 = args.next().map_or(1, |a| a.parse().expect("seed"));

    let h = Hypergraph::sample(&TruncatedPlane::new(q, ClassId::Vertical)?, keep, seed)?;
    let census = enumerate_dangerous(&h);
    println!("q = {q}, keep = {keep:.3}, {} of {} lines kept", h.kept().len(), q * q);
    for kind in [DangerousKind::Type1, DangerousKind::Type2, DangerousKind::Type3] {
        let of_kind: Vec<_> = census.iter().filter(|d| d.kind == kind).collect();
        print!("{kind:?}: {}", of_kind.len());
        if let Some(d) = of_kind.first() {
            print!("  e.g. core {:?} extras {:?}, {} witness lines", d.core, d.extras(), d.witness_lines(&h).len());
        }
        println!();
    }
    let r = h.verify_properties(keep * q as f64, 100, seed);
    for c in r.checks() {
        println!("  {:<34} {:>10} {:>14}  {}", c.name, c.value, c.threshold, c.verdict);
    }
    Ok(())
}
