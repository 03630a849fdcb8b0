//! Scans primes for the first q at which all six sufficient Local Lemma
//! inequalities hold, then prints the margin table there.
//!
//! cargo run --release --example lll_threshold -- [s] [q_max]

use affine_ks::lll::{check_direct, compute_params, scan_threshold};

fn main() -> affine_ks::Result<()> {
    let mut args = std::env::args().skip(1);
    let s: usize = args.next().map_or(3, |a| a.parse().expect("s"));
    let q_max: u64 = args.next().map_or(100_000, |a| a.parse().expect("q_max"));

    let scan = scan_threshold(s, 3, q_max)?;
    println!("s = {s}, {} primes in [3, {q_max}]", scan.primes_scanned);
    match scan.threshold {
        Some(q) => println!("all inequalities hold from q = {q}"),
        None => println!("no threshold below {q_max}; blocked by {}", scan.blocking.join(", ")),
    }
    for f in &scan.per_inequality {
        let at = f.q.map_or("-".to_string(), |q| q.to_string());
        println!("  {:<3} first holds at {at}", f.name);
    }
    println!("margins at q = {}:", scan.table.q);
    for m in &scan.table.margins {
        println!("  {:<3} ln lhs {:>14.6}  ln rhs {:>14.6}  margin {:>12.6}", m.name, m.ln_lhs, m.ln_rhs, m.margin);
    }
    let direct = check_direct(&compute_params(scan.table.q, s)?);
    println!("direct conditions: {direct:?}");
    Ok(())
}
