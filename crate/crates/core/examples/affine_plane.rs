//! The affine plane AG(2,q), one parallel class removed, and the two line
//! counts that the construction relies on.
//!
//! cargo run --example affine_plane -- [q]

use affine_ks::plane::{AffinePlane, ClassId, LineSystem, Point};

fn main() -> affine_ks::Result<()> {
    let q: u32 = std::env::args().nth(1).map_or(7, |a| a.parse().expect("q"));
    let plane = AffinePlane::new(q)?;
    println!("AG(2,{q}): {} points, {} lines, {} parallel classes", plane.points().len(), plane.lines().len(), plane.classes().len());

    let t = plane.truncate(ClassId::Vertical)?;
    for c in t.structure_checks() {
        println!("  {:<28} {:>8}  {}", c.name, c.value, c.verdict);
    }

    let a = Point::new(q, 1, 2);
    let b = Point::new(q, 3 % q, 5 % q);
    let line = t.line_through(a, b)?.expect("non-vertical pair");
    println!("line through ({}, {}) and ({}, {}): id {} in class {}", a.x, a.y, b.x, b.y, line.id, line.class_id);
    let col: Vec<Point> = (0..q).map(|y| Point::new(q, 0, y)).collect();
    println!("a removed line meets {} kept lines (q^2 = {})", t.lines_meeting(&col), q * q);
    println!("a kept line meets {} kept lines", t.lines_meeting(&line.points.iter().map(|&p| Point::from_index(q, p)).collect::<Vec<_>>()));
    Ok(())
}
