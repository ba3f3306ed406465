//! Betti diagram of the Rees algebra of two disjoint triangles.
//!
//! `cargo run --release -p edgerees --example two_triangles -- [j_max]`

use std::time::Instant;

use edgerees::regularity::{betti_table, regularity_from_table, BettiOptions};
use edgerees::{Graph, ToricPresentation};

fn main() -> edgerees::Result<()> {
    let j_max: usize = std::env::args().nth(1).map_or(10, |s| s.parse().expect("j_max must be a number"));
    let triangle = Graph::cycle(3)?;
    let g = triangle.disjoint_union(&triangle)?;
    let p = ToricPresentation::rees_algebra(&g)?;
    let start = Instant::now();
    let table = betti_table(&p, j_max, BettiOptions::default())?;
    let reg = regularity_from_table(&table)?;
    print!("{}", table.render());
    println!(
        "reg = {} ({:?}) after {} multidegrees in {:.1} s",
        reg.value,
        reg.status,
        table.multidegrees_examined,
        start.elapsed().as_secs_f64()
    );
    Ok(())
}
