//! Balls around the centre of each built-in source, with their sizes and planarity.

use coarsegraph::graph::is_planar;
use coarsegraph::sources::{named_window, DEFAULT_CAP, SOURCE_NAMES};

fn main() -> coarsegraph::Result<()> {
    println!("{:<16} {:>6} {:>8} {:>8} {:>7}", "source", "radius", "vertices", "boundary", "planar");
    for name in SOURCE_NAMES {
        for radius in [2, 4] {
            let w = named_window(name, None, radius, DEFAULT_CAP)?;
            println!(
                "{:<16} {:>6} {:>8} {:>8} {:>7}",
                name,
                radius,
                w.graph.n(),
                w.boundary.len(),
                is_planar(&w.graph)
            );
        }
    }
    Ok(())
}
