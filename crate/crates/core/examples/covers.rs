//! Certified covers of trees and grids at several scales, as CSV.

use coarsegraph::dimension::{control_sample, grid_shift_cover, tree_band_cover};
use coarsegraph::graph::families::grid2;
use coarsegraph::sources::{named_window, DEFAULT_CAP};

fn main() -> coarsegraph::Result<()> {
    let scales = [1, 2, 4, 8];
    let tree = named_window("binary_tree", None, 12, DEFAULT_CAP)?;
    let sample = control_sample(&tree.graph, "binary_tree", &scales, |r| tree_band_cover(&tree.graph, tree.center, r))?;
    print!("{}", sample.to_csv());
    let grid = grid2(64);
    let sample = control_sample(&grid, "grid2", &scales, |r| grid_shift_cover(64, r))?;
    print!("{}", sample.to_csv());
    Ok(())
}
