//! Fat K_{3,3} in the binary tree times the path, checked clause by clause.

use coarsegraph::fatminor::{claw_construction, verify_certificate};

fn main() -> coarsegraph::Result<()> {
    for k in [1, 2, 4, 8] {
        let c = claw_construction(3, k)?;
        let report = verify_certificate(&c.window.graph, &c.certificate);
        println!(
            "k={k}: window {} vertices (radius {}), branch sets {:?} apart, paths {:?}, path to branch set {:?}, valid={}",
            c.window.graph.n(),
            c.window.radius,
            report.min_branch_distance,
            report.min_path_distance,
            report.min_path_branch_distance,
            report.is_valid()
        );
    }
    Ok(())
}
