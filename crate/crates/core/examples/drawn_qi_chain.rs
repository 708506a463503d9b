//! From a quasi-isometry onto a drawn 1-planar graph to a subgraph of a
//! power of a planar graph, stage by stage.

use coarsegraph::lcr::{drawn_qi_chain, planted_one_planar_qi};

fn main() -> coarsegraph::Result<()> {
    for seed in 0..3 {
        let p = planted_one_planar_qi(seed)?;
        let (report, real) = drawn_qi_chain(&p.map, p.a, &p.drawing)?;
        println!("{} (A={}):", p.kind, p.a);
        println!("  {} crossings removed, F2 planar: {}", report.crossings, report.planarization_planar);
        println!("  fibers of size {}, blow-up of the power {}", report.fiber, report.blowup_k);
        println!(
            "  planar host on {} vertices, power {}, host degree {}",
            real.host.n(),
            report.power,
            report.host_max_degree
        );
        println!("  crossing bound {} <= {}: {}", report.crossing_bound, report.crossing_formula, report.passed());
    }
    Ok(())
}
