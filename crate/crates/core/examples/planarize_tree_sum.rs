//! Builds the planar graph G' for a random tree-sum of planar and small
//! pieces and prints its constants next to the measured distortion.

use coarsegraph::planarize::{build_gprime, verify_claims};
use coarsegraph::sources::{tree_sum_planar, TreeSumParams};

fn main() -> coarsegraph::Result<()> {
    for seed in 0..5 {
        let (g, td) = tree_sum_planar(TreeSumParams {
            seed,
            pieces: 10,
            piece_size: 15,
            small_fraction: 0.4,
            max_adhesion: 3,
        })?;
        let res = build_gprime(&g, &td)?;
        let report = verify_claims(&g, &td, &res)?;
        let k = res.constants;
        println!(
            "seed {seed}: |G|={} bags={} |G'|={}  alpha={} beta={} measured {:.2}/{:.2}  surjectivity {} <= {}  ok={}",
            g.n(),
            td.len(),
            res.gprime.n(),
            k.alpha,
            k.beta,
            report.measured_contraction,
            report.measured_expansion,
            report.measured_surj_radius,
            k.surj_radius,
            report.passed() && report.gprime_planar,
        );
    }
    Ok(())
}
