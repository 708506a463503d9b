//! Exact distortion of planted quasi-isometries, then pruning and the
//! blown-up power embedding.

use coarsegraph::qi::{embed_power_blowup, measure_distortion, planted_qi, prune_to_bounded_degree};

fn main() -> coarsegraph::Result<()> {
    for seed in 0..8 {
        let p = planted_qi(seed);
        let r = measure_distortion(&p.map)?;
        let pruned = prune_to_bounded_degree(&p.map, p.a)?;
        let emb = embed_power_blowup(&p.map, p.a)?;
        println!(
            "{:<24} |G|={:<4} |H|={:<4} c1={} c2={} surj={}  H' degree {} (bound {})  fiber {} into power {}",
            p.kind,
            p.map.domain.n(),
            p.map.codomain.n(),
            r.c1,
            r.c2,
            r.surjectivity_radius,
            pruned.max_degree,
            pruned.degree_bound,
            emb.b,
            2 * emb.a,
        );
    }
    Ok(())
}
