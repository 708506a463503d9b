//! Routes a random subgraph of the square of a grid along grid paths and
//! compares the tube crossing count with its closed form.

use coarsegraph::graph::families::grid2;
use coarsegraph::graph::power;
use coarsegraph::lcr::{crossing_upper_bound, realize_in_power};
use coarsegraph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> coarsegraph::Result<()> {
    let host = grid2(10);
    for k in [1, 2, 3] {
        let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
        let pk = power(&host, k)?;
        let guest = Graph::from_edges(host.n(), pk.edges().filter(|_| rng.gen_bool(0.5)))?;
        let id: Vec<usize> = (0..host.n()).collect();
        let real = realize_in_power(&host, &guest, k, &id)?;
        let b = crossing_upper_bound(&real);
        println!("k={k}: {} edges, worst edge {:?} with {} <= {}", guest.m(), b.max_edge, b.max, b.formula);
    }
    Ok(())
}
