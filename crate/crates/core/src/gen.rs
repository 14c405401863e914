//! Seeded random graphs and quartet instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::Graph;
use crate::uqc::{Quartet, UqcInstance};

/// `G(n, p)` on vertices `v0..v{n-1}`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut g = Graph::with_vertices(names)?;
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                g.add_edge_idx(u, v).expect("fresh pair");
            }
        }
    }
    Ok(g)
}

fn point_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("x{i}")
    }
}

/// Up to `quartets` distinct random quartets over `points` points named
/// `a`, `b`, ... Fewer are returned when the point set runs out of distinct
/// quartets.
pub fn random_uqc(points: usize, quartets: usize, seed: u64) -> Result<UqcInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..points).map(point_name).collect();
    let mut qs: Vec<Quartet> = Vec::new();
    if points >= 4 {
        let mut attempts = 0;
        while qs.len() < quartets && attempts < quartets * 50 {
            attempts += 1;
            let pick: Vec<&String> = names.choose_multiple(&mut rng, 4).collect();
            let q = Quartet::new(pick[0], pick[1], pick[2], pick[3])?;
            if !qs.contains(&q) {
                qs.push(q);
            }
        }
    }
    UqcInstance::new(names, qs)
}
