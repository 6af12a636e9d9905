//! Seeded random graphs for the bench harness and tests.

use modcycle_core::{Graph, GraphKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Samples a graph in which every candidate edge appears independently
/// with probability `density`: ordered pairs for directed graphs (the
/// diagonal only with `self_loops`), unordered pairs otherwise
/// (`self_loops` is ignored there; undirected graphs cannot carry them).
/// The same arguments always produce the same graph.
///
/// # Panics
///
/// When `density` is not in `[0, 1]` or `n` exceeds the vertex cap.
pub fn random_graph(kind: GraphKind, n: usize, density: f64, seed: u64, self_loops: bool) -> Graph {
    assert!((0.0..=1.0).contains(&density), "density must lie in [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    match kind {
        GraphKind::Directed => {
            for u in 0..n {
                for v in 0..n {
                    if (u != v || self_loops) && rng.gen_bool(density) {
                        edges.push((u, v));
                    }
                }
            }
        }
        GraphKind::Undirected => {
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(density) {
                        edges.push((u, v));
                    }
                }
            }
        }
    }
    match kind {
        GraphKind::Directed => Graph::directed(n, edges),
        GraphKind::Undirected => Graph::undirected(n, edges),
    }
    .expect("generated endpoints lie in range")
}

/// Samples a digraph on two vertex halves (`0..⌈n/2⌉` and the rest) in
/// which every ordered pair crossing between the halves appears
/// independently with probability `density`. Every closed walk alternates
/// halves and so has even length; for odd target residues such instances
/// force both shortest-cycle engines to run to completion, which is what
/// makes them useful as worst-case bench fodder. The same arguments always
/// produce the same graph.
///
/// # Panics
///
/// When `density` is not in `[0, 1]` or `n` exceeds the vertex cap.
pub fn random_bipartite_digraph(n: usize, density: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&density), "density must lie in [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let split = n.div_ceil(2);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if (u < split) != (v < split) && rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::directed(n, edges).expect("generated endpoints lie in range")
}
