//! Quantified checks for the closed-walk machinery: the SCC-period fast
//! path against product-graph reachability, both against a length-indexed
//! DP, and the walk-based decider against exhaustive enumeration in the
//! regime where walks and cycles coincide.

mod common;

use common::{digraph_from_mask, qualifying_sets, random_digraph, random_tournament};
use modcycle_core::classify::ResidueSet;
use modcycle_core::matrix::BoolMatrix;
use modcycle_core::oracle::{oracle_decide, OracleLimits};
use modcycle_core::walks::{
    closed_walk_residues, closed_walk_residues_reference, decide_dc, shortest_closed_walk,
};
use modcycle_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Residues of closed walks with length in `1..=n·m`, by stepping the
/// adjacency matrix one multiplication at a time. The window suffices: a
/// minimal witness for any realized residue repeats no vertex more than
/// `m` times, else a zero-residue segment could be excised.
fn dp_residues(g: &Graph, m: u32) -> ResidueSet {
    let a = BoolMatrix::adjacency(g);
    let mut cur = BoolMatrix::identity(g.n());
    let mut mask = 0u64;
    for len in 1..=g.n() * m as usize {
        cur = cur.bool_mul(&a);
        if (0..g.n()).any(|i| cur.get(i, i)) {
            mask |= 1 << (len % m as usize);
        }
    }
    ResidueSet::from_mask(m, mask).unwrap()
}

/// Least length in `1..=n·m` of a closed walk with residue in `rs`.
fn dp_shortest(g: &Graph, rs: &ResidueSet) -> Option<usize> {
    let a = BoolMatrix::adjacency(g);
    let mut cur = BoolMatrix::identity(g.n());
    for len in 1..=g.n() * rs.m() as usize {
        cur = cur.bool_mul(&a);
        if rs.contains_length(len) && (0..g.n()).any(|i| cur.get(i, i)) {
            return Some(len);
        }
    }
    None
}

#[test]
fn fast_path_matches_reference_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5cc);
    for trial in 0..300 {
        let n = 1 + trial % 20;
        let p = [0.05, 0.15, 0.4][trial % 3];
        let g = random_digraph(&mut rng, n, p);
        for m in 1..=8 {
            assert_eq!(
                closed_walk_residues(&g, m).unwrap(),
                closed_walk_residues_reference(&g, m).unwrap(),
                "trial={trial} m={m}"
            );
        }
    }
}

#[test]
fn residues_match_length_indexed_dp() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd9);
    for trial in 0..30 {
        let n = 2 + trial % 9;
        let g = random_digraph(&mut rng, n, 0.35);
        for m in 1..=6 {
            assert_eq!(closed_walk_residues(&g, m).unwrap(), dp_residues(&g, m), "m={m}");
        }
    }
}

#[test]
fn walk_decider_agrees_with_enumeration_in_regime() {
    // Exhaustive over 4-vertex digraphs: closed-walk existence must equal
    // simple-cycle existence whenever 0 ∉ S and the complement is closed.
    let sets = qualifying_sets(6);
    for mask in 0u64..1 << 12 {
        let g = digraph_from_mask(4, mask);
        for rs in &sets {
            assert_eq!(
                decide_dc(&g, rs).unwrap(),
                oracle_decide(&g, rs, &OracleLimits::default()).unwrap(),
                "mask={mask} rs={rs}"
            );
        }
    }
}

#[test]
fn walk_decider_agrees_on_random_and_tournament_graphs() {
    let sets = qualifying_sets(8);
    let mut rng = ChaCha8Rng::seed_from_u64(0xc1a1);
    let limits = OracleLimits::for_vertices(8);
    for trial in 0..150 {
        let n = 5 + trial % 4;
        let g = random_digraph(&mut rng, n, [0.15, 0.3, 0.5][trial % 3]);
        for rs in &sets {
            assert_eq!(
                decide_dc(&g, rs).unwrap(),
                oracle_decide(&g, rs, &limits).unwrap(),
                "trial={trial} rs={rs}"
            );
        }
    }
    for trial in 0..60 {
        let g = random_tournament(&mut rng, 5 + trial % 3);
        for rs in &sets {
            assert_eq!(
                decide_dc(&g, rs).unwrap(),
                oracle_decide(&g, rs, &limits).unwrap(),
                "tournament trial={trial} rs={rs}"
            );
        }
    }
}

#[test]
fn residues_grow_monotonically_with_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x90);
    for _ in 0..60 {
        let n = 3 + rng.gen_range(0..10);
        let g = random_digraph(&mut rng, n, 0.3);
        if g.edge_count() == 0 {
            continue;
        }
        let drop = rng.gen_range(0..g.edge_count());
        let sub = Graph::directed(
            n,
            g.edges().iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &e)| e),
        )
        .unwrap();
        for m in 1..=8 {
            let full = closed_walk_residues(&g, m).unwrap();
            let part = closed_walk_residues(&sub, m).unwrap();
            assert_eq!(part.mask() & full.mask(), part.mask(), "m={m}");
        }
    }
}

#[test]
fn shortest_walk_matches_dp_and_walks_exist() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51057);
    for trial in 0..120 {
        let n = 1 + trial % 10;
        let g = random_digraph(&mut rng, n, 0.3);
        for m in 1..=6u32 {
            let members: Vec<u32> = (0..m).filter(|_| rng.gen_bool(0.4)).collect();
            let rs = ResidueSet::new(m, members).unwrap();
            let found = shortest_closed_walk(&g, &rs).unwrap();
            assert_eq!(
                found.as_ref().map(|w| w.len()),
                dp_shortest(&g, &rs),
                "trial={trial} rs={rs}"
            );
            if let Some(w) = found {
                assert!(rs.contains_length(w.len()));
                assert_eq!(w.vertices.first(), w.vertices.last());
                for pair in w.vertices.windows(2) {
                    assert!(g.has_edge(pair[0], pair[1]), "missing edge {pair:?}");
                }
            }
        }
    }
}
