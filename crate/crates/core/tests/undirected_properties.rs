//! Parity detectors against exhaustive enumeration. The even-cycle block
//! predicate is the one piece of this crate adopted without a proof in
//! hand, so it is gated exhaustively: over every undirected graph on six
//! vertices, "some block is neither a single edge nor an odd cycle" must
//! coincide with "some simple cycle has even length".

mod common;

use common::{random_undirected, undirected_from_mask};
use modcycle_core::classify::ResidueSet;
use modcycle_core::graph::walk_is_cycle;
use modcycle_core::oracle::{inventory, oracle_decide, OracleLimits};
use modcycle_core::undirected::{
    block_decomposition, decide_uc_condition_case, even_cycle, odd_cycle,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rs(m: u32, members: &[u32]) -> ResidueSet {
    ResidueSet::new(m, members.iter().copied()).unwrap()
}

#[test]
fn parity_detectors_match_enumeration_exhaustively() {
    let limits = OracleLimits::default();
    for mask in 0u64..1 << 15 {
        let g = undirected_from_mask(6, mask);
        let lengths = inventory(&g, &limits).unwrap().lengths;
        let odd = odd_cycle(&g).unwrap();
        assert_eq!(
            odd.is_some(),
            lengths.iter().any(|l| l % 2 == 1),
            "odd detector disagrees on mask {mask}"
        );
        if let Some(w) = odd {
            assert_eq!(w.len() % 2, 1);
            assert_eq!(walk_is_cycle(&g, &w.vertices), Ok(true));
        }
        let even = even_cycle(&g).unwrap();
        assert_eq!(
            even.is_some(),
            lengths.iter().any(|l| l % 2 == 0),
            "even detector disagrees on mask {mask}"
        );
        if let Some(w) = even {
            assert_eq!(w.len() % 2, 0);
            assert_eq!(walk_is_cycle(&g, &w.vertices), Ok(true));
        }
    }
}

#[test]
fn parity_detectors_match_enumeration_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xb1b);
    for trial in 0..300 {
        let n = 7 + trial % 6;
        let p = [0.1, 0.2, 0.35][trial % 3];
        let g = random_undirected(&mut rng, n, p);
        let lengths = inventory(&g, &OracleLimits::for_vertices(n)).unwrap().lengths;
        assert_eq!(
            odd_cycle(&g).unwrap().is_some(),
            lengths.iter().any(|l| l % 2 == 1),
            "trial={trial}"
        );
        assert_eq!(
            even_cycle(&g).unwrap().is_some(),
            lengths.iter().any(|l| l % 2 == 0),
            "trial={trial}"
        );
    }
}

#[test]
fn condition_case_decider_matches_enumeration() {
    let sets = [rs(6, &[1, 2, 4, 5]), rs(4, &[1, 3])];
    let limits = OracleLimits::for_vertices(8);
    // Exhaustive at five vertices.
    for mask in 0u64..1 << 10 {
        let g = undirected_from_mask(5, mask);
        for set in &sets {
            assert_eq!(
                decide_uc_condition_case(&g, set, &limits).unwrap(),
                oracle_decide(&g, set, &limits).unwrap(),
                "mask={mask} set={set}"
            );
        }
    }
    // Sampled up to eight.
    let mut rng = ChaCha8Rng::seed_from_u64(0x7c);
    for trial in 0..300 {
        let n = 6 + trial % 3;
        let g = random_undirected(&mut rng, n, [0.15, 0.3, 0.5][trial % 3]);
        for set in &sets {
            assert_eq!(
                decide_uc_condition_case(&g, set, &limits).unwrap(),
                oracle_decide(&g, set, &limits).unwrap(),
                "trial={trial} set={set}"
            );
        }
    }
}

#[test]
fn detectors_are_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..50 {
        let g = random_undirected(&mut rng, 9, 0.3);
        assert_eq!(odd_cycle(&g).unwrap(), odd_cycle(&g).unwrap());
        assert_eq!(even_cycle(&g).unwrap(), even_cycle(&g).unwrap());
        assert_eq!(block_decomposition(&g).unwrap(), block_decomposition(&g).unwrap());
    }
}

/// Number of connected components, for the cut-vertex soundness check.
fn component_count(n: usize, edges: &[(usize, usize)], skip: Option<usize>) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, v: usize) -> usize {
        if parent[v] != v {
            let r = find(parent, parent[v]);
            parent[v] = r;
        }
        parent[v]
    }
    for &(u, v) in edges {
        if Some(u) == skip || Some(v) == skip {
            continue;
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        parent[ru] = rv;
    }
    (0..n).filter(|&v| Some(v) != skip && find(&mut parent, v) == v).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn blocks_partition_the_edges(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=12);
        let g = random_undirected(&mut rng, n, 0.3);
        let d = block_decomposition(&g).unwrap();
        let mut all: Vec<(usize, usize)> = d.blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        prop_assert_eq!(all.len(), d.blocks.iter().map(Vec::len).sum::<usize>());
        prop_assert_eq!(all, g.edges().to_vec());
    }

    #[test]
    fn cut_vertices_disconnect_and_others_do_not(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=10);
        let g = random_undirected(&mut rng, n, 0.35);
        let d = block_decomposition(&g).unwrap();
        let base = component_count(g.n(), g.edges(), None);
        for v in 0..g.n() {
            let without = component_count(g.n(), g.edges(), Some(v));
            let grew = without > base;
            prop_assert_eq!(
                d.cut_vertices.contains(&v),
                grew,
                "vertex {} in {:?}", v, g.edges()
            );
        }
    }
}
