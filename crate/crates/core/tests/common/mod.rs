//! Shared helpers for the integration tests: an independent brute-force
//! cycle enumerator (plain backtracking, no blocking machinery) and small
//! graph generators. The enumerator exists to validate the main oracle, so
//! it deliberately shares no code with it.

#![allow(dead_code)]

use modcycle_core::classify::{closure_counterexample, ResidueSet};
use modcycle_core::{Graph, GraphKind};
use rand::Rng;

/// All simple directed cycles in canonical form (rotated to start at the
/// minimum vertex), found by backtracking over vertices above the start.
pub fn brute_directed_cycles(g: &Graph) -> Vec<Vec<usize>> {
    assert_eq!(g.kind(), GraphKind::Directed);
    let adj = g.adjacency();
    let mut out = Vec::new();
    let mut used = vec![false; g.n()];
    let mut path = Vec::new();
    for s in 0..g.n() {
        path.push(s);
        used[s] = true;
        extend_directed(s, &adj, &mut used, &mut path, &mut out);
        path.pop();
        used[s] = false;
    }
    out.sort();
    out
}

fn extend_directed(
    s: usize,
    adj: &[Vec<usize>],
    used: &mut [bool],
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let v = *path.last().unwrap();
    for &w in &adj[v] {
        if w == s {
            out.push(path.clone());
        } else if w > s && !used[w] {
            used[w] = true;
            path.push(w);
            extend_directed(s, adj, used, path, out);
            path.pop();
            used[w] = false;
        }
    }
}

/// All simple undirected cycles in canonical form: length at least 3,
/// rotated to start at the minimum vertex, traversed in the direction that
/// makes the second vertex smaller than the last.
pub fn brute_undirected_cycles(g: &Graph) -> Vec<Vec<usize>> {
    assert_eq!(g.kind(), GraphKind::Undirected);
    let adj = g.adjacency();
    let mut out = Vec::new();
    let mut used = vec![false; g.n()];
    let mut path = Vec::new();
    for s in 0..g.n() {
        path.push(s);
        used[s] = true;
        extend_undirected(s, &adj, &mut used, &mut path, &mut out);
        path.pop();
        used[s] = false;
    }
    out.sort();
    out
}

fn extend_undirected(
    s: usize,
    adj: &[Vec<usize>],
    used: &mut [bool],
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let v = *path.last().unwrap();
    for &w in &adj[v] {
        if w == s {
            if path.len() >= 3 && path[1] < *path.last().unwrap() {
                out.push(path.clone());
            }
        } else if w > s && !used[w] {
            used[w] = true;
            path.push(w);
            extend_undirected(s, adj, used, path, out);
            path.pop();
            used[w] = false;
        }
    }
}

/// Ordered vertex pairs (u, v) with u ≠ v, the bit layout for
/// [`digraph_from_mask`].
pub fn directed_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect()
}

/// Unordered vertex pairs u < v, the bit layout for
/// [`undirected_from_mask`].
pub fn undirected_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Digraph whose edge set is selected by `mask` over [`directed_pairs`].
pub fn digraph_from_mask(n: usize, mask: u64) -> Graph {
    let pairs = directed_pairs(n);
    assert!(pairs.len() <= 64);
    let edges = pairs.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
    Graph::directed(n, edges).unwrap()
}

/// Undirected graph whose edge set is selected by `mask` over
/// [`undirected_pairs`].
pub fn undirected_from_mask(n: usize, mask: u64) -> Graph {
    let pairs = undirected_pairs(n);
    assert!(pairs.len() <= 64);
    let edges = pairs.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
    Graph::undirected(n, edges).unwrap()
}

/// Random digraph with independent edge probability `p` (no self-loops).
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges = directed_pairs_iter(n).filter(|_| rng.gen_bool(p)).collect::<Vec<_>>();
    Graph::directed(n, edges).unwrap()
}

/// Random undirected graph with independent edge probability `p`.
pub fn random_undirected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges = undirected_pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect::<Vec<_>>();
    Graph::undirected(n, edges).unwrap()
}

fn directed_pairs_iter(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
}

/// Random tournament: every unordered pair gets exactly one direction.
pub fn random_tournament<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let edges = undirected_pairs(n)
        .into_iter()
        .map(|(u, v)| if rng.gen_bool(0.5) { (u, v) } else { (v, u) })
        .collect::<Vec<_>>();
    Graph::directed(n, edges).unwrap()
}

/// Every `(S, m)` with `m ≤ max_m`, `0 ∉ S`, and the complement of `S`
/// closed under addition mod `m` — the regime of the walk-based deciders.
pub fn qualifying_sets(max_m: u32) -> Vec<ResidueSet> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for mask in 0u64..1 << m {
            let Ok(rs) = ResidueSet::from_mask(m, mask) else { continue };
            if rs.contains(0) || closure_counterexample(&rs).is_some() {
                continue;
            }
            out.push(rs);
        }
    }
    out
}
