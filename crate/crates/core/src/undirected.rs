//! Undirected cycle-parity analysis.
//!
//! Odd cycles are a bipartiteness question. Even cycles reduce to block
//! structure: an undirected graph has no even simple cycle exactly when
//! every biconnected component is a single edge or an odd simple cycle.
//! That predicate is not proved here; the test suite gates it against
//! exhaustive oracle enumeration instead. Witnesses come out of BFS or DFS
//! tree paths, so they are deterministic for a fixed adjacency order.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::classify::{thm7_reduce, ConditionUnsupported, ResidueSet};
use crate::graph::{CycleWitness, Graph, GraphKind, KindMismatch};
use crate::oracle::{period, OracleError, OracleLimits};

/// Failure modes of [`decide_uc_condition_case`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UndirectedError {
    /// These procedures are undirected-only.
    WrongKind(KindMismatch),
    /// `(S, m)` violates the decider's precondition.
    Unsupported(ConditionUnsupported),
    /// The divisor-3-or-more route needs exhaustive enumeration and the
    /// graph exceeds the supplied oracle limits.
    OracleLimit(OracleError),
}

impl fmt::Display for UndirectedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UndirectedError::WrongKind(e) => e.fmt(f),
            UndirectedError::Unsupported(e) => e.fmt(f),
            UndirectedError::OracleLimit(e) => e.fmt(f),
        }
    }
}

fn require_undirected(g: &Graph) -> Result<(), KindMismatch> {
    if g.kind() != GraphKind::Undirected {
        return Err(KindMismatch { expected: GraphKind::Undirected, found: g.kind() });
    }
    Ok(())
}

/// Biconnected components and cut vertices of an undirected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Edge sets of the biconnected components, in DFS completion order;
    /// every edge of the graph lies in exactly one block.
    pub blocks: Vec<Vec<(usize, usize)>>,
    /// Cut vertices in ascending order.
    pub cut_vertices: Vec<usize>,
}

/// Splits `g` into biconnected components with an iterative DFS over an
/// explicit edge stack; a block is popped whenever a subtree cannot reach
/// above its attachment vertex.
pub fn block_decomposition(g: &Graph) -> Result<BlockDecomposition, KindMismatch> {
    require_undirected(g)?;
    const UNSET: usize = usize::MAX;
    let n = g.n();
    let adj = g.adjacency();
    let mut disc = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![UNSET; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut frames: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != UNSET {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        frames.push((root, 0));
        let mut root_children = 0;
        while let Some(frame) = frames.last_mut() {
            let u = frame.0;
            if frame.1 < adj[u].len() {
                let w = adj[u][frame.1];
                frame.1 += 1;
                if disc[w] == UNSET {
                    parent[w] = u;
                    if u == root {
                        root_children += 1;
                    }
                    edge_stack.push((u, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    frames.push((w, 0));
                } else if w != parent[u] && disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(up) = frames.last() {
                    let p = up.0;
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        // p separates u's subtree; the edges above it on
                        // the stack form one block.
                        let mut block = Vec::new();
                        while let Some(&(a, b)) = edge_stack.last() {
                            if disc[a] >= disc[u] || (a == p && b == u) {
                                edge_stack.pop();
                                block.push((a.min(b), a.max(b)));
                                if a == p && b == u {
                                    break;
                                }
                            } else {
                                break;
                            }
                        }
                        blocks.push(block);
                        if p != root || root_children > 1 {
                            is_cut[p] = true;
                        }
                    }
                }
            }
        }
    }
    let cut_vertices = (0..n).filter(|&v| is_cut[v]).collect();
    Ok(BlockDecomposition { blocks, cut_vertices })
}

/// An odd simple cycle, or `None` exactly when `g` is bipartite.
///
/// BFS 2-colors each component; the first edge joining two vertices on the
/// same level closes an odd cycle through their tree paths to the lowest
/// common ancestor.
pub fn odd_cycle(g: &Graph) -> Result<Option<CycleWitness>, KindMismatch> {
    require_undirected(g)?;
    const UNSET: usize = usize::MAX;
    let n = g.n();
    let adj = g.adjacency();
    let mut level = vec![UNSET; n];
    let mut parent = vec![UNSET; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if level[root] != UNSET {
            continue;
        }
        level[root] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if level[w] == UNSET {
                    level[w] = level[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if level[w] == level[u] {
                    // Tree paths from u and w meet at their LCA; with the
                    // u-w edge they close a cycle of odd length
                    // 2·(level − LCA level) + 1.
                    let mut up = vec![u];
                    let mut wp = vec![w];
                    while up.last() != wp.last() {
                        up.push(parent[*up.last().expect("nonempty")]);
                        wp.push(parent[*wp.last().expect("nonempty")]);
                    }
                    wp.pop();
                    wp.reverse();
                    up.extend(wp);
                    return Ok(Some(CycleWitness { vertices: up }));
                }
            }
        }
    }
    Ok(None)
}

type LocalAdjacency = alloc::collections::BTreeMap<usize, Vec<usize>>;

/// First fundamental cycle of a connected edge set, as the vertex list
/// `[u, …, w]` closed by the first DFS back edge `(u, w)`.
fn first_fundamental_cycle(root: usize, adj: &LocalAdjacency) -> Option<Vec<usize>> {
    let mut depth = alloc::collections::BTreeMap::new();
    let mut parent = alloc::collections::BTreeMap::new();
    depth.insert(root, 0usize);
    let mut frames: Vec<(usize, usize)> = vec![(root, 0)];
    while let Some(frame) = frames.last_mut() {
        let u = frame.0;
        if frame.1 < adj[&u].len() {
            let w = adj[&u][frame.1];
            frame.1 += 1;
            let du = depth[&u];
            match depth.get(&w) {
                None => {
                    depth.insert(w, du + 1);
                    parent.insert(w, u);
                    frames.push((w, 0));
                }
                Some(&dw) => {
                    if parent.get(&u) != Some(&w) && dw < du {
                        let mut cycle = vec![u];
                        let mut v = u;
                        while v != w {
                            v = parent[&v];
                            cycle.push(v);
                        }
                        return Some(cycle);
                    }
                }
            }
        } else {
            frames.pop();
        }
    }
    None
}

/// Builds an even cycle inside one offending block: take the first
/// fundamental cycle; if it is even, done; otherwise graft an ear (a chord,
/// or a path through an outside vertex) and keep the side whose total
/// parity is even.
fn even_cycle_in_block(block: &[(usize, usize)]) -> Vec<usize> {
    let mut edges: Vec<(usize, usize)> = block.to_vec();
    edges.sort_unstable();
    let mut adj = LocalAdjacency::new();
    for &(a, b) in &edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    for nbrs in adj.values_mut() {
        nbrs.sort_unstable();
    }
    let root = *adj.keys().next().expect("block has edges");

    let cycle = first_fundamental_cycle(root, &adj).expect("offending block has a cycle");
    if cycle.len().is_multiple_of(2) {
        return cycle;
    }

    let on_cycle = |v: usize| cycle.contains(&v);
    let cycle_edge = |a: usize, b: usize| {
        let l = cycle.len();
        (0..l).any(|i| {
            let (x, y) = (cycle[i], cycle[(i + 1) % l]);
            (x, y) == (a, b) || (y, x) == (a, b)
        })
    };

    // Ear from x to c, internally disjoint from the cycle: a chord if one
    // exists, else a path through the first vertex hanging off the cycle.
    let mut ear: Option<Vec<usize>> = None;
    for &(a, b) in &edges {
        if on_cycle(a) && on_cycle(b) && !cycle_edge(a, b) {
            ear = Some(vec![a, b]);
            break;
        }
    }
    if ear.is_none() {
        let (x, y) = *edges
            .iter()
            .find(|&&(a, b)| on_cycle(a) != on_cycle(b))
            .expect("a non-cycle block has a chord or an outside vertex");
        let (x, y) = if on_cycle(x) { (x, y) } else { (y, x) };
        // BFS from y avoiding x; the block is 2-connected, so some other
        // cycle vertex is reachable without x.
        let mut parent = alloc::collections::BTreeMap::new();
        let mut queue = VecDeque::new();
        parent.insert(y, x);
        queue.push_back(y);
        'bfs: while let Some(u) = queue.pop_front() {
            for &w in &adj[&u] {
                if w == x || parent.contains_key(&w) {
                    continue;
                }
                parent.insert(w, u);
                if on_cycle(w) {
                    let mut path = vec![w];
                    let mut v = w;
                    while v != x {
                        v = parent[&v];
                        path.push(v);
                    }
                    path.reverse();
                    ear = Some(path);
                    break 'bfs;
                }
                queue.push_back(w);
            }
        }
    }
    let ear = ear.expect("2-connectivity guarantees an ear");

    // Close the ear with whichever cycle arc matches its parity; the arc
    // lengths sum to the odd cycle length, so exactly one side works.
    let l = cycle.len();
    let ix = cycle.iter().position(|&v| v == ear[0]).expect("ear starts on the cycle");
    let ic = cycle.iter().position(|&v| v == *ear.last().expect("nonempty")).expect("ear ends on the cycle");
    let fwd = (ix + l - ic) % l;
    let ear_len = ear.len() - 1;
    let mut out = ear;
    if fwd % 2 == ear_len % 2 {
        let mut i = ic;
        loop {
            i = (i + 1) % l;
            if i == ix {
                break;
            }
            out.push(cycle[i]);
        }
    } else {
        let mut i = ic;
        loop {
            i = (i + l - 1) % l;
            if i == ix {
                break;
            }
            out.push(cycle[i]);
        }
    }
    out
}

/// An even simple cycle, or `None` exactly when every biconnected
/// component is a single edge or an odd simple cycle.
///
/// A block on `v` vertices and `e ≥ 2` edges is an odd simple cycle
/// precisely when `v == e` and `e` is odd (a 2-connected graph with
/// equally many vertices and edges is one cycle); the first block failing
/// that yields the witness.
pub fn even_cycle(g: &Graph) -> Result<Option<CycleWitness>, KindMismatch> {
    require_undirected(g)?;
    let decomposition = block_decomposition(g)?;
    for block in &decomposition.blocks {
        if block.len() < 2 {
            continue;
        }
        let mut verts: Vec<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
        verts.sort_unstable();
        verts.dedup();
        if verts.len() == block.len() && block.len() % 2 == 1 {
            continue;
        }
        return Ok(Some(CycleWitness { vertices: even_cycle_in_block(block) }));
    }
    Ok(None)
}

/// Decides `UC(S, m)` in the regime `0 ∉ S` with the complement of `S`
/// closed under addition: the answer is "does some simple cycle have
/// length not divisible by `g`", for the complement's divisor `g`.
///
/// Dispatch: `g = 1` is always false (no residue qualifies); `g = 2` is
/// odd-cycle detection; `g ≥ 3` falls back to exhaustive enumeration and
/// checks the gcd of all cycle lengths, valid only within `limits`.
pub fn decide_uc_condition_case(
    g: &Graph,
    rs: &ResidueSet,
    limits: &OracleLimits,
) -> Result<bool, UndirectedError> {
    require_undirected(g).map_err(UndirectedError::WrongKind)?;
    let reduction = thm7_reduce(rs).map_err(UndirectedError::Unsupported)?;
    match reduction.g {
        1 => Ok(false),
        2 => Ok(odd_cycle(g).map_err(UndirectedError::WrongKind)?.is_some()),
        divisor => {
            let p = period(g, limits).map_err(UndirectedError::OracleLimit)?;
            Ok(p != 0 && p % divisor as usize != 0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::walk_is_cycle;

    fn rs(m: u32, members: &[u32]) -> ResidueSet {
        ResidueSet::new(m, members.iter().copied()).unwrap()
    }

    fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::undirected(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    #[test]
    fn odd_cycle_examples() {
        let tri = Graph::undirected(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let w = odd_cycle(&tri).unwrap().unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(walk_is_cycle(&tri, &w.vertices), Ok(true));

        let c4 = Graph::undirected(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(odd_cycle(&c4).unwrap(), None);

        let p = petersen();
        let w = odd_cycle(&p).unwrap().unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(walk_is_cycle(&p, &w.vertices), Ok(true));
    }

    #[test]
    fn even_cycle_examples() {
        // Two triangles sharing the edge 0-1.
        let g = Graph::undirected(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]).unwrap();
        let w = even_cycle(&g).unwrap().unwrap();
        assert_eq!(w.len() % 2, 0);
        assert_eq!(w.len(), 4);
        assert_eq!(walk_is_cycle(&g, &w.vertices), Ok(true));

        let c5 = Graph::undirected(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(even_cycle(&c5).unwrap(), None);

        let c4 = Graph::undirected(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let w = even_cycle(&c4).unwrap().unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(walk_is_cycle(&c4, &w.vertices), Ok(true));
    }

    #[test]
    fn even_cycle_via_chord_ear() {
        // 5-cycle plus the chord 1-4: the first fundamental cycle is the
        // odd 5-cycle, and the chord splits it into a 4-cycle.
        let g = Graph::undirected(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 4)]).unwrap();
        let w = even_cycle(&g).unwrap().unwrap();
        assert_eq!(w.vertices, vec![1, 4, 3, 2]);
        assert_eq!(walk_is_cycle(&g, &w.vertices), Ok(true));
    }

    #[test]
    fn even_cycle_via_outside_vertex_ear() {
        // K4: the first fundamental cycle is a triangle with no chord, so
        // the ear runs through the fourth vertex.
        let g = Graph::undirected(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let w = even_cycle(&g).unwrap().unwrap();
        assert_eq!(walk_is_cycle(&g, &w.vertices), Ok(true));
        assert_eq!(w.len() % 2, 0);
    }

    #[test]
    fn blocks_and_cut_vertices() {
        // Bowtie: triangles 0-1-2 and 2-3-4 sharing vertex 2.
        let g = Graph::undirected(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        let d = block_decomposition(&g).unwrap();
        assert_eq!(d.cut_vertices, vec![2]);
        assert_eq!(d.blocks.len(), 2);
        let mut seen: Vec<(usize, usize)> = d.blocks.iter().flatten().copied().collect();
        seen.sort_unstable();
        assert_eq!(seen, g.edges().to_vec());
        for block in &d.blocks {
            assert_eq!(block.len(), 3);
        }

        // A path has only single-edge blocks and interior cut vertices.
        let path = Graph::undirected(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let d = block_decomposition(&path).unwrap();
        assert_eq!(d.blocks.len(), 3);
        assert_eq!(d.cut_vertices, vec![1, 2]);
    }

    #[test]
    fn condition_case_decisions() {
        let limits = OracleLimits::default();
        let harmonic = rs(6, &[1, 2, 4, 5]);

        let tri = Graph::undirected(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(decide_uc_condition_case(&tri, &harmonic, &limits), Ok(false));

        let c4 = Graph::undirected(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(decide_uc_condition_case(&c4, &harmonic, &limits), Ok(true));

        let forest = Graph::undirected(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(decide_uc_condition_case(&forest, &harmonic, &limits), Ok(false));
        assert_eq!(decide_uc_condition_case(&forest, &rs(2, &[1]), &limits), Ok(false));

        // Divisor 2 routes through bipartiteness.
        assert_eq!(decide_uc_condition_case(&tri, &rs(2, &[1]), &limits), Ok(true));
        assert_eq!(decide_uc_condition_case(&c4, &rs(2, &[1]), &limits), Ok(false));

        // Divisor 1 comes from the empty set: nothing qualifies.
        assert_eq!(decide_uc_condition_case(&c4, &rs(4, &[]), &limits), Ok(false));
    }

    #[test]
    fn condition_case_rejections() {
        let limits = OracleLimits::default();
        let tri = Graph::undirected(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(matches!(
            decide_uc_condition_case(&tri, &rs(4, &[2]), &limits),
            Err(UndirectedError::Unsupported(_))
        ));
        let directed = Graph::directed(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(
            decide_uc_condition_case(&directed, &rs(2, &[1]), &limits),
            Err(UndirectedError::WrongKind(_))
        ));
        assert!(matches!(odd_cycle(&directed), Err(KindMismatch { .. })));
        assert!(matches!(even_cycle(&directed), Err(KindMismatch { .. })));

        // Divisor ≥ 3 needs enumeration; an oversized graph reports the gate.
        let big = Graph::undirected(40, (0..40).map(|i| (i, (i + 1) % 40))).unwrap();
        assert!(matches!(
            decide_uc_condition_case(&big, &rs(6, &[1, 2, 4, 5]), &limits),
            Err(UndirectedError::OracleLimit(_))
        ));
    }
}
