//! Closed-walk analysis on directed graphs.
//!
//! The directed deciders rest on one fact: when `0 ∉ S` and the complement
//! of `S` is closed under addition mod `m`, a graph has a simple cycle with
//! residue in `S` exactly when it has a *closed walk* with residue in `S`
//! (a non-cycle walk splits into two shorter closed walks whose residues
//! sum to the original's, and closure forces one of them back into `S`).
//! Closed-walk residues are computable in polynomial time two ways:
//!
//! * fast path — every closed walk lives inside one strongly connected
//!   component, and the walk lengths through an SCC with period `d` cover
//!   exactly the multiples of `gcd(d, m)` mod `m`;
//! * reference path — breadth-first search in the product graph whose
//!   states are (vertex, length mod m) pairs.
//!
//! Both are exposed; the test suite holds them equal.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::classify::{closure_counterexample, ConditionUnsupported, ResidueSet, ResidueSetError};
use crate::gcd;
use crate::graph::{Graph, GraphKind, KindMismatch};

/// Failure modes of the walk detectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalksError {
    /// These procedures are directed-only.
    WrongKind(KindMismatch),
    /// The modulus is out of range.
    InvalidModulus(ResidueSetError),
    /// `(S, m)` is outside the regime where closed-walk detection answers
    /// the simple-cycle question.
    Unsupported(ConditionUnsupported),
}

impl fmt::Display for WalksError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalksError::WrongKind(e) => e.fmt(f),
            WalksError::InvalidModulus(e) => e.fmt(f),
            WalksError::Unsupported(e) => e.fmt(f),
        }
    }
}

fn require_directed(g: &Graph) -> Result<(), WalksError> {
    if g.kind() != GraphKind::Directed {
        return Err(WalksError::WrongKind(KindMismatch {
            expected: GraphKind::Directed,
            found: g.kind(),
        }));
    }
    Ok(())
}

/// Strongly connected components by iterative Tarjan; returns the component
/// count and a per-vertex component id. Ids carry no ordering guarantee.
pub(crate) fn strongly_connected_components(adj: &[Vec<usize>]) -> (usize, Vec<usize>) {
    const UNSET: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comp = vec![UNSET; n];
    let mut comp_count = 0;
    let mut next_index = 0;
    let mut frames: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        frames.push((root, 0));
        while let Some(frame) = frames.last_mut() {
            let v = frame.0;
            if frame.1 < adj[v].len() {
                let w = adj[v][frame.1];
                frame.1 += 1;
                if index[w] == UNSET {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack holds the component");
                        on_stack[w] = false;
                        comp[w] = comp_count;
                        if w == v {
                            break;
                        }
                    }
                    comp_count += 1;
                }
                if let Some(parent) = frames.last() {
                    let p = parent.0;
                    low[p] = low[p].min(low[v]);
                }
            }
        }
    }
    (comp_count, comp)
}

/// Strongly connected components and their periods.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccPeriodTable {
    /// Component id per vertex.
    pub scc_id: Vec<usize>,
    /// Per-component gcd of closed-walk lengths; 0 for components without
    /// an internal edge (no closed walk at all).
    pub period: Vec<usize>,
}

impl SccPeriodTable {
    /// Number of strongly connected components.
    pub fn scc_count(&self) -> usize {
        self.period.len()
    }
}

/// Computes each SCC's period as the gcd, over internal edges `(u, v)`, of
/// `|level(u) + 1 − level(v)|` for a BFS labeling from the component's
/// lowest vertex. Every closed-walk length through the component is a
/// multiple of its period.
pub fn scc_periods(g: &Graph) -> Result<SccPeriodTable, WalksError> {
    require_directed(g)?;
    let adj = g.adjacency();
    let n = g.n();
    let (comp_count, scc_id) = strongly_connected_components(&adj);
    let mut period = vec![0usize; comp_count];

    const UNSEEN: usize = usize::MAX;
    const UNSET_ROOT: usize = usize::MAX;
    let mut level = vec![UNSEEN; n];
    let mut queue = VecDeque::new();
    // Lowest vertex of each component serves as BFS root.
    let mut root = vec![UNSET_ROOT; comp_count];
    for v in 0..n {
        if root[scc_id[v]] == UNSET_ROOT {
            root[scc_id[v]] = v;
        }
    }
    for c in 0..comp_count {
        let r = root[c];
        level[r] = 0;
        queue.push_back(r);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if scc_id[w] == c && level[w] == UNSEEN {
                    level[w] = level[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        let mut p: u64 = 0;
        for v in 0..n {
            if scc_id[v] != c {
                continue;
            }
            for &w in &adj[v] {
                if scc_id[w] == c {
                    let diff = level[v] as i64 + 1 - level[w] as i64;
                    p = gcd(p, diff.unsigned_abs());
                }
            }
        }
        period[c] = p as usize;
    }
    Ok(SccPeriodTable { scc_id, period })
}

/// Residues mod `m` realized by closed walks of length ≥ 1.
///
/// This is the fast path: the union, over SCCs with period `d ≥ 1`, of the
/// multiples of `gcd(d, m)` in `[0, m)`. An SCC realizes every sufficiently
/// long multiple of its period as a genuine walk length, and only multiples
/// of it, so its residue footprint mod `m` is that whole subgroup.
pub fn closed_walk_residues(g: &Graph, m: u32) -> Result<ResidueSet, WalksError> {
    require_directed(g)?;
    ResidueSet::empty(m).map_err(WalksError::InvalidModulus)?;
    let table = scc_periods(g)?;
    let mut mask = 0u64;
    for &d in &table.period {
        if d == 0 {
            continue;
        }
        let step = gcd(d as u64, m as u64) as u32;
        let mut r = 0;
        while r < m {
            mask |= 1 << r;
            r += step;
        }
    }
    Ok(ResidueSet::from_mask(m, mask).expect("residues stay below m"))
}

/// Layered BFS state space over (vertex, length mod m) pairs.
///
/// States are indexed `v·m + r`; each base edge `(u, v)` induces
/// `(u, r) → (v, (r+1) mod m)`. A residue `r` is realized by a closed walk
/// from `v` exactly when `(v, 0)` reaches `(v, r)` along ≥ 1 edge.
pub struct ProductGraph {
    n: usize,
    m: usize,
    adj: Vec<Vec<usize>>,
}

impl ProductGraph {
    /// Builds the product over a directed base graph.
    pub fn new(g: &Graph, m: u32) -> Result<Self, WalksError> {
        require_directed(g)?;
        ResidueSet::empty(m).map_err(WalksError::InvalidModulus)?;
        Ok(ProductGraph { n: g.n(), m: m as usize, adj: g.adjacency() })
    }

    /// Base vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The modulus.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of product states, `n·m`.
    pub fn state_count(&self) -> usize {
        self.n * self.m
    }

    fn state(&self, v: usize, r: usize) -> usize {
        v * self.m + r
    }

    /// All residues `r` such that some closed walk of length ≡ r (mod m)
    /// starts at `v`, as a bit mask.
    fn return_residues(&self, v: usize, seen: &mut [u32], epoch: u32) -> u64 {
        let mut found = 0u64;
        let mut queue = VecDeque::new();
        seen[self.state(v, 0)] = epoch;
        queue.push_back((v, 0usize));
        while let Some((u, r)) = queue.pop_front() {
            let nr = (r + 1) % self.m;
            for &w in &self.adj[u] {
                if w == v {
                    found |= 1 << nr;
                }
                let s = self.state(w, nr);
                if seen[s] != epoch {
                    seen[s] = epoch;
                    queue.push_back((w, nr));
                }
            }
        }
        found
    }

    /// Length of the shortest closed walk from `v` whose residue bit is in
    /// `targets` and whose length is strictly below `bound`, found by BFS;
    /// `None` when no such walk exists. The closing edge back into `v` is
    /// tested as it is generated, so the first accepted hit is minimal for
    /// this start.
    ///
    /// A state first reached at depth `d + 1` can only close a walk of
    /// length `d + 2` or more, so it is not enqueued once `d + 2 ≥ bound`;
    /// an incumbent from an earlier start therefore prunes the search
    /// without affecting which sub-`bound` walks are found.
    fn shortest_return(
        &self,
        v: usize,
        targets: u64,
        bound: usize,
        seen: &mut [u32],
        epoch: u32,
    ) -> Option<usize> {
        let mut queue = VecDeque::new();
        seen[self.state(v, 0)] = epoch;
        queue.push_back((v, 0usize, 0usize));
        while let Some((u, r, d)) = queue.pop_front() {
            let nr = (r + 1) % self.m;
            for &w in &self.adj[u] {
                if w == v && targets & (1 << nr) != 0 && d + 1 < bound {
                    return Some(d + 1);
                }
                let s = self.state(w, nr);
                if seen[s] != epoch && d + 2 < bound {
                    seen[s] = epoch;
                    queue.push_back((w, nr, d + 1));
                }
            }
        }
        None
    }

    /// Rebuilds the witness walk for [`ProductGraph::shortest_return`]:
    /// the explicit vertex sequence `v, …, v` of the first qualifying
    /// closed walk in BFS order.
    pub(crate) fn shortest_return_walk(&self, v: usize, targets: u64) -> Option<Vec<usize>> {
        const NO_PARENT: usize = usize::MAX;
        let mut parent = vec![NO_PARENT; self.state_count()];
        let mut seen = vec![false; self.state_count()];
        let mut queue = VecDeque::new();
        seen[self.state(v, 0)] = true;
        queue.push_back((v, 0usize));
        while let Some((u, r)) = queue.pop_front() {
            let nr = (r + 1) % self.m;
            for &w in &self.adj[u] {
                if w == v && targets & (1 << nr) != 0 {
                    let mut walk = vec![v];
                    let mut s = self.state(u, r);
                    loop {
                        walk.push(s / self.m);
                        if parent[s] == NO_PARENT {
                            break;
                        }
                        s = parent[s];
                    }
                    walk.reverse();
                    return Some(walk);
                }
                let s = self.state(w, nr);
                if !seen[s] {
                    seen[s] = true;
                    parent[s] = self.state(u, r);
                    queue.push_back((w, nr));
                }
            }
        }
        None
    }
}

/// Residues of closed walks computed by product-graph reachability; the
/// obviously-correct reference the fast path is tested against.
pub fn closed_walk_residues_reference(g: &Graph, m: u32) -> Result<ResidueSet, WalksError> {
    let pg = ProductGraph::new(g, m)?;
    let mut seen = vec![0u32; pg.state_count()];
    let mut mask = 0u64;
    for v in 0..pg.n() {
        mask |= pg.return_residues(v, &mut seen, v as u32 + 1);
    }
    ResidueSet::from_mask(m, mask).map_err(WalksError::InvalidModulus)
}

/// Decides `DC(S, m)` in the complement-closed regime with `0 ∉ S`.
///
/// Computed as `closed_walk_residues(g, m) ∩ S ≠ ∅`; outside the regime the
/// closed-walk question and the simple-cycle question genuinely diverge,
/// so the precondition failure is an error directing callers to the oracle.
pub fn decide_dc(g: &Graph, rs: &ResidueSet) -> Result<bool, WalksError> {
    if rs.contains(0) {
        return Err(WalksError::Unsupported(ConditionUnsupported::ZeroInSet));
    }
    if let Some(w) = closure_counterexample(rs) {
        return Err(WalksError::Unsupported(ConditionUnsupported::NotComplementClosed(w)));
    }
    let realized = closed_walk_residues(g, rs.m())?;
    Ok(realized.mask() & rs.mask() != 0)
}

/// A closed walk, stored as the explicit vertex sequence with the start
/// repeated at the end; its length is `vertices.len() − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedWalk {
    /// Vertex sequence, `vertices[0] == vertices[last]`.
    pub vertices: Vec<usize>,
}

impl ClosedWalk {
    /// Number of edges traversed.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    /// True only for a degenerate empty sequence, which no search returns.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Shortest closed walk whose length mod `m` lies in `S`, over all start
/// vertices, with a witness reconstructed from BFS parent pointers. Starts
/// are scanned in ascending order, each search bounded by the incumbent,
/// and only a strictly shorter walk replaces it, so ties go to the lowest
/// start vertex.
pub fn shortest_closed_walk(g: &Graph, rs: &ResidueSet) -> Result<Option<ClosedWalk>, WalksError> {
    let pg = ProductGraph::new(g, rs.m())?;
    if rs.is_empty() {
        return Ok(None);
    }
    let mut seen = vec![0u32; pg.state_count()];
    let mut best: Option<(usize, usize)> = None;
    for v in 0..pg.n() {
        let bound = best.map_or(usize::MAX, |(blen, _)| blen);
        if let Some(len) = pg.shortest_return(v, rs.mask(), bound, &mut seen, v as u32 + 1) {
            best = Some((len, v));
        }
    }
    let Some((len, v)) = best else { return Ok(None) };
    let walk = pg
        .shortest_return_walk(v, rs.mask())
        .expect("start with a recorded return yields a walk");
    debug_assert_eq!(walk.len() - 1, len);
    Ok(Some(ClosedWalk { vertices: walk }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{oracle_decide, OracleLimits};

    fn rs(m: u32, members: &[u32]) -> ResidueSet {
        ResidueSet::new(m, members.iter().copied()).unwrap()
    }

    /// Two directed triangles sharing vertex 0.
    fn figure_eight() -> Graph {
        Graph::directed(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn residues_of_small_graphs() {
        let c3 = Graph::directed(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(closed_walk_residues(&c3, 2).unwrap(), rs(2, &[0, 1]));

        let lasso = Graph::directed(1, [(0, 0)]).unwrap();
        assert_eq!(closed_walk_residues(&lasso, 4).unwrap(), rs(4, &[0, 1, 2, 3]));

        let chain = Graph::directed(3, [(0, 1), (1, 2)]).unwrap();
        for m in 1..=6 {
            assert!(closed_walk_residues(&chain, m).unwrap().is_empty());
        }
    }

    #[test]
    fn fast_path_matches_reference_on_examples() {
        let graphs = [
            Graph::directed(3, [(0, 1), (1, 2), (2, 0)]).unwrap(),
            Graph::directed(1, [(0, 0)]).unwrap(),
            Graph::directed(3, [(0, 1), (1, 2)]).unwrap(),
            figure_eight(),
        ];
        for g in &graphs {
            for m in 1..=8 {
                assert_eq!(
                    closed_walk_residues(g, m).unwrap(),
                    closed_walk_residues_reference(g, m).unwrap(),
                    "m={m}"
                );
            }
        }
    }

    #[test]
    fn undirected_inputs_are_rejected() {
        let u = Graph::undirected(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(matches!(closed_walk_residues(&u, 3), Err(WalksError::WrongKind(_))));
        assert!(matches!(scc_periods(&u), Err(WalksError::WrongKind(_))));
        assert!(matches!(
            shortest_closed_walk(&u, &rs(2, &[1])),
            Err(WalksError::WrongKind(_))
        ));
    }

    #[test]
    fn period_table_examples() {
        let c3 = Graph::directed(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let t = scc_periods(&c3).unwrap();
        assert_eq!(t.scc_count(), 1);
        assert_eq!(t.period, vec![3]);

        // 2-cycle and 3-cycle sharing vertex 0: one SCC, gcd(2,3)=1.
        let shared =
            Graph::directed(4, [(0, 1), (1, 0), (0, 2), (2, 3), (3, 0)]).unwrap();
        let t = scc_periods(&shared).unwrap();
        assert_eq!(t.scc_count(), 1);
        assert_eq!(t.period, vec![1]);

        let mixed = Graph::directed(2, [(0, 0)]).unwrap();
        let t = scc_periods(&mixed).unwrap();
        assert_eq!(t.scc_count(), 2);
        let loop_comp = t.scc_id[0];
        let lone_comp = t.scc_id[1];
        assert_eq!(t.period[loop_comp], 1);
        assert_eq!(t.period[lone_comp], 0);
    }

    #[test]
    fn decide_dc_examples() {
        assert_eq!(decide_dc(&figure_eight(), &rs(3, &[1, 2])), Ok(false));

        let c3 = Graph::directed(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(decide_dc(&c3, &rs(2, &[1])), Ok(true));

        let err = decide_dc(&figure_eight(), &rs(4, &[2]));
        assert!(matches!(err, Err(WalksError::Unsupported(_))), "{err:?}");
        // Outside the regime the walk and cycle questions really do split:
        // the figure-eight walk has length 6 ≡ 2 (mod 4), yet no simple
        // cycle has residue 2.
        assert!(closed_walk_residues(&figure_eight(), 4).unwrap().contains(2));
        assert_eq!(
            oracle_decide(&figure_eight(), &rs(4, &[2]), &OracleLimits::default()),
            Ok(false)
        );

        let zero = decide_dc(&c3, &rs(3, &[0]));
        assert_eq!(
            zero,
            Err(WalksError::Unsupported(ConditionUnsupported::ZeroInSet))
        );
    }

    #[test]
    fn shortest_walk_examples() {
        // Disjoint digon and triangle: shortest odd closed walk is 3.
        let g = Graph::directed(5, [(0, 1), (1, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let w = shortest_closed_walk(&g, &rs(2, &[1])).unwrap().unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.vertices, vec![2, 3, 4, 2]);

        let c3 = Graph::directed(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(shortest_closed_walk(&c3, &rs(3, &[1, 2])).unwrap(), None);

        // A self-loop realizes every length; target residue 5 mod 7.
        let lasso = Graph::directed(1, [(0, 0)]).unwrap();
        let w = shortest_closed_walk(&lasso, &rs(7, &[5])).unwrap().unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(w.vertices, vec![0; 6]);

        assert_eq!(shortest_closed_walk(&g, &rs(5, &[])).unwrap(), None);
    }

    #[test]
    fn shortest_walk_prefers_lowest_start_on_ties() {
        // Two disjoint triangles; both realize length 3.
        let g = Graph::directed(6, [(3, 4), (4, 5), (5, 3), (0, 1), (1, 2), (2, 0)]).unwrap();
        let w = shortest_closed_walk(&g, &rs(3, &[0])).unwrap().unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 0]);
    }
}
