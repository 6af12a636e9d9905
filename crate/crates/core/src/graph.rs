//! Graph representation shared by every decision procedure.
//!
//! Graphs are immutable after construction: dense 0-based vertex ids, a
//! deduplicated sorted edge list, undirected edges stored with the smaller
//! endpoint first. Undirected graphs reject self-loops (an undirected cycle
//! needs at least three distinct vertices); directed graphs allow them
//! (a self-loop is a directed cycle of length 1, a digon one of length 2).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Hard cap on vertex count; inputs beyond this are refused at construction.
pub const MAX_VERTICES: usize = 1 << 20;

/// Orientation of a graph's edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    /// Edges are ordered pairs; self-loops permitted.
    Directed,
    /// Edges are unordered pairs, stored as `(min, max)`; no self-loops.
    Undirected,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphKind::Directed => f.write_str("directed"),
            GraphKind::Undirected => f.write_str("undirected"),
        }
    }
}

/// Construction rejects these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    /// Vertex count exceeds [`MAX_VERTICES`].
    TooManyVertices {
        /// Requested vertex count.
        n: usize,
    },
    /// An edge endpoint is not below the vertex count.
    EndpointOutOfRange {
        /// Offending edge as given.
        edge: (usize, usize),
        /// Vertex count of the graph under construction.
        n: usize,
    },
    /// Undirected graphs cannot carry self-loops.
    SelfLoop {
        /// The looped vertex.
        vertex: usize,
    },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::TooManyVertices { n } => {
                write!(f, "vertex count {n} exceeds the cap of {MAX_VERTICES}")
            }
            GraphError::EndpointOutOfRange { edge: (u, v), n } => {
                write!(f, "edge ({u}, {v}) has an endpoint outside 0..{n}")
            }
            GraphError::SelfLoop { vertex } => {
                write!(f, "self-loop on vertex {vertex} is invalid in an undirected graph")
            }
        }
    }
}

/// A function got a graph of the wrong [`GraphKind`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KindMismatch {
    /// Kind the operation requires.
    pub expected: GraphKind,
    /// Kind it was handed.
    pub found: GraphKind,
}

impl fmt::Display for KindMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "operation requires a {} graph, got {}", self.expected, self.found)
    }
}

/// Immutable graph with a canonical edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    kind: GraphKind,
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a directed graph on vertices `0..n`. Parallel edges collapse.
    pub fn directed(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        Self::build(GraphKind::Directed, n, edges)
    }

    /// Builds an undirected graph on vertices `0..n`. Each edge may be given
    /// in either orientation; duplicates (including reversed ones) collapse.
    pub fn undirected(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        Self::build(GraphKind::Undirected, n, edges)
    }

    fn build(
        kind: GraphKind,
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { edge: (u, v), n });
            }
            match kind {
                GraphKind::Directed => list.push((u, v)),
                GraphKind::Undirected => {
                    if u == v {
                        return Err(GraphError::SelfLoop { vertex: u });
                    }
                    list.push((u.min(v), u.max(v)));
                }
            }
        }
        list.sort_unstable();
        list.dedup();
        Ok(Graph { kind, n, edges: list })
    }

    /// Edge orientation of this graph.
    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of (deduplicated) edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted canonical edge list. Undirected entries satisfy `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Whether the edge is present; undirected lookup ignores orientation.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n {
            return false;
        }
        let key = match self.kind {
            GraphKind::Directed => (u, v),
            GraphKind::Undirected => (u.min(v), u.max(v)),
        };
        self.edges.binary_search(&key).is_ok()
    }

    /// Neighbor lists in ascending order: out-neighbors for directed graphs,
    /// all neighbors for undirected ones. Every algorithm in this crate
    /// traverses in this order, which pins down witness tie-breaking.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            if self.kind == GraphKind::Undirected {
                adj[v].push(u);
            }
        }
        // Edge list is sorted, so directed lists are already ascending;
        // undirected back-references need the extra sort.
        if self.kind == GraphKind::Undirected {
            for list in &mut adj {
                list.sort_unstable();
            }
        }
        adj
    }

    /// In-neighbor lists in ascending order (directed graphs; for undirected
    /// graphs this equals [`Graph::adjacency`]).
    pub fn in_adjacency(&self) -> Vec<Vec<usize>> {
        match self.kind {
            GraphKind::Undirected => self.adjacency(),
            GraphKind::Directed => {
                let mut adj = vec![Vec::new(); self.n];
                for &(u, v) in &self.edges {
                    adj[v].push(u);
                }
                for list in &mut adj {
                    list.sort_unstable();
                }
                adj
            }
        }
    }
}

/// A simple cycle, recorded as its vertex sequence without repeating the
/// starting vertex at the end; the closing edge back to `vertices[0]` is
/// implicit. Length equals `vertices.len()`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CycleWitness {
    /// The cycle's vertices in traversal order.
    pub vertices: Vec<usize>,
}

impl CycleWitness {
    /// Cycle length (number of edges).
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// True for the degenerate empty witness, which no valid cycle produces.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

impl fmt::Display for CycleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Why a vertex sequence fails to even be a closed walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalkError {
    /// The empty sequence is not a walk.
    EmptyWalk,
    /// A vertex lies outside the graph.
    VertexOutOfRange {
        /// The offending vertex.
        vertex: usize,
    },
    /// Two consecutive vertices (including the implicit closing step) are
    /// not joined by an edge.
    MissingEdge {
        /// Step source.
        from: usize,
        /// Step target.
        to: usize,
    },
}

impl fmt::Display for WalkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalkError::EmptyWalk => f.write_str("empty vertex sequence is not a walk"),
            WalkError::VertexOutOfRange { vertex } => {
                write!(f, "vertex {vertex} is not in the graph")
            }
            WalkError::MissingEdge { from, to } => {
                write!(f, "no edge from {from} to {to}")
            }
        }
    }
}

/// Checks whether a closed walk is a simple cycle.
///
/// `walk` lists the vertices in order; the closing edge from the last entry
/// back to the first is implicit, so the walk's length equals `walk.len()`.
/// A non-walk (missing edge, unknown vertex, empty input) is an error,
/// which is distinct from `Ok(false)`: a genuine closed walk that is not a
/// cycle. Directed cycles need `len >= 1` with all vertices distinct;
/// undirected cycles additionally need `len >= 3`, so an undirected walk
/// that crosses one edge out and back is a walk but never a cycle.
pub fn walk_is_cycle(g: &Graph, walk: &[usize]) -> Result<bool, WalkError> {
    if walk.is_empty() {
        return Err(WalkError::EmptyWalk);
    }
    for &v in walk {
        if v >= g.n() {
            return Err(WalkError::VertexOutOfRange { vertex: v });
        }
    }
    for i in 0..walk.len() {
        let from = walk[i];
        let to = walk[(i + 1) % walk.len()];
        if !g.has_edge(from, to) {
            return Err(WalkError::MissingEdge { from, to });
        }
    }
    let mut seen = vec![false; g.n()];
    for &v in walk {
        if seen[v] {
            return Ok(false);
        }
        seen[v] = true;
    }
    Ok(match g.kind() {
        GraphKind::Directed => true,
        GraphKind::Undirected => walk.len() >= 3,
    })
}
