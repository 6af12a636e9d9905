//! Brute-force simple-cycle enumeration: the ground truth every polynomial
//! decider in this crate is cross-checked against.
//!
//! Enumeration is Johnson-style: cycles are anchored at their least vertex,
//! and a blocked-set with relief lists keeps the work per emitted cycle
//! polynomial instead of re-exploring dead ends. Undirected graphs run the
//! same search over both arc orientations; each cycle is emitted once, in
//! canonical orientation, and the out-and-back length-2 artifacts are
//! dropped.
//!
//! Every entry point is gated: a vertex-count bound (overridable) and a
//! cycle-count cap. A truncated enumeration is an explicit error for the
//! deciders — never a silent `false`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::mem::take;
use core::ops::ControlFlow;

use crate::classify::ResidueSet;
use crate::graph::{CycleWitness, Graph, GraphKind};
use crate::walks::strongly_connected_components;
use crate::gcd;

/// Size gates for enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Refuse graphs with more vertices than this; `None` lifts the gate
    /// (the cycle cap still applies).
    pub max_vertices: Option<usize>,
    /// Stop after this many cycles and report truncation.
    pub max_cycles: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_vertices: Some(16), max_cycles: 1_000_000 }
    }
}

impl OracleLimits {
    /// Default cycle cap with the vertex gate raised to `n`; for graphs
    /// that are large but known to carry few cycles (subdivisions).
    pub fn for_vertices(n: usize) -> Self {
        OracleLimits { max_vertices: Some(n), ..Self::default() }
    }
}

/// Enumeration refused or cut short.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// The graph exceeds the vertex gate.
    TooManyVertices {
        /// Vertex count of the offending graph.
        n: usize,
        /// The configured gate.
        max: usize,
    },
    /// The cycle-count cap was hit before enumeration finished, so the
    /// requested answer would be unsound.
    Truncated {
        /// The configured cap.
        cap: u64,
    },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooManyVertices { n, max } => {
                write!(f, "graph has {n} vertices, above the oracle gate of {max}")
            }
            OracleError::Truncated { cap } => {
                write!(f, "cycle enumeration truncated at the cap of {cap}")
            }
        }
    }
}

/// How an enumeration ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VisitOutcome {
    /// Every simple cycle was presented to the visitor.
    Complete,
    /// The visitor broke out early.
    Stopped,
    /// The cycle cap was hit; cycles are missing.
    Truncated,
}

/// Summary of a full enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleInventory {
    /// The distinct cycle lengths seen.
    pub lengths: BTreeSet<usize>,
    /// Number of simple cycles counted.
    pub count: u64,
    /// True when the count cap cut enumeration short; `count` is then a
    /// lower bound and `lengths` may be incomplete.
    pub truncated: bool,
}

struct Sink<F> {
    f: F,
    undirected: bool,
    count: u64,
    cap: u64,
    truncated: bool,
    stopped: bool,
}

impl<F: FnMut(&[usize]) -> ControlFlow<()>> Sink<F> {
    fn emit(&mut self, path: &[usize]) -> ControlFlow<()> {
        if self.undirected {
            // Each undirected cycle shows up in both orientations; keep the
            // one whose second vertex is smaller than its last. Length-2
            // paths are one edge crossed twice, not a cycle.
            if path.len() < 3 || path[1] > path[path.len() - 1] {
                return ControlFlow::Continue(());
            }
        }
        if self.count >= self.cap {
            self.truncated = true;
            return ControlFlow::Break(());
        }
        self.count += 1;
        if (self.f)(path).is_break() {
            self.stopped = true;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    }
}

struct CircuitSearch<'a, F> {
    adj: Vec<Vec<usize>>,
    start: usize,
    blocked: Vec<bool>,
    relief: Vec<Vec<usize>>,
    path: Vec<usize>,
    sink: &'a mut Sink<F>,
}

impl<F: FnMut(&[usize]) -> ControlFlow<()>> CircuitSearch<'_, F> {
    fn circuit(&mut self, v: usize) -> ControlFlow<(), bool> {
        let mut found = false;
        self.path.push(v);
        self.blocked[v] = true;
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            if w == self.start {
                if self.sink.emit(&self.path).is_break() {
                    self.path.pop();
                    return ControlFlow::Break(());
                }
                found = true;
            } else if !self.blocked[w] {
                match self.circuit(w) {
                    ControlFlow::Break(()) => {
                        self.path.pop();
                        return ControlFlow::Break(());
                    }
                    ControlFlow::Continue(hit) => found |= hit,
                }
            }
        }
        if found {
            self.unblock(v);
        } else {
            for i in 0..self.adj[v].len() {
                let w = self.adj[v][i];
                if !self.relief[w].contains(&v) {
                    self.relief[w].push(v);
                }
            }
        }
        self.path.pop();
        ControlFlow::Continue(found)
    }

    fn unblock(&mut self, u: usize) {
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            if !self.blocked[x] {
                continue;
            }
            self.blocked[x] = false;
            stack.extend(take(&mut self.relief[x]));
        }
    }
}

/// Presents every simple cycle of `g` to `cycles`, least vertex first, in a
/// deterministic order; the visitor may break out early. Undirected cycles
/// appear once each, oriented so the second vertex is smaller than the
/// last.
pub fn visit_cycles<F: FnMut(&[usize]) -> ControlFlow<()>>(
    g: &Graph,
    limits: &OracleLimits,
    cycles: F,
) -> Result<VisitOutcome, OracleError> {
    let n = g.n();
    if let Some(max) = limits.max_vertices {
        if n > max {
            return Err(OracleError::TooManyVertices { n, max });
        }
    }
    let mut sink = Sink {
        f: cycles,
        undirected: g.kind() == GraphKind::Undirected,
        count: 0,
        cap: limits.max_cycles,
        truncated: false,
        stopped: false,
    };
    let base = g.adjacency();
    'starts: for s in 0..n {
        // Restrict to vertices >= s: cycles through anything smaller were
        // emitted on an earlier round.
        let restricted: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                if v < s {
                    Vec::new()
                } else {
                    base[v].iter().copied().filter(|&w| w >= s).collect()
                }
            })
            .collect();
        let (_, comp) = strongly_connected_components(&restricted);
        let cs = comp[s];
        let scc_adj: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                if comp[v] != cs {
                    Vec::new()
                } else {
                    restricted[v].iter().copied().filter(|&w| comp[w] == cs).collect()
                }
            })
            .collect();
        if scc_adj[s].is_empty() {
            continue;
        }
        let mut search = CircuitSearch {
            adj: scc_adj,
            start: s,
            blocked: vec![false; n],
            relief: vec![Vec::new(); n],
            path: Vec::new(),
            sink: &mut sink,
        };
        if search.circuit(s).is_break() {
            break 'starts;
        }
    }
    Ok(if sink.stopped {
        VisitOutcome::Stopped
    } else if sink.truncated {
        VisitOutcome::Truncated
    } else {
        VisitOutcome::Complete
    })
}

/// Counts cycles and collects the set of lengths; a hit cap is reported in
/// the `truncated` flag rather than as an error.
pub fn inventory(g: &Graph, limits: &OracleLimits) -> Result<CycleInventory, OracleError> {
    let mut lengths = BTreeSet::new();
    let mut count = 0u64;
    let outcome = visit_cycles(g, limits, |path| {
        lengths.insert(path.len());
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(CycleInventory { lengths, count, truncated: outcome == VisitOutcome::Truncated })
}

/// Collects every simple cycle as a witness; truncation is an error here,
/// since callers rely on the list being complete.
pub fn enumerate_cycles(
    g: &Graph,
    limits: &OracleLimits,
) -> Result<Vec<CycleWitness>, OracleError> {
    let mut out = Vec::new();
    let outcome = visit_cycles(g, limits, |path| {
        out.push(CycleWitness { vertices: path.to_vec() });
        ControlFlow::Continue(())
    })?;
    match outcome {
        VisitOutcome::Truncated => Err(OracleError::Truncated { cap: limits.max_cycles }),
        _ => Ok(out),
    }
}

/// Ground-truth decision: does `g` contain a simple cycle whose length mod
/// `m` lies in `S`? Stops at the first qualifying cycle; a truncated scan
/// that found nothing is an error, never `false`.
pub fn oracle_decide(
    g: &Graph,
    rs: &ResidueSet,
    limits: &OracleLimits,
) -> Result<bool, OracleError> {
    if rs.is_empty() {
        return Ok(false);
    }
    let outcome = visit_cycles(g, limits, |path| {
        if rs.contains_length(path.len()) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    match outcome {
        VisitOutcome::Stopped => Ok(true),
        VisitOutcome::Complete => Ok(false),
        VisitOutcome::Truncated => Err(OracleError::Truncated { cap: limits.max_cycles }),
    }
}

/// The gcd of all simple cycle lengths, or 0 for an acyclic graph. Stops
/// early once the gcd reaches 1, since no further cycle can change it.
pub fn period(g: &Graph, limits: &OracleLimits) -> Result<usize, OracleError> {
    let mut p = 0u64;
    let outcome = visit_cycles(g, limits, |path| {
        p = gcd(p, path.len() as u64);
        if p == 1 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    match outcome {
        VisitOutcome::Truncated => Err(OracleError::Truncated { cap: limits.max_cycles }),
        _ => Ok(p as usize),
    }
}

/// The shortest simple cycle whose length qualifies, with ties broken by
/// the lexicographically least vertex sequence; `None` when no cycle
/// qualifies. Needs a complete scan, so truncation is an error.
pub fn oracle_shortest(
    g: &Graph,
    rs: &ResidueSet,
    limits: &OracleLimits,
) -> Result<Option<CycleWitness>, OracleError> {
    let mut best: Option<Vec<usize>> = None;
    let outcome = visit_cycles(g, limits, |path| {
        if rs.contains_length(path.len()) {
            let better = match &best {
                None => true,
                Some(b) => path.len() < b.len() || (path.len() == b.len() && path < &b[..]),
            };
            if better {
                best = Some(path.to_vec());
            }
        }
        ControlFlow::Continue(())
    })?;
    match outcome {
        VisitOutcome::Truncated => Err(OracleError::Truncated { cap: limits.max_cycles }),
        _ => Ok(best.map(|vertices| CycleWitness { vertices })),
    }
}
