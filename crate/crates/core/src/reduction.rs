//! Hardness gadget: from "does a cycle pass through both `s` and `t`" to
//! "does a cycle have length ≡ p (mod m)".
//!
//! Every edge of the source digraph is replaced by a path whose length
//! depends only on the edge's head: `d1` into `s`, `d2` into `t`, `m`
//! everywhere else. A cycle in the result then has length ≡ 0, `d1`, `d2`,
//! or `d1 + d2 ≡ p (mod m)` according to which of `s`, `t` it visits, and
//! with `d1, d2 ∉ S` but `p ∈ S`, the only qualifying cycles are those
//! through both. The companion brute-force decider checks the equivalence
//! on enumerable instances.

use alloc::vec::Vec;
use core::fmt;
use core::ops::ControlFlow;

use crate::classify::ResidueSet;
use crate::graph::{Graph, GraphError, GraphKind, KindMismatch};
use crate::oracle::{visit_cycles, OracleError, OracleLimits, VisitOutcome};

/// Invalid gadget parameters or placement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionError {
    /// The target residue must lie in the set.
    ResidueNotInSet {
        /// Rejected residue.
        p: u32,
    },
    /// Subdivision lengths must avoid the set, or the gadget would create
    /// qualifying cycles through only one terminal.
    LengthInSet {
        /// Offending length.
        d: u32,
    },
    /// Subdivision lengths live in `[1, m)`.
    LengthOutOfRange {
        /// Offending length.
        d: u32,
    },
    /// The lengths must add up to the target residue mod `m`.
    WrongResidueSum {
        /// First length.
        d1: u32,
        /// Second length.
        d2: u32,
        /// Target residue.
        p: u32,
    },
    /// The two terminals must differ.
    SameEndpoints,
    /// A terminal is not a vertex of the graph.
    VertexOutOfRange {
        /// Offending terminal.
        vertex: usize,
        /// Vertex count.
        n: usize,
    },
    /// The gadget applies to directed graphs.
    WrongKind(KindMismatch),
    /// The subdivided graph is malformed (cannot happen for valid inputs).
    Graph(GraphError),
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::ResidueNotInSet { p } => write!(f, "target residue {p} is not in the set"),
            ReductionError::LengthInSet { d } => {
                write!(f, "subdivision length {d} lies in the set")
            }
            ReductionError::LengthOutOfRange { d } => {
                write!(f, "subdivision length {d} is outside [1, m)")
            }
            ReductionError::WrongResidueSum { d1, d2, p } => {
                write!(f, "{d1} + {d2} is not congruent to {p}")
            }
            ReductionError::SameEndpoints => write!(f, "the two terminals must be distinct"),
            ReductionError::VertexOutOfRange { vertex, n } => {
                write!(f, "terminal {vertex} out of range for {n} vertices")
            }
            ReductionError::WrongKind(e) => e.fmt(f),
            ReductionError::Graph(e) => e.fmt(f),
        }
    }
}

/// Validated subdivision lengths for [`reduce_st_cycle`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionParams {
    m: u32,
    p: u32,
    d1: u32,
    d2: u32,
}

impl ReductionParams {
    /// Checks the full invariant set against `rs`: `p ∈ S`, `d1, d2 ∈
    /// [1, m) \ S`, and `d1 + d2 ≡ p (mod m)`. Parameters violating any of
    /// these would not yield a correct reduction and are refused.
    pub fn new(rs: &ResidueSet, p: u32, d1: u32, d2: u32) -> Result<Self, ReductionError> {
        let m = rs.m();
        if p >= m || !rs.contains(p) {
            return Err(ReductionError::ResidueNotInSet { p });
        }
        for d in [d1, d2] {
            if d == 0 || d >= m {
                return Err(ReductionError::LengthOutOfRange { d });
            }
            if rs.contains(d) {
                return Err(ReductionError::LengthInSet { d });
            }
        }
        if (d1 + d2) % m != p {
            return Err(ReductionError::WrongResidueSum { d1, d2, p });
        }
        Ok(ReductionParams { m, p, d1, d2 })
    }

    /// The modulus.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Residue every through-both cycle acquires.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Path length replacing edges into the first terminal.
    pub fn d1(&self) -> u32 {
        self.d1
    }

    /// Path length replacing edges into the second terminal.
    pub fn d2(&self) -> u32 {
        self.d2
    }
}

/// Subdivides `g` so that cycle residues mod `m` encode terminal
/// membership: edges into `s` become paths of length `d1`, edges into `t`
/// paths of length `d2`, all other edges paths of length `m`.
///
/// Original vertex ids are preserved; fresh path vertices are appended
/// after them, allocated edge by edge in the graph's sorted edge order, so
/// the output is reproducible byte for byte. The output has exactly
/// `|V| + (d1−1)·indeg(s) + (d2−1)·indeg(t) + (m−1)·|other|` vertices.
pub fn reduce_st_cycle(
    g: &Graph,
    s: usize,
    t: usize,
    params: &ReductionParams,
) -> Result<Graph, ReductionError> {
    if g.kind() != GraphKind::Directed {
        return Err(ReductionError::WrongKind(KindMismatch {
            expected: GraphKind::Directed,
            found: g.kind(),
        }));
    }
    for v in [s, t] {
        if v >= g.n() {
            return Err(ReductionError::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    if s == t {
        return Err(ReductionError::SameEndpoints);
    }

    let mut next = g.n();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &(v, w) in g.edges() {
        let len = if w == s {
            params.d1
        } else if w == t {
            params.d2
        } else {
            params.m
        } as usize;
        let mut tail = v;
        for _ in 1..len {
            edges.push((tail, next));
            tail = next;
            next += 1;
        }
        edges.push((tail, w));
    }
    Graph::directed(next, edges).map_err(ReductionError::Graph)
}

/// Whether some simple cycle passes through both `s` and `t`, by
/// exhaustive enumeration within `limits`.
///
/// # Panics
/// When `s` or `t` is not a vertex of `g`.
pub fn cycle_through_pair(
    g: &Graph,
    s: usize,
    t: usize,
    limits: &OracleLimits,
) -> Result<bool, OracleError> {
    assert!(s < g.n() && t < g.n(), "terminals must be vertices of the graph");
    let outcome = visit_cycles(g, limits, |path| {
        if path.contains(&s) && path.contains(&t) {
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
