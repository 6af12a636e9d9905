//! Times the two shortest-cycle engines on seeded random digraphs.
//!
//! Both engines compute the same number: the least length of a closed walk
//! whose residue lies in the set, which under the engines' precondition is
//! also the shortest qualifying cycle length. Disagreement is an engine
//! bug, so it halts the run rather than producing a misleading table.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::Instant;

use modcycle_core::classify::{complement_closed, ResidueSet};
use modcycle_core::matrix::{kmin_search, MAX_MATRIX_VERTICES};
use modcycle_core::walks::shortest_closed_walk;
use modcycle_core::GraphKind;

use crate::gen::{random_bipartite_digraph, random_graph};

/// Engine under measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    /// Boolean-matrix doubling search.
    Matrix,
    /// Product-graph breadth-first search from every start vertex.
    Bfs,
}

impl Engine {
    /// The name used in CSV rows and flags.
    pub fn name(self) -> &'static str {
        match self {
            Engine::Matrix => "matrix",
            Engine::Bfs => "bfs",
        }
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "matrix" => Ok(Engine::Matrix),
            "bfs" => Ok(Engine::Bfs),
            other => Err(format!("unknown engine {other:?}; choose matrix or bfs")),
        }
    }
}

/// Instance family to measure.
#[derive(Clone, Debug)]
pub struct BenchSpec {
    /// Vertices per instance.
    pub n: usize,
    /// Edge probability.
    pub density: f64,
    /// The residue set both engines answer for.
    pub rs: ResidueSet,
    /// Seed of the first instance; trial `i` uses `seed + i`.
    pub seed: u64,
    /// Number of instances.
    pub trials: usize,
    /// Engines to time, in order.
    pub engines: Vec<Engine>,
    /// Allow self-loops in the generated digraphs.
    pub self_loops: bool,
    /// Constrain edges to cross between two vertex halves. All closed
    /// walks are then even, so odd target residues make both engines run
    /// to completion: the worst-case regime. Ignores `self_loops`.
    pub bipartite: bool,
}

/// One timed engine run.
#[derive(Clone, Debug)]
pub struct BenchRow {
    /// Engine that ran.
    pub engine: Engine,
    /// Vertices of the instance.
    pub n: usize,
    /// Edge probability of the instance.
    pub density: f64,
    /// Modulus.
    pub m: u32,
    /// Set members, ascending.
    pub set: Vec<u32>,
    /// Shortest qualifying length found, if any.
    pub k_min: Option<usize>,
    /// Wall-clock milliseconds for the engine call alone.
    pub millis: f64,
    /// Seed of the instance.
    pub seed: u64,
}

/// Why a bench run cannot start.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchError {
    /// The matrix engine was requested beyond its dimension cap.
    MatrixTooLarge {
        /// Requested vertex count.
        n: usize,
    },
    /// The engines require `0 ∉ S` and a complement closed under addition.
    Unsupported,
}

impl fmt::Display for BenchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchError::MatrixTooLarge { n } => write!(
                f,
                "matrix engine is capped at {MAX_MATRIX_VERTICES} vertices, got {n}; \
                 drop it from --engines"
            ),
            BenchError::Unsupported => f.write_str(
                "bench requires 0 outside the set and a complement closed under addition mod m",
            ),
        }
    }
}

impl std::error::Error for BenchError {}

/// Generates `trials` seeded digraphs and times every requested engine on
/// each. Rows appear instance by instance, engines in the requested order.
///
/// # Panics
///
/// When the engines disagree on some instance, which would mean one of
/// them is wrong.
pub fn run_bench(spec: &BenchSpec) -> Result<Vec<BenchRow>, BenchError> {
    if spec.rs.contains(0) || !complement_closed(&spec.rs) {
        return Err(BenchError::Unsupported);
    }
    if spec.engines.contains(&Engine::Matrix) && spec.n > MAX_MATRIX_VERTICES {
        return Err(BenchError::MatrixTooLarge { n: spec.n });
    }

    let mut rows = Vec::new();
    for trial in 0..spec.trials {
        let seed = spec.seed + trial as u64;
        let g = if spec.bipartite {
            random_bipartite_digraph(spec.n, spec.density, seed)
        } else {
            random_graph(GraphKind::Directed, spec.n, spec.density, seed, spec.self_loops)
        };
        let mut agreed: Option<(Engine, Option<usize>)> = None;
        for &engine in &spec.engines {
            let start = Instant::now();
            let k_min = match engine {
                Engine::Matrix => kmin_search(&g, &spec.rs)
                    .expect("size and condition were checked up front")
                    .map(|hit| hit.k_min),
                Engine::Bfs => shortest_closed_walk(&g, &spec.rs)
                    .expect("generated graphs are directed")
                    .map(|walk| walk.len()),
            };
            let millis = start.elapsed().as_secs_f64() * 1e3;
            match agreed {
                None => agreed = Some((engine, k_min)),
                Some((first, k)) => assert_eq!(
                    k,
                    k_min,
                    "engines {} and {} disagree on seed {seed}",
                    first.name(),
                    engine.name(),
                ),
            }
            rows.push(BenchRow {
                engine,
                n: spec.n,
                density: spec.density,
                m: spec.rs.m(),
                set: spec.rs.members().collect(),
                k_min,
                millis,
                seed,
            });
        }
    }
    Ok(rows)
}

/// Writes rows as CSV with the header
/// `engine,n,density,m,set,k_min,millis,seed`. Set members are joined with
/// `+` to keep the column comma-free; an absent `k_min` is written `none`.
pub fn write_csv<W: Write>(mut w: W, rows: &[BenchRow]) -> io::Result<()> {
    writeln!(w, "engine,n,density,m,set,k_min,millis,seed")?;
    for r in rows {
        let set =
            r.set.iter().map(u32::to_string).collect::<Vec<_>>().join("+");
        let k_min = r.k_min.map_or_else(|| "none".to_string(), |k| k.to_string());
        writeln!(
            w,
            "{},{},{},{},{},{},{:.3},{}",
            r.engine.name(),
            r.n,
            r.density,
            r.m,
            set,
            k_min,
            r.millis,
            r.seed,
        )?;
    }
    Ok(())
}
