//! Argument parsing and subcommand dispatch.
//!
//! Exit codes: 0 for a "yes" or a produced artifact, 1 for a "no", 2 for
//! usage errors, 3 when an instance falls outside what the polynomial
//! deciders or the gated oracle can answer.

use std::fs;
use std::io;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use modcycle_core::classify::{
    classify_dc, classify_uc, closure_counterexample, thm7_reduce, ResidueSet,
};
use modcycle_core::graph::walk_is_cycle;
use modcycle_core::matrix::{shortest_cycle_mod, MatrixError, MAX_MATRIX_VERTICES};
use modcycle_core::oracle::{inventory, visit_cycles, OracleError, OracleLimits, VisitOutcome};
use modcycle_core::reduction::{reduce_st_cycle, ReductionError, ReductionParams};
use modcycle_core::undirected::{decide_uc_condition_case, even_cycle, odd_cycle, UndirectedError};
use modcycle_core::walks::{closed_walk_residues, decide_dc, shortest_closed_walk};
use modcycle_core::{Classification, Graph, GraphKind, Verdict};

use crate::bench::{run_bench, BenchError, BenchSpec, Engine};
use crate::format::{parse_graph, serialize_graph};
use crate::report::{digest, Payload, RunReport};

#[derive(Parser)]
#[command(
    name = "modcycle",
    version,
    about = "Classify, decide and benchmark cycle length modularity problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    /// Directed cycles.
    Dc,
    /// Undirected cycles.
    Uc,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    /// Boolean-matrix doubling search.
    Matrix,
    /// Product-graph breadth-first search.
    Bfs,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a (set, modulus) instance without touching a graph.
    Classify {
        /// Which problem family to classify.
        #[arg(long, value_enum)]
        kind: ProblemArg,
        /// The modulus.
        #[arg(long)]
        m: u32,
        /// Comma-separated residues, e.g. "1,3".
        #[arg(long)]
        set: String,
    },
    /// Decide whether the graph has a cycle with length residue in the set.
    Detect {
        /// Graph file in the text format.
        #[arg(long)]
        input: PathBuf,
        /// The modulus.
        #[arg(long)]
        m: u32,
        /// Comma-separated residues.
        #[arg(long)]
        set: String,
    },
    /// Find a shortest qualifying cycle in a directed graph.
    Shortest {
        /// Graph file in the text format.
        #[arg(long)]
        input: PathBuf,
        /// The modulus.
        #[arg(long)]
        m: u32,
        /// Comma-separated residues.
        #[arg(long)]
        set: String,
        /// Engine; defaults to matrix up to its size cap, then bfs.
        #[arg(long, value_enum)]
        engine: Option<EngineArg>,
    },
    /// Subdivide a digraph so cycle residues encode passage through s and t.
    Reduce {
        /// Directed graph file in the text format.
        #[arg(long)]
        input: PathBuf,
        /// First terminal.
        #[arg(long)]
        s: usize,
        /// Second terminal.
        #[arg(long)]
        t: usize,
        /// The modulus.
        #[arg(long)]
        m: u32,
        /// Comma-separated residues.
        #[arg(long)]
        set: String,
        /// Path length replacing edges into s.
        #[arg(long)]
        d1: u32,
        /// Path length replacing edges into t.
        #[arg(long)]
        d2: u32,
        /// Write the output graph here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exhaustively enumerate simple cycles, optionally deciding a set.
    Oracle {
        /// Graph file in the text format.
        #[arg(long)]
        input: PathBuf,
        /// The modulus; requires --set.
        #[arg(long)]
        m: Option<u32>,
        /// Comma-separated residues; requires --m.
        #[arg(long)]
        set: Option<String>,
    },
    /// Time the shortest-cycle engines on seeded random digraphs.
    Bench {
        /// Vertices per instance.
        #[arg(long)]
        n: usize,
        /// Edge probability in [0, 1].
        #[arg(long)]
        density: f64,
        /// The modulus.
        #[arg(long)]
        m: u32,
        /// Comma-separated residues.
        #[arg(long)]
        set: String,
        /// Engines to time.
        #[arg(long, value_delimiter = ',', default_value = "matrix,bfs")]
        engines: Vec<String>,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Seed of the first instance; trial i uses seed + i.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of instances per engine.
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Allow self-loops (cycles of length 1) in generated digraphs.
        #[arg(long)]
        self_loops: bool,
        /// Generate bipartite digraphs (all cycles even), the worst case
        /// for odd target residues. Overrides --self-loops.
        #[arg(long)]
        bipartite: bool,
    },
}

/// A failed run: the message goes to stderr, the variant fixes the code.
enum Failure {
    /// Exit 2: the invocation or its input files are unusable.
    Usage(String),
    /// Exit 3: the instance is beyond the deciders or the oracle gates.
    Limit(String),
}

type CmdResult = Result<i32, Failure>;

struct Ctx {
    argv: Vec<String>,
    started: Instant,
}

impl Ctx {
    fn emit(&self, input_digest: Option<String>, payload: Payload) {
        RunReport {
            argv: self.argv.clone(),
            input_digest,
            millis: self.started.elapsed().as_secs_f64() * 1e3,
            payload,
        }
        .print();
    }
}

/// Parses argv and runs the chosen subcommand, returning the exit code.
pub fn run(argv: impl IntoIterator<Item = String>) -> i32 {
    let argv: Vec<String> = argv.into_iter().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        // clap already uses 0 for --help/--version and 2 for usage errors.
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let ctx = Ctx { argv, started: Instant::now() };
    let result = match cli.command {
        Command::Classify { kind, m, set } => cmd_classify(&ctx, kind, m, &set),
        Command::Detect { input, m, set } => cmd_detect(&ctx, &input, m, &set),
        Command::Shortest { input, m, set, engine } => cmd_shortest(&ctx, &input, m, &set, engine),
        Command::Reduce { input, s, t, m, set, d1, d2, output } => {
            cmd_reduce(&input, s, t, m, &set, d1, d2, output.as_deref())
        }
        Command::Oracle { input, m, set } => cmd_oracle(&ctx, &input, m, set.as_deref()),
        Command::Bench { n, density, m, set, engines, csv, seed, trials, self_loops, bipartite } => {
            cmd_bench(n, density, m, &set, &engines, csv.as_deref(), seed, trials, self_loops, bipartite)
        }
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("error: {msg}");
            3
        }
    }
}

fn parse_set(m: u32, spec: &str) -> Result<ResidueSet, Failure> {
    let mut members = Vec::new();
    for tok in spec.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue; // permits --set "" for the empty set
        }
        let r: u32 = tok
            .parse()
            .map_err(|_| Failure::Usage(format!("--set entry {tok:?} is not a residue")))?;
        members.push(r);
    }
    ResidueSet::new(m, members).map_err(|e| Failure::Usage(format!("invalid set: {e}")))
}

fn read_graph(path: &Path) -> Result<(Graph, String), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let parsed = parse_graph(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    Ok((parsed.graph, digest(&text)))
}

/// Default oracle limits with the cycle cap overridable through the
/// `MODCYCLE_ORACLE_CAP` environment variable.
fn env_limits() -> Result<OracleLimits, Failure> {
    let mut limits = OracleLimits::default();
    if let Ok(v) = std::env::var("MODCYCLE_ORACLE_CAP") {
        limits.max_cycles = v
            .parse()
            .map_err(|_| Failure::Usage(format!("MODCYCLE_ORACLE_CAP {v:?} is not an integer")))?;
    }
    Ok(limits)
}

/// Asserts the invariant that witnesses revalidate before they are emitted.
fn validated(g: &Graph, rs: &ResidueSet, vertices: Vec<usize>) -> Vec<usize> {
    assert_eq!(
        walk_is_cycle(g, &vertices),
        Ok(true),
        "emitted witness must be a simple cycle of the input graph",
    );
    assert!(rs.contains_length(vertices.len()), "emitted witness must have a qualifying length");
    vertices
}

/// First enumerated cycle satisfying `pred`; `None` after a complete scan.
fn first_cycle_where<P: FnMut(&[usize]) -> bool>(
    g: &Graph,
    limits: &OracleLimits,
    mut pred: P,
) -> Result<Option<Vec<usize>>, OracleError> {
    let mut found = None;
    let outcome = visit_cycles(g, limits, |path| {
        if pred(path) {
            found = Some(path.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    match outcome {
        VisitOutcome::Truncated => Err(OracleError::Truncated { cap: limits.max_cycles }),
        _ => Ok(found),
    }
}

fn cmd_classify(ctx: &Ctx, kind: ProblemArg, m: u32, set: &str) -> CmdResult {
    let rs = parse_set(m, set)?;
    let (problem, classification) = match kind {
        ProblemArg::Dc => ("dc", classify_dc(&rs)),
        ProblemArg::Uc => ("uc", classify_uc(&rs)),
    };
    let summary = match classification.witness {
        Some(w) => format!(
            "{} of {rs}: {} ({}); hardness witness {w}",
            problem.to_uppercase(),
            classification.verdict,
            classification.citation,
        ),
        None => format!(
            "{} of {rs}: {} ({})",
            problem.to_uppercase(),
            classification.verdict,
            classification.citation,
        ),
    };
    eprintln!("{summary}");
    ctx.emit(
        None,
        Payload::Classify {
            problem: problem.to_string(),
            m,
            set: rs.members().collect(),
            verdict: classification.verdict.to_string(),
            citation: classification.citation.to_string(),
            witness: classification.witness.map(Into::into),
        },
    );
    Ok(0)
}

struct Decision {
    answer: bool,
    method: &'static str,
    witness: Option<Vec<usize>>,
    warning: Option<String>,
}

fn detect_directed(g: &Graph, rs: &ResidueSet, citation: &str) -> Result<Decision, Failure> {
    let answer = match citation {
        // Full set: any cycle qualifies, so this is a cyclicity test.
        "trivial" => !closed_walk_residues(g, rs.m())
            .expect("input is directed and the modulus was validated")
            .is_empty(),
        _ => decide_dc(g, rs).expect("the classification guarantees the closed regime"),
    };
    let witness = answer.then(|| {
        let walk = shortest_closed_walk(g, rs)
            .expect("input is directed")
            .expect("a qualifying closed walk was just detected");
        let mut vertices = walk.vertices;
        vertices.pop(); // drop the repeated start: minimal walks are simple
        vertices
    });
    Ok(Decision { answer, method: "walk-detector", witness, warning: None })
}

fn detect_undirected(
    g: &Graph,
    rs: &ResidueSet,
    citation: &str,
    limits: &OracleLimits,
) -> Result<Decision, Failure> {
    if citation == "thm6" {
        // m = 2 with S = {0}: the even-cycle problem.
        let witness = even_cycle(g).expect("input is undirected");
        return Ok(Decision {
            answer: witness.is_some(),
            method: "even-cycle",
            witness: witness.map(|w| w.vertices),
            warning: None,
        });
    }
    let divisor = thm7_reduce(rs).expect("the classification guarantees the closed regime").g;
    let answer = decide_uc_condition_case(g, rs, limits).map_err(|e| match e {
        UndirectedError::OracleLimit(o) => {
            Failure::Limit(format!("the divisor-{divisor} case needs cycle enumeration: {o}"))
        }
        other => unreachable!("kind and regime were checked: {other}"),
    })?;
    let witness = if !answer {
        None
    } else if divisor == 2 {
        Some(odd_cycle(g).expect("input is undirected").expect("an odd cycle was detected").vertices)
    } else {
        // A single length not divisible by the divisor both certifies the
        // period test and is itself a qualifying cycle.
        Some(
            first_cycle_where(g, limits, |p| p.len() % divisor as usize != 0)
                .expect("the period scan above already completed within the same limits")
                .expect("some cycle length is not divisible by the divisor"),
        )
    };
    Ok(Decision { answer, method: "divisor-condition", witness, warning: None })
}

fn detect_fallback(
    g: &Graph,
    rs: &ResidueSet,
    classification: &Classification,
    limits: &OracleLimits,
) -> Result<Decision, Failure> {
    let warning = match classification.verdict {
        Verdict::NpComplete => format!(
            "NP-complete instance (closure violation {}); falling back to gated enumeration",
            classification.witness.expect("NP-complete verdicts carry a witness"),
        ),
        Verdict::TractableExternal => format!(
            "polynomial only by an algorithm outside this toolkit ({}); \
             falling back to gated enumeration",
            classification.citation,
        ),
        _ => "tractability open; falling back to gated enumeration".to_string(),
    };
    eprintln!("warning: {warning}");
    let witness = first_cycle_where(g, limits, |p| rs.contains_length(p.len()))
        .map_err(|e| Failure::Limit(e.to_string()))?;
    Ok(Decision { answer: witness.is_some(), method: "oracle", witness, warning: Some(warning) })
}

fn cmd_detect(ctx: &Ctx, input: &Path, m: u32, set: &str) -> CmdResult {
    let (g, input_digest) = read_graph(input)?;
    let rs = parse_set(m, set)?;
    let classification = match g.kind() {
        GraphKind::Directed => classify_dc(&rs),
        GraphKind::Undirected => classify_uc(&rs),
    };
    let limits = env_limits()?;
    let decision = match (classification.verdict, g.kind()) {
        (Verdict::TractableHere, GraphKind::Directed) => {
            detect_directed(&g, &rs, classification.citation)?
        }
        (Verdict::TractableHere, GraphKind::Undirected) => {
            detect_undirected(&g, &rs, classification.citation, &limits)?
        }
        _ => detect_fallback(&g, &rs, &classification, &limits)?,
    };
    let witness = decision.witness.map(|w| validated(&g, &rs, w));
    match &witness {
        Some(w) => eprintln!(
            "yes: cycle of length {} through {:?} ({})",
            w.len(),
            w,
            decision.method,
        ),
        None if decision.answer => eprintln!("yes ({})", decision.method),
        None => eprintln!("no ({})", decision.method),
    }
    let answer = decision.answer;
    ctx.emit(
        Some(input_digest),
        Payload::Detect {
            m,
            set: rs.members().collect(),
            method: decision.method.to_string(),
            citation: classification.citation.to_string(),
            answer,
            witness,
            warning: decision.warning,
        },
    );
    Ok(if answer { 0 } else { 1 })
}

fn cmd_shortest(
    ctx: &Ctx,
    input: &Path,
    m: u32,
    set: &str,
    engine: Option<EngineArg>,
) -> CmdResult {
    let (g, input_digest) = read_graph(input)?;
    let rs = parse_set(m, set)?;
    if g.kind() != GraphKind::Directed {
        return Err(Failure::Usage(
            "shortest requires a directed graph; undirected decisions go through detect".into(),
        ));
    }
    if rs.contains(0) {
        return Err(Failure::Limit(
            "the shortest-cycle engines require 0 outside the set".into(),
        ));
    }
    if let Some(w) = closure_counterexample(&rs) {
        return Err(Failure::Limit(format!(
            "the shortest-cycle engines require a complement closed under addition; \
             it fails here ({w})"
        )));
    }
    let engine = engine.unwrap_or(if g.n() <= MAX_MATRIX_VERTICES {
        EngineArg::Matrix
    } else {
        EngineArg::Bfs
    });
    let (engine_name, witness) = match engine {
        EngineArg::Matrix => {
            let w = match shortest_cycle_mod(&g, &rs) {
                Ok(w) => w,
                Err(MatrixError::TooLarge { n }) => {
                    return Err(Failure::Limit(format!(
                        "matrix engine is capped at {MAX_MATRIX_VERTICES} vertices, got {n}; \
                         rerun with --engine bfs"
                    )))
                }
                Err(e) => unreachable!("kind, modulus and regime were checked: {e}"),
            };
            ("matrix", w.map(|w| w.vertices))
        }
        EngineArg::Bfs => {
            let walk = shortest_closed_walk(&g, &rs).expect("input is directed");
            let vertices = walk.map(|w| {
                let mut vs = w.vertices;
                vs.pop(); // drop the repeated start: minimal walks are simple
                vs
            });
            ("bfs", vertices)
        }
    };
    let witness = witness.map(|w| validated(&g, &rs, w));
    let k_min = witness.as_ref().map(Vec::len);
    match (&witness, k_min) {
        (Some(w), Some(k)) => eprintln!("shortest qualifying cycle: length {k}, {w:?} ({engine_name})"),
        _ => eprintln!("no qualifying cycle ({engine_name})"),
    }
    ctx.emit(
        Some(input_digest),
        Payload::Shortest {
            m,
            set: rs.members().collect(),
            engine: engine_name.to_string(),
            k_min,
            residue: k_min.map(|k| (k % m as usize) as u32),
            witness,
        },
    );
    Ok(if k_min.is_some() { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_reduce(
    input: &Path,
    s: usize,
    t: usize,
    m: u32,
    set: &str,
    d1: u32,
    d2: u32,
    output: Option<&Path>,
) -> CmdResult {
    let (g, _) = read_graph(input)?;
    if g.kind() != GraphKind::Directed {
        return Err(Failure::Usage("reduce requires a directed input graph".into()));
    }
    let rs = parse_set(m, set)?;
    let p = ((d1 as u64 + d2 as u64) % m as u64) as u32;
    let params =
        ReductionParams::new(&rs, p, d1, d2).map_err(|e| Failure::Usage(e.to_string()))?;
    let out = reduce_st_cycle(&g, s, t, &params).map_err(|e| match e {
        ReductionError::Graph(ge) => Failure::Limit(format!("output graph too large: {ge}")),
        other => Failure::Usage(other.to_string()),
    })?;

    let members =
        rs.members().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
    let mut text = String::new();
    text.push_str(&format!(
        "# subdivision of {} ({} vertices, {} edges)\n",
        input.display(),
        g.n(),
        g.edge_count(),
    ));
    text.push_str(&format!("# terminals: s={s} t={t}\n"));
    text.push_str(&format!("# params: m={m} set={members} d1={d1} d2={d2} p={p}\n"));
    text.push_str(
        "# cycle residues by terminals crossed: none 0, s only d1, t only d2, both p\n",
    );
    text.push_str(&serialize_graph(&out));

    match output {
        Some(path) => fs::write(path, &text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    eprintln!(
        "reduced {} vertices, {} edges into {} vertices, {} edges",
        g.n(),
        g.edge_count(),
        out.n(),
        out.edge_count(),
    );
    Ok(0)
}

fn cmd_oracle(ctx: &Ctx, input: &Path, m: Option<u32>, set: Option<&str>) -> CmdResult {
    let (g, input_digest) = read_graph(input)?;
    let mut limits = env_limits()?;
    // The cycle cap still bounds the work, so the explicit enumeration
    // command does not need the vertex gate the detect fallback keeps.
    limits.max_vertices = None;
    let inv = inventory(&g, &limits).expect("the vertex gate is lifted");

    let (m, rs) = match (m, set) {
        (Some(m), Some(set)) => (Some(m), Some(parse_set(m, set)?)),
        (None, None) => (None, None),
        _ => return Err(Failure::Usage("--m and --set go together".into())),
    };
    let answer = rs.as_ref().map(|rs| inv.lengths.iter().any(|&l| rs.contains_length(l)));
    let period = inv.lengths.iter().fold(0, |acc, &l| gcd(acc, l));

    let lengths: Vec<usize> = inv.lengths.iter().copied().collect();
    eprintln!(
        "{} simple cycles{}; lengths {:?}; period {}",
        inv.count,
        if inv.truncated { " (truncated)" } else { "" },
        lengths,
        period,
    );
    ctx.emit(
        Some(input_digest),
        Payload::Oracle {
            m,
            set: rs.as_ref().map(|rs| rs.members().collect()),
            lengths,
            count: inv.count,
            truncated: inv.truncated,
            period,
            answer,
        },
    );
    if inv.truncated {
        eprintln!(
            "error: enumeration truncated at the cap of {}; counts and lengths are lower bounds \
             (raise MODCYCLE_ORACLE_CAP to finish)",
            limits.max_cycles,
        );
        return Ok(3);
    }
    Ok(if answer == Some(false) { 1 } else { 0 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    n: usize,
    density: f64,
    m: u32,
    set: &str,
    engines: &[String],
    csv: Option<&Path>,
    seed: u64,
    trials: usize,
    self_loops: bool,
    bipartite: bool,
) -> CmdResult {
    if !density.is_finite() || !(0.0..=1.0).contains(&density) {
        return Err(Failure::Usage(format!("--density {density} is not in [0, 1]")));
    }
    if trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    let rs = parse_set(m, set)?;
    let engines: Vec<Engine> = engines
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()
        .map_err(Failure::Usage)?;
    if engines.is_empty() {
        return Err(Failure::Usage("--engines must name at least one engine".into()));
    }

    let spec = BenchSpec { n, density, rs, seed, trials, engines, self_loops, bipartite };
    let rows = run_bench(&spec).map_err(|e| match e {
        BenchError::MatrixTooLarge { .. } => Failure::Usage(e.to_string()),
        BenchError::Unsupported => Failure::Limit(e.to_string()),
    })?;

    match csv {
        Some(path) => {
            let file = fs::File::create(path)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            crate::bench::write_csv(io::BufWriter::new(file), &rows)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
        }
        None => {
            crate::bench::write_csv(io::stdout().lock(), &rows)
                .map_err(|e| Failure::Usage(format!("cannot write csv: {e}")))?;
        }
    }
    for &engine in &spec.engines {
        let times: Vec<f64> =
            rows.iter().filter(|r| r.engine == engine).map(|r| r.millis).collect();
        let mean = times.iter().sum::<f64>() / times.len() as f64;
        eprintln!("{}: {} trials, mean {:.3} ms", engine.name(), times.len(), mean);
    }
    Ok(0)
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
