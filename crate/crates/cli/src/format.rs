//! Text format for graphs: `#` comment lines, a `<kind> <n>` header, then
//! one `u v` edge per line.
//!
//! Undirected edges may be written in either orientation; serialization
//! always emits the canonical form (sorted edges, smaller endpoint first),
//! so parse–serialize round-trips are byte-stable. Repeated edges collapse
//! to one with a warning, since cycle lengths ignore multiplicity.

use std::collections::HashSet;
use std::fmt;

use modcycle_core::graph::MAX_VERTICES;
use modcycle_core::{Graph, GraphKind};

/// Parse failure, located by the 1-based source line that triggered it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormatError {
    /// The input has no header line (it is empty or all comments).
    MissingHeader,
    /// The header line is not exactly two fields.
    BadHeader {
        /// Source line number.
        line: usize,
        /// The offending line.
        text: String,
    },
    /// The header kind is neither `directed` nor `undirected`.
    UnknownKind {
        /// Source line number.
        line: usize,
        /// The offending first field.
        kind: String,
    },
    /// The vertex count does not parse or exceeds [`MAX_VERTICES`].
    BadVertexCount {
        /// Source line number.
        line: usize,
        /// The offending second field.
        text: String,
    },
    /// An edge line is not exactly two integers.
    BadEdgeLine {
        /// Source line number.
        line: usize,
        /// The offending line.
        text: String,
    },
    /// An edge endpoint is not below the declared vertex count.
    EndpointOutOfRange {
        /// Source line number.
        line: usize,
        /// The edge as written.
        edge: (usize, usize),
        /// The declared vertex count.
        n: usize,
    },
    /// A self-loop in an undirected graph, which cannot carry one.
    SelfLoop {
        /// Source line number.
        line: usize,
        /// The looped vertex.
        vertex: usize,
    },
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::MissingHeader => {
                f.write_str("missing header line \"<directed|undirected> <n>\"")
            }
            FormatError::BadHeader { line, text } => {
                write!(f, "line {line}: header {text:?} is not \"<kind> <n>\"")
            }
            FormatError::UnknownKind { line, kind } => {
                write!(f, "line {line}: kind {kind:?} is neither \"directed\" nor \"undirected\"")
            }
            FormatError::BadVertexCount { line, text } => {
                write!(f, "line {line}: vertex count {text:?} is not an integer in 0..={MAX_VERTICES}")
            }
            FormatError::BadEdgeLine { line, text } => {
                write!(f, "line {line}: edge {text:?} is not \"<u> <v>\"")
            }
            FormatError::EndpointOutOfRange { line, edge: (u, v), n } => {
                write!(f, "line {line}: edge ({u}, {v}) has an endpoint outside 0..{n}")
            }
            FormatError::SelfLoop { line, vertex } => {
                write!(f, "line {line}: self-loop on {vertex} is invalid in an undirected graph")
            }
        }
    }
}

impl std::error::Error for FormatError {}

/// A parsed graph together with non-fatal notes about the source text.
#[derive(Clone, Debug)]
pub struct ParsedGraph {
    /// The graph.
    pub graph: Graph,
    /// One message per collapsed duplicate edge line.
    pub warnings: Vec<String>,
}

fn parse_endpoint(line: usize, text: &str, word: &str) -> Result<usize, FormatError> {
    word.parse().map_err(|_| FormatError::BadEdgeLine { line, text: text.to_string() })
}

/// Parses the text format. Blank lines and lines starting with `#` are
/// skipped; everything else must follow the header/edge grammar exactly.
pub fn parse_graph(text: &str) -> Result<ParsedGraph, FormatError> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            None
        } else {
            Some((i + 1, t))
        }
    });

    let (header_line, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [kind_word, count_word] = fields[..] else {
        return Err(FormatError::BadHeader { line: header_line, text: header.to_string() });
    };
    let kind = match kind_word {
        "directed" => GraphKind::Directed,
        "undirected" => GraphKind::Undirected,
        other => {
            return Err(FormatError::UnknownKind { line: header_line, kind: other.to_string() })
        }
    };
    let bad_count =
        || FormatError::BadVertexCount { line: header_line, text: count_word.to_string() };
    let n: usize = count_word.parse().map_err(|_| bad_count())?;
    if n > MAX_VERTICES {
        return Err(bad_count());
    }

    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut warnings = Vec::new();
    for (line, t) in lines {
        let words: Vec<&str> = t.split_whitespace().collect();
        let [uw, vw] = words[..] else {
            return Err(FormatError::BadEdgeLine { line, text: t.to_string() });
        };
        let u = parse_endpoint(line, t, uw)?;
        let v = parse_endpoint(line, t, vw)?;
        if u >= n || v >= n {
            return Err(FormatError::EndpointOutOfRange { line, edge: (u, v), n });
        }
        let canonical = match kind {
            GraphKind::Directed => (u, v),
            GraphKind::Undirected => {
                if u == v {
                    return Err(FormatError::SelfLoop { line, vertex: u });
                }
                (u.min(v), u.max(v))
            }
        };
        if seen.insert(canonical) {
            edges.push(canonical);
        } else {
            warnings.push(format!("line {line}: duplicate edge {u} {v} collapsed"));
        }
    }

    let graph = match kind {
        GraphKind::Directed => Graph::directed(n, edges),
        GraphKind::Undirected => Graph::undirected(n, edges),
    }
    .expect("every line was validated against the header");
    Ok(ParsedGraph { graph, warnings })
}

/// Serializes a graph in canonical form: the header, then the sorted edge
/// list with undirected edges written smaller endpoint first.
pub fn serialize_graph(g: &Graph) -> String {
    use fmt::Write;

    let kind = match g.kind() {
        GraphKind::Directed => "directed",
        GraphKind::Undirected => "undirected",
    };
    let mut out = format!("{kind} {}\n", g.n());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("string writes cannot fail");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_blanks_and_edges() {
        let text = "# a triangle\n\ndirected 3\n0 1\n1 2\n# middle note\n2 0\n";
        let parsed = parse_graph(text).unwrap();
        assert_eq!(parsed.graph, Graph::directed(3, [(0, 1), (1, 2), (2, 0)]).unwrap());
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn round_trips_canonically() {
        let g = Graph::undirected(5, [(3, 1), (0, 4), (2, 0)]).unwrap();
        let text = serialize_graph(&g);
        assert_eq!(text, "undirected 5\n0 2\n0 4\n1 3\n");
        let again = parse_graph(&text).unwrap();
        assert_eq!(again.graph, g);
        assert_eq!(serialize_graph(&again.graph), text);
    }

    #[test]
    fn either_orientation_parses_to_the_same_graph() {
        let a = parse_graph("undirected 3\n0 1\n1 2\n").unwrap().graph;
        let b = parse_graph("undirected 3\n1 0\n2 1\n").unwrap().graph;
        assert_eq!(a, b);
    }

    #[test]
    fn duplicate_edges_collapse_with_a_warning() {
        let parsed = parse_graph("directed 2\n0 1\n0 1\n").unwrap();
        assert_eq!(parsed.graph.edge_count(), 1);
        assert_eq!(parsed.warnings, vec!["line 3: duplicate edge 0 1 collapsed"]);

        let parsed = parse_graph("undirected 2\n0 1\n1 0\n").unwrap();
        assert_eq!(parsed.graph.edge_count(), 1);
        assert_eq!(parsed.warnings, vec!["line 3: duplicate edge 1 0 collapsed"]);
    }

    #[test]
    fn directed_self_loops_parse_and_undirected_ones_do_not() {
        let parsed = parse_graph("directed 1\n0 0\n").unwrap();
        assert_eq!(parsed.graph.edge_count(), 1);

        let err = parse_graph("undirected 2\n1 1\n").unwrap_err();
        assert_eq!(err, FormatError::SelfLoop { line: 2, vertex: 1 });
    }

    #[test]
    fn rejects_malformed_input_with_line_numbers() {
        assert_eq!(parse_graph("# nothing\n").unwrap_err(), FormatError::MissingHeader);
        assert_eq!(
            parse_graph("directed 2 extra\n").unwrap_err(),
            FormatError::BadHeader { line: 1, text: "directed 2 extra".into() },
        );
        assert_eq!(
            parse_graph("mixed 2\n").unwrap_err(),
            FormatError::UnknownKind { line: 1, kind: "mixed".into() },
        );
        assert_eq!(
            parse_graph("directed many\n").unwrap_err(),
            FormatError::BadVertexCount { line: 1, text: "many".into() },
        );
        assert_eq!(
            parse_graph("directed 2\n0\n").unwrap_err(),
            FormatError::BadEdgeLine { line: 2, text: "0".into() },
        );
        assert_eq!(
            parse_graph("directed 2\n0 two\n").unwrap_err(),
            FormatError::BadEdgeLine { line: 2, text: "0 two".into() },
        );
        assert_eq!(
            parse_graph("directed 2\n\n# c\n0 5\n").unwrap_err(),
            FormatError::EndpointOutOfRange { line: 4, edge: (0, 5), n: 2 },
        );
    }
}
