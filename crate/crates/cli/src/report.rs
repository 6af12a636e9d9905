//! Machine-readable run reports: every invocation prints exactly one JSON
//! document on stdout, keeping stderr free for summaries and warnings.

use serde::Serialize;
use sha2::{Digest, Sha256};

use modcycle_core::classify::HardnessWitness;

/// Envelope shared by every report: the argv echo, a digest of the input
/// file when one was read, wall-clock time, and the subcommand payload.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    /// The invocation, word for word.
    pub argv: Vec<String>,
    /// Hex SHA-256 of the raw input text; `null` without an input file.
    pub input_digest: Option<String>,
    /// Wall-clock milliseconds from dispatch to report.
    pub millis: f64,
    /// Subcommand-specific fields, tagged by `command`.
    #[serde(flatten)]
    pub payload: Payload,
}

impl RunReport {
    /// Prints the document to stdout as a single line of JSON.
    pub fn print(&self) {
        println!("{}", serde_json::to_string(self).expect("report fields serialize"));
    }
}

/// A closure-violation triple as it appears in reports.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct HardnessTriple {
    /// The target residue in the set.
    pub p: u32,
    /// First summand, outside the set.
    pub d1: u32,
    /// Second summand, outside the set.
    pub d2: u32,
}

impl From<HardnessWitness> for HardnessTriple {
    fn from(w: HardnessWitness) -> Self {
        HardnessTriple { p: w.p, d1: w.d1, d2: w.d2 }
    }
}

/// Subcommand-specific report fields.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Payload {
    /// Verdict for a `(set, modulus)` instance.
    Classify {
        /// `"dc"` or `"uc"`.
        problem: String,
        /// The modulus.
        m: u32,
        /// Set members, ascending.
        set: Vec<u32>,
        /// Verdict name.
        verdict: String,
        /// Tag naming the result the verdict rests on.
        citation: String,
        /// Closure violation backing an NP-completeness verdict.
        witness: Option<HardnessTriple>,
    },
    /// Decision for a graph instance.
    Detect {
        /// The modulus.
        m: u32,
        /// Set members, ascending.
        set: Vec<u32>,
        /// Which decision procedure ran.
        method: String,
        /// Tag naming the result the dispatch rests on.
        citation: String,
        /// Whether a qualifying cycle exists.
        answer: bool,
        /// A qualifying cycle when the method produces one; revalidated
        /// against the input graph before emission.
        witness: Option<Vec<usize>>,
        /// Set when the instance is outside the polynomial regime.
        warning: Option<String>,
    },
    /// Shortest qualifying cycle.
    Shortest {
        /// The modulus.
        m: u32,
        /// Set members, ascending.
        set: Vec<u32>,
        /// `"matrix"` or `"bfs"`.
        engine: String,
        /// Length of the shortest qualifying cycle, if any.
        k_min: Option<usize>,
        /// `k_min mod m`.
        residue: Option<u32>,
        /// The cycle itself; revalidated before emission.
        witness: Option<Vec<usize>>,
    },
    /// Exhaustive cycle inventory.
    Oracle {
        /// Modulus, when a decision was requested.
        m: Option<u32>,
        /// Set members, when a decision was requested.
        set: Option<Vec<u32>>,
        /// Distinct simple-cycle lengths, ascending.
        lengths: Vec<usize>,
        /// Number of simple cycles; a lower bound when truncated.
        count: u64,
        /// Whether the enumeration cap cut the scan short.
        truncated: bool,
        /// Gcd of all cycle lengths; 0 for an acyclic graph.
        period: usize,
        /// Whether some inventoried length qualifies, when requested.
        answer: Option<bool>,
    },
}

/// Hex SHA-256 of the input text, tying a report to the exact file bytes
/// it was computed from.
pub fn digest(text: &str) -> String {
    let hash = Sha256::digest(text.as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_the_documented_sha256() {
        assert_eq!(
            digest(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855",
        );
    }

    #[test]
    fn reports_serialize_with_the_command_tag() {
        let report = RunReport {
            argv: vec!["modcycle".into(), "classify".into()],
            input_digest: None,
            millis: 1.25,
            payload: Payload::Classify {
                problem: "dc".into(),
                m: 3,
                set: vec![2],
                verdict: "np-complete".into(),
                citation: "thm1i".into(),
                witness: Some(HardnessTriple { p: 2, d1: 1, d2: 1 }),
            },
        };
        let value: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        assert_eq!(value["command"], "classify");
        assert_eq!(value["m"], 3);
        assert_eq!(value["witness"]["p"], 2);
        assert_eq!(value["input_digest"], serde_json::Value::Null);
    }
}
