use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Ok,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Inconclusive runs are not failures.
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Ok | Verdict::Inconclusive => 0,
            Verdict::Fail => 1,
        }
    }

    /// Worst of two verdicts: fail beats inconclusive beats ok.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Ok,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Inputs {
    /// SHA-256 over the graph source and the effective flags.
    pub digest: String,
    pub graph: String,
    pub flags: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Inputs,
    pub results: Value,
    pub verdict: Verdict,
    pub diagnostics: Vec<String>,
}

/// Result of a subcommand before it is wrapped into a [`Report`].
pub struct Outcome {
    pub results: Value,
    pub verdict: Verdict,
    pub diagnostics: Vec<String>,
    /// One-line human summary.
    pub summary: String,
}

impl Outcome {
    pub fn new(results: Value, verdict: Verdict, summary: impl Into<String>) -> Self {
        Outcome { results, verdict, diagnostics: Vec::new(), summary: summary.into() }
    }

    pub fn fail(diagnostic: impl Into<String>) -> Self {
        Outcome { results: Value::Null, verdict: Verdict::Fail, summary: String::new(), diagnostics: vec![diagnostic.into()] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_combine_worst_first() {
        assert_eq!(Verdict::Ok.and(Verdict::Inconclusive), Verdict::Inconclusive);
        assert_eq!(Verdict::Inconclusive.and(Verdict::Fail), Verdict::Fail);
        assert_eq!(Verdict::Ok.and(Verdict::Ok), Verdict::Ok);
        assert_eq!(Verdict::Inconclusive.exit_code(), 0);
        assert_eq!(Verdict::Fail.exit_code(), 1);
    }
}
