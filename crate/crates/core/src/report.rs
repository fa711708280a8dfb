use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::exact::{serde_rat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Equality,
    Violated,
    /// Result of a conjecture probe; never counts as a failure.
    Probe,
    /// An expected violation on inputs outside a theorem's hypothesis.
    CounterexampleConfirmed,
}

impl Verdict {
    pub fn from_slack(slack: &Rat) -> Self {
        if slack.is_zero() {
            Verdict::Equality
        } else if slack.is_negative() {
            Verdict::Violated
        } else {
            Verdict::Holds
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Lower,
    Upper,
}

/// One compared quantity. `slack` is `actual - bound` for lower bounds and
/// `bound - actual` for upper bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub index: usize,
    pub side: Side,
    #[serde(with = "serde_rat")]
    pub bound: Rat,
    #[serde(with = "serde_rat")]
    pub actual: Rat,
    #[serde(with = "serde_rat")]
    pub slack: Rat,
    pub verdict: Verdict,
}

impl BoundEntry {
    pub fn lower(index: usize, bound: Rat, actual: Rat) -> Self {
        let slack = &actual - &bound;
        BoundEntry { index, side: Side::Lower, verdict: Verdict::from_slack(&slack), bound, actual, slack }
    }

    pub fn upper(index: usize, bound: Rat, actual: Rat) -> Self {
        let slack = &bound - &actual;
        BoundEntry { index, side: Side::Upper, verdict: Verdict::from_slack(&slack), bound, actual, slack }
    }

    pub fn probe(self) -> Self {
        BoundEntry { verdict: Verdict::Probe, ..self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub bound: String,
    pub polytope: String,
    pub dim: usize,
    pub entries: Vec<BoundEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl BoundReport {
    pub fn new(bound: impl Into<String>, polytope: impl Into<String>, dim: usize, entries: Vec<BoundEntry>) -> Self {
        let verdict = overall(&entries);
        BoundReport { bound: bound.into(), polytope: polytope.into(), dim, entries, notes: Vec::new(), verdict }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn is_violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }
}

fn overall(entries: &[BoundEntry]) -> Verdict {
    if entries.iter().any(|e| e.verdict == Verdict::Violated) {
        Verdict::Violated
    } else if !entries.is_empty() && entries.iter().all(|e| e.verdict == Verdict::Probe) {
        Verdict::Probe
    } else if !entries.is_empty() && entries.iter().all(|e| e.verdict == Verdict::Equality) {
        Verdict::Equality
    } else {
        Verdict::Holds
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn verdicts_follow_slack() {
        assert_eq!(BoundEntry::lower(1, rat(1, 2), rat(1, 2)).verdict, Verdict::Equality);
        assert_eq!(BoundEntry::lower(1, rat(1, 2), rat(1, 3)).verdict, Verdict::Violated);
        assert_eq!(BoundEntry::upper(1, rat(1, 2), rat(1, 3)).verdict, Verdict::Holds);
        assert_eq!(BoundEntry::upper(1, rat(1, 2), rat(1, 3)).slack, rat(1, 6));
    }

    #[test]
    fn overall_verdict() {
        let eq = BoundEntry::lower(1, rat(1, 1), rat(1, 1));
        let ok = BoundEntry::lower(2, rat(0, 1), rat(1, 1));
        let bad = BoundEntry::lower(3, rat(2, 1), rat(1, 1));
        assert_eq!(BoundReport::new("x", "p", 3, vec![eq.clone()]).verdict, Verdict::Equality);
        assert_eq!(BoundReport::new("x", "p", 3, vec![eq.clone(), ok]).verdict, Verdict::Holds);
        assert_eq!(BoundReport::new("x", "p", 3, vec![eq, bad.clone()]).verdict, Verdict::Violated);
        assert_eq!(BoundReport::new("x", "p", 3, vec![bad.probe()]).verdict, Verdict::Probe);
    }

    #[test]
    fn serializes_exactly() {
        let r = BoundReport::new("thm11", "T(2,3)", 3, vec![BoundEntry::lower(1, rat(-1, 3), rat(2, 3))]);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains(r#""bound":"-1/3""#), "{json}");
        assert!(json.contains(r#""verdict":"holds""#));
    }
}
