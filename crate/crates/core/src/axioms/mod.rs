//! Probe-based verification of the axioms and atlas conditions.
//!
//! Universally quantified conditions are evaluated on finite probe sets and
//! reported as `BOUNDED-PASS` when no violation is found; conditions whose
//! hypotheses are enumerated exhaustively report `PASS`. A `FAIL` always
//! carries a [`Witness`] that [`Witness::replay`] reproduces.

mod audit;
mod checks;
mod probes;
mod witness;

pub use audit::{audit, statements, AuditFinding, AuditStatus, Statement};
pub use probes::{ProbeConfig, ProbeSet, DEFAULT_PROBE_BUDGET, PROBE_CAP_ENV};
pub use witness::Witness;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::atlas::{AtlasError, AtlasSpace};
use crate::retraction::RetractionError;
use crate::scalars::rational_to_string;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    TI,
    EC,
    SC,
    GG,
    CO,
    LA,
    ALA,
    FC,
}

impl Condition {
    pub const ALL: [Condition; 14] = [
        Condition::A1,
        Condition::A2,
        Condition::A3,
        Condition::A4,
        Condition::A5,
        Condition::A6,
        Condition::TI,
        Condition::EC,
        Condition::SC,
        Condition::GG,
        Condition::CO,
        Condition::LA,
        Condition::ALA,
        Condition::FC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::A1 => "A1",
            Condition::A2 => "A2",
            Condition::A3 => "A3",
            Condition::A4 => "A4",
            Condition::A5 => "A5",
            Condition::A6 => "A6",
            Condition::TI => "TI",
            Condition::EC => "EC",
            Condition::SC => "SC",
            Condition::GG => "GG",
            Condition::CO => "CO",
            Condition::LA => "LA",
            Condition::ALA => "ALA",
            Condition::FC => "FC",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            Condition::A1 => "atlas invariant under precomposition with W_T",
            Condition::A2 => "chart overlaps closed convex with W_T transitions",
            Condition::A3 => "any two points lie in a common apartment",
            Condition::A4 => "any two Weyl chambers contain sub-chambers in a common apartment",
            Condition::A5 => "retractions do not increase distances",
            Condition::A6 => "apartments pairwise meeting in half-apartments meet jointly",
            Condition::TI => "triangle inequality",
            Condition::EC => "exchange condition",
            Condition::SC => "sundial configuration",
            Condition::GG => "germs at a vertex lie in a common apartment",
            Condition::CO => "opposite chambers lie in a unique common apartment",
            Condition::LA => "any two chamber germs lie in a common apartment",
            Condition::ALA => "a point and a chamber germ lie in a common apartment",
            Condition::FC => "segments covered by finitely many parallel chambers",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Condition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let up = s.trim().to_ascii_uppercase();
        Condition::ALL
            .into_iter()
            .find(|c| c.name() == up)
            .ok_or_else(|| format!("unknown condition `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    BoundedPass,
    Vacuous,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::BoundedPass => "BOUNDED-PASS",
            Verdict::Vacuous => "VACUOUS",
            Verdict::Fail => "FAIL",
        }
    }

    pub fn is_fail(self) -> bool {
        self == Verdict::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// Counts of the probes a check examined.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Inventory {
    pub points: usize,
    pub pairs: usize,
    pub triples: usize,
    pub germs: usize,
    pub chambers: usize,
    pub overlaps: usize,
}

#[derive(Debug, Clone)]
pub struct ConditionReport {
    pub condition: Condition,
    pub verdict: Verdict,
    pub inventory: Inventory,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

impl ConditionReport {
    fn new(condition: Condition) -> Self {
        Self {
            condition,
            verdict: Verdict::BoundedPass,
            inventory: Inventory::default(),
            witness: None,
            notes: Vec::new(),
        }
    }

    fn fail(&mut self, w: Witness) {
        if self.witness.is_none() {
            self.verdict = Verdict::Fail;
            self.witness = Some(w);
        }
    }

    fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn to_json(&self, space: &AtlasSpace) -> Value {
        json!({
            "condition": self.condition.name(),
            "verdict": self.verdict.as_str(),
            "inventory": self.inventory,
            "witness": self.witness.as_ref().map(|w| w.to_json(space)),
            "notes": self.notes,
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AxiomError {
    #[error(transparent)]
    Atlas(#[from] AtlasError),
    #[error(transparent)]
    Retraction(#[from] RetractionError),
}

/// Verdicts for a set of conditions with the implication audit.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub conditions: Vec<ConditionReport>,
    pub audit: Vec<AuditFinding>,
    pub config: ProbeConfig,
}

impl AxiomReport {
    pub fn get(&self, c: Condition) -> Option<&ConditionReport> {
        self.conditions.iter().find(|r| r.condition == c)
    }

    pub fn verdict(&self, c: Condition) -> Option<Verdict> {
        self.get(c).map(|r| r.verdict)
    }

    pub fn any_fail(&self) -> bool {
        self.conditions.iter().any(|r| r.verdict.is_fail())
    }

    pub fn inconsistent(&self) -> bool {
        self.audit.iter().any(|f| f.status == AuditStatus::Inconsistent)
    }

    /// One `CONDITION VERDICT` line per condition.
    pub fn verdict_table(&self) -> String {
        let mut s = String::new();
        for r in &self.conditions {
            s.push_str(&format!("{:<4}{}\n", r.condition.name(), r.verdict));
        }
        s
    }

    pub fn to_json(&self, space: &AtlasSpace) -> Value {
        json!({
            "metric_scale": rational_to_string(space.metric_scale()),
            "probes": self.config,
            "conditions": self.conditions.iter().map(|r| r.to_json(space)).collect::<Vec<_>>(),
            "audit": self.audit,
            "statements": statements(self),
        })
    }

    pub fn to_text(&self, space: &AtlasSpace) -> String {
        let mut s = format!(
            "{:<5}{:<14}{:>7}{:>7}{:>8}{:>7}  {}\n",
            "cond", "verdict", "points", "pairs", "triples", "germs", "detail"
        );
        for r in &self.conditions {
            let inv = &r.inventory;
            let detail = match &r.witness {
                Some(w) => w.to_json(space).to_string(),
                None => r.condition.summary().to_string(),
            };
            s.push_str(&format!(
                "{:<5}{:<14}{:>7}{:>7}{:>8}{:>7}  {}\n",
                r.condition.name(),
                r.verdict.as_str(),
                inv.points,
                inv.pairs,
                inv.triples,
                inv.germs + inv.chambers,
                detail
            ));
            for n in &r.notes {
                s.push_str(&format!("       note: {n}\n"));
            }
        }
        if !self.audit.is_empty() {
            s.push_str("audit:\n");
            for f in &self.audit {
                s.push_str(&format!("  {:<4}{:<13}{}\n", f.rule, f.status.as_str(), f.message));
            }
        }
        s
    }
}

/// Runs one condition.
pub fn check(space: &AtlasSpace, condition: Condition, config: &ProbeConfig) -> Result<ConditionReport, AxiomError> {
    let probes = ProbeSet::build(space, config)?;
    checks::Checker::new(space, probes, config.clone()).run(condition)
}

/// Runs every condition and audits the results against the implications
/// between them.
pub fn check_all(space: &AtlasSpace, config: &ProbeConfig) -> Result<AxiomReport, AxiomError> {
    let probes = ProbeSet::build(space, config)?;
    let checker = checks::Checker::new(space, probes, config.clone());
    let mut conditions = Vec::with_capacity(Condition::ALL.len());
    for c in Condition::ALL {
        conditions.push(checker.run(c)?);
    }
    let mut report = AxiomReport {
        conditions,
        audit: Vec::new(),
        config: config.clone(),
    };
    report.audit = audit(&report);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::tests::{pt, tripod};
    use crate::atlas::ChartId;
    use crate::model::WeylSimplexLocal;

    fn marked_tripod() -> AtlasSpace {
        let mut b = tripod().to_builder();
        let (c12, c13, c23) = (ChartId(0), ChartId(1), ChartId(2));
        for (c, t) in [(c12, 5), (c12, -4), (c23, -4), (c12, 0)] {
            b.mark_point(c, pt(t)).unwrap();
        }
        for (c, w) in [(c12, 0), (c12, 1), (c13, 1)] {
            b.mark_germ(c, WeylSimplexLocal::chamber(pt(0), w)).unwrap();
        }
        b.build()
    }

    #[test]
    fn tripod_is_clean() {
        let s = marked_tripod();
        let report = check_all(&s, &ProbeConfig::default()).unwrap();
        print!("{}", report.to_text(&s));
        assert!(!report.any_fail());
        assert!(!report.inconsistent());
        assert_eq!(report.verdict(Condition::A6), Some(Verdict::Pass));
        assert_eq!(report.verdict(Condition::EC), Some(Verdict::Pass));
    }
}
