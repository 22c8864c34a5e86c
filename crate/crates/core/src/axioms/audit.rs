//! Cross-checks between verdicts that must hold for spaces satisfying
//! (A1)–(A3).

use serde::Serialize;

use super::{AxiomReport, Condition, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditStatus {
    Consistent,
    Inconsistent,
    Note,
}

impl AuditStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            AuditStatus::Consistent => "consistent",
            AuditStatus::Inconsistent => "INCONSISTENT",
            AuditStatus::Note => "note",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditFinding {
    pub rule: &'static str,
    pub status: AuditStatus,
    pub message: String,
}

/// One of the eight equivalent characterizations of affine buildings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Statement {
    pub index: usize,
    pub conditions: Vec<&'static str>,
    pub holds_on_probes: bool,
}

const STATEMENTS: [&[Condition]; 8] = [
    &[Condition::A4, Condition::A5, Condition::A6],
    &[Condition::A4, Condition::TI, Condition::A6],
    &[Condition::A4, Condition::TI, Condition::SC],
    &[Condition::A4, Condition::A5, Condition::SC],
    &[Condition::A4, Condition::A5, Condition::EC],
    &[Condition::GG, Condition::CO],
    &[Condition::LA, Condition::CO],
    &[Condition::ALA, Condition::A4, Condition::FC, Condition::EC],
];

fn ok(r: &AxiomReport, c: Condition) -> Option<bool> {
    r.verdict(c).map(|v| v != Verdict::Fail)
}

fn all_ok(r: &AxiomReport, cs: &[Condition]) -> Option<bool> {
    cs.iter().try_fold(true, |acc, &c| ok(r, c).map(|v| acc && v))
}

/// Truth of each characterization on the probes. Informational: the
/// statements are only equivalent under unbounded quantifiers.
pub fn statements(r: &AxiomReport) -> Vec<Statement> {
    STATEMENTS
        .iter()
        .enumerate()
        .filter_map(|(i, cs)| {
            all_ok(r, cs).map(|holds| Statement {
                index: i + 1,
                conditions: cs.iter().map(|c| c.name()).collect(),
                holds_on_probes: holds,
            })
        })
        .collect()
}

/// `premises ⇒ conclusion` for spaces satisfying `standing`; skipped when a
/// verdict is missing.
fn implication(
    r: &AxiomReport,
    rule: &'static str,
    standing: &[Condition],
    premises: &[Condition],
    conclusion: Condition,
    out: &mut Vec<AuditFinding>,
) {
    let (Some(base), Some(p), Some(c)) = (all_ok(r, standing), all_ok(r, premises), ok(r, conclusion)) else {
        return;
    };
    if !base {
        out.push(AuditFinding {
            rule,
            status: AuditStatus::Consistent,
            message: "A1-A3 not all hold; nothing to check".into(),
        });
        return;
    }
    let names: Vec<&str> = premises.iter().map(|c| c.name()).collect();
    let lhs = names.join("+");
    let (status, message) = match (p, c) {
        (true, false) => (
            AuditStatus::Inconsistent,
            format!("{lhs} hold on probes but {conclusion} fails"),
        ),
        (true, true) => (AuditStatus::Consistent, format!("{lhs} hold and so does {conclusion}")),
        (false, _) => (AuditStatus::Consistent, format!("{lhs} not all hold; nothing to check")),
    };
    out.push(AuditFinding { rule, status, message });
}

pub fn audit(r: &AxiomReport) -> Vec<AuditFinding> {
    use Condition::*;
    let mut out = Vec::new();

    // R1: (A6), (SC), (EC) agree under (A1)–(A5)
    if let (Some(base), Some(a6), Some(sc), Some(ec)) = (
        all_ok(r, &[A1, A2, A3, A4, A5]),
        ok(r, A6),
        ok(r, SC),
        ok(r, EC),
    ) {
        let finding = if !base {
            AuditFinding {
                rule: "R1",
                status: AuditStatus::Consistent,
                message: "A1-A5 not all hold; exchange verdicts unconstrained".into(),
            }
        } else if a6 == sc && sc == ec {
            AuditFinding {
                rule: "R1",
                status: AuditStatus::Consistent,
                message: format!(
                    "A6/SC/EC agree ({}, {}, {})",
                    r.verdict(A6).unwrap(),
                    r.verdict(SC).unwrap(),
                    r.verdict(EC).unwrap()
                ),
            }
        } else {
            AuditFinding {
                rule: "R1",
                status: AuditStatus::Inconsistent,
                message: format!(
                    "A1-A5 hold but A6/SC/EC disagree ({}, {}, {})",
                    r.verdict(A6).unwrap(),
                    r.verdict(SC).unwrap(),
                    r.verdict(EC).unwrap()
                ),
            }
        };
        out.push(finding);
    }
    let standing = [A1, A2, A3];
    implication(r, "R2", &standing, &[GG, CO], EC, &mut out);
    implication(r, "R3", &standing, &[A5], TI, &mut out);
    implication(r, "R4", &standing, &[GG, CO], A4, &mut out);
    implication(r, "R5", &[], &[LA], A3, &mut out);
    implication(r, "R5", &[], &[ALA], A3, &mut out);
    implication(r, "R6", &standing, &[GG, CO], FC, &mut out);

    if let (Some(false), Some(false)) = (ok(r, A5), ok(r, TI)) {
        out.push(AuditFinding {
            rule: "R3",
            status: AuditStatus::Note,
            message: "A5 and TI fail jointly".into(),
        });
    }
    let holding: Vec<String> = statements(r)
        .iter()
        .filter(|s| s.holds_on_probes)
        .map(|s| s.index.to_string())
        .collect();
    if !holding.is_empty() && holding.len() < STATEMENTS.len() {
        out.push(AuditFinding {
            rule: "EQ",
            status: AuditStatus::Note,
            message: format!(
                "characterizations {} hold on probes, the others fail (bounded probes only)",
                holding.join(",")
            ),
        });
    }
    out
}
