//! Grows two disjoint lines into a space where every pair of marked points
//! and every pair of parallelism classes shares an apartment.

use lbl::appendix::{is_admissible, iterate, AdmissibleSpace, LambdaSequence};
use lbl::atlas::AtlasSpace;
use lbl::axioms::{check_all, ProbeConfig};
use lbl::scalars::LambdaScalar;

fn main() {
    let base = AtlasSpace::from_json(include_str!("../fixtures/two_apartments_a1.json")).unwrap();
    let config = ProbeConfig::default();
    let lambda = LambdaScalar::from_integers(&[2]);

    let admissible = is_admissible(&base, &lambda, &config).unwrap();
    println!("admissible at {lambda}?\n{admissible}");

    let start = AdmissibleSpace::new(base, LambdaSequence::new(lambda).unwrap()).unwrap();
    let grown = iterate(&start, 1).unwrap();
    let ledger = grown.ledger();
    println!(
        "after one round: {} charts, marked pairs {}/{}, class pairs {}/{}",
        grown.space().chart_count(),
        ledger.marked_pairs_covered,
        ledger.marked_pairs,
        ledger.class_pairs_covered,
        ledger.classes * ledger.classes.saturating_sub(1) / 2,
    );
    for r in &ledger.rounds {
        let radius = r.lambda.as_ref().map_or("-".to_string(), ToString::to_string);
        println!(
            "  round {} at radius {radius}: {} point charts, {} sector charts",
            r.round,
            r.step1_charts.len(),
            r.step2_charts
        );
    }

    let report = check_all(grown.space(), &config).unwrap();
    print!("\n{}", report.verdict_table());
}
