//! Rescaling the metric by a positive rational changes every distance but
//! no verdict.

use lbl::atlas::{parse_point_spec, AtlasSpace};
use lbl::axioms::{check_all, ProbeConfig};
use lbl::scalars::rat;

fn main() {
    let space = AtlasSpace::from_json(include_str!("../fixtures/tripod.json")).unwrap();
    let config = ProbeConfig::default();
    let base = check_all(&space, &config).unwrap();
    let (cx, px) = parse_point_spec(&space, "chart_12:5").unwrap();
    let (cy, py) = parse_point_spec(&space, "chart_13:-5").unwrap();

    for (n, d) in [(1, 1), (3, 2), (1, 7)] {
        let scaled = space.with_metric_scale(rat(n, d));
        let x = scaled.canonical_point(cx, &px).unwrap();
        let y = scaled.canonical_point(cy, &py).unwrap();
        let report = check_all(&scaled, &config).unwrap();
        let same = base
            .conditions
            .iter()
            .zip(&report.conditions)
            .all(|(a, b)| a.verdict == b.verdict);
        println!(
            "scale {n}/{d}: d = {}, verdicts unchanged: {same}",
            scaled.distance_x(&x, &y).unwrap().unwrap()
        );
    }
}
