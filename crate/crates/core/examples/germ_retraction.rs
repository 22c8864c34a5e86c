//! Retracting the tripod onto one apartment from a chamber germ at the
//! branch point folds the third ray onto the ray opposite the germ.

use lbl::atlas::{format_point, parse_germ_spec, parse_point_spec, AtlasSpace};
use lbl::retraction::{verify_lipschitz, Retraction};

fn main() {
    let space = AtlasSpace::from_json(include_str!("../fixtures/tripod.json")).unwrap();
    let target = space.chart_id("chart_12").unwrap();
    let germ = parse_germ_spec(&space, "chart_12:0:0").unwrap();
    let r = Retraction::new(&space, target, &germ).unwrap();

    let mut points = Vec::new();
    for spec in ["chart_12:5", "chart_12:-4", "chart_23:-4", "chart_13:-7", "chart_23:3"] {
        let (c, p) = parse_point_spec(&space, spec).unwrap();
        let x = space.canonical_point(c, &p).unwrap();
        let (image, route) = r.retract_with_route(&x).unwrap();
        println!("{spec:<12} -> chart_12:{:<4} {route:?}", format_point(&image));
        points.push(x);
    }

    let pairs: Vec<_> = points
        .iter()
        .flat_map(|a| points.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let report = verify_lipschitz(&r, &pairs).unwrap();
    println!("distance non-increasing on {} pairs: {}", pairs.len(), report.passed());
}
