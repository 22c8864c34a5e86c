//! Three half-lines glued at a common origin: the smallest tree that is not
//! a line. Every pair of rays forms an apartment.

use lbl::atlas::{parse_point_spec, AtlasSpace, XPoint};
use lbl::axioms::{check_all, ProbeConfig};

fn point(space: &AtlasSpace, spec: &str) -> XPoint {
    let (c, p) = parse_point_spec(space, spec).unwrap();
    space.canonical_point(c, &p).unwrap()
}

fn main() {
    let space = AtlasSpace::from_json(include_str!("../fixtures/tripod.json")).unwrap();
    println!("{} charts, {} directed gluings", space.chart_count(), space.gluings().len());

    for (a, b) in [
        ("chart_12:5", "chart_13:-5"),
        ("chart_12:5", "chart_23:-4"),
        ("chart_12:-4", "chart_23:-4"),
    ] {
        let (x, y) = (point(&space, a), point(&space, b));
        let d = space.distance_x(&x, &y).unwrap().unwrap();
        let common: Vec<&str> = space
            .common_apartments(&x, &y)
            .unwrap()
            .into_iter()
            .map(|c| space.chart_name(c))
            .collect();
        println!("d({a}, {b}) = {d}  via {}", common.join(", "));
    }

    let report = check_all(&space, &ProbeConfig::default()).unwrap();
    print!("\n{}", report.verdict_table());
}
