//! The chamber germs at a point form a spherical building. At the branch
//! point of the tripod it has three chambers; on an open ray it has two.

use lbl::atlas::{parse_point_spec, AtlasSpace};

fn main() {
    let space = AtlasSpace::from_json(include_str!("../fixtures/tripod.json")).unwrap();
    for spec in ["chart_12:0", "chart_12:5"] {
        let (c, p) = parse_point_spec(&space, spec).unwrap();
        let x = space.canonical_point(c, &p).unwrap();
        let res = space.residue(&x).unwrap();
        println!("{spec}: {} chambers, {} apartments", res.chamber_count(), res.apartments.len());
        for a in 0..res.chamber_count() {
            for b in a + 1..res.chamber_count() {
                let charts: Vec<&str> = res
                    .apartments_containing(a, b)
                    .map(|apt| space.chart_name(apt.chart))
                    .collect();
                println!(
                    "  {} / {}: opposite in {}",
                    space.format_germ(&res.chambers[a]),
                    space.format_germ(&res.chambers[b]),
                    charts.join(", ")
                );
            }
        }
    }
}
