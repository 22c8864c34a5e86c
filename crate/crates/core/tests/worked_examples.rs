mod common;

use common::*;
use lbl::appendix::triangle_counterexample;
use lbl::atlas::{parse_point_spec, RootSpec};
use lbl::axioms::{check, Condition, ProbeConfig, Verdict, Witness};
use lbl::scalars::LambdaScalar;

fn rep_lams(space: &lbl::atlas::AtlasSpace, spec: &str) -> (String, Vec<Lam>) {
    let (c, p) = parse_point_spec(space, spec).unwrap();
    (space.chart_name(c).to_string(), point_lams(&p))
}

fn xpoint(space: &lbl::atlas::AtlasSpace, spec: &str) -> lbl::atlas::XPoint {
    let (c, p) = parse_point_spec(space, spec).unwrap();
    space.canonical_point(c, &p).unwrap()
}

#[test]
fn tripod_distances_pass_through_the_branch_point() {
    let space = fixture("tripod");
    let roots = positive_roots(&cartan("A1"));
    let x = xpoint(&space, "chart_12:5");
    let z = xpoint(&space, "chart_13:-5");
    // both rays live in chart_13, so the oracle works there
    let (_, a) = rep_lams(&space, "chart_13:5");
    let (_, b) = rep_lams(&space, "chart_13:-5");
    let expected = oracle_distance(&roots, &a, &b);
    assert_eq!(space.distance_x(&x, &z).unwrap().unwrap(), to_scalar(&expected));
    assert_eq!(expected, vec![int(10).coords()[0].clone()]);
}

fn triangle(t: &str, sides: [i64; 3]) -> lbl::atlas::AtlasSpace {
    triangle_counterexample(RootSpec::Type(t.into()), sides.map(int), 1).unwrap()
}

#[test]
fn triangle_glue_points_have_two_charts() {
    let space = triangle("A1", [10, 2, 2]);
    let marked = space.marked_xpoints().unwrap();
    assert_eq!(marked.len(), 3);
    let counts: Vec<usize> = marked
        .iter()
        .map(|x| space.charts_containing(x).unwrap().len())
        .collect();
    assert_eq!(counts, vec![2, 2, 2]);
}

#[test]
fn triangle_breaks_the_triangle_inequality() {
    for t in ["A1", "A2", "B2", "G2"] {
        let space = triangle(t, [10, 3, 3]);
        let r = check(&space, Condition::TI, &ProbeConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Fail, "{t}");
        let Some(Witness::Triangle { x, y, z }) = &r.witness else {
            panic!("{t}: {:?}", r.witness);
        };
        let d = |a, b| space.distance_x(a, b).unwrap().unwrap();
        assert!(d(x, z) > d(x, y) + d(y, z), "{t}");
        assert_eq!(d(x, z), LambdaScalar::from_integers(&[10]), "{t}");
        assert!(r.witness.as_ref().unwrap().replay(&space).unwrap(), "{t}");
    }
}

#[test]
fn triangle_long_side_matches_oracle() {
    let space = triangle("A2", [10, 3, 3]);
    let roots = positive_roots(&cartan("A2"));
    let zero = vec![int(0).coords().to_vec(); 2];
    let mut e1 = zero.clone();
    e1[0] = int(1).coords().to_vec();
    // the far vertex sits on the first fundamental coweight ray at distance 10
    let h1 = oracle_distance(&roots, &zero, &e1)[0].clone();
    let mut far = zero.clone();
    far[0] = vec![int(10).coords()[0].clone() / h1];
    assert_eq!(to_scalar(&oracle_distance(&roots, &zero, &far)), int(10));
    let a = space.chart_id("A").unwrap();
    let x = space.canonical_point(a, &to_point(&zero)).unwrap();
    let z = space.canonical_point(a, &to_point(&far)).unwrap();
    assert_eq!(space.charts_containing(&z).unwrap().len(), 2);
    assert_eq!(space.distance_x(&x, &z).unwrap().unwrap(), int(10));
}
