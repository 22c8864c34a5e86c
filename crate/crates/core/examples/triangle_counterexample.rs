//! Three apartments glued in a cycle at single points. Each side is a
//! geodesic in its own apartment, yet the long side is longer than the
//! other two together, so the metric fails the triangle inequality.

use lbl::appendix::triangle_counterexample;
use lbl::atlas::RootSpec;
use lbl::axioms::{check, Condition, ProbeConfig};
use lbl::scalars::LambdaScalar;

fn main() {
    let sides = [10, 2, 2].map(|s| LambdaScalar::from_integers(&[s]));
    for t in ["A1", "A2", "G2"] {
        let space = triangle_counterexample(RootSpec::Type(t.into()), sides.clone(), 1).unwrap();
        let ti = check(&space, Condition::TI, &ProbeConfig::default()).unwrap();
        let w = ti.witness.as_ref().expect("the triangle inequality fails");
        println!("{t}: TI {}  {}", ti.verdict, w.to_json(&space));
        assert!(w.replay(&space).unwrap());
    }

    // Sides that satisfy the triangle inequality are refused.
    let flat = [4, 2, 2].map(|s| LambdaScalar::from_integers(&[s]));
    let err = triangle_counterexample(RootSpec::Type("A1".into()), flat, 1).unwrap_err();
    println!("sides 4 2 2: {err}");
}
