//! Root data for the rank one and two types, plus a custom Cartan matrix.

use lbl::atlas::format_point;
use lbl::model::{distance, ModelPoint};
use lbl::roots::{CartanMatrix, RootSystem};

fn main() {
    for t in ["A1", "A2", "B2", "G2"] {
        let rs = RootSystem::from_type(t).unwrap();
        let roots: Vec<String> = rs
            .positive_roots()
            .iter()
            .map(|r| format!("{:?}", r.coeffs))
            .collect();
        println!(
            "{t}: |W| = {}, longest word has length {}, positive roots {}",
            rs.order(),
            rs.length(rs.longest()),
            roots.join(" ")
        );
    }

    // Points are written in simple-root coordinates, so (1,0) is the first
    // fundamental coweight.
    let rs = RootSystem::from_type("B2").unwrap();
    let o = ModelPoint::origin(2, 1);
    let w1 = ModelPoint::from_integers(&[1, 0], 1);
    let w2 = ModelPoint::from_integers(&[0, 1], 1);
    println!("B2: d(o, w1) = {}, d(o, w2) = {}", distance(&rs, &o, &w1), distance(&rs, &o, &w2));

    let s0 = rs.reflection_element(rs.simple_root(0));
    println!("B2: s1 sends ({}) to ({})", format_point(&w1), format_point(&rs.act(s0, &w1)));

    let custom = RootSystem::build(CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap()).unwrap();
    println!("custom matrix gives a group of order {}", custom.order());
}
