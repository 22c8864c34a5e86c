//! Shared helpers: fixture loading and arithmetic oracles written against
//! the raw Cartan matrix, independent of the library's root machinery.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::path::PathBuf;

use lbl::atlas::AtlasSpace;
use lbl::model::ModelPoint;
use lbl::scalars::LambdaScalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

pub const FIXTURES: [&str; 9] = [
    "a1_apartment",
    "a2_apartment",
    "b2_apartment",
    "g2_apartment",
    "tripod",
    "triangle_a1",
    "extended_a1",
    "two_apartments_a1",
    "two_apartments_a2",
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

pub fn fixture(name: &str) -> AtlasSpace {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    AtlasSpace::from_json(&text).unwrap()
}

pub fn cartan(t: &str) -> Vec<Vec<i64>> {
    match t {
        "A1" => vec![vec![2]],
        "A2" => vec![vec![2, -1], vec![-1, 2]],
        "B2" => vec![vec![2, -2], vec![-1, 2]],
        "G2" => vec![vec![2, -1], vec![-3, 2]],
        _ => panic!("no oracle for {t}"),
    }
}

/// `c[i][j] = α_j(α̌_i)`; closure of the simple roots under
/// `s_i β = β − ⟨β, α̌_i⟩ α_i`, positive half.
pub fn positive_roots(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = c.len();
    let mut seen = BTreeSet::new();
    let mut queue: VecDeque<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    while let Some(b) = queue.pop_front() {
        if !seen.insert(b.clone()) {
            continue;
        }
        for i in 0..n {
            let pair: i64 = (0..n).map(|j| b[j] * c[i][j]).sum();
            let mut r = b.clone();
            r[i] -= pair;
            if !seen.contains(&r) {
                queue.push_back(r);
            }
        }
    }
    seen.into_iter().filter(|b| b.iter().all(|&x| x >= 0)).collect()
}

/// Order of the Weyl group: orbit size of a regular point.
pub fn weyl_order(c: &[Vec<i64>]) -> usize {
    let n = c.len();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([vec![1i64; n]]);
    while let Some(x) = queue.pop_front() {
        if !seen.insert(x.clone()) {
            continue;
        }
        for i in 0..n {
            queue.push_back(reflect_int(c, i, &x));
        }
    }
    seen.len()
}

/// `α_j(s_i x) = x_j − x_i·c[i][j]` on integer coordinates.
pub fn reflect_int(c: &[Vec<i64>], i: usize, x: &[i64]) -> Vec<i64> {
    (0..x.len()).map(|j| x[j] - x[i] * c[i][j]).collect()
}

/// Λ element as a plain vector of rationals with lexicographic order.
pub type Lam = Vec<BigRational>;

pub fn lam_cmp(a: &Lam, b: &Lam) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

pub fn lam_abs(a: &Lam) -> Lam {
    match a.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => a.iter().map(|x| -x).collect(),
        _ => a.clone(),
    }
}

pub fn lam_add(a: &Lam, b: &Lam) -> Lam {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn point_lams(p: &ModelPoint) -> Vec<Lam> {
    p.coords().iter().map(|s| s.coords().to_vec()).collect()
}

pub fn to_point(v: &[Lam]) -> ModelPoint {
    ModelPoint::new(v.iter().map(|s| LambdaScalar::new(s.clone())).collect())
}

pub fn to_scalar(l: &Lam) -> LambdaScalar {
    LambdaScalar::new(l.clone())
}

/// `Σ_{β∈Φ⁺} |β(y − x)|`.
pub fn oracle_distance(roots: &[Vec<i64>], x: &[Lam], y: &[Lam]) -> Lam {
    let k = x[0].len();
    let mut acc: Lam = vec![BigRational::zero(); k];
    for b in roots {
        let mut v: Lam = vec![BigRational::zero(); k];
        for (j, &bj) in b.iter().enumerate() {
            for t in 0..k {
                v[t] += BigRational::from_integer(BigInt::from(bj)) * (&y[j][t] - &x[j][t]);
            }
        }
        acc = lam_add(&acc, &lam_abs(&v));
    }
    acc
}

/// Simple reflection on Λ-valued coordinates.
pub fn oracle_reflect(c: &[Vec<i64>], i: usize, x: &[Lam]) -> Vec<Lam> {
    (0..x.len())
        .map(|j| {
            x[j].iter()
                .zip(&x[i])
                .map(|(a, b)| a - b * BigRational::from_integer(BigInt::from(c[i][j])))
                .collect()
        })
        .collect()
}

pub fn random_rat(rng: &mut impl Rng) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-20..=20)), BigInt::from(rng.gen_range(1..=6)))
}

pub fn random_lams(rng: &mut impl Rng, n: usize, k: usize) -> Vec<Lam> {
    (0..n).map(|_| (0..k).map(|_| random_rat(rng)).collect()).collect()
}

pub fn int(v: i64) -> LambdaScalar {
    LambdaScalar::from_integers(&[v])
}
