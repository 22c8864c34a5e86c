mod common;

use std::cmp::Ordering;

use common::*;
use lbl::appendix::{extend_step1, triangle_counterexample, AdmissibleSpace, LambdaSequence};
use lbl::atlas::{format_point, parse_point_spec, AtlasSpace, RootSpec, XGerm};
use lbl::model::{distance, ModelPoint, WeylSimplexLocal};
use lbl::retraction::Retraction;
use lbl::roots::RootSystem;
use lbl::scalars::LambdaScalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=7).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn lam(k: usize) -> impl Strategy<Value = Lam> {
    prop::collection::vec(rational(), k)
}

fn point(n: usize, k: usize) -> impl Strategy<Value = Vec<Lam>> {
    prop::collection::vec(lam(k), n)
}

fn root_type() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["A1", "A2", "B2", "G2"])
}

fn rank_of(t: &str) -> usize {
    cartan(t).len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn lex_order_matches_oracle(a in lam(3), b in lam(3), c in lam(3)) {
        let (sa, sb, sc) = (to_scalar(&a), to_scalar(&b), to_scalar(&c));
        prop_assert_eq!(sa.cmp(&sb), lam_cmp(&a, &b));
        prop_assert_eq!(sb.cmp(&sa), lam_cmp(&a, &b).reverse());
        // translation invariance of the order
        prop_assert_eq!((&sa + &sc).cmp(&(&sb + &sc)), sa.cmp(&sb));
        prop_assert_eq!(sa.abs(), to_scalar(&lam_abs(&a)));
        prop_assert!(sa.abs() >= LambdaScalar::zero(3));
    }

    #[test]
    fn distance_matches_oracle((t, x, y) in root_type().prop_flat_map(|t| {
        let n = rank_of(t);
        (Just(t), point(n, 2), point(n, 2))
    })) {
        let rs = RootSystem::from_type(t).unwrap();
        let roots = positive_roots(&cartan(t));
        let d = distance(&rs, &to_point(&x), &to_point(&y));
        prop_assert_eq!(d.coords().to_vec(), oracle_distance(&roots, &x, &y));
        prop_assert_eq!(d, distance(&rs, &to_point(&y), &to_point(&x)));
    }

    #[test]
    fn distance_is_weyl_and_translation_invariant((t, x, y, s, word) in root_type().prop_flat_map(|t| {
        let n = rank_of(t);
        (Just(t), point(n, 2), point(n, 2), point(n, 2), prop::collection::vec(0..n, 0..6))
    })) {
        let c = cartan(t);
        let rs = RootSystem::from_type(t).unwrap();
        let d0 = distance(&rs, &to_point(&x), &to_point(&y));
        let (mut wx, mut wy) = (x.clone(), y.clone());
        for &i in &word {
            wx = oracle_reflect(&c, i, &wx);
            wy = oracle_reflect(&c, i, &wy);
        }
        let tx: Vec<Lam> = wx.iter().zip(&s).map(|(a, b)| lam_add(a, b)).collect();
        let ty: Vec<Lam> = wy.iter().zip(&s).map(|(a, b)| lam_add(a, b)).collect();
        prop_assert_eq!(distance(&rs, &to_point(&tx), &to_point(&ty)), d0);
    }

    #[test]
    fn library_action_agrees_with_oracle_reflections((t, x, i) in root_type().prop_flat_map(|t| {
        let n = rank_of(t);
        (Just(t), point(n, 1), 0..n)
    })) {
        let rs = RootSystem::from_type(t).unwrap();
        let s = rs.reflection_element(rs.simple_root(i));
        let image = rs.act(s, &to_point(&x));
        prop_assert_eq!(point_lams(&image), oracle_reflect(&cartan(t), i, &x));
    }

    #[test]
    fn point_format_round_trips(x in point(2, 1)) {
        let space = fixture("a2_apartment");
        let p = to_point(&x);
        let text = format!("A:{}", format_point(&p));
        let (c, q) = parse_point_spec(&space, &text).unwrap();
        prop_assert_eq!(space.chart_name(c), "A");
        prop_assert_eq!(q, p);
    }

    #[test]
    fn canonical_point_is_idempotent(chart in 0usize..3, t in rational()) {
        let space = fixture("tripod");
        let c = space.charts().nth(chart).unwrap();
        let p = ModelPoint::new(vec![LambdaScalar::from_rational(t, 1)]);
        let x = space.canonical_point(c, &p).unwrap();
        prop_assert_eq!(space.canonical_point(x.chart, &x.coords).unwrap(), x.clone());
        for (c2, q) in space.orbit(c, &p).unwrap() {
            prop_assert_eq!(space.canonical_point(c2, &q).unwrap(), x.clone());
        }
    }

    #[test]
    fn retraction_is_identity_on_its_apartment(y in point(2, 1), b in point(2, 1), w in 0usize..6) {
        let space = fixture("a2_apartment");
        let a = space.chart_id("A").unwrap();
        let germ = XGerm::new(a, WeylSimplexLocal::chamber(to_point(&b), w));
        let r = Retraction::new(&space, a, &germ).unwrap();
        let x = space.canonical_point(a, &to_point(&y)).unwrap();
        prop_assert_eq!(r.retract(&x).unwrap(), to_point(&y));
    }

    #[test]
    fn triangle_round_trips_through_json(s2 in 1i64..20, s3 in 1i64..20, extra in 1i64..20) {
        let sides = [int(s2 + s3 + extra), int(s2), int(s3)];
        let space = triangle_counterexample(RootSpec::Type("A1".into()), sides, 1).unwrap();
        let text = space.to_json();
        let back = AtlasSpace::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back.chart_count(), 3);
    }

    #[test]
    fn degenerate_triangles_are_rejected(s2 in 1i64..20, s3 in 1i64..20, short in 0i64..20) {
        let s1 = (s2 + s3 - short).max(1);
        let r = triangle_counterexample(RootSpec::Type("A1".into()), [int(s1), int(s2), int(s3)], 1);
        prop_assert!(r.is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // New charts never change what was already there.
    #[test]
    fn extension_is_conservative(l in 2i64..6) {
        let base = fixture("two_apartments_a1");
        let s = AdmissibleSpace::new(base.clone(), LambdaSequence::new(int(l)).unwrap()).unwrap();
        let ext = extend_step1(&s).unwrap().into_space();
        prop_assert!(ext.chart_count() >= base.chart_count());
        for c in base.charts() {
            prop_assert_eq!(ext.chart_name(c), base.chart_name(c));
        }
        for g in base.gluings() {
            let h = ext.direct_gluing(g.from, g.to).unwrap();
            prop_assert_eq!(h, g);
        }
        let old = base.marked_xpoints().unwrap();
        prop_assert_eq!(&ext.marked_xpoints().unwrap()[..old.len()], &old[..]);
        for x in &old {
            for y in &old {
                if let Ok(d) = base.distance_x(x, y).unwrap() {
                    prop_assert_eq!(ext.distance_x(x, y).unwrap(), Ok(d));
                }
            }
        }
    }
}

#[test]
fn lex_order_is_not_archimedean() {
    // (0,1) is positive but below every positive multiple of (1,0)
    let eps = LambdaScalar::from_integers(&[0, 1]);
    let unit = LambdaScalar::from_integers(&[1, 0]);
    assert_eq!(eps.cmp(&LambdaScalar::zero(2)), Ordering::Greater);
    assert_eq!(eps.scale_int(1_000_000).cmp(&unit), Ordering::Less);
}
