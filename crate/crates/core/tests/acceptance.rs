//! One line per acceptance criterion. Run with `cargo test --test acceptance`.

mod common;

use common::*;
use lbl::appendix::{extend_step1, extend_step2, is_admissible, triangle_counterexample, AdmissibleSpace, LambdaSequence};
use lbl::atlas::{AtlasSpace, ChamberNode, ChartId, RootSpec};
use lbl::axioms::{check_all, AuditStatus, Condition, ProbeConfig, Verdict, Witness};
use lbl::model::{distance, ModelPoint};
use lbl::retraction::{verify_isometry, verify_lipschitz, Retraction};
use lbl::roots::RootSystem;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_cli(args: &[&str], stdin: &str) -> (i32, String) {
    let mut argv = vec!["lbl"];
    argv.extend_from_slice(args);
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = lbl::cli::run_with_io(argv, &mut input, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut total = 0;
    for t in ["A1", "A2", "B2", "G2"] {
        let c = cartan(t);
        let roots = positive_roots(&c);
        let rs = RootSystem::from_type(t).unwrap();
        ensure(rs.cartan().rows() == c.as_slice(), || format!("{t}: Cartan convention differs"))?;
        ensure(roots.len() == rs.positive_roots().len(), || format!("{t}: positive root count"))?;
        ensure(weyl_order(&c) == rs.order(), || format!("{t}: Weyl group order"))?;
        let n = c.len();
        for k in [1, 2] {
            for _ in 0..1000 {
                let (x, y, z) = (random_lams(&mut rng, n, k), random_lams(&mut rng, n, k), random_lams(&mut rng, n, k));
                let d = |a: &[Lam], b: &[Lam]| oracle_distance(&roots, a, b);
                let (dxy, dyz, dxz) = (d(&x, &y), d(&y, &z), d(&x, &z));
                let lib = distance(&rs, &to_point(&x), &to_point(&y));
                ensure(lib == to_scalar(&dxy), || format!("{t} k={k}: library distance {lib} differs from oracle"))?;
                let zero = vec![BigRational::from_integer(0.into()); k];
                ensure(d(&x, &x) == zero, || format!("{t}: d(x,x) != 0"))?;
                ensure(x == y || lam_cmp(&dxy, &zero).is_gt(), || format!("{t}: definiteness"))?;
                ensure(dxy == d(&y, &x), || format!("{t}: symmetry"))?;
                ensure(!lam_cmp(&dxz, &lam_add(&dxy, &dyz)).is_gt(), || format!("{t}: triangle inequality"))?;
                // random element of W_T: a reflection word followed by a translation
                let tr = random_lams(&mut rng, n, k);
                let word: Vec<usize> = (0..rng.gen_range(0..8)).map(|_| rng.gen_range(0..n)).collect();
                let act = |p: &[Lam]| {
                    let mut q = p.to_vec();
                    for &i in &word {
                        q = oracle_reflect(&c, i, &q);
                    }
                    q.iter().zip(&tr).map(|(a, b)| lam_add(a, b)).collect::<Vec<Lam>>()
                };
                let (gx, gy) = (act(&x), act(&y));
                ensure(d(&gx, &gy) == dxy, || format!("{t}: W_T invariance (oracle)"))?;
                ensure(
                    distance(&rs, &to_point(&gx), &to_point(&gy)) == lib,
                    || format!("{t}: W_T invariance (library)"),
                )?;
                total += 1;
            }
        }
    }
    Ok(format!("{total} random triples and W_T elements, zero violations"))
}

fn criterion_2() -> Outcome {
    let s = fixture("tripod");
    let r = check_all(&s, &ProbeConfig::default()).map_err(|e| e.to_string())?;
    use Condition::*;
    for c in [A1, A2, A3, A4, A5, A6, TI, GG, CO, LA, ALA, FC] {
        let v = r.verdict(c).unwrap();
        ensure(!v.is_fail(), || format!("{c} {v}"))?;
    }
    let o = s.canonical_point(ChartId(0), &ModelPoint::from_integers(&[0], 1)).unwrap();
    let res = s.residue(&o).unwrap();
    ensure(res.chamber_count() == 3, || format!("residue has {} chambers", res.chamber_count()))?;
    for a in 0..3 {
        for b in a + 1..3 {
            ensure(res.co_apartment(a, b), || format!("residue chambers {a},{b} not co-apartment"))?;
        }
    }
    Ok("tripod: no FAIL over A1-A6, TI, GG, CO, LA, ALA, FC; residue at o is 3 chambers, pairwise co-apartment".into())
}

fn criterion_3() -> Outcome {
    let s = triangle_counterexample(RootSpec::Type("A1".into()), [int(10), int(2), int(2)], 1).map_err(|e| e.to_string())?;
    let r = check_all(&s, &ProbeConfig::default()).map_err(|e| e.to_string())?;
    use Condition::*;
    for c in [A1, A2, A3, A4] {
        ensure(r.verdict(c) == Some(Verdict::BoundedPass), || format!("{c} {:?}", r.verdict(c)))?;
    }
    ensure(r.verdict(A6) == Some(Verdict::Vacuous), || "A6 not VACUOUS".into())?;
    let ti = r.get(TI).unwrap();
    let Some(Witness::Triangle { x, y, z }) = &ti.witness else {
        return Err(format!("TI verdict {} without triangle witness", ti.verdict));
    };
    // oracle: side lengths read from the placed coordinates
    let pos = |p: &lbl::atlas::XPoint| {
        let key = s.format_xpoint(p);
        match key.as_str() {
            "A:0" | "B:0" => "a",
            "B:2" | "C:0" => "b",
            _ => "c",
        }
        .to_string()
    };
    let side = |p: &str, q: &str| -> i64 {
        match (p.min(q), p.max(q)) {
            ("a", "b") => 2,
            ("b", "c") => 2,
            ("a", "c") => 10,
            _ => 0,
        }
    };
    let (px, py, pz) = (pos(x), pos(y), pos(z));
    let (long, s1, s2) = (side(&px, &pz), side(&px, &py), side(&py, &pz));
    ensure(long > s1 + s2, || format!("witness {px},{py},{pz} is not a violation"))?;
    for (p, q, v) in [(x, z, long), (x, y, s1), (y, z, s2)] {
        let d = s.distance_x(p, q).unwrap().unwrap();
        ensure(d == int(v), || format!("d({px}..) = {d}, oracle {v}"))?;
    }
    ensure(ti.witness.as_ref().unwrap().replay(&s).unwrap(), || "TI witness does not replay".into())?;
    let a5 = r.get(A5).unwrap();
    ensure(
        matches!(a5.witness, Some(Witness::Lipschitz { .. })),
        || format!("A5 {} with witness {:?}", a5.verdict, a5.witness),
    )?;
    let again = check_all(&s, &ProbeConfig::default()).unwrap();
    ensure(again.to_json(&s) == r.to_json(&s), || "report not deterministic".into())?;
    Ok(format!(
        "A1-A4 BOUNDED-PASS, A6 VACUOUS, TI FAIL ({s1}+{s2} < {long}), A5 Lipschitz FAIL, deterministic"
    ))
}

fn criterion_4() -> Outcome {
    let seed = fixture("two_apartments_a2");
    let lambda = LambdaSequence::new(int(2)).map_err(|e| e.to_string())?;
    let s0 = AdmissibleSpace::new(seed.clone(), lambda).map_err(|e| e.to_string())?;
    let s1 = extend_step1(&s0).map_err(|e| e.to_string())?;
    let s2 = extend_step2(&s1).map_err(|e| e.to_string())?;
    let space = s2.space();
    ensure(s2.current_lambda() == int(4), || "radius is not 2*lambda_1".into())?;
    let report = is_admissible(space, &int(4), &ProbeConfig::default()).map_err(|e| e.to_string())?;
    ensure(report.ok(), || report.to_string())?;
    let pts = space.marked_xpoints().unwrap();
    for (i, x) in pts.iter().enumerate() {
        for y in &pts[i + 1..] {
            ensure(!space.common_apartments(x, y).unwrap().is_empty(), || "marked pair uncovered".into())?;
        }
    }
    // classes before Step 2, each named by one of its chambers
    let before = s1.space().parallelism_classes();
    let reps: Vec<ChamberNode> = (0..before.count()).map(|q| before.members(q)[0]).collect();
    let after = space.parallelism_classes();
    let mut pairs = 0;
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i + 1..] {
            pairs += 1;
            ensure(after.covered(after.class(*a), after.class(*b)), || "class pair uncovered".into())?;
        }
    }
    let rs = space.root_system();
    let halves = space.gluings().iter().filter(|g| g.region.as_half_apartment(rs).is_some()).count();
    ensure(halves == 0, || format!("{halves} half-apartment overlaps"))?;
    Ok(format!(
        "{} charts; T0-T3 hold at lambda_2 = 4; {} marked pairs and {pairs} class pairs covered; no half-apartment overlap",
        space.chart_count(),
        pts.len() * (pts.len() - 1) / 2
    ))
}

fn criterion_5() -> Outcome {
    let s = fixture("tripod");
    let pts = s.marked_xpoints().unwrap();
    let pairs: Vec<_> = pts
        .iter()
        .enumerate()
        .flat_map(|(i, x)| pts[i + 1..].iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    let samples: Vec<ModelPoint> = (-6..=6).map(|t| ModelPoint::from_integers(&[t], 1)).chain([
        ModelPoint::new(vec![lbl::scalars::LambdaScalar::new(vec![BigRational::new(7.into(), 3.into())])]),
    ]).collect();
    let mut cases = 0;
    for target in s.charts() {
        for mu in s.marked_germs() {
            let Ok(r) = Retraction::new(&s, target, mu) else { continue };
            cases += 1;
            for p in &samples {
                let x = s.canonical_point(target, p).unwrap();
                let img = r.retract(&x).map_err(|e| e.to_string())?;
                ensure(&img == p, || format!("not the identity on {}", s.chart_name(target)))?;
            }
            let holders: Vec<ChartId> = r.charts_containing_center().collect();
            for c in holders {
                let bad = verify_isometry(&r, c, &samples).map_err(|e| e.to_string())?;
                ensure(bad.is_empty(), || format!("not an isometry on {}", s.chart_name(c)))?;
            }
            let rep = verify_lipschitz(&r, &pairs).map_err(|e| e.to_string())?;
            ensure(rep.passed() && rep.fallbacks.is_empty(), || format!("Lipschitz report {rep:?}"))?;
        }
    }
    ensure(cases > 0, || "no retraction exercised".into())?;
    Ok(format!("{cases} (target, germ) retractions: identity on target, isometric on germ charts, 1-Lipschitz on {} pairs", pairs.len()))
}

fn extended_a2() -> AtlasSpace {
    let s0 = AdmissibleSpace::new(fixture("two_apartments_a2"), LambdaSequence::new(int(2)).unwrap()).unwrap();
    extend_step2(&extend_step1(&s0).unwrap()).unwrap().into_space()
}

fn criterion_6() -> Outcome {
    let mut spaces: Vec<(String, AtlasSpace)> = FIXTURES.iter().map(|n| (n.to_string(), fixture(n))).collect();
    spaces.push(("extended_a2 (generated)".into(), extended_a2()));
    spaces.push((
        "triangle_a2 (generated)".into(),
        triangle_counterexample(RootSpec::Type("A2".into()), [int(10), int(2), int(2)], 1).unwrap(),
    ));
    let mut joint = 0;
    for (name, s) in &spaces {
        let r = check_all(s, &ProbeConfig::default()).map_err(|e| e.to_string())?;
        if let Some(f) = r.audit.iter().find(|f| f.status == AuditStatus::Inconsistent) {
            return Err(format!("{name}: {} {}", f.rule, f.message));
        }
        if name.starts_with("triangle") {
            ensure(
                r.audit.iter().any(|f| f.rule == "R3" && f.status == AuditStatus::Note),
                || format!("{name}: A5 and TI do not fail jointly"),
            )?;
            joint += 1;
        }
    }
    Ok(format!("{} spaces audited, no inconsistency; A5/TI fail jointly on {joint} triangles", spaces.len()))
}

fn criterion_7() -> Outcome {
    for name in FIXTURES {
        let path = fixture_path(name);
        let p = path.to_str().unwrap();
        let (c1, a) = run_cli(&["check-all", p, "--format", "json"], "");
        let (c2, b) = run_cli(&["check-all", p, "--format", "json", "--scale", "3/2"], "");
        let verdicts = |s: &str| -> Vec<(String, String)> {
            let v: serde_json::Value = serde_json::from_str(s).unwrap();
            v["conditions"]
                .as_array()
                .unwrap()
                .iter()
                .map(|c| (c["condition"].as_str().unwrap().into(), c["verdict"].as_str().unwrap().into()))
                .collect()
        };
        ensure(c1 == c2 && verdicts(&a) == verdicts(&b), || format!("{name}: verdicts change under scale 3/2"))?;
        let base = fixture(name);
        let t1 = check_all(&base, &ProbeConfig::default()).unwrap().verdict_table();
        let scaled = base.with_metric_scale(BigRational::new(3.into(), 2.into()));
        let t2 = check_all(&scaled, &ProbeConfig::default()).unwrap().verdict_table();
        ensure(t1 == t2, || format!("{name}: verdict tables differ"))?;
    }
    Ok(format!("{} fixtures: identical verdict tables at scale 1 and 3/2", FIXTURES.len()))
}

fn criterion_8() -> Outcome {
    for name in FIXTURES {
        let path = fixture_path(name);
        let p = path.to_str().unwrap();
        let (_, a) = run_cli(&["check-all", p, "--format", "json", "--seed", "7"], "");
        let (_, b) = run_cli(&["check-all", p, "--format", "json", "--seed", "7"], "");
        ensure(!a.is_empty() && a == b, || format!("{name}: JSON reports differ"))?;
    }
    Ok(format!("{} fixtures: byte-identical JSON across two seeded runs", FIXTURES.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("metric axioms and W_T invariance", criterion_1),
        ("tripod building fixture", criterion_2),
        ("glued triangle counterexample", criterion_3),
        ("extension procedure on two A2 apartments", criterion_4),
        ("retraction properties on the tripod", criterion_5),
        ("implication audit across fixtures", criterion_6),
        ("metric scale 3/2 changes no verdict", criterion_7),
        ("deterministic JSON reports", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
