//! Admissible spaces: the conditions (T0)–(T3), the two extension steps that
//! cover pairs of points and pairs of parallelism classes, and the glued
//! triangle that satisfies (A1)–(A4) but violates the triangle inequality.
//!
//! Radii follow `λ_i = i·λ₁`. A space carries its sequence position in the
//! `appendix` block of the atlas file so that `extend` can resume.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;
use serde::Serialize;
use serde_json::{json, Value};

use crate::atlas::{AtlasBuilder, AtlasError, AtlasSpace, ChamberNode, ChartId, ParallelismClasses, RootSpec, XPoint};
use crate::axioms::{self, AxiomError, Condition, ProbeConfig};
use crate::model::{coweight_norm, AffineMap, Constraint, ModelPoint, Relation, WeylPolyhedron, WeylSimplexLocal};
use crate::roots::{RootError, RootSystem};
use crate::scalars::LambdaScalar;

#[derive(Debug, thiserror::Error)]
pub enum AppendixError {
    #[error(transparent)]
    Atlas(#[from] AtlasError),
    #[error(transparent)]
    Axiom(#[from] AxiomError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("invalid radius: {0}")]
    Lambda(String),
    #[error("invalid sides: {0}")]
    Sides(String),
    #[error("cannot place: {0}")]
    Placement(String),
}

/// `λ_i = i·λ₁` for `i ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaSequence {
    first: LambdaScalar,
}

impl LambdaSequence {
    /// The leading coordinate of `λ₁` must be positive so that the radii
    /// eventually exceed every element of the probe horizon.
    pub fn new(first: LambdaScalar) -> Result<Self, AppendixError> {
        match first.coords().first() {
            Some(c) if c.is_positive() => Ok(Self { first }),
            _ => Err(AppendixError::Lambda(format!(
                "{first}: the leading coordinate must be positive"
            ))),
        }
    }

    pub fn first(&self) -> &LambdaScalar {
        &self.first
    }

    pub fn get(&self, i: usize) -> LambdaScalar {
        assert!(i >= 1, "radii are indexed from 1");
        self.first.scale_int(i as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TCheck {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

/// Outcome of [`is_admissible`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub lambda: LambdaScalar,
    pub checks: Vec<TCheck>,
}

impl AdmissibilityReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn get(&self, name: &str) -> Option<&TCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lambda": self.lambda,
            "admissible": self.ok(),
            "checks": self.checks,
        })
    }
}

impl fmt::Display for AdmissibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lambda {}", self.lambda)?;
        for c in &self.checks {
            writeln!(f, "{:<4}{:<6}{}", c.name, if c.ok { "ok" } else { "FAIL" }, c.detail)?;
        }
        write!(f, "{}", if self.ok() { "admissible" } else { "not admissible" })
    }
}

fn point_region(rs: &RootSystem, x: &ModelPoint) -> WeylPolyhedron {
    WeylPolyhedron::new(
        (0..rs.rank())
            .map(|i| Constraint::new(rs.simple_root(i), Relation::Eq, x.coords()[i].clone()))
            .collect(),
    )
}

/// The affine map taking the chamber `(b1, w1)` onto `(b2, w2)`.
fn chamber_map(rs: &RootSystem, b1: &ModelPoint, w1: usize, b2: &ModelPoint, w2: usize) -> AffineMap {
    let weyl = rs.compose(w2, rs.inverse(w1));
    AffineMap {
        weyl,
        translation: b2.sub(&rs.act(weyl, b1)),
    }
}

/// Whether the chamber `(b, w)` lies in the interior of the vector chamber
/// of direction `w`.
fn interior_to_vector_chamber(rs: &RootSystem, b: &ModelPoint, w: usize) -> bool {
    rs.act(rs.inverse(w), b).coords().iter().all(LambdaScalar::is_positive)
}

fn in_ball(space: &AtlasSpace, x: &ModelPoint, lambda: &LambdaScalar) -> bool {
    space.model_distance(&space.origin(), x) <= *lambda
}

/// Least shift `M` such that the chamber at `M·w₀ρ̌` of the class's first
/// node lies in every vector chamber of the class, where `w₀` is that
/// node's direction.
fn common_shift(space: &AtlasSpace, members: &[ChamberNode]) -> Result<(ChamberNode, LambdaScalar), String> {
    let rs = space.root_system();
    let o = space.origin();
    let rep = members[0];
    let mut m = LambdaScalar::zero(space.lambda_rank());
    for node in &members[1..] {
        let names = || format!("{} and {}", space.chart_name(rep.chart), space.chart_name(node.chart));
        if node.chart == rep.chart {
            return Err(format!("{} holds two directions of one class", space.chart_name(rep.chart)));
        }
        let g = space
            .direct_gluing(rep.chart, node.chart)
            .ok_or_else(|| format!("{} share a class without a direct overlap", names()))?;
        if rs.compose(g.map.weyl, rep.direction) != node.direction {
            return Err(format!("{}: transition does not match the class directions", names()));
        }
        let cone = WeylSimplexLocal::chamber(o.clone(), node.direction)
            .polyhedron(rs)
            .image(rs, &g.map.inverse(rs));
        let shift = g
            .region
            .intersect(&cone)
            .recession_shift(rs, &o, rep.direction)
            .ok_or_else(|| format!("{}: vector chambers share no sub-chamber", names()))?;
        if shift > m {
            m = shift;
        }
    }
    Ok((rep, m))
}

/// Checks (T0)–(T3) at radius `lambda`. (T1) runs the (A2) checker.
pub fn is_admissible(space: &AtlasSpace, lambda: &LambdaScalar, config: &ProbeConfig) -> Result<AdmissibilityReport, AppendixError> {
    let rs = space.root_system();
    let mut checks = Vec::new();

    let whole: Vec<String> = space
        .gluings()
        .iter()
        .filter(|g| g.from < g.to && g.region.is_whole_space())
        .map(|g| format!("{}={}", space.chart_name(g.from), space.chart_name(g.to)))
        .collect();
    checks.push(TCheck {
        name: "T0",
        ok: whole.is_empty(),
        detail: if whole.is_empty() {
            format!("{} charts with distinct images", space.chart_count())
        } else {
            format!("identical images: {}", whole.join(", "))
        },
    });

    let a2 = axioms::check(space, Condition::A2, config)?;
    checks.push(TCheck {
        name: "T1",
        ok: !a2.verdict.is_fail(),
        detail: format!("A2 {}", a2.verdict),
    });

    let mut bad = None;
    let (mut points, mut chambers) = (0usize, 0usize);
    for g in space.gluings() {
        if g.from > g.to {
            continue;
        }
        let label = || format!("{}/{}", space.chart_name(g.from), space.chart_name(g.to));
        if g.from == g.to {
            bad = Some(format!("{} overlaps itself", label()));
            break;
        }
        if let Some(p) = g.region.as_point(rs) {
            let q = g.map.apply(rs, &p);
            if !in_ball(space, &p, lambda) || !in_ball(space, &q, lambda) {
                bad = Some(format!("{}: overlap point outside the centered ball", label()));
                break;
            }
            points += 1;
        } else if let Some((b, w)) = g.region.as_chamber(rs) {
            let (b2, w2) = (g.map.apply(rs, &b), rs.compose(g.map.weyl, w));
            if !interior_to_vector_chamber(rs, &b, w) || !interior_to_vector_chamber(rs, &b2, w2) {
                bad = Some(format!("{}: overlap chamber not interior to a vector chamber", label()));
                break;
            }
            chambers += 1;
        } else {
            bad = Some(format!("{}: overlap is neither a point nor a chamber", label()));
            break;
        }
    }
    checks.push(TCheck {
        name: "T2",
        ok: bad.is_none(),
        detail: bad.unwrap_or_else(|| format!("{points} point overlaps, {chambers} chamber overlaps")),
    });

    let classes = space.parallelism_classes();
    let mut bad = None;
    for q in 0..classes.count() {
        if let Err(e) = common_shift(space, classes.members(q)) {
            bad = Some(e);
            break;
        }
    }
    checks.push(TCheck {
        name: "T3",
        ok: bad.is_none(),
        detail: bad.unwrap_or_else(|| format!("{} parallelism classes", classes.count())),
    });

    Ok(AdmissibilityReport {
        lambda: lambda.clone(),
        checks,
    })
}

/// What one extension round added.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RoundRecord {
    pub round: usize,
    pub lambda: Option<LambdaScalar>,
    /// Marked pairs covered by Step 1, by canonical description.
    pub point_pairs: Vec<[String; 2]>,
    pub step1_charts: Vec<String>,
    /// Parallelism classes before Step 2 and the pairs it covered.
    pub classes: usize,
    pub class_pairs: usize,
    pub step2_charts: usize,
}

/// Running coverage counts of an [`AdmissibleSpace`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CoverageLedger {
    pub marked_pairs: usize,
    pub marked_pairs_covered: usize,
    pub classes: usize,
    pub class_pairs_covered: usize,
    pub rounds: Vec<RoundRecord>,
}

impl CoverageLedger {
    fn measure(space: &AtlasSpace) -> Result<Self, AtlasError> {
        let points = space.marked_xpoints()?;
        let mut covered = 0;
        let mut total = 0;
        for (i, x) in points.iter().enumerate() {
            for y in &points[i + 1..] {
                total += 1;
                if !space.common_apartments(x, y)?.is_empty() {
                    covered += 1;
                }
            }
        }
        let classes = space.parallelism_classes();
        Ok(Self {
            marked_pairs: total,
            marked_pairs_covered: covered,
            classes: classes.count(),
            class_pairs_covered: classes.covered_pair_count(),
            rounds: Vec::new(),
        })
    }
}

/// A space together with its position `i` in the radius sequence.
#[derive(Debug, Clone)]
pub struct AdmissibleSpace {
    space: AtlasSpace,
    lambda: LambdaSequence,
    index: usize,
    ledger: CoverageLedger,
}

impl AdmissibleSpace {
    /// Starts at `λ₁`. Admissibility is not assumed; see [`Self::check`].
    pub fn new(space: AtlasSpace, lambda: LambdaSequence) -> Result<Self, AppendixError> {
        let ledger = CoverageLedger::measure(&space)?;
        Ok(Self {
            space,
            lambda,
            index: 1,
            ledger,
        })
    }

    /// Resumes from the `appendix` block written by earlier steps, or starts
    /// at `λ₁ = lambda` when there is none.
    pub fn resume(space: AtlasSpace, lambda: Option<LambdaScalar>) -> Result<Self, AppendixError> {
        let stored = space.appendix_data().cloned();
        let first = match (&lambda, &stored) {
            (Some(l), _) => l.clone(),
            (None, Some(v)) => serde_json::from_value(v["lambda_1"].clone())
                .map_err(|e| AppendixError::Lambda(format!("appendix.lambda_1: {e}")))?,
            (None, None) => return Err(AppendixError::Lambda("no radius given and none stored".into())),
        };
        let index = match (&lambda, &stored) {
            (None, Some(v)) => v["index"].as_u64().unwrap_or(1).max(1) as usize,
            _ => 1,
        };
        let mut s = Self::new(space, LambdaSequence::new(first)?)?;
        s.index = index;
        Ok(s)
    }

    pub fn space(&self) -> &AtlasSpace {
        &self.space
    }

    pub fn into_space(self) -> AtlasSpace {
        self.space
    }

    pub fn lambda_seq(&self) -> &LambdaSequence {
        &self.lambda
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn current_lambda(&self) -> LambdaScalar {
        self.lambda.get(self.index)
    }

    pub fn ledger(&self) -> &CoverageLedger {
        &self.ledger
    }

    pub fn check(&self, config: &ProbeConfig) -> Result<AdmissibilityReport, AppendixError> {
        is_admissible(&self.space, &self.current_lambda(), config)
    }

    fn finish(&self, mut b: AtlasBuilder, index: usize, record: RoundRecord) -> Result<Self, AppendixError> {
        let mut rounds = self.ledger.rounds.clone();
        match rounds.last_mut() {
            Some(last) if last.round == record.round => {
                last.point_pairs.extend(record.point_pairs);
                last.step1_charts.extend(record.step1_charts);
                last.classes = last.classes.max(record.classes);
                last.class_pairs += record.class_pairs;
                last.step2_charts += record.step2_charts;
                last.lambda = record.lambda;
            }
            _ => rounds.push(record),
        }
        b.set_appendix(json!({ "lambda_1": self.lambda.first(), "index": index }));
        b.set_provenance(json!({
            "construction": "extension",
            "lambda_1": self.lambda.first(),
            "lambda_rule": "lambda_i = i * lambda_1",
            "step1_placement": "x_p, y_p = +/- (lambda/2) * omega_1 / h_1, h_1 the metric length of omega_1",
            "step2_placement": "S_q at M * w rho in the first chart of class q, M minimal past the balls and the common sub-chamber; S1 at (2 lambda / |rho|) rho, S2 its w0-image",
            "rounds": rounds,
        }));
        let space = b.build();
        let mut ledger = CoverageLedger::measure(&space)?;
        ledger.rounds = rounds;
        Ok(Self {
            space,
            lambda: self.lambda.clone(),
            index,
            ledger,
        })
    }
}

fn fresh_name(b: &AtlasBuilder, stem: &str) -> String {
    if b.chart_id(stem).is_none() {
        return stem.to_string();
    }
    (1..).map(|k| format!("{stem}_{k}")).find(|n| b.chart_id(n).is_none()).unwrap()
}

/// Step 1 at `λ_{i+1}`: a fresh chart for every marked pair inside the
/// centered balls that shares no apartment. The pair is placed at
/// `±(λ/2)·ω̌₁/h₁` and glued at those single points to every chart holding
/// the original points.
pub fn extend_step1(s: &AdmissibleSpace) -> Result<AdmissibleSpace, AppendixError> {
    let space = &s.space;
    let rs = space.root_system();
    let index = s.index + 1;
    let lambda = s.lambda.get(index);
    let h1 = coweight_norm(rs, 0);
    let t = lambda.div_int(2 * h1).map_err(|e| AppendixError::Placement(e.to_string()))?;
    if !t.is_positive() {
        return Err(AppendixError::Placement(format!("radius {lambda} leaves no room for two points")));
    }
    let mut e1 = vec![0; rs.rank()];
    e1[0] = 1;
    let xp = ModelPoint::along(&e1, &t);
    let yp = xp.neg();

    let points = space.marked_xpoints()?;
    let mut inside = Vec::new();
    for x in &points {
        let reps = space.representatives(x)?;
        inside.push(reps.values().flatten().all(|p| in_ball(space, p, &lambda)));
    }
    let mut pairs = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if inside[i] && inside[j] && space.common_apartments(&points[i], &points[j])?.is_empty() {
                pairs.push((i, j));
            }
        }
    }

    let mut b = space.to_builder();
    let mut record = RoundRecord {
        round: index - 1,
        lambda: Some(lambda.clone()),
        ..Default::default()
    };
    // charts added in this step that already hold a given point
    let mut holders: HashMap<&XPoint, Vec<(ChartId, ModelPoint)>> = HashMap::new();
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let name = fresh_name(&b, &format!("p{}_{}", index - 1, k + 1));
        let p = b.add_chart(&name)?;
        for (x, local) in [(&points[i], &xp), (&points[j], &yp)] {
            let mut targets = space.orbit(x.chart, &x.coords)?;
            targets.extend(holders.get(x).cloned().unwrap_or_default());
            for (c, xc) in targets {
                let map = AffineMap::translation(xc.sub(local));
                b.glue(p, c, point_region(rs, local), map)?;
            }
            holders.entry(x).or_default().push((p, local.clone()));
        }
        record.point_pairs.push([space.format_xpoint(&points[i]), space.format_xpoint(&points[j])]);
        record.step1_charts.push(name);
    }
    s.finish(b, index, record)
}

/// A chosen sub-chamber `S_q` of a parallelism class, with its copies in
/// every chart of the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector {
    pub class: usize,
    pub copies: Vec<WeylLocal>,
}

/// A chamber `(chart, base, direction)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylLocal {
    pub chart: ChartId,
    pub base: ModelPoint,
    pub direction: usize,
}

/// The choices Step 2 makes before adding charts.
#[derive(Debug, Clone)]
pub struct Step2Plan {
    pub lambda: LambdaScalar,
    pub classes: ParallelismClasses,
    pub sectors: BTreeMap<usize, Sector>,
    /// Uncovered class pairs `(q₁, q₂)`, `q₁ < q₂`.
    pub pairs: Vec<(usize, usize)>,
    /// `S¹` in the new chart; `S²` is its `w₀`-image.
    pub s1_base: ModelPoint,
}

fn choose_sector(space: &AtlasSpace, members: &[ChamberNode], lambda: &LambdaScalar) -> Result<Sector, AppendixError> {
    let rs = space.root_system();
    let (rep, shift) = common_shift(space, members).map_err(AppendixError::Placement)?;
    let rho = rs.act_direction(rep.direction, &vec![1; rs.rank()]);
    let mut m = &shift + lambda;
    loop {
        let base = ModelPoint::along(&rho, &m);
        let mut copies = vec![WeylLocal {
            chart: rep.chart,
            base: base.clone(),
            direction: rep.direction,
        }];
        for node in &members[1..] {
            let g = space.direct_gluing(rep.chart, node.chart).expect("checked by common_shift");
            copies.push(WeylLocal {
                chart: node.chart,
                base: g.map.apply(rs, &base),
                direction: node.direction,
            });
        }
        // the base is the point of the chamber nearest to the origin
        if copies.iter().all(|c| !in_ball(space, &c.base, lambda)) {
            return Ok(Sector {
                class: 0,
                copies,
            });
        }
        m += lambda;
    }
}

/// Computes the sectors `S_q` and the uncovered class pairs at the current
/// radius.
pub fn step2_plan(s: &AdmissibleSpace) -> Result<Step2Plan, AppendixError> {
    let space = &s.space;
    let rs = space.root_system();
    if rs.rank() == 0 {
        return Err(AppendixError::Placement("rank 0 has no chambers".into()));
    }
    let lambda = s.current_lambda();
    let classes = space.parallelism_classes();
    let n = classes.count();
    let mut covered = HashSet::new();
    for c in space.charts() {
        let mut here: Vec<usize> = (0..rs.order())
            .map(|w| classes.class(ChamberNode { chart: c, direction: w }))
            .collect();
        here.sort_unstable();
        here.dedup();
        for (i, &a) in here.iter().enumerate() {
            for &b in &here[i + 1..] {
                covered.insert((a, b));
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|p| !covered.contains(p))
        .collect();
    let mut sectors = BTreeMap::new();
    for &(a, b) in &pairs {
        for q in [a, b] {
            if let std::collections::btree_map::Entry::Vacant(e) = sectors.entry(q) {
                let mut sector = choose_sector(space, classes.members(q), &lambda)?;
                sector.class = q;
                e.insert(sector);
            }
        }
    }
    let norm: i64 = (0..rs.rank()).map(|j| coweight_norm(rs, j)).sum();
    let step = lambda.scale_int(2).div_int(norm).map_err(|e| AppendixError::Placement(e.to_string()))?;
    Ok(Step2Plan {
        lambda,
        classes,
        sectors,
        pairs,
        s1_base: ModelPoint::along(&vec![1; rs.rank()], &step),
    })
}

/// Step 2 at the current radius: a fresh chart for every pair of
/// parallelism classes sharing no chart, holding `S¹` glued to `S_{q₂}` and
/// `S²` glued to `S_{q₁}`. Charts that hold copies of the same `S_q` are
/// glued to each other along it.
pub fn extend_step2(s: &AdmissibleSpace) -> Result<AdmissibleSpace, AppendixError> {
    let plan = step2_plan(s)?;
    let space = &s.space;
    let rs = space.root_system();
    let w0 = rs.longest();
    let s1 = (plan.s1_base.clone(), rs.identity());
    let s2 = (rs.act(w0, &plan.s1_base), w0);

    let mut b = space.to_builder();
    let mut record = RoundRecord {
        round: s.index - 1,
        lambda: Some(plan.lambda.clone()),
        classes: plan.classes.count(),
        class_pairs: plan.pairs.len(),
        ..Default::default()
    };
    let mut holders: HashMap<usize, Vec<WeylLocal>> = plan
        .sectors
        .iter()
        .map(|(&q, sector)| (q, sector.copies.clone()))
        .collect();
    for (k, &(q1, q2)) in plan.pairs.iter().enumerate() {
        let name = fresh_name(&b, &format!("r{}_{}", s.index - 1, k + 1));
        let g = b.add_chart(&name)?;
        for ((base, dir), q) in [(&s1, q2), (&s2, q1)] {
            let region = WeylSimplexLocal::chamber(base.clone(), *dir).polyhedron(rs);
            let copies = holders.get_mut(&q).expect("every planned class has a sector");
            for c in copies.iter() {
                b.glue(g, c.chart, region.clone(), chamber_map(rs, base, *dir, &c.base, c.direction))?;
            }
            copies.push(WeylLocal {
                chart: g,
                base: base.clone(),
                direction: *dir,
            });
        }
        record.step2_charts += 1;
    }
    s.finish(b, s.index, record)
}

/// `rounds` alternations of Step 1 and Step 2.
pub fn iterate(s: &AdmissibleSpace, rounds: usize) -> Result<AdmissibleSpace, AppendixError> {
    let mut cur = s.clone();
    for _ in 0..rounds {
        cur = extend_step2(&extend_step1(&cur)?)?;
    }
    Ok(cur)
}

/// Three apartments `A`, `B`, `C` glued pairwise at single points `a`, `b`,
/// `c` with `d_A(a,c) = s₁`, `d_B(a,b) = s₂`, `d_C(b,c) = s₃`. The points sit
/// on the first fundamental coweight axis. Requires `s₁ > s₂ + s₃`.
pub fn triangle_counterexample(
    root: RootSpec,
    sides: [LambdaScalar; 3],
    lambda_rank: usize,
) -> Result<AtlasSpace, AppendixError> {
    let rs = Arc::new(root.build()?);
    for s in &sides {
        if s.rank() != lambda_rank {
            return Err(AppendixError::Sides(format!("{s} does not have rank {lambda_rank}")));
        }
        if !s.is_positive() {
            return Err(AppendixError::Sides(format!("{s} is not positive")));
        }
    }
    let [s1, s2, s3] = &sides;
    if s1 <= &(s2 + s3) {
        return Err(AppendixError::Sides(format!(
            "need s1 > s2 + s3, got {s1} <= {}",
            s2 + s3
        )));
    }
    let h1 = coweight_norm(&rs, 0);
    let mut e1 = vec![0; rs.rank()];
    e1[0] = 1;
    let at = |s: &LambdaScalar| -> Result<ModelPoint, AppendixError> {
        let t = s.div_int(h1).map_err(|e| AppendixError::Sides(e.to_string()))?;
        Ok(ModelPoint::along(&e1, &t))
    };
    let o = ModelPoint::origin(rs.rank(), lambda_rank);
    let (c_in_a, b_in_b, c_in_c) = (at(s1)?, at(s2)?, at(s3)?);

    let mut b = AtlasSpace::builder(Arc::clone(&rs), root, lambda_rank);
    let ca = b.add_chart("A")?;
    let cb = b.add_chart("B")?;
    let cc = b.add_chart("C")?;
    // a: A(o) = B(o); b: B(s2) = C(o); c: C(s3) = A(s1)
    b.glue(ca, cb, point_region(&rs, &o), AffineMap::identity(rs.rank(), lambda_rank))?;
    b.glue(cb, cc, point_region(&rs, &b_in_b), AffineMap::translation(b_in_b.neg()))?;
    b.glue(cc, ca, point_region(&rs, &c_in_c), AffineMap::translation(c_in_a.sub(&c_in_c)))?;
    b.mark_point(ca, o.clone())?;
    b.mark_point(cb, b_in_b.clone())?;
    b.mark_point(cc, c_in_c.clone())?;
    b.mark_germ(ca, WeylSimplexLocal::chamber(o.clone(), rs.identity()))?;
    b.set_appendix(json!({ "lambda_1": s1, "index": 1 }));
    b.set_provenance(json!({
        "construction": "glued_triangle",
        "sides": sides,
        "axis": "omega_1 / h_1",
        "glue_points": {
            "a": { "A": o, "B": o },
            "b": { "B": b_in_b, "C": o },
            "c": { "C": c_in_c, "A": c_in_a },
        },
    }));
    Ok(b.build())
}
