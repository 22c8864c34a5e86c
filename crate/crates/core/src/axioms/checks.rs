use std::cell::OnceCell;
use std::collections::BTreeSet;

use num_rational::BigRational;

use super::probes::random_affine;
use super::witness::{
    covered, exchange_partner, germ_charts, half_overlap, subchamber_charts, sundial_charts, sundial_hypotheses,
};
use super::{AxiomError, Condition, ConditionReport, ProbeConfig, ProbeSet, Verdict, Witness};
use crate::atlas::{AtlasSpace, ChartId, ParallelismClasses, ResidueComplex, XGerm, XPoint};
use crate::model::{feasible_point, segment, segment_samples, AffineMap, LinIneq, ModelPoint, WeylPolyhedron, WeylSimplexLocal};
use crate::retraction::{verify_lipschitz, Retraction, RetractionError};

pub(crate) struct Checker<'a> {
    space: &'a AtlasSpace,
    probes: ProbeSet,
    config: ProbeConfig,
    classes: OnceCell<ParallelismClasses>,
    residues: OnceCell<Vec<ResidueComplex>>,
}

/// A point of `p` where `m1` and `m2` differ, if any.
fn disagreement(space: &AtlasSpace, p: &WeylPolyhedron, m1: &AffineMap, m2: &AffineMap) -> Option<ModelPoint> {
    let rs = space.root_system();
    let (a, b) = (&rs.element(m1.weyl).matrix, &rs.element(m2.weyl).matrix);
    let base = p.ineqs(rs);
    for i in 0..rs.rank() {
        let coeffs: Vec<BigRational> = (0..rs.rank())
            .map(|j| BigRational::from_integer((a[i][j] - b[i][j]).into()))
            .collect();
        let rhs = &m2.translation.coords()[i] - &m1.translation.coords()[i];
        let ge = LinIneq::new(coeffs.clone(), rhs.clone(), false);
        let le = LinIneq::new(coeffs.iter().map(|c| -c).collect(), -&rhs, false);
        for ineq in [ge, le] {
            let mut sys = base.clone();
            sys.push(ineq.negated());
            if let Some(x) = feasible_point(&sys, rs.rank(), space.lambda_rank()) {
                return Some(ModelPoint::new(x));
            }
        }
    }
    None
}

/// A point of `p` outside `q`, if any.
fn outside(space: &AtlasSpace, p: &WeylPolyhedron, q: &WeylPolyhedron) -> Option<ModelPoint> {
    let rs = space.root_system();
    let base = p.ineqs(rs);
    for ineq in q.ineqs(rs) {
        let mut sys = base.clone();
        sys.push(ineq.negated());
        if let Some(x) = feasible_point(&sys, rs.rank(), space.lambda_rank()) {
            return Some(ModelPoint::new(x));
        }
    }
    None
}

impl<'a> Checker<'a> {
    pub fn new(space: &'a AtlasSpace, probes: ProbeSet, config: ProbeConfig) -> Self {
        Self {
            space,
            probes,
            config,
            classes: OnceCell::new(),
            residues: OnceCell::new(),
        }
    }

    fn classes(&self) -> &ParallelismClasses {
        self.classes.get_or_init(|| self.space.parallelism_classes())
    }

    fn residues(&self) -> Result<&[ResidueComplex], AxiomError> {
        if self.residues.get().is_none() {
            let mut out = Vec::with_capacity(self.probes.points.len());
            for x in &self.probes.points {
                out.push(self.space.residue(x)?);
            }
            let _ = self.residues.set(out);
        }
        Ok(self.residues.get().expect("initialized"))
    }

    pub fn run(&self, c: Condition) -> Result<ConditionReport, AxiomError> {
        match c {
            Condition::A1 => self.a1(),
            Condition::A2 => self.a2(),
            Condition::A3 => self.a3(),
            Condition::A4 => self.a4(),
            Condition::A5 => self.a5(),
            Condition::A6 => self.a6(),
            Condition::TI => self.ti(),
            Condition::EC => self.ec(),
            Condition::SC => self.sc(),
            Condition::GG => self.gg(),
            Condition::CO => self.co(),
            Condition::LA => self.la(),
            Condition::ALA => self.ala(),
            Condition::FC => self.fc(),
        }
    }

    fn point(&self, i: usize) -> &XPoint {
        &self.probes.points[i]
    }

    fn a1(&self) -> Result<ConditionReport, AxiomError> {
        let (space, rs) = (self.space, self.space.root_system());
        let mut r = ConditionReport::new(Condition::A1);
        let mut rng = self.config.rng(11);
        for g in space.gluings() {
            if g.map.weyl >= rs.order() || !space.translations().contains(rs, &g.map.translation) {
                r.fail(Witness::GluingNotInWt { from: g.from, to: g.to });
            }
        }
        for g in space.gluings().iter().take(self.config.budget) {
            r.inventory.overlaps += 1;
            match space.direct_gluing(g.to, g.from) {
                Some(back)
                    if back.map == g.map.inverse(rs) && back.region.same_set(rs, &g.region.image(rs, &g.map)) => {}
                _ => r.fail(Witness::MissingInverse { from: g.from, to: g.to }),
            }
            // precomposing both charts of the overlap with h ∈ W_T
            let h = random_affine(&mut rng, space);
            let region = g.region.image(rs, &h.inverse(rs));
            if let Some(point) = region.feasible_point(rs, space.lambda_rank()) {
                let w = Witness::Precomposition {
                    from: g.from,
                    to: g.to,
                    h,
                    point,
                };
                if w.replay(space)? {
                    r.fail(w);
                }
            }
        }
        r.notes.push(format!(
            "charts stand for their W_T-orbits; {} gluings checked with one random conjugation each",
            r.inventory.overlaps
        ));
        Ok(r)
    }

    fn a2(&self) -> Result<ConditionReport, AxiomError> {
        let (space, rs) = (self.space, self.space.root_system());
        let mut r = ConditionReport::new(Condition::A2);
        // exact cocycle check on composable pairs of gluings, up to the budget
        let mut examined = 0usize;
        'cocycle: for cd in space.gluings() {
            for de in space.gluings_from(cd.to) {
                if examined >= self.config.budget {
                    r.notes.push("composable gluing pairs truncated at the probe budget".into());
                    break 'cocycle;
                }
                examined += 1;
                let (c, d, e) = (cd.from, cd.to, de.to);
                let p = cd.region.intersect(&de.region.image(rs, &cd.map.inverse(rs)));
                if p.is_empty(rs) {
                    continue;
                }
                r.inventory.overlaps += 1;
                let composite = de.map.compose(rs, &cd.map);
                let bad = if c == e {
                    disagreement(space, &p, &composite, &AffineMap::identity(space.rank(), space.lambda_rank()))
                } else {
                    match space.direct_gluing(c, e) {
                        None => p.feasible_point(rs, space.lambda_rank()),
                        Some(ce) => outside(space, &p, &ce.region).or_else(|| disagreement(space, &p, &composite, &ce.map)),
                    }
                };
                if let Some(point) = bad {
                    r.fail(Witness::Cocycle { c, d, e, point });
                }
            }
        }
        // orbits of sampled points
        for (c, x) in &self.probes.samples {
            r.inventory.points += 1;
            let orbit = space.orbit(*c, x)?;
            for (i, (ci, xi)) in orbit.iter().enumerate() {
                for (cj, xj) in &orbit[i + 1..] {
                    if ci == cj {
                        r.fail(Witness::NonInjective {
                            chart: *ci,
                            a: xi.clone(),
                            b: xj.clone(),
                        });
                        continue;
                    }
                    let ok = space
                        .direct_gluing(*ci, *cj)
                        .is_some_and(|g| g.region.contains(rs, xi) && g.map.apply(rs, xi) == *xj);
                    if !ok {
                        r.fail(Witness::MissingOverlap {
                            c: *ci,
                            x: xi.clone(),
                            d: *cj,
                            y: xj.clone(),
                        });
                    }
                }
            }
        }
        if r.failed() {
            return Ok(r);
        }
        r.notes.push(format!(
            "{} composable overlaps checked exactly; orbits of {} sampled points",
            r.inventory.overlaps, r.inventory.points
        ));
        Ok(r)
    }

    fn a3(&self) -> Result<ConditionReport, AxiomError> {
        let mut r = ConditionReport::new(Condition::A3);
        r.inventory.points = self.probes.points.len();
        for &(i, j) in &self.probes.pairs {
            r.inventory.pairs += 1;
            let (x, y) = (self.point(i), self.point(j));
            if self.space.common_apartments(x, y)?.is_empty() {
                r.fail(Witness::NoCommonApartment { x: x.clone(), y: y.clone() });
                break;
            }
        }
        Ok(r)
    }

    fn ti(&self) -> Result<ConditionReport, AxiomError> {
        let space = self.space;
        let mut r = ConditionReport::new(Condition::TI);
        r.inventory.points = self.probes.points.len();
        let mut undefined = 0;
        for &(i, j, k) in &self.probes.triples {
            let (x, y, z) = (self.point(i), self.point(j), self.point(k));
            let (Ok(xy), Ok(yz), Ok(xz)) = (space.distance_x(x, y)?, space.distance_x(y, z)?, space.distance_x(x, z)?)
            else {
                undefined += 1;
                continue;
            };
            r.inventory.triples += 1;
            if xz > &xy + &yz {
                r.fail(Witness::Triangle {
                    x: x.clone(),
                    y: y.clone(),
                    z: z.clone(),
                });
                break;
            }
        }
        if undefined > 0 {
            r.notes.push(format!("{undefined} triples skipped: some distance undefined"));
        }
        Ok(r)
    }

    /// Retraction centers: marked chamber germs in every chart holding them,
    /// then the identity chamber at each probe point in each chart.
    fn centers(&self) -> Result<Vec<(ChartId, XGerm)>, AxiomError> {
        let space = self.space;
        let mut out = Vec::new();
        for g in &self.probes.chambers {
            for c in germ_charts(space, g)? {
                out.push((c, g.clone()));
            }
        }
        for x in &self.probes.points {
            for (c, reps) in space.representatives(x)? {
                for p in reps {
                    out.push((c, XGerm::new(c, WeylSimplexLocal::chamber(p, 0))));
                }
            }
        }
        let mut seen = BTreeSet::new();
        out.retain(|(c, g)| seen.insert((*c, g.clone())));
        Ok(out)
    }

    fn a5(&self) -> Result<ConditionReport, AxiomError> {
        let space = self.space;
        let mut r = ConditionReport::new(Condition::A5);
        r.inventory.points = self.probes.points.len();
        let pairs: Vec<(XPoint, XPoint)> = self
            .probes
            .pairs
            .iter()
            .map(|&(i, j)| (self.point(i).clone(), self.point(j).clone()))
            .collect();
        let centers = self.centers()?;
        let mut fallbacks = BTreeSet::new();
        let mut budget = self.config.budget;
        for (target, center) in &centers {
            if budget < pairs.len().max(1) {
                r.notes.push("center list truncated by the probe budget".into());
                break;
            }
            budget -= pairs.len().max(1);
            r.inventory.germs += 1;
            let ret = match Retraction::new(space, *target, center) {
                Ok(ret) => ret,
                Err(RetractionError::Atlas(e)) => return Err(e.into()),
                Err(e) => {
                    r.notes.push(format!("center skipped: {e}"));
                    continue;
                }
            };
            let report = match verify_lipschitz(&ret, &pairs) {
                Ok(rep) => rep,
                Err(RetractionError::ChartDependent { point, a, b }) => {
                    r.notes.push(format!("retraction of {point} depends on the chart: {a} vs {b}"));
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            r.inventory.pairs += report.checked;
            fallbacks.extend(report.fallbacks.iter().cloned());
            if let Some(v) = report.violations.first() {
                let (y, z) = pairs[v.pair].clone();
                r.fail(Witness::Lipschitz {
                    target: *target,
                    center: center.clone(),
                    y,
                    z,
                });
            }
            // bounded check that only the center's base retracts onto it
            for y in &self.probes.points {
                let w = Witness::Preimage {
                    target: *target,
                    center: center.clone(),
                    y: y.clone(),
                };
                if w.replay(space)? {
                    r.fail(w);
                }
            }
        }
        if !fallbacks.is_empty() {
            r.notes.push(format!(
                "{} points had no chart with the center germ and were retracted through the center's base point",
                fallbacks.len()
            ));
        }
        // a triangle violation with its long side in one chart rules out
        // every retraction onto that chart centered at an endpoint
        if !r.failed() {
            for &(i, j, k) in &self.probes.triples {
                let (x, y, z) = (self.point(i), self.point(j), self.point(k));
                for chart in space.common_apartments(x, z)? {
                    let w = Witness::MetricObstruction {
                        chart,
                        x: x.clone(),
                        y: y.clone(),
                        z: z.clone(),
                    };
                    if w.replay(space)? {
                        r.fail(w);
                        break;
                    }
                }
                if r.failed() {
                    break;
                }
            }
        }
        Ok(r)
    }

    fn a4(&self) -> Result<ConditionReport, AxiomError> {
        let mut r = ConditionReport::new(Condition::A4);
        let ch = &self.probes.chambers;
        r.inventory.chambers = ch.len();
        'outer: for (i, a) in ch.iter().enumerate() {
            let da = subchamber_charts(self.space, a);
            for b in &ch[i + 1..] {
                r.inventory.pairs += 1;
                if subchamber_charts(self.space, b).iter().all(|c| !da.contains(c)) {
                    r.fail(Witness::ChamberPair { a: a.clone(), b: b.clone() });
                    break 'outer;
                }
            }
        }
        let classes = self.classes();
        let n = classes.count();
        let uncovered = n * (n - 1) / 2 - classes.covered_pair_count();
        if uncovered > 0 {
            r.notes.push(format!(
                "{uncovered} of {} pairs of parallelism classes share no chart (not all are represented by marked chambers)",
                n * (n - 1) / 2
            ));
        }
        Ok(r)
    }

    /// Unordered chart pairs whose overlap is a half-apartment.
    fn half_pairs(&self) -> Vec<(ChartId, ChartId)> {
        let mut out = Vec::new();
        for g in self.space.gluings() {
            if g.from < g.to && half_overlap(self.space, g.from, g.to).is_some() {
                out.push((g.from, g.to));
            }
        }
        out
    }

    fn a6(&self) -> Result<ConditionReport, AxiomError> {
        let space = self.space;
        let mut r = ConditionReport::new(Condition::A6);
        let pairs = self.half_pairs();
        r.inventory.overlaps = pairs.len();
        if pairs.is_empty() {
            r.verdict = Verdict::Vacuous;
            r.notes.push("no two charts meet in a half-apartment".into());
            return Ok(r);
        }
        r.verdict = Verdict::Pass;
        let is_half = |a: ChartId, b: ChartId| pairs.contains(&(a.min(b), a.max(b)));
        for &(f, g) in &pairs {
            for h in space.charts().filter(|&h| h > g) {
                if is_half(f, h) && is_half(g, h) {
                    r.inventory.triples += 1;
                    let w = Witness::ExchangeTriple { f, g, h };
                    if w.replay(space)? {
                        r.fail(w);
                    }
                }
            }
        }
        Ok(r)
    }

    fn ec(&self) -> Result<ConditionReport, AxiomError> {
        let mut r = ConditionReport::new(Condition::EC);
        let pairs = self.half_pairs();
        r.inventory.overlaps = pairs.len();
        if pairs.is_empty() {
            r.verdict = Verdict::Vacuous;
            r.notes.push("no two charts meet in a half-apartment".into());
            return Ok(r);
        }
        r.verdict = Verdict::Pass;
        for &(f1, f2) in &pairs {
            if exchange_partner(self.space, f1, f2).is_none() {
                r.fail(Witness::Exchange { f1, f2 });
            }
        }
        Ok(r)
    }

    fn sc(&self) -> Result<ConditionReport, AxiomError> {
        let (space, rs) = (self.space, self.space.root_system());
        let mut r = ConditionReport::new(Condition::SC);
        let pairs = self.half_pairs();
        r.inventory.overlaps = pairs.len();
        if pairs.is_empty() {
            r.verdict = Verdict::Vacuous;
            r.notes.push("no two charts meet in a half-apartment".into());
            return Ok(r);
        }
        for &(a, b) in &pairs {
            for (f1, g) in [(a, b), (b, a)] {
                let cg = half_overlap(space, g, f1).expect("inverse of a half-apartment overlap");
                let wall = WeylPolyhedron::new(vec![crate::model::Constraint::new(
                    cg.root,
                    crate::model::Relation::Eq,
                    cg.bound.clone(),
                )]);
                // base points on the wall: one generic point plus marked ones
                let mut bases: Vec<ModelPoint> = wall.feasible_point(rs, space.lambda_rank()).into_iter().collect();
                for (c, p) in space.marked_points() {
                    if *c == g && wall.contains(rs, p) {
                        bases.push(p.clone());
                    }
                }
                bases.sort();
                bases.dedup();
                for base in bases {
                    let Some((f1_wall, dirs)) = sundial_hypotheses(space, f1, g, &base) else {
                        continue;
                    };
                    for w in dirs {
                        r.inventory.chambers += 1;
                        let chamber = XGerm::new(g, WeylSimplexLocal::chamber(base.clone(), w));
                        if sundial_charts(space, f1, &f1_wall, &chamber).len() < 2 {
                            r.fail(Witness::Sundial { f1, chamber });
                        }
                    }
                }
            }
        }
        Ok(r)
    }

    fn gg(&self) -> Result<ConditionReport, AxiomError> {
        let mut r = ConditionReport::new(Condition::GG);
        r.inventory.points = self.probes.points.len();
        'outer: for res in self.residues()? {
            r.inventory.germs += res.chamber_count();
            for a in 0..res.chamber_count() {
                for b in a + 1..res.chamber_count() {
                    r.inventory.pairs += 1;
                    if !res.co_apartment(a, b) {
                        r.fail(Witness::GermPair {
                            a: res.chambers[a].clone(),
                            b: res.chambers[b].clone(),
                        });
                        break 'outer;
                    }
                }
            }
        }
        Ok(r)
    }

    fn co(&self) -> Result<ConditionReport, AxiomError> {
        let space = self.space;
        let rs = space.root_system();
        let mut r = ConditionReport::new(Condition::CO);
        r.inventory.points = self.probes.points.len();
        'outer: for x in &self.probes.points {
            for (chart, reps) in space.representatives(x)? {
                for base in reps {
                    for direction in 0..rs.order() {
                        r.inventory.chambers += 1;
                        let w = Witness::Opposite {
                            chart,
                            base: base.clone(),
                            direction,
                        };
                        if w.replay(space)? {
                            r.fail(w);
                            break 'outer;
                        }
                    }
                }
            }
        }
        Ok(r)
    }

    /// Marked chamber germs and the residue chambers at every probe point.
    fn germ_probes(&self) -> Result<Vec<(XGerm, Vec<ChartId>)>, AxiomError> {
        let mut germs: Vec<XGerm> = Vec::new();
        for g in &self.probes.chambers {
            germs.push(self.space.canonical_germ(g)?);
        }
        for res in self.residues()? {
            germs.extend(res.chambers.iter().cloned());
        }
        let mut seen = BTreeSet::new();
        germs.retain(|g| seen.insert(g.clone()));
        germs.truncate(self.config.budget);
        let mut out = Vec::with_capacity(germs.len());
        for g in germs {
            let charts = germ_charts(self.space, &g)?;
            out.push((g, charts));
        }
        Ok(out)
    }

    fn la(&self) -> Result<ConditionReport, AxiomError> {
        let mut r = ConditionReport::new(Condition::LA);
        let germs = self.germ_probes()?;
        r.inventory.germs = germs.len();
        let mut budget = self.config.budget;
        'outer: for (i, (a, ca)) in germs.iter().enumerate() {
            for (b, cb) in &germs[i + 1..] {
                if budget == 0 {
                    r.notes.push("germ pairs truncated by the probe budget".into());
                    break 'outer;
                }
                budget -= 1;
                r.inventory.pairs += 1;
                if cb.iter().all(|c| !ca.contains(c)) {
                    r.fail(Witness::GermPair { a: a.clone(), b: b.clone() });
                    break 'outer;
                }
            }
        }
        Ok(r)
    }

    fn ala(&self) -> Result<ConditionReport, AxiomError> {
        let mut r = ConditionReport::new(Condition::ALA);
        let germs = self.germ_probes()?;
        r.inventory.germs = germs.len();
        r.inventory.points = self.probes.points.len();
        let mut budget = self.config.budget;
        'outer: for x in &self.probes.points {
            let cx = self.space.charts_containing(x)?;
            for (g, cg) in &germs {
                if budget == 0 {
                    r.notes.push("point-germ pairs truncated by the probe budget".into());
                    break 'outer;
                }
                budget -= 1;
                r.inventory.pairs += 1;
                if cg.iter().all(|c| !cx.contains(c)) {
                    r.fail(Witness::PointGerm {
                        x: x.clone(),
                        germ: g.clone(),
                    });
                    break 'outer;
                }
            }
        }
        Ok(r)
    }

    fn fc(&self) -> Result<ConditionReport, AxiomError> {
        let space = self.space;
        let rs = space.root_system();
        let mut r = ConditionReport::new(Condition::FC);
        r.inventory.points = self.probes.points.len();
        let classes = self.classes();
        let mut budget = self.config.budget;
        'outer: for &(i, j, k) in &self.probes.triples {
            let (x, y, z) = (self.point(i), self.point(j), self.point(k));
            let (rx, ry) = (space.representatives(x)?, space.representatives(y)?);
            for (chart, xs) in &rx {
                let Some(ys) = ry.get(chart) else { continue };
                if budget == 0 {
                    r.notes.push("triples truncated by the probe budget".into());
                    break 'outer;
                }
                budget -= 1;
                r.inventory.triples += 1;
                let seg = segment(rs, &xs[0], &ys[0]);
                for p in segment_samples(rs, &xs[0], &ys[0], 3) {
                    debug_assert!(seg.contains(rs, &p));
                    if !covered(space, classes, *chart, z, &p)? {
                        r.fail(Witness::Cover {
                            chart: *chart,
                            x: x.clone(),
                            y: y.clone(),
                            z: z.clone(),
                            point: p,
                        });
                        break 'outer;
                    }
                }
            }
        }
        Ok(r)
    }
}

