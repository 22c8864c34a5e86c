//! Counterexamples found by the checks. Each one can be re-evaluated
//! against a space through public operations.

use serde_json::{json, Value};

use crate::atlas::{format_point, AtlasError, AtlasSpace, ChartId, XGerm, XPoint};
use crate::model::{AffineMap, Constraint, ModelPoint, WeylPolyhedron, WeylSimplexLocal};
use crate::retraction::{verify_lipschitz, Retraction, RetractionError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A stored gluing map is not in `W_T`.
    GluingNotInWt { from: ChartId, to: ChartId },
    /// A gluing without its inverse.
    MissingInverse { from: ChartId, to: ChartId },
    /// Conjugating a gluing by `h ∈ W_T` does not give a gluing with the
    /// expected region and map.
    Precomposition {
        from: ChartId,
        to: ChartId,
        h: AffineMap,
        point: ModelPoint,
    },
    /// `point` (in `c`) passes through `d` into `e`, but the direct
    /// transition `c → e` is missing or disagrees there.
    Cocycle {
        c: ChartId,
        d: ChartId,
        e: ChartId,
        point: ModelPoint,
    },
    /// Two distinct coordinates of one chart name the same point.
    NonInjective { chart: ChartId, a: ModelPoint, b: ModelPoint },
    /// `x` in `c` is also `y` in `d`, but no direct gluing says so.
    MissingOverlap {
        c: ChartId,
        x: ModelPoint,
        d: ChartId,
        y: ModelPoint,
    },
    NoCommonApartment { x: XPoint, y: XPoint },
    Triangle { x: XPoint, y: XPoint, z: XPoint },
    Lipschitz {
        target: ChartId,
        center: XGerm,
        y: XPoint,
        z: XPoint,
    },
    /// `r(y)` equals the center's base point although `y` is another point.
    Preimage { target: ChartId, center: XGerm, y: XPoint },
    /// A triangle violation whose long side lies in `chart`: every
    /// retraction onto `chart` centered at `x` must stretch a short side.
    MetricObstruction {
        chart: ChartId,
        x: XPoint,
        y: XPoint,
        z: XPoint,
    },
    /// Two Weyl chambers without sub-chambers in a common chart.
    ChamberPair { a: XGerm, b: XGerm },
    /// Pairwise half-apartment overlaps with empty triple intersection.
    ExchangeTriple { f: ChartId, g: ChartId, h: ChartId },
    /// No chart completes the half-apartment pair `(f1, f2)`.
    Exchange { f1: ChartId, f2: ChartId },
    /// The chamber `S` of `g` meets `f1` in a panel on the wall of their
    /// half-apartment overlap, but fewer than two charts qualify.
    Sundial { f1: ChartId, chamber: XGerm },
    /// Chamber germs (with equal base for GG) in no common chart.
    GermPair { a: XGerm, b: XGerm },
    PointGerm { x: XPoint, germ: XGerm },
    /// Opposite chambers of `chart` at `base` not in exactly one chart.
    Opposite {
        chart: ChartId,
        base: ModelPoint,
        direction: usize,
    },
    /// A point of `seg_A(x, y)` outside every `z`-based chamber parallel to
    /// a chamber of `A`.
    Cover {
        chart: ChartId,
        x: XPoint,
        y: XPoint,
        z: XPoint,
        point: ModelPoint,
    },
}

fn xp(space: &AtlasSpace, x: &XPoint) -> Value {
    Value::String(space.format_xpoint(x))
}

fn germ(space: &AtlasSpace, g: &XGerm) -> Value {
    json!({
        "chart": space.chart_name(g.chart),
        "base": format_point(&g.simplex.base),
        "weyl_index": g.simplex.direction,
        "face": g.simplex.face,
    })
}

fn dist(space: &AtlasSpace, a: &XPoint, b: &XPoint) -> Value {
    match space.distance_x(a, b) {
        Ok(Ok(d)) => Value::String(d.to_string()),
        Ok(Err(e)) => Value::String(format!("undefined ({e})")),
        Err(e) => Value::String(format!("error ({e})")),
    }
}

/// Charts containing the germ.
pub(crate) fn germ_charts(space: &AtlasSpace, g: &XGerm) -> Result<Vec<ChartId>, AtlasError> {
    let mut out: Vec<ChartId> = space.germ_orbit(g)?.into_iter().map(|e| e.chart).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Charts containing a sub-chamber of the chamber `g`.
pub(crate) fn subchamber_charts(space: &AtlasSpace, g: &XGerm) -> Vec<ChartId> {
    let rs = space.root_system();
    let mut out = vec![g.chart];
    for gl in space.gluings_from(g.chart) {
        if gl.region.recession_contains(rs, g.simplex.direction) {
            out.push(gl.to);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Charts other than `c` containing the whole polyhedron `p` of chart `c`.
pub(crate) fn charts_containing_set(space: &AtlasSpace, c: ChartId, p: &WeylPolyhedron) -> Vec<ChartId> {
    let rs = space.root_system();
    let mut out = vec![c];
    for gl in space.gluings_from(c) {
        if p.is_subset_of(rs, &gl.region) {
            out.push(gl.to);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The half-apartment constraint of a direct overlap, if it is one.
pub(crate) fn half_overlap(space: &AtlasSpace, f: ChartId, g: ChartId) -> Option<Constraint> {
    if f == g {
        return None;
    }
    space
        .direct_gluing(f, g)
        .and_then(|gl| gl.region.as_half_apartment(space.root_system()))
}

/// The charts `h ≠ f1` qualifying in the sundial condition for a chamber
/// of `chamber.chart` over the wall `wall` of `f1`.
pub(crate) fn sundial_charts(space: &AtlasSpace, f1: ChartId, wall: &WeylPolyhedron, chamber: &XGerm) -> Vec<ChartId> {
    let rs = space.root_system();
    let s = chamber.simplex.polyhedron(rs);
    let holders = charts_containing_set(space, chamber.chart, &s);
    space
        .charts()
        .filter(|&h| h != f1 && holders.contains(&h))
        .filter(|&h| {
            half_overlap(space, f1, h).is_some()
                && space
                    .direct_gluing(f1, h)
                    .is_some_and(|gl| wall.is_subset_of(rs, &gl.region))
        })
        .collect()
}

/// The wall of the half-apartment overlap `f1 ∩ g`, in `f1` coordinates,
/// and the chambers of `g` at `base` (in `g` coordinates, on the wall)
/// meeting `f1` in a panel.
pub(crate) fn sundial_hypotheses(
    space: &AtlasSpace,
    f1: ChartId,
    g: ChartId,
    base: &ModelPoint,
) -> Option<(WeylPolyhedron, Vec<usize>)> {
    let rs = space.root_system();
    let c = half_overlap(space, f1, g)?;
    let cg = half_overlap(space, g, f1)?;
    if !cg.is_active(rs, base) {
        return None;
    }
    let wall = WeylPolyhedron::new(vec![Constraint::new(c.root, crate::model::Relation::Eq, c.bound)]);
    // the far side of g is where the constraint's root has the opposite sign
    let outward_positive = cg.rel == crate::model::Relation::Le;
    let mut dirs = Vec::new();
    for w in 0..rs.order() {
        let beta = rs.root_image(rs.inverse(w), cg.root);
        let simple = (0..rs.rank()).any(|j| rs.simple_root(j) == beta.index);
        if simple && beta.positive == outward_positive {
            dirs.push(w);
        }
    }
    Some((wall, dirs))
}

/// Whether `p` (in chart `a`) lies in a chamber based at `z` parallel to a
/// chamber of `a`.
pub(crate) fn covered(
    space: &AtlasSpace,
    classes: &crate::atlas::ParallelismClasses,
    a: ChartId,
    z: &XPoint,
    p: &ModelPoint,
) -> Result<bool, AtlasError> {
    let rs = space.root_system();
    let px = space.canonical_point(a, p)?;
    let rp = space.representatives(&px)?;
    let rz = space.representatives(z)?;
    for (g, zs) in &rz {
        let Some(ps) = rp.get(g) else { continue };
        for zg in zs {
            for pg in ps {
                let diff = pg.sub(zg);
                for w in 0..rs.order() {
                    let local = rs.act(rs.inverse(w), &diff);
                    if local.coords().iter().any(|c| c.is_negative()) {
                        continue;
                    }
                    let class = classes.class(crate::atlas::ChamberNode { chart: *g, direction: w });
                    if classes.members(class).iter().any(|n| n.chart == a) {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}

impl Witness {
    /// Re-evaluates the violation. `Ok(true)` means it reproduces.
    pub fn replay(&self, space: &AtlasSpace) -> Result<bool, RetractionError> {
        let rs = space.root_system();
        Ok(match self {
            Witness::GluingNotInWt { from, to } => space
                .direct_gluing(*from, *to)
                .is_some_and(|g| g.map.weyl >= rs.order() || !space.translations().contains(rs, &g.map.translation)),
            Witness::MissingInverse { from, to } => match (space.direct_gluing(*from, *to), space.direct_gluing(*to, *from)) {
                (Some(g), Some(back)) => {
                    back.map != g.map.inverse(rs) || !back.region.same_set(rs, &g.region.image(rs, &g.map))
                }
                (Some(_), None) => true,
                _ => false,
            },
            Witness::Precomposition { from, to, h, point } => {
                let Some(g) = space.direct_gluing(*from, *to) else {
                    return Ok(false);
                };
                let region = g.region.image(rs, &h.inverse(rs));
                let conj = g.map.compose(rs, h);
                !region.contains(rs, point)
                    || !g.region.contains(rs, &h.apply(rs, point))
                    || conj.apply(rs, point) != g.map.apply(rs, &h.apply(rs, point))
                    || !space.translations().contains(rs, &conj.translation)
            }
            Witness::Cocycle { c, d, e, point } => {
                let (Some(cd), Some(de)) = (space.direct_gluing(*c, *d), space.direct_gluing(*d, *e)) else {
                    return Ok(false);
                };
                if !cd.region.contains(rs, point) {
                    return Ok(false);
                }
                let q = cd.map.apply(rs, point);
                if !de.region.contains(rs, &q) {
                    return Ok(false);
                }
                let r = de.map.apply(rs, &q);
                if c == e {
                    r != *point
                } else {
                    match space.direct_gluing(*c, *e) {
                        None => true,
                        Some(ce) => !ce.region.contains(rs, point) || ce.map.apply(rs, point) != r,
                    }
                }
            }
            Witness::NonInjective { chart, a, b } => {
                a != b && space.canonical_point(*chart, a)? == space.canonical_point(*chart, b)?
            }
            Witness::MissingOverlap { c, x, d, y } => {
                let in_orbit = space.orbit(*c, x)?.contains(&(*d, y.clone()));
                in_orbit
                    && match space.direct_gluing(*c, *d) {
                        None => true,
                        Some(g) => !g.region.contains(rs, x) || g.map.apply(rs, x) != *y,
                    }
            }
            Witness::NoCommonApartment { x, y } => space.common_apartments(x, y)?.is_empty(),
            Witness::Triangle { x, y, z } => triangle_violated(space, x, y, z)?,
            Witness::Lipschitz { target, center, y, z } => {
                let r = Retraction::new(space, *target, center)?;
                !verify_lipschitz(&r, &[(y.clone(), z.clone())])?.passed()
            }
            Witness::Preimage { target, center, y } => {
                let r = Retraction::new(space, *target, center)?;
                let base = space.germ_base(center)?;
                *y != base
                    && match r.retract_with_route(y) {
                        Ok((img, _)) => img == r.center().simplex.base,
                        Err(RetractionError::NoChart { .. }) => false,
                        Err(e) => return Err(e),
                    }
            }
            Witness::MetricObstruction { chart, x, y, z } => {
                triangle_violated(space, x, y, z)? && space.common_apartments(x, z)?.contains(chart)
            }
            Witness::ChamberPair { a, b } => {
                let da = subchamber_charts(space, a);
                subchamber_charts(space, b).iter().all(|c| !da.contains(c))
            }
            Witness::ExchangeTriple { f, g, h } => {
                let pairwise = [(f, g), (f, h), (g, h)]
                    .iter()
                    .all(|(a, b)| half_overlap(space, **a, **b).is_some());
                pairwise && {
                    let fg = &space.direct_gluing(*f, *g).expect("checked").region;
                    let fh = &space.direct_gluing(*f, *h).expect("checked").region;
                    fg.intersect(fh).is_empty(rs)
                }
            }
            Witness::Exchange { f1, f2 } => {
                half_overlap(space, *f1, *f2).is_some() && exchange_partner(space, *f1, *f2).is_none()
            }
            Witness::Sundial { f1, chamber } => {
                let Some((wall, dirs)) = sundial_hypotheses(space, *f1, chamber.chart, &chamber.simplex.base) else {
                    return Ok(false);
                };
                dirs.contains(&chamber.simplex.direction) && sundial_charts(space, *f1, &wall, chamber).len() < 2
            }
            Witness::GermPair { a, b } => {
                let ca = germ_charts(space, a)?;
                germ_charts(space, b)?.iter().all(|c| !ca.contains(c))
            }
            Witness::PointGerm { x, germ } => {
                let cx = space.charts_containing(x)?;
                germ_charts(space, germ)?.iter().all(|c| !cx.contains(c))
            }
            Witness::Opposite { chart, base, direction } => {
                let w0 = rs.longest();
                let s = WeylSimplexLocal::chamber(base.clone(), *direction).polyhedron(rs);
                let t = WeylSimplexLocal::chamber(base.clone(), rs.compose(*direction, w0)).polyhedron(rs);
                let cs = charts_containing_set(space, *chart, &s);
                let ct = charts_containing_set(space, *chart, &t);
                cs.iter().filter(|c| ct.contains(c)).count() != 1
            }
            Witness::Cover { chart, x, y, z, point } => {
                let reps_x = space.representatives(x)?;
                let reps_y = space.representatives(y)?;
                let (Some(xs), Some(ys)) = (reps_x.get(chart), reps_y.get(chart)) else {
                    return Ok(false);
                };
                let seg = crate::model::segment(rs, &xs[0], &ys[0]);
                seg.contains(rs, point) && !covered(space, &space.parallelism_classes(), *chart, z, point)?
            }
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Witness::GluingNotInWt { .. } => "gluing_not_in_wt",
            Witness::MissingInverse { .. } => "missing_inverse",
            Witness::Precomposition { .. } => "precomposition",
            Witness::Cocycle { .. } => "cocycle",
            Witness::NonInjective { .. } => "non_injective",
            Witness::MissingOverlap { .. } => "missing_overlap",
            Witness::NoCommonApartment { .. } => "no_common_apartment",
            Witness::Triangle { .. } => "triangle",
            Witness::Lipschitz { .. } => "lipschitz",
            Witness::Preimage { .. } => "preimage",
            Witness::MetricObstruction { .. } => "metric_obstruction",
            Witness::ChamberPair { .. } => "chamber_pair",
            Witness::ExchangeTriple { .. } => "exchange_triple",
            Witness::Exchange { .. } => "exchange",
            Witness::Sundial { .. } => "sundial",
            Witness::GermPair { .. } => "germ_pair",
            Witness::PointGerm { .. } => "point_germ",
            Witness::Opposite { .. } => "opposite",
            Witness::Cover { .. } => "cover",
        }
    }

    pub fn to_json(&self, space: &AtlasSpace) -> Value {
        let name = |c: &ChartId| Value::String(space.chart_name(*c).to_string());
        let mut v = match self {
            Witness::GluingNotInWt { from, to } | Witness::MissingInverse { from, to } => {
                json!({ "from": name(from), "to": name(to) })
            }
            Witness::Precomposition { from, to, h, point } => json!({
                "from": name(from), "to": name(to),
                "weyl_index": h.weyl, "translation": format_point(&h.translation),
                "point": format_point(point),
            }),
            Witness::Cocycle { c, d, e, point } => json!({
                "charts": [name(c), name(d), name(e)], "point": format_point(point),
            }),
            Witness::NonInjective { chart, a, b } => json!({
                "chart": name(chart), "a": format_point(a), "b": format_point(b),
            }),
            Witness::MissingOverlap { c, x, d, y } => json!({
                "x": space.describe_point(*c, x), "y": space.describe_point(*d, y),
            }),
            Witness::NoCommonApartment { x, y } => json!({ "x": xp(space, x), "y": xp(space, y) }),
            Witness::Triangle { x, y, z } => json!({
                "x": xp(space, x), "y": xp(space, y), "z": xp(space, z),
                "d_xy": dist(space, x, y), "d_yz": dist(space, y, z), "d_xz": dist(space, x, z),
            }),
            Witness::Lipschitz { target, center, y, z } => {
                let mut out = json!({
                    "target": name(target), "center": germ(space, center),
                    "y": xp(space, y), "z": xp(space, z), "d_yz": dist(space, y, z),
                });
                if let Ok(r) = Retraction::new(space, *target, center) {
                    if let (Ok((ry, route_y)), Ok((rz, route_z))) = (r.retract_with_route(y), r.retract_with_route(z)) {
                        out["r_y"] = json!(format_point(&ry));
                        out["r_z"] = json!(format_point(&rz));
                        out["d_image"] = json!(space.model_distance(&ry, &rz).to_string());
                        out["routes"] = json!([route_y, route_z]);
                    }
                }
                out
            }
            Witness::Preimage { target, center, y } => json!({
                "target": name(target), "center": germ(space, center), "y": xp(space, y),
            }),
            Witness::MetricObstruction { chart, x, y, z } => json!({
                "chart": name(chart), "x": xp(space, x), "y": xp(space, y), "z": xp(space, z),
                "d_xy": dist(space, x, y), "d_yz": dist(space, y, z), "d_xz": dist(space, x, z),
            }),
            Witness::ChamberPair { a, b } | Witness::GermPair { a, b } => {
                json!({ "a": germ(space, a), "b": germ(space, b) })
            }
            Witness::ExchangeTriple { f, g, h } => json!({ "charts": [name(f), name(g), name(h)] }),
            Witness::Exchange { f1, f2 } => json!({ "charts": [name(f1), name(f2)] }),
            Witness::Sundial { f1, chamber } => json!({ "f1": name(f1), "chamber": germ(space, chamber) }),
            Witness::PointGerm { x, germ: g } => json!({ "x": xp(space, x), "germ": germ(space, g) }),
            Witness::Opposite { chart, base, direction } => json!({
                "chart": name(chart), "base": format_point(base), "weyl_index": direction,
            }),
            Witness::Cover { chart, x, y, z, point } => json!({
                "chart": name(chart), "x": xp(space, x), "y": xp(space, y), "z": xp(space, z),
                "point": format_point(point),
            }),
        };
        v["kind"] = json!(self.kind());
        v
    }
}

fn triangle_violated(space: &AtlasSpace, x: &XPoint, y: &XPoint, z: &XPoint) -> Result<bool, AtlasError> {
    let (Ok(xy), Ok(yz), Ok(xz)) = (space.distance_x(x, y)?, space.distance_x(y, z)?, space.distance_x(x, z)?) else {
        return Ok(false);
    };
    Ok(xz > &xy + &yz)
}

/// A chart `f3` with `f3 ∩ f1`, `f3 ∩ f2` the complementary halves and
/// `f3` covered by those two halves.
pub(crate) fn exchange_partner(space: &AtlasSpace, f1: ChartId, f2: ChartId) -> Option<ChartId> {
    let rs = space.root_system();
    let complement = |a: ChartId, b: ChartId| -> Option<WeylPolyhedron> {
        let c = half_overlap(space, a, b)?;
        Some(WeylPolyhedron::new(vec![Constraint::new(c.root, c.rel.flipped(), c.bound)]))
    };
    let (h1, h2) = (complement(f1, f2)?, complement(f2, f1)?);
    space.charts().filter(|&f3| f3 != f1 && f3 != f2).find(|&f3| {
        let (Some(g13), Some(g23)) = (space.direct_gluing(f1, f3), space.direct_gluing(f2, f3)) else {
            return false;
        };
        if !g13.region.same_set(rs, &h1) || !g23.region.same_set(rs, &h2) {
            return false;
        }
        let (Some(c31), Some(c32)) = (half_overlap(space, f3, f1), half_overlap(space, f3, f2)) else {
            return false;
        };
        c31.root == c32.root && c31.bound == c32.bound && c31.rel == c32.rel.flipped()
    })
}
