//! Retractions onto an apartment centered at a chamber germ.
//!
//! `r_{A,μ}(y)` is computed in a chart `g` containing both `y` and `μ`: the
//! unique affine Weyl map carrying `μ`'s copy in `g` onto its copy in `A`
//! is applied to `y`'s coordinates in `g`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::atlas::{AtlasError, AtlasSpace, ChartId, XGerm, XPoint};
use crate::model::{AffineMap, ModelPoint, WeylSimplexLocal};
use crate::scalars::LambdaScalar;

#[derive(Debug, thiserror::Error)]
pub enum RetractionError {
    #[error(transparent)]
    Atlas(#[from] AtlasError),
    #[error("the center must be a chamber germ")]
    NotAChamber,
    #[error("the center germ is not contained in chart {0}")]
    CenterOutsideTarget(String),
    #[error("no chart contains both {point} and the center germ")]
    NoChart { point: String },
    #[error("intermediate charts disagree on the image of {point}: {a} vs {b}")]
    ChartDependent { point: String, a: String, b: String },
}

/// How an image was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Through a chart containing the point and the center germ.
    Germ { chart: String },
    /// No such chart: through a chart containing the point that meets the
    /// target at the center's base point, using that overlap's transition.
    BasePoint { chart: String },
}

pub struct Retraction<'a> {
    space: &'a AtlasSpace,
    target: ChartId,
    center: XGerm,
    /// Per chart: the center's copies there.
    copies: BTreeMap<ChartId, Vec<WeylSimplexLocal>>,
}

impl<'a> Retraction<'a> {
    /// `center` may be given in any chart; it must have a copy in `target`.
    pub fn new(space: &'a AtlasSpace, target: ChartId, center: &XGerm) -> Result<Self, RetractionError> {
        if !center.simplex.is_chamber() {
            return Err(RetractionError::NotAChamber);
        }
        let mut copies: BTreeMap<ChartId, Vec<WeylSimplexLocal>> = BTreeMap::new();
        for e in space.germ_orbit(center)? {
            copies.entry(e.chart).or_default().push(e.simplex);
        }
        let in_target = copies
            .get(&target)
            .and_then(|v| v.first().cloned())
            .ok_or_else(|| RetractionError::CenterOutsideTarget(space.chart_name(target).to_string()))?;
        Ok(Self {
            space,
            target,
            center: XGerm::new(target, in_target),
            copies,
        })
    }

    pub fn target(&self) -> ChartId {
        self.target
    }

    /// The center, expressed in the target chart.
    pub fn center(&self) -> &XGerm {
        &self.center
    }

    pub fn charts_containing_center(&self) -> impl Iterator<Item = ChartId> + '_ {
        self.copies.keys().copied()
    }

    /// The affine map taking the chamber `from` onto the target copy.
    fn transfer(&self, from: &WeylSimplexLocal) -> AffineMap {
        let rs = self.space.root_system();
        let to = &self.center.simplex;
        let weyl = rs.compose(to.direction, rs.inverse(from.direction));
        let translation = to.base.sub(&rs.act(weyl, &from.base));
        AffineMap { weyl, translation }
    }

    /// Strict evaluation: every chart (ascending) containing `y` and the
    /// center is used and all results must agree.
    pub fn retract(&self, y: &XPoint) -> Result<ModelPoint, RetractionError> {
        let rs = self.space.root_system();
        let reps = self.space.representatives(y)?;
        let mut result: Option<ModelPoint> = None;
        for (chart, copies) in &self.copies {
            let Some(ys) = reps.get(chart) else { continue };
            for copy in copies {
                let m = self.transfer(copy);
                for yg in ys {
                    let img = m.apply(rs, yg);
                    match &result {
                        None => result = Some(img),
                        Some(r) if *r != img => {
                            return Err(RetractionError::ChartDependent {
                                point: self.space.format_xpoint(y),
                                a: r.to_string(),
                                b: img.to_string(),
                            })
                        }
                        _ => {}
                    }
                }
            }
        }
        result.ok_or_else(|| RetractionError::NoChart {
            point: self.space.format_xpoint(y),
        })
    }

    /// Strict evaluation, falling back to a chart containing `y` that meets
    /// the target at the center's base point.
    pub fn retract_with_route(&self, y: &XPoint) -> Result<(ModelPoint, Route), RetractionError> {
        match self.retract(y) {
            Ok(p) => {
                let chart = self
                    .copies
                    .keys()
                    .find(|c| self.space.representatives(y).map(|r| r.contains_key(c)).unwrap_or(false))
                    .copied()
                    .unwrap_or(self.target);
                Ok((
                    p,
                    Route::Germ {
                        chart: self.space.chart_name(chart).to_string(),
                    },
                ))
            }
            Err(RetractionError::NoChart { point }) => {
                let rs = self.space.root_system();
                let base = &self.center.simplex.base;
                for (chart, ys) in self.space.representatives(y)? {
                    let Some(g) = self.space.direct_gluing(chart, self.target) else {
                        continue;
                    };
                    let base_here = g.map.inverse(rs).apply(rs, base);
                    if !g.region.contains(rs, &base_here) {
                        continue;
                    }
                    return Ok((
                        g.map.apply(rs, &ys[0]),
                        Route::BasePoint {
                            chart: self.space.chart_name(chart).to_string(),
                        },
                    ));
                }
                Err(RetractionError::NoChart { point })
            }
            Err(e) => Err(e),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LipschitzViolation {
    /// Index into the checked pair list.
    pub pair: usize,
    pub y: String,
    pub z: String,
    pub distance: LambdaScalar,
    pub image_distance: LambdaScalar,
    pub routes: (Route, Route),
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct LipschitzReport {
    pub checked: usize,
    pub skipped: Vec<String>,
    pub fallbacks: Vec<String>,
    pub violations: Vec<LipschitzViolation>,
}

impl LipschitzReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `d(r(y), r(z)) ≤ d(y, z)` over the given pairs. Pairs without a defined
/// distance or image are skipped with a notice.
pub fn verify_lipschitz(r: &Retraction<'_>, pairs: &[(XPoint, XPoint)]) -> Result<LipschitzReport, RetractionError> {
    let space = r.space;
    let mut report = LipschitzReport::default();
    let image = |p: &XPoint, report: &mut LipschitzReport| -> Result<Option<(ModelPoint, Route)>, RetractionError> {
        match r.retract_with_route(p) {
            Ok((img, route)) => {
                if let Route::BasePoint { chart } = &route {
                    let note = format!("{} via {chart}", space.format_xpoint(p));
                    if !report.fallbacks.contains(&note) {
                        report.fallbacks.push(note);
                    }
                }
                Ok(Some((img, route)))
            }
            Err(RetractionError::NoChart { point }) => {
                report.skipped.push(format!("no image for {point}"));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    };
    for (pair, (y, z)) in pairs.iter().enumerate() {
        let d = match space.distance_x(y, z)? {
            Ok(d) => d,
            Err(e) => {
                report.skipped.push(format!(
                    "d({}, {}) undefined: {e}",
                    space.format_xpoint(y),
                    space.format_xpoint(z)
                ));
                continue;
            }
        };
        let (Some((ry, route_y)), Some((rz, route_z))) = (image(y, &mut report)?, image(z, &mut report)?) else {
            continue;
        };
        report.checked += 1;
        let di = space.model_distance(&ry, &rz);
        if di > d {
            report.violations.push(LipschitzViolation {
                pair,
                y: space.format_xpoint(y),
                z: space.format_xpoint(z),
                distance: d,
                image_distance: di,
                routes: (route_y, route_z),
            });
        }
    }
    Ok(report)
}

/// Points of `chart` whose images differ from a distance-preserving copy:
/// returns the offending pairs of coordinates.
pub fn verify_isometry(
    r: &Retraction<'_>,
    chart: ChartId,
    points: &[ModelPoint],
) -> Result<Vec<(ModelPoint, ModelPoint)>, RetractionError> {
    let space = r.space;
    let mut images = Vec::with_capacity(points.len());
    for p in points {
        images.push(r.retract(&space.canonical_point(chart, p)?)?);
    }
    let mut bad = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if space.model_distance(&points[i], &points[j]) != space.model_distance(&images[i], &images[j]) {
                bad.push((points[i].clone(), points[j].clone()));
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::tests::{pt, tripod};

    #[test]
    fn tripod_retraction_examples() {
        let s = tripod();
        let (c12, c13, c23) = (ChartId(0), ChartId(1), ChartId(2));
        let mu = XGerm::new(c12, WeylSimplexLocal::chamber(pt(0), 0));
        let r = Retraction::new(&s, c12, &mu).unwrap();
        assert_eq!(r.charts_containing_center().collect::<Vec<_>>(), vec![c12, c13]);
        // ray3 point: computed through chart_13
        let y = s.canonical_point(c23, &pt(-4)).unwrap();
        assert_eq!(r.retract(&y).unwrap(), pt(-4));
        // ray2 point already in the target
        let y2 = s.canonical_point(c12, &pt(-4)).unwrap();
        assert_eq!(r.retract(&y2).unwrap(), pt(-4));
        // identity on the target
        for t in [-3, 0, 2, 9] {
            let p = s.canonical_point(c12, &pt(t)).unwrap();
            assert_eq!(r.retract(&p).unwrap(), pt(t));
        }
        let report = verify_lipschitz(&r, &[(y.clone(), y2.clone())]).unwrap();
        assert!(report.passed());
        assert_eq!(report.checked, 1);
        assert_eq!(s.distance_x(&y, &y2).unwrap().unwrap(), LambdaScalar::from_integers(&[8]));
        let pts: Vec<_> = [-5, -1, 0, 3, 8].iter().map(|&t| pt(t)).collect();
        assert!(verify_isometry(&r, c13, &pts).unwrap().is_empty());
    }

    #[test]
    fn center_must_lie_in_target() {
        let s = tripod();
        let mu = XGerm::new(ChartId(0), WeylSimplexLocal::chamber(pt(0), 1));
        assert!(matches!(
            Retraction::new(&s, ChartId(1), &mu),
            Err(RetractionError::CenterOutsideTarget(_))
        ));
        let vertex = XGerm::new(ChartId(0), WeylSimplexLocal::vertex(pt(0)));
        assert!(matches!(Retraction::new(&s, ChartId(0), &vertex), Err(RetractionError::NotAChamber)));
    }
}
