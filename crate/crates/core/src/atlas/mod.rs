//! Finite atlases: charts of the model apartment glued along Weyl polyhedra.
//!
//! A chart id names the image of one embedding of the model space. Gluing
//! `c → d` states that `f_c(x) = f_d(m(x))` for `x` in its region. Points of
//! the space are orbits of `(chart, coordinates)` pairs under gluings.

mod germs;
mod io;
mod parallel;

pub use germs::{GermOrbitEntry, ResidueApartment, ResidueComplex, XGerm};
pub use io::{format_point, parse_germ_spec, parse_point_spec, AtlasFile, RootSpec};
pub use parallel::{ChamberNode, ParallelismClasses};

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::model::{distance, AffineMap, ModelPoint, TranslationGroup, WeylPolyhedron, WeylSimplexLocal};
use crate::roots::{RootError, RootSystem};
use crate::scalars::{FRational, LambdaScalar};

pub const DEFAULT_ORBIT_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChartId(pub usize);

#[derive(Debug, thiserror::Error)]
pub enum AtlasError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("unknown chart `{0}`")]
    UnknownChart(String),
    #[error("duplicate chart `{0}`")]
    DuplicateChart(String),
    #[error("{context}: expected {expected} coordinates, got {got}")]
    Dimension {
        context: String,
        expected: usize,
        got: usize,
    },
    #[error("{context}: scalars must have lex rank {expected}, got {got}")]
    LambdaRank {
        context: String,
        expected: usize,
        got: usize,
    },
    #[error("{0}: not a root of the root system")]
    NotARoot(String),
    #[error("gluing {0}: empty region")]
    EmptyRegion(String),
    #[error("gluing {0}: region is the whole apartment, so two charts would share an image")]
    FullImage(String),
    #[error("gluing {0}: translation is not in the translation group")]
    TranslationOutsideT(String),
    #[error("gluing {0}: weyl index out of range")]
    WeylIndex(String),
    #[error("gluing {0}: conflicts with an existing gluing between the same charts")]
    ConflictingGluing(String),
    #[error("orbit of {start} exceeded {cap} representatives; chain: {chain}")]
    OrbitCap {
        start: String,
        cap: usize,
        chain: String,
    },
    #[error("{0}")]
    Schema(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gluing {
    pub from: ChartId,
    pub to: ChartId,
    /// Subset of the source chart, in source coordinates.
    pub region: WeylPolyhedron,
    pub map: AffineMap,
}

/// A point of the space: the least `(chart, coordinates)` pair in its orbit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XPoint {
    pub chart: ChartId,
    pub coords: ModelPoint,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DistanceError {
    #[error("no common apartment")]
    NoCommonApartment,
    #[error("charts disagree: {0} vs {1}")]
    ChartDependent(String, String),
}

/// An atlas space. Immutable once built.
#[derive(Clone)]
pub struct AtlasSpace {
    rs: Arc<RootSystem>,
    root_spec: RootSpec,
    lambda_rank: usize,
    translations: TranslationGroup,
    chart_names: Vec<String>,
    name_index: HashMap<String, usize>,
    gluings: Vec<Gluing>,
    outgoing: Vec<Vec<usize>>,
    direct: HashMap<(usize, usize), usize>,
    marked_points: Vec<(ChartId, ModelPoint)>,
    marked_germs: Vec<XGerm>,
    metric_scale: FRational,
    orbit_cap: usize,
    provenance: Option<serde_json::Value>,
    appendix: Option<serde_json::Value>,
}

impl fmt::Debug for AtlasSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AtlasSpace")
            .field("root_system", &self.root_spec)
            .field("charts", &self.chart_names.len())
            .field("gluings", &self.gluings.len())
            .finish()
    }
}

impl AtlasSpace {
    pub fn builder(rs: Arc<RootSystem>, root_spec: RootSpec, lambda_rank: usize) -> AtlasBuilder {
        AtlasBuilder {
            space: AtlasSpace {
                rs,
                root_spec,
                lambda_rank,
                translations: TranslationGroup::Full,
                chart_names: Vec::new(),
                name_index: HashMap::new(),
                gluings: Vec::new(),
                outgoing: Vec::new(),
                direct: HashMap::new(),
                marked_points: Vec::new(),
                marked_germs: Vec::new(),
                metric_scale: FRational::one(),
                orbit_cap: DEFAULT_ORBIT_CAP,
                provenance: None,
                appendix: None,
            },
        }
    }

    /// A builder starting from this space's data.
    pub fn to_builder(&self) -> AtlasBuilder {
        AtlasBuilder { space: self.clone() }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> Arc<RootSystem> {
        Arc::clone(&self.rs)
    }

    pub fn root_spec(&self) -> &RootSpec {
        &self.root_spec
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn lambda_rank(&self) -> usize {
        self.lambda_rank
    }

    pub fn translations(&self) -> TranslationGroup {
        self.translations
    }

    pub fn charts(&self) -> impl Iterator<Item = ChartId> {
        (0..self.chart_names.len()).map(ChartId)
    }

    pub fn chart_count(&self) -> usize {
        self.chart_names.len()
    }

    pub fn chart_name(&self, c: ChartId) -> &str {
        &self.chart_names[c.0]
    }

    pub fn chart_id(&self, name: &str) -> Option<ChartId> {
        self.name_index.get(name).copied().map(ChartId)
    }

    pub fn gluings(&self) -> &[Gluing] {
        &self.gluings
    }

    pub fn gluings_from(&self, c: ChartId) -> impl Iterator<Item = &Gluing> {
        self.outgoing[c.0].iter().map(move |&g| &self.gluings[g])
    }

    /// The gluing `c → d` between distinct charts, if any.
    pub fn direct_gluing(&self, c: ChartId, d: ChartId) -> Option<&Gluing> {
        self.direct.get(&(c.0, d.0)).map(|&g| &self.gluings[g])
    }

    pub fn marked_points(&self) -> &[(ChartId, ModelPoint)] {
        &self.marked_points
    }

    pub fn marked_germs(&self) -> &[XGerm] {
        &self.marked_germs
    }

    pub fn metric_scale(&self) -> &FRational {
        &self.metric_scale
    }

    /// The same space measured with the metric multiplied by `q > 0`.
    pub fn with_metric_scale(&self, q: FRational) -> Self {
        let mut s = self.clone();
        s.metric_scale = q;
        s
    }

    pub fn with_orbit_cap(&self, cap: usize) -> Self {
        let mut s = self.clone();
        s.orbit_cap = cap;
        s
    }

    pub fn provenance(&self) -> Option<&serde_json::Value> {
        self.provenance.as_ref()
    }

    pub fn appendix_data(&self) -> Option<&serde_json::Value> {
        self.appendix.as_ref()
    }

    pub fn origin(&self) -> ModelPoint {
        ModelPoint::origin(self.rank(), self.lambda_rank)
    }

    pub fn describe_point(&self, c: ChartId, x: &ModelPoint) -> String {
        format!("{}:{}", self.chart_name(c), format_point(x))
    }

    /// All `(chart, coordinates)` representatives of the point `f_c(x)`,
    /// in breadth-first order starting from the given one.
    pub fn orbit(&self, c: ChartId, x: &ModelPoint) -> Result<Vec<(ChartId, ModelPoint)>, AtlasError> {
        let start = (c, x.clone());
        let mut seen: HashMap<(ChartId, ModelPoint), Option<usize>> = HashMap::new();
        let mut order = vec![start.clone()];
        seen.insert(start, None);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let (cur, pt) = order[i].clone();
            for g in self.gluings_from(cur) {
                if !g.region.contains(&self.rs, &pt) {
                    continue;
                }
                let next = (g.to, g.map.apply(&self.rs, &pt));
                if seen.contains_key(&next) {
                    continue;
                }
                if order.len() >= self.orbit_cap {
                    let chain: Vec<String> = order
                        .iter()
                        .take(8)
                        .map(|(c, p)| self.describe_point(*c, p))
                        .collect();
                    return Err(AtlasError::OrbitCap {
                        start: self.describe_point(c, x),
                        cap: self.orbit_cap,
                        chain: chain.join(" -> "),
                    });
                }
                seen.insert(next.clone(), Some(i));
                queue.push_back(order.len());
                order.push(next);
            }
        }
        Ok(order)
    }

    pub fn canonical_point(&self, c: ChartId, x: &ModelPoint) -> Result<XPoint, AtlasError> {
        let orbit = self.orbit(c, x)?;
        let (chart, coords) = orbit.into_iter().min().expect("orbit contains its start");
        Ok(XPoint { chart, coords })
    }

    /// Every chart containing the point, with its coordinates there.
    pub fn representatives(&self, x: &XPoint) -> Result<BTreeMap<ChartId, Vec<ModelPoint>>, AtlasError> {
        let mut out: BTreeMap<ChartId, Vec<ModelPoint>> = BTreeMap::new();
        for (c, p) in self.orbit(x.chart, &x.coords)? {
            out.entry(c).or_default().push(p);
        }
        for v in out.values_mut() {
            v.sort();
        }
        Ok(out)
    }

    pub fn charts_containing(&self, x: &XPoint) -> Result<Vec<ChartId>, AtlasError> {
        Ok(self.representatives(x)?.into_keys().collect())
    }

    /// Charts containing representatives of both points.
    pub fn common_apartments(&self, x: &XPoint, y: &XPoint) -> Result<Vec<ChartId>, AtlasError> {
        let rx = self.representatives(x)?;
        let ry = self.representatives(y)?;
        Ok(rx.keys().filter(|c| ry.contains_key(c)).copied().collect())
    }

    /// Model distance scaled by the space's metric factor.
    pub fn model_distance(&self, x: &ModelPoint, y: &ModelPoint) -> LambdaScalar {
        distance(&self.rs, x, y).scale(&self.metric_scale)
    }

    /// Distance of pre-images in a common chart, checked to be the same in
    /// every common chart.
    pub fn distance_x(&self, x: &XPoint, y: &XPoint) -> Result<Result<LambdaScalar, DistanceError>, AtlasError> {
        let rx = self.representatives(x)?;
        let ry = self.representatives(y)?;
        let mut value: Option<(LambdaScalar, ChartId)> = None;
        for (c, xs) in &rx {
            let Some(ys) = ry.get(c) else { continue };
            for px in xs {
                for py in ys {
                    let d = self.model_distance(px, py);
                    match &value {
                        None => value = Some((d, *c)),
                        Some((v, c0)) if *v != d => {
                            return Ok(Err(DistanceError::ChartDependent(
                                format!("{} in {}", v, self.chart_name(*c0)),
                                format!("{} in {}", d, self.chart_name(*c)),
                            )))
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(value.map(|(v, _)| v).ok_or(DistanceError::NoCommonApartment))
    }

    /// Canonical points of the marked points, deduplicated in marking order.
    pub fn marked_xpoints(&self) -> Result<Vec<XPoint>, AtlasError> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (c, p) in &self.marked_points {
            let x = self.canonical_point(*c, p)?;
            if seen.insert(x.clone()) {
                out.push(x);
            }
        }
        Ok(out)
    }

    pub fn format_xpoint(&self, x: &XPoint) -> String {
        self.describe_point(x.chart, &x.coords)
    }

    pub fn format_germ(&self, g: &XGerm) -> String {
        g.describe(self)
    }
}

/// Incremental construction with validation of every gluing.
pub struct AtlasBuilder {
    space: AtlasSpace,
}

impl AtlasBuilder {
    pub fn translations(mut self, t: TranslationGroup) -> Self {
        self.space.translations = t;
        self
    }

    pub fn set_translations(&mut self, t: TranslationGroup) {
        self.space.translations = t;
    }

    pub fn set_provenance(&mut self, v: serde_json::Value) {
        self.space.provenance = Some(v);
    }

    pub fn set_appendix(&mut self, v: serde_json::Value) {
        self.space.appendix = Some(v);
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.space.rs
    }

    pub fn chart_count(&self) -> usize {
        self.space.chart_names.len()
    }

    pub fn chart_id(&self, name: &str) -> Option<ChartId> {
        self.space.chart_id(name)
    }

    pub fn add_chart(&mut self, name: &str) -> Result<ChartId, AtlasError> {
        if self.space.name_index.contains_key(name) {
            return Err(AtlasError::DuplicateChart(name.to_string()));
        }
        let id = self.space.chart_names.len();
        self.space.chart_names.push(name.to_string());
        self.space.name_index.insert(name.to_string(), id);
        self.space.outgoing.push(Vec::new());
        Ok(ChartId(id))
    }

    fn check_point(&self, context: &str, x: &ModelPoint) -> Result<(), AtlasError> {
        let n = self.space.rs.rank();
        if x.dim() != n {
            return Err(AtlasError::Dimension {
                context: context.to_string(),
                expected: n,
                got: x.dim(),
            });
        }
        for s in x.coords() {
            if s.rank() != self.space.lambda_rank {
                return Err(AtlasError::LambdaRank {
                    context: context.to_string(),
                    expected: self.space.lambda_rank,
                    got: s.rank(),
                });
            }
        }
        Ok(())
    }

    fn check_chart(&self, c: ChartId) -> Result<(), AtlasError> {
        if c.0 >= self.space.chart_names.len() {
            return Err(AtlasError::UnknownChart(format!("#{}", c.0)));
        }
        Ok(())
    }

    /// Adds `from → to` and its inverse. Re-adding an identical gluing (for
    /// instance an explicitly listed inverse) is accepted.
    pub fn glue(&mut self, from: ChartId, to: ChartId, region: WeylPolyhedron, map: AffineMap) -> Result<(), AtlasError> {
        self.check_chart(from)?;
        self.check_chart(to)?;
        let rs = Arc::clone(&self.space.rs);
        let label = format!("{} -> {}", self.space.chart_names[from.0], self.space.chart_names[to.0]);
        if map.weyl >= rs.order() {
            return Err(AtlasError::WeylIndex(label));
        }
        self.check_point(&label, &map.translation)?;
        for c in region.constraints() {
            if c.bound.rank() != self.space.lambda_rank {
                return Err(AtlasError::LambdaRank {
                    context: label,
                    expected: self.space.lambda_rank,
                    got: c.bound.rank(),
                });
            }
        }
        if region.is_whole_space() {
            return Err(AtlasError::FullImage(label));
        }
        if region.is_empty(&rs) {
            return Err(AtlasError::EmptyRegion(label));
        }
        if !self.space.translations.contains(&rs, &map.translation) {
            return Err(AtlasError::TranslationOutsideT(label));
        }
        let inverse = Gluing {
            from: to,
            to: from,
            region: region.image(&rs, &map),
            map: map.inverse(&rs),
        };
        let forward = Gluing { from, to, region, map };
        if from == to {
            self.push_self(forward, &label)?;
            self.push_self(inverse, &label)?;
            return Ok(());
        }
        self.push_direct(forward, &label)?;
        self.push_direct(inverse, &label)
    }

    fn same_gluing(rs: &RootSystem, a: &Gluing, b: &Gluing) -> bool {
        a.map == b.map && a.region.same_set(rs, &b.region)
    }

    fn push_direct(&mut self, g: Gluing, label: &str) -> Result<(), AtlasError> {
        let key = (g.from.0, g.to.0);
        if let Some(&existing) = self.space.direct.get(&key) {
            if Self::same_gluing(&self.space.rs, &self.space.gluings[existing], &g) {
                return Ok(());
            }
            return Err(AtlasError::ConflictingGluing(label.to_string()));
        }
        let idx = self.space.gluings.len();
        self.space.direct.insert(key, idx);
        self.space.outgoing[g.from.0].push(idx);
        self.space.gluings.push(g);
        Ok(())
    }

    fn push_self(&mut self, g: Gluing, _label: &str) -> Result<(), AtlasError> {
        let dup = self.space.outgoing[g.from.0]
            .iter()
            .any(|&i| Self::same_gluing(&self.space.rs, &self.space.gluings[i], &g));
        if !dup {
            let idx = self.space.gluings.len();
            self.space.outgoing[g.from.0].push(idx);
            self.space.gluings.push(g);
        }
        Ok(())
    }

    pub fn mark_point(&mut self, c: ChartId, x: ModelPoint) -> Result<(), AtlasError> {
        self.check_chart(c)?;
        self.check_point("marked point", &x)?;
        self.space.marked_points.push((c, x));
        Ok(())
    }

    pub fn mark_germ(&mut self, c: ChartId, s: WeylSimplexLocal) -> Result<(), AtlasError> {
        self.check_chart(c)?;
        self.check_point("marked germ", &s.base)?;
        if s.direction >= self.space.rs.order() {
            return Err(AtlasError::Schema("marked germ: weyl index out of range".into()));
        }
        if s.face.iter().any(|&j| j >= self.space.rs.rank()) {
            return Err(AtlasError::Schema("marked germ: face index out of range".into()));
        }
        self.space.marked_germs.push(XGerm {
            chart: c,
            simplex: s.canonical(&self.space.rs),
        });
        Ok(())
    }

    pub fn build(self) -> AtlasSpace {
        self.space
    }
}
