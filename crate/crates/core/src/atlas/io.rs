//! The JSON atlas format and the compact `CHART:coords` notation used on
//! the command line.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AtlasError, AtlasSpace, ChartId, XGerm};
use crate::model::{AffineMap, Constraint, ModelPoint, Relation, TranslationGroup, WeylPolyhedron, WeylSimplexLocal};
use crate::roots::{CartanMatrix, RootError, RootSystem};
use crate::scalars::{parse_rational, LambdaScalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RootSpec {
    Type(String),
    Cartan { cartan: Vec<Vec<i64>> },
}

impl RootSpec {
    pub fn build(&self) -> Result<RootSystem, RootError> {
        match self {
            Self::Type(t) => RootSystem::from_type(t),
            Self::Cartan { cartan } => RootSystem::build(CartanMatrix::new(cartan.clone())?),
        }
    }
}

fn one() -> usize {
    1
}

fn is_full(t: &TranslationGroup) -> bool {
    *t == TranslationGroup::Full
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtlasFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub root_system: RootSpec,
    #[serde(default = "one")]
    pub lambda_rank: usize,
    #[serde(default, skip_serializing_if = "is_full")]
    pub translations: TranslationGroup,
    pub charts: Vec<String>,
    #[serde(default)]
    pub gluings: Vec<GluingFile>,
    #[serde(default)]
    pub marked_points: Vec<PointFile>,
    #[serde(default)]
    pub marked_germs: Vec<GermFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub appendix: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluingFile {
    pub from: String,
    pub to: String,
    pub region: Vec<ConstraintFile>,
    pub map: MapFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintFile {
    /// Coefficients over the simple roots; negative roots are accepted.
    pub root: Vec<i64>,
    pub rel: String,
    pub bound: LambdaScalar,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl_index: Option<usize>,
    /// Alternative to `weyl_index`: simple reflection indices, leftmost first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl_word: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translation: Option<ModelPoint>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointFile {
    pub chart: String,
    pub point: ModelPoint,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermFile {
    pub chart: String,
    pub base: ModelPoint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl_word: Option<Vec<usize>>,
    /// Fundamental coweights spanning the face; all of them if omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face: Option<Vec<usize>>,
}

fn weyl_from(rs: &RootSystem, index: Option<usize>, word: Option<&[usize]>, at: &str) -> Result<usize, AtlasError> {
    match (index, word) {
        (Some(_), Some(_)) => Err(AtlasError::Schema(format!("{at}: give weyl_index or weyl_word, not both"))),
        (Some(i), None) if i < rs.order() => Ok(i),
        (Some(i), None) => Err(AtlasError::Schema(format!(
            "{at}: weyl_index {i} out of range (group order {})",
            rs.order()
        ))),
        (None, Some(word)) => {
            let mut w = rs.identity();
            for &j in word {
                if j >= rs.rank() {
                    return Err(AtlasError::Schema(format!("{at}: weyl_word letter {j} out of range")));
                }
                w = rs.compose(w, rs.reflection_element(rs.simple_root(j)));
            }
            Ok(w)
        }
        (None, None) => Ok(rs.identity()),
    }
}

impl AtlasFile {
    pub fn from_json(text: &str) -> Result<Self, AtlasError> {
        serde_json::from_str(text).map_err(|e| AtlasError::Schema(format!("atlas file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("atlas files serialize")
    }

    pub fn into_space(self) -> Result<AtlasSpace, AtlasError> {
        let rs = Arc::new(self.root_system.build()?);
        if self.lambda_rank == 0 {
            return Err(AtlasError::Schema("lambda_rank: must be at least 1".into()));
        }
        let mut b = AtlasSpace::builder(Arc::clone(&rs), self.root_system.clone(), self.lambda_rank)
            .translations(self.translations);
        for name in &self.charts {
            b.add_chart(name)?;
        }
        let chart = |b: &super::AtlasBuilder, name: &str, at: &str| {
            b.chart_id(name)
                .ok_or_else(|| AtlasError::UnknownChart(format!("{name} (at {at})")))
        };
        for (i, g) in self.gluings.iter().enumerate() {
            let at = format!("gluings[{i}]");
            let from = chart(&b, &g.from, &at)?;
            let to = chart(&b, &g.to, &at)?;
            let mut constraints = Vec::new();
            for (k, c) in g.region.iter().enumerate() {
                let cat = format!("{at}.region[{k}]");
                let root = rs
                    .root_index(&c.root)
                    .ok_or_else(|| AtlasError::NotARoot(format!("{cat}.root {:?}", c.root)))?;
                let rel = Relation::parse(&c.rel)
                    .ok_or_else(|| AtlasError::Schema(format!("{cat}.rel: expected >=, <= or =, got `{}`", c.rel)))?;
                constraints.push(Constraint::signed(root, rel, c.bound.clone()));
            }
            let weyl = weyl_from(&rs, g.map.weyl_index, g.map.weyl_word.as_deref(), &format!("{at}.map"))?;
            let translation = g
                .map
                .translation
                .clone()
                .unwrap_or_else(|| ModelPoint::origin(rs.rank(), self.lambda_rank));
            b.glue(from, to, WeylPolyhedron::new(constraints), AffineMap { weyl, translation })
                .map_err(|e| AtlasError::Schema(format!("{at}: {e}")))?;
        }
        for (i, p) in self.marked_points.iter().enumerate() {
            let at = format!("marked_points[{i}]");
            let c = chart(&b, &p.chart, &at)?;
            b.mark_point(c, p.point.clone())
                .map_err(|e| AtlasError::Schema(format!("{at}: {e}")))?;
        }
        for (i, g) in self.marked_germs.iter().enumerate() {
            let at = format!("marked_germs[{i}]");
            let c = chart(&b, &g.chart, &at)?;
            let w = weyl_from(&rs, g.weyl_index, g.weyl_word.as_deref(), &at)?;
            let face = g.face.clone().unwrap_or_else(|| (0..rs.rank()).collect());
            b.mark_germ(c, WeylSimplexLocal::new(g.base.clone(), w, face))
                .map_err(|e| AtlasError::Schema(format!("{at}: {e}")))?;
        }
        if let Some(a) = self.appendix {
            b.set_appendix(a);
        }
        if let Some(p) = self.provenance {
            b.set_provenance(p);
        }
        Ok(b.build())
    }
}

impl AtlasSpace {
    pub fn from_json(text: &str) -> Result<Self, AtlasError> {
        AtlasFile::from_json(text)?.into_space()
    }

    /// The file form. Each gluing is written once; inverses are implied.
    pub fn to_file(&self) -> AtlasFile {
        let rs = self.root_system();
        let mut emitted: Vec<&super::Gluing> = Vec::new();
        for g in self.gluings() {
            if g.from.0 > g.to.0 {
                continue;
            }
            if g.from == g.to {
                let inverse_already = emitted.iter().any(|e| {
                    e.from == g.from
                        && e.to == g.to
                        && e.map.inverse(rs) == g.map
                        && e.region.image(rs, &e.map).same_set(rs, &g.region)
                });
                if inverse_already {
                    continue;
                }
            }
            emitted.push(g);
        }
        let constraint_file = |c: &Constraint| ConstraintFile {
            root: rs.positive_roots()[c.root].coeffs.clone(),
            rel: c.rel.symbol().to_string(),
            bound: c.bound.clone(),
        };
        AtlasFile {
            description: None,
            root_system: self.root_spec().clone(),
            lambda_rank: self.lambda_rank(),
            translations: self.translations(),
            charts: self.charts().map(|c| self.chart_name(c).to_string()).collect(),
            gluings: emitted
                .into_iter()
                .map(|g| GluingFile {
                    from: self.chart_name(g.from).to_string(),
                    to: self.chart_name(g.to).to_string(),
                    region: g.region.constraints().iter().map(constraint_file).collect(),
                    map: MapFile {
                        weyl_index: Some(g.map.weyl),
                        weyl_word: None,
                        translation: Some(g.map.translation.clone()),
                    },
                })
                .collect(),
            marked_points: self
                .marked_points()
                .iter()
                .map(|(c, p)| PointFile {
                    chart: self.chart_name(*c).to_string(),
                    point: p.clone(),
                })
                .collect(),
            marked_germs: self
                .marked_germs()
                .iter()
                .map(|g| GermFile {
                    chart: self.chart_name(g.chart).to_string(),
                    base: g.simplex.base.clone(),
                    weyl_index: Some(g.simplex.direction),
                    weyl_word: None,
                    face: if g.simplex.is_chamber() {
                        None
                    } else {
                        Some(g.simplex.face.clone())
                    },
                })
                .collect(),
            appendix: self.appendix_data().cloned(),
            provenance: self.provenance().cloned(),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_file().to_json()
    }
}

/// `c1,c2,...` with each scalar written `q1;q2;...`. Integers print bare.
pub fn format_point(x: &ModelPoint) -> String {
    x.coords()
        .iter()
        .map(|s| s.coords().iter().map(ToString::to_string).collect::<Vec<_>>().join(";"))
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_coords(space: &AtlasSpace, text: &str, what: &str) -> Result<ModelPoint, AtlasError> {
    let k = space.lambda_rank();
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != space.rank() {
        return Err(AtlasError::Schema(format!(
            "{what} `{text}`: expected {} coordinates, got {}",
            space.rank(),
            parts.len()
        )));
    }
    let mut coords = Vec::new();
    for part in parts {
        let comps = part
            .split(';')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| AtlasError::Schema(format!("{what} `{text}`: {e}")))?;
        let s = match comps.len() {
            n if n == k => LambdaScalar::new(comps),
            1 => LambdaScalar::from_rational(comps.into_iter().next().expect("one"), k),
            n => {
                return Err(AtlasError::Schema(format!(
                    "{what} `{text}`: scalar with {n} components, lex rank is {k}"
                )))
            }
        };
        coords.push(s);
    }
    Ok(ModelPoint::new(coords))
}

/// Parses `CHART:coords`.
pub fn parse_point_spec(space: &AtlasSpace, spec: &str) -> Result<(ChartId, ModelPoint), AtlasError> {
    let (chart, coords) = spec
        .rsplit_once(':')
        .ok_or_else(|| AtlasError::Schema(format!("point `{spec}`: expected CHART:COORDS")))?;
    let c = space
        .chart_id(chart)
        .ok_or_else(|| AtlasError::UnknownChart(chart.to_string()))?;
    Ok((c, parse_coords(space, coords, "point")?))
}

/// Parses `CHART:coords:W` for the chamber germ `coords + w·C_f`.
pub fn parse_germ_spec(space: &AtlasSpace, spec: &str) -> Result<XGerm, AtlasError> {
    let mut it = spec.rsplitn(3, ':');
    let (w, coords, chart) = match (it.next(), it.next(), it.next()) {
        (Some(w), Some(c), Some(ch)) => (w, c, ch),
        _ => return Err(AtlasError::Schema(format!("germ `{spec}`: expected CHART:COORDS:W"))),
    };
    let c = space
        .chart_id(chart)
        .ok_or_else(|| AtlasError::UnknownChart(chart.to_string()))?;
    let w: usize = w
        .trim()
        .parse()
        .map_err(|_| AtlasError::Schema(format!("germ `{spec}`: bad weyl index `{w}`")))?;
    if w >= space.root_system().order() {
        return Err(AtlasError::Schema(format!("germ `{spec}`: weyl index out of range")));
    }
    let base = parse_coords(space, coords, "germ")?;
    Ok(XGerm::new(
        c,
        WeylSimplexLocal::chamber(base, w).canonical(space.root_system()),
    ))
}
