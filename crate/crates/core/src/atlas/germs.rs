//! Germs of Weyl simplices and the residue at a point.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use super::{AtlasError, AtlasSpace, ChartId, XPoint};
use crate::model::{AffineMap, ModelPoint, WeylSimplexLocal};

/// A simplex of some chart, considered only near its base point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XGerm {
    pub chart: ChartId,
    pub simplex: WeylSimplexLocal,
}

impl XGerm {
    pub fn new(chart: ChartId, simplex: WeylSimplexLocal) -> Self {
        Self { chart, simplex }
    }

    pub fn describe(&self, space: &AtlasSpace) -> String {
        let kind = if self.simplex.is_chamber() {
            "chamber".to_string()
        } else {
            format!("face{:?}", self.simplex.face)
        };
        format!(
            "{} {} w={}",
            space.describe_point(self.chart, &self.simplex.base),
            kind,
            self.simplex.direction
        )
    }
}

/// One chart's copy of a germ, with the map carrying the starting chart's
/// coordinates to this chart's along the transport chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermOrbitEntry {
    pub chart: ChartId,
    pub simplex: WeylSimplexLocal,
    pub map: AffineMap,
}

impl AtlasSpace {
    /// Every chart copy of the germ, reached by transporting it across
    /// gluings whose region contains an initial piece of the simplex.
    pub fn germ_orbit(&self, g: &XGerm) -> Result<Vec<GermOrbitEntry>, AtlasError> {
        let rs = self.root_system();
        let start = GermOrbitEntry {
            chart: g.chart,
            simplex: g.simplex.canonical(rs),
            map: AffineMap::identity(self.rank(), self.lambda_rank()),
        };
        let mut seen = HashSet::from([(start.chart, start.simplex.clone())]);
        let mut order = vec![start];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let cur = order[i].clone();
            for gl in self.gluings_from(cur.chart) {
                if !gl.region.contains(rs, &cur.simplex.base) {
                    continue;
                }
                if !cur.simplex.germ_inside(rs, &gl.region).expect("base checked") {
                    continue;
                }
                let simplex = cur.simplex.image(rs, &gl.map).canonical(rs);
                if !seen.insert((gl.to, simplex.clone())) {
                    continue;
                }
                if order.len() >= self.orbit_cap {
                    return Err(AtlasError::OrbitCap {
                        start: g.describe(self),
                        cap: self.orbit_cap,
                        chain: format!("{} germ copies", order.len()),
                    });
                }
                queue.push_back(order.len());
                order.push(GermOrbitEntry {
                    chart: gl.to,
                    simplex,
                    map: gl.map.compose(rs, &cur.map),
                });
            }
        }
        Ok(order)
    }

    pub fn canonical_germ(&self, g: &XGerm) -> Result<XGerm, AtlasError> {
        Ok(self
            .germ_orbit(g)?
            .into_iter()
            .map(|e| XGerm::new(e.chart, e.simplex))
            .min()
            .expect("orbit contains its start"))
    }

    pub fn germ_equal(&self, a: &XGerm, b: &XGerm) -> Result<bool, AtlasError> {
        let target = (b.chart, b.simplex.canonical(self.root_system()));
        Ok(self
            .germ_orbit(a)?
            .into_iter()
            .any(|e| (e.chart, e.simplex) == target))
    }

    /// The point at the germ's base.
    pub fn germ_base(&self, g: &XGerm) -> Result<XPoint, AtlasError> {
        self.canonical_point(g.chart, &g.simplex.base)
    }

    /// The complex of chamber germs at `x`.
    pub fn residue(&self, x: &XPoint) -> Result<ResidueComplex, AtlasError> {
        let rs = self.root_system();
        let reps = self.representatives(x)?;
        let mut class_of: HashMap<(ChartId, WeylSimplexLocal), usize> = HashMap::new();
        let mut chambers: Vec<XGerm> = Vec::new();
        let mut apartments = Vec::new();
        let mut classify = |germ: XGerm, store: &mut Vec<XGerm>| -> Result<usize, AtlasError> {
            let key = (germ.chart, germ.simplex.canonical(rs));
            if let Some(&c) = class_of.get(&key) {
                return Ok(c);
            }
            let orbit = self.germ_orbit(&germ)?;
            let canon = orbit
                .iter()
                .map(|e| XGerm::new(e.chart, e.simplex.clone()))
                .min()
                .expect("nonempty");
            let id = store.len();
            store.push(canon);
            for e in orbit {
                class_of.insert((e.chart, e.simplex), id);
            }
            Ok(id)
        };
        for (&chart, points) in &reps {
            for p in points {
                let mut by_w = Vec::with_capacity(rs.order());
                for w in 0..rs.order() {
                    let germ = XGerm::new(chart, WeylSimplexLocal::chamber(p.clone(), w));
                    by_w.push(classify(germ, &mut chambers)?);
                }
                apartments.push(ResidueApartment {
                    chart,
                    base: p.clone(),
                    chambers: by_w,
                });
            }
        }

        // Panels shared between chamber classes.
        let mut panel_class: HashMap<(ChartId, WeylSimplexLocal), usize> = HashMap::new();
        let mut panel_members: Vec<BTreeSet<usize>> = Vec::new();
        for apt in &apartments {
            for (w, &ch) in apt.chambers.iter().enumerate() {
                let chamber = WeylSimplexLocal::chamber(apt.base.clone(), w);
                for panel in chamber.panels() {
                    let key = (apt.chart, panel.canonical(rs));
                    let id = match panel_class.get(&key) {
                        Some(&id) => id,
                        None => {
                            let id = panel_members.len();
                            panel_members.push(BTreeSet::new());
                            for e in self.germ_orbit(&XGerm::new(apt.chart, panel))? {
                                panel_class.insert((e.chart, e.simplex), id);
                            }
                            id
                        }
                    };
                    panel_members[id].insert(ch);
                }
            }
        }
        let mut adjacency = vec![BTreeSet::new(); chambers.len()];
        for members in &panel_members {
            for &a in members {
                for &b in members {
                    if a != b {
                        adjacency[a].insert(b);
                    }
                }
            }
        }
        Ok(ResidueComplex {
            base: x.clone(),
            chambers,
            apartments,
            adjacency,
            panels: panel_members,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueApartment {
    pub chart: ChartId,
    pub base: ModelPoint,
    /// Chamber class of `chamber(base, w)` for each Weyl element `w`.
    pub chambers: Vec<usize>,
}

/// The residue `Δ_x X`: chamber germs at a point, their apartments and
/// panel adjacency.
#[derive(Debug, Clone)]
pub struct ResidueComplex {
    pub base: XPoint,
    pub chambers: Vec<XGerm>,
    pub apartments: Vec<ResidueApartment>,
    pub adjacency: Vec<BTreeSet<usize>>,
    pub panels: Vec<BTreeSet<usize>>,
}

impl ResidueComplex {
    pub fn chamber_count(&self) -> usize {
        self.chambers.len()
    }

    pub fn apartments_containing(&self, a: usize, b: usize) -> impl Iterator<Item = &ResidueApartment> {
        self.apartments
            .iter()
            .filter(move |apt| apt.chambers.contains(&a) && apt.chambers.contains(&b))
    }

    pub fn co_apartment(&self, a: usize, b: usize) -> bool {
        self.apartments_containing(a, b).next().is_some()
    }

    /// Weyl distances `w_a⁻¹ w_b` read in every apartment containing both.
    pub fn deltas(&self, rs: &crate::roots::RootSystem, a: usize, b: usize) -> BTreeSet<usize> {
        self.apartments_containing(a, b)
            .map(|apt| {
                let wa = apt.chambers.iter().position(|&c| c == a).expect("member");
                let wb = apt.chambers.iter().position(|&c| c == b).expect("member");
                rs.compose(rs.inverse(wa), wb)
            })
            .collect()
    }

    /// Chamber class of a germ given in some chart, if based here.
    pub fn class_of(&self, chart: ChartId, simplex: &WeylSimplexLocal) -> Option<usize> {
        self.apartments
            .iter()
            .find(|apt| apt.chart == chart && apt.base == simplex.base)
            .map(|apt| apt.chambers[simplex.direction])
    }

    /// Per-chart apartments grouped by chart.
    pub fn apartments_by_chart(&self) -> BTreeMap<ChartId, Vec<&ResidueApartment>> {
        let mut out: BTreeMap<ChartId, Vec<&ResidueApartment>> = BTreeMap::new();
        for apt in &self.apartments {
            out.entry(apt.chart).or_default().push(apt);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{pt, tripod};
    use super::*;
    use crate::atlas::RootSpec;
    use crate::roots::RootSystem;
    use std::sync::Arc;

    #[test]
    fn tripod_germs_at_origin() {
        let s = tripod();
        let (c12, c13) = (ChartId(0), ChartId(1));
        let pos12 = XGerm::new(c12, WeylSimplexLocal::chamber(pt(0), 0));
        let pos13 = XGerm::new(c13, WeylSimplexLocal::chamber(pt(0), 0));
        let neg12 = XGerm::new(c12, WeylSimplexLocal::chamber(pt(0), 1));
        let neg13 = XGerm::new(c13, WeylSimplexLocal::chamber(pt(0), 1));
        assert!(s.germ_equal(&pos12, &pos12).unwrap());
        assert!(s.germ_equal(&pos12, &pos13).unwrap());
        assert!(s.germ_equal(&pos13, &pos12).unwrap());
        assert!(!s.germ_equal(&neg12, &neg13).unwrap());
        // germs away from the branch point never leave their ray
        let inner = XGerm::new(c12, WeylSimplexLocal::chamber(pt(3), 1));
        assert!(s.germ_equal(&inner, &XGerm::new(c13, WeylSimplexLocal::chamber(pt(3), 1))).unwrap());
    }

    #[test]
    fn tripod_residue_is_a_rank_one_building_on_three_chambers() {
        let s = tripod();
        let o = s.canonical_point(ChartId(0), &pt(0)).unwrap();
        let res = s.residue(&o).unwrap();
        assert_eq!(res.chamber_count(), 3);
        assert_eq!(res.apartments.len(), 3);
        for apt in &res.apartments {
            assert_eq!(apt.chambers.iter().collect::<BTreeSet<_>>().len(), 2);
        }
        for a in 0..3 {
            for b in 0..3 {
                assert!(res.co_apartment(a, b));
            }
        }
    }

    #[test]
    fn single_apartment_residue_is_the_coxeter_complex() {
        let rs = Arc::new(RootSystem::from_type("A2").unwrap());
        let mut b = crate::atlas::AtlasSpace::builder(Arc::clone(&rs), RootSpec::Type("A2".into()), 1);
        let c = b.add_chart("A").unwrap();
        let s = b.build();
        let x = s.canonical_point(c, &ModelPoint::from_integers(&[2, -1], 1)).unwrap();
        let res = s.residue(&x).unwrap();
        assert_eq!(res.chamber_count(), 6);
        assert_eq!(res.apartments.len(), 1);
        // hexagon: every chamber has two neighbours
        assert!(res.adjacency.iter().all(|n| n.len() == 2));
        for a in 0..6 {
            for b in 0..6 {
                let d = res.deltas(&rs, a, b);
                assert_eq!(d.len(), 1);
            }
        }
    }
}
