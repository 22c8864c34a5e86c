use super::{AffineMap, Constraint, ModelPoint, Relation, WeylPolyhedron};
use crate::roots::{RootSystem, SignedRoot};
use crate::scalars::LambdaScalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GermError {
    #[error("simplex base {0} lies outside the polyhedron")]
    BaseOutside(ModelPoint),
    #[error("chambers have different directions ({0} vs {1})")]
    DirectionMismatch(usize, usize),
}

/// The Weyl simplex `base + w·(face of C_f)`. `face` lists the fundamental
/// coweights spanning the face: all of them for a chamber, none for the
/// bare base point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylSimplexLocal {
    pub base: ModelPoint,
    pub direction: usize,
    pub face: Vec<usize>,
}

impl WeylSimplexLocal {
    pub fn new(base: ModelPoint, direction: usize, mut face: Vec<usize>) -> Self {
        face.sort_unstable();
        face.dedup();
        Self { base, direction, face }
    }

    pub fn chamber(base: ModelPoint, direction: usize) -> Self {
        let n = base.dim();
        Self::new(base, direction, (0..n).collect())
    }

    pub fn vertex(base: ModelPoint) -> Self {
        Self::new(base, 0, Vec::new())
    }

    pub fn is_chamber(&self) -> bool {
        self.face.len() == self.base.dim()
    }

    pub fn is_panel(&self) -> bool {
        self.face.len() + 1 == self.base.dim()
    }

    /// Cone generators `w·ω̌_j`, `j ∈ face`, sorted.
    pub fn generators(&self, rs: &RootSystem) -> Vec<Vec<i64>> {
        let mut g: Vec<_> = self
            .face
            .iter()
            .map(|&j| rs.chamber_generator(self.direction, j))
            .collect();
        g.sort();
        g
    }

    /// Same point set, with the direction replaced by the least element of
    /// the Weyl group (in enumeration order) producing the same face.
    pub fn canonical(&self, rs: &RootSystem) -> Self {
        let target = self.generators(rs);
        let w = (0..rs.order())
            .find(|&w| {
                let mut g: Vec<_> = self.face.iter().map(|&j| rs.chamber_generator(w, j)).collect();
                g.sort();
                g == target
            })
            .expect("the simplex's own direction qualifies");
        Self::new(self.base.clone(), w, self.face.clone())
    }

    pub fn polyhedron(&self, rs: &RootSystem) -> WeylPolyhedron {
        let n = rs.rank();
        let mut constraints = Vec::with_capacity(n);
        for i in 0..n {
            let beta = rs.signed_root_image(
                self.direction,
                SignedRoot {
                    index: rs.simple_root(i),
                    positive: true,
                },
            );
            let rel = if self.face.binary_search(&i).is_ok() {
                Relation::Ge
            } else {
                Relation::Eq
            };
            let value = rs.eval_signed(beta, &self.base);
            constraints.push(Constraint::signed(beta, rel, value));
        }
        WeylPolyhedron::new(constraints)
    }

    pub fn contains_point(&self, rs: &RootSystem, x: &ModelPoint) -> bool {
        self.polyhedron(rs).contains(rs, x)
    }

    pub fn image(&self, rs: &RootSystem, m: &AffineMap) -> Self {
        Self::new(m.apply(rs, &self.base), rs.compose(m.weyl, self.direction), self.face.clone())
    }

    /// The codimension-one faces of a chamber.
    pub fn panels(&self) -> Vec<Self> {
        self.face
            .iter()
            .map(|&j| {
                let face = self.face.iter().copied().filter(|&i| i != j).collect();
                Self::new(self.base.clone(), self.direction, face)
            })
            .collect()
    }

    /// Whether the germ of `self` is a face of the germ of `other` (same base,
    /// generators a subset).
    pub fn germ_is_face_of(&self, rs: &RootSystem, other: &Self) -> bool {
        if self.base != other.base {
            return false;
        }
        let mine = self.generators(rs);
        let theirs = other.generators(rs);
        mine.iter().all(|g| theirs.contains(g))
    }

    /// Whether an initial piece of the simplex at its base lies in `poly`:
    /// every constraint active at the base must hold weakly along every cone
    /// generator.
    pub fn germ_inside(&self, rs: &RootSystem, poly: &WeylPolyhedron) -> Result<bool, GermError> {
        if !poly.contains(rs, &self.base) {
            return Err(GermError::BaseOutside(self.base.clone()));
        }
        let gens = self.generators(rs);
        for c in poly.constraints() {
            if !c.is_active(rs, &self.base) {
                continue;
            }
            for g in &gens {
                let v = rs.root_on_direction(c.root, g);
                let ok = match c.rel {
                    Relation::Ge => v >= 0,
                    Relation::Le => v <= 0,
                    Relation::Eq => v == 0,
                };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Base of a common sub-chamber of two chambers with equal direction:
/// the coordinatewise maximum in the chamber's own cone coordinates.
pub fn parallel_same_direction(
    rs: &RootSystem,
    s1: &WeylSimplexLocal,
    s2: &WeylSimplexLocal,
) -> Result<ModelPoint, GermError> {
    if s1.direction != s2.direction {
        return Err(GermError::DirectionMismatch(s1.direction, s2.direction));
    }
    let winv = rs.inverse(s1.direction);
    let (a, b) = (rs.act(winv, &s1.base), rs.act(winv, &s2.base));
    let top = ModelPoint::new(
        a.coords()
            .iter()
            .zip(b.coords())
            .map(|(x, y)| LambdaScalar::max(x, y))
            .collect(),
    );
    Ok(rs.act(s1.direction, &top))
}
