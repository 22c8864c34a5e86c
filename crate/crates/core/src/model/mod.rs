//! The model apartment: points, affine Weyl maps, the metric, polyhedra and
//! Weyl simplices inside a single copy of the model space.

mod fm;
mod polyhedron;
mod simplex;

pub use fm::{feasible_point, LinIneq};
pub use polyhedron::{Constraint, Relation, WeylPolyhedron};
pub use simplex::{parallel_same_direction, GermError, WeylSimplexLocal};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::roots::RootSystem;
use crate::scalars::{FRational, LambdaScalar};

/// A point of the model space, stored by its simple-root evaluations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModelPoint {
    coords: Vec<LambdaScalar>,
}

impl ModelPoint {
    pub fn new(coords: Vec<LambdaScalar>) -> Self {
        Self { coords }
    }

    pub fn origin(dim: usize, lambda_rank: usize) -> Self {
        Self {
            coords: vec![LambdaScalar::zero(lambda_rank); dim],
        }
    }

    /// Integer coordinates embedded in the leading scalar coordinate.
    pub fn from_integers(values: &[i64], lambda_rank: usize) -> Self {
        Self {
            coords: values
                .iter()
                .map(|&v| LambdaScalar::from_rational(BigRational::from_integer(v.into()), lambda_rank))
                .collect(),
        }
    }

    /// `t · v` for an integer direction `v` and a scalar `t`.
    pub fn along(dir: &[i64], t: &LambdaScalar) -> Self {
        Self {
            coords: dir.iter().map(|&d| t.scale_int(d)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn lambda_rank(&self) -> usize {
        self.coords.first().map_or(1, LambdaScalar::rank)
    }

    pub fn coords(&self) -> &[LambdaScalar] {
        &self.coords
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(LambdaScalar::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, q: &FRational) -> Self {
        Self::new(self.coords.iter().map(|a| a.scale(q)).collect())
    }

    /// `self + t · v`.
    pub fn offset(&self, dir: &[i64], t: &LambdaScalar) -> Self {
        self.add(&Self::along(dir, t))
    }

    pub fn midpoint(&self, other: &Self) -> Self {
        self.add(other).scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
    }
}

impl fmt::Debug for ModelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ModelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join("; "))
    }
}

/// `x ↦ w·x + t`, an element of the affine Weyl group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub weyl: usize,
    pub translation: ModelPoint,
}

impl AffineMap {
    pub fn identity(dim: usize, lambda_rank: usize) -> Self {
        Self {
            weyl: 0,
            translation: ModelPoint::origin(dim, lambda_rank),
        }
    }

    pub fn translation(t: ModelPoint) -> Self {
        Self { weyl: 0, translation: t }
    }

    pub fn linear(w: usize, dim: usize, lambda_rank: usize) -> Self {
        Self {
            weyl: w,
            translation: ModelPoint::origin(dim, lambda_rank),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.weyl == 0 && self.translation.is_origin()
    }

    pub fn apply(&self, rs: &RootSystem, x: &ModelPoint) -> ModelPoint {
        rs.act(self.weyl, x).add(&self.translation)
    }

    /// `self ∘ other`: `(s,t)∘(s',t') = (ss', s(t')+t)`.
    pub fn compose(&self, rs: &RootSystem, other: &Self) -> Self {
        Self {
            weyl: rs.compose(self.weyl, other.weyl),
            translation: rs.act(self.weyl, &other.translation).add(&self.translation),
        }
    }

    pub fn inverse(&self, rs: &RootSystem) -> Self {
        let inv = rs.inverse(self.weyl);
        Self {
            weyl: inv,
            translation: rs.act(inv, &self.translation).neg(),
        }
    }
}

/// The translation part `T` of the affine Weyl group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TranslationGroup {
    /// All of the model space.
    #[default]
    Full,
    /// Integral combinations of simple coroots, coordinate by coordinate.
    CorootLattice,
}

impl TranslationGroup {
    pub fn contains(&self, rs: &RootSystem, t: &ModelPoint) -> bool {
        match self {
            Self::Full => true,
            Self::CorootLattice => coroot_coefficients(rs, t)
                .iter()
                .all(|m| m.coords().iter().all(BigRational::is_integer)),
        }
    }
}

/// Solves `x = Σ m_i α̌_i` for `m`.
pub fn coroot_coefficients(rs: &RootSystem, x: &ModelPoint) -> Vec<LambdaScalar> {
    let n = rs.rank();
    // x_j = Σ_i m_i C[i][j]
    let a: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| BigRational::from_integer(rs.cartan().get(i, j).into()))
                .collect()
        })
        .collect();
    solve_lambda(a, x.coords().to_vec()).expect("Cartan matrices are invertible")
}

/// Solves `A m = b` for `m ∈ Λ^n` with a square rational matrix `A`.
/// Returns `None` when `A` is singular.
pub fn solve_lambda(mut a: Vec<Vec<BigRational>>, mut b: Vec<LambdaScalar>) -> Option<Vec<LambdaScalar>> {
    let n = a.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        b.swap(p, col);
        let inv = BigRational::one() / &a[col][col];
        for c in col..n {
            a[col][c] = &a[col][c] * &inv;
        }
        b[col] = b[col].scale(&inv);
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
            let v = b[col].scale(&f);
            b[r] -= &v;
        }
    }
    Some(b)
}

/// `α(x)` for `α = Σ c_i α_i`.
pub fn eval_root(rs: &RootSystem, coeffs: &[i64], x: &ModelPoint) -> LambdaScalar {
    rs.eval_coeffs(coeffs, x)
}

/// `d(x,y) = Σ_{α∈Φ⁺} |α(y−x)|`.
pub fn distance(rs: &RootSystem, x: &ModelPoint, y: &ModelPoint) -> LambdaScalar {
    let diff = y.sub(x);
    let mut acc = LambdaScalar::zero(x.lambda_rank());
    for r in 0..rs.positive_roots().len() {
        acc += &rs.eval_root(r, &diff).abs();
    }
    acc
}

/// `d(o, ω̌_j)`: the metric length of the `j`-th fundamental coweight, equal
/// to the sum of the `α_j`-coefficients over the positive roots.
pub fn coweight_norm(rs: &RootSystem, j: usize) -> i64 {
    rs.positive_roots().iter().map(|r| r.coeffs[j]).sum()
}

/// The segment `seg(x,y)` for the sum-of-roots metric: every positive root
/// evaluates between its values at the endpoints.
pub fn segment(rs: &RootSystem, x: &ModelPoint, y: &ModelPoint) -> WeylPolyhedron {
    let mut constraints = Vec::new();
    for r in 0..rs.positive_roots().len() {
        let (a, b) = (rs.eval_root(r, x), rs.eval_root(r, y));
        if a == b {
            constraints.push(Constraint::new(r, Relation::Eq, a));
        } else {
            constraints.push(Constraint::new(r, Relation::Ge, LambdaScalar::min(&a, &b)));
            constraints.push(Constraint::new(r, Relation::Le, LambdaScalar::max(&a, &b)));
        }
    }
    WeylPolyhedron::new(constraints)
}

/// Vertices of `seg(x,y)` plus dyadic points of depth `depth` on the
/// segments joining every pair of vertices, deduplicated and sorted.
pub fn segment_samples(rs: &RootSystem, x: &ModelPoint, y: &ModelPoint, depth: u32) -> Vec<ModelPoint> {
    let seg = segment(rs, x, y);
    let verts = seg.vertices(rs);
    let steps = 1i64 << depth;
    let mut out = std::collections::BTreeSet::new();
    for (i, a) in verts.iter().enumerate() {
        out.insert(a.clone());
        for b in &verts[i + 1..] {
            let d = b.sub(a);
            for k in 1..steps {
                out.insert(a.add(&d.scale(&BigRational::new(k.into(), steps.into()))));
            }
        }
    }
    out.into_iter().collect()
}
