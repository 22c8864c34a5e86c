use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use super::fm::{feasible_point, LinIneq};
use super::{solve_lambda, AffineMap, ModelPoint};
use crate::roots::{RootSystem, SignedRoot};
use crate::scalars::LambdaScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

impl Relation {
    pub fn flipped(self) -> Self {
        match self {
            Self::Ge => Self::Le,
            Self::Le => Self::Ge,
            Self::Eq => Self::Eq,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Self::Ge => ">=",
            Self::Le => "<=",
            Self::Eq => "=",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            ">=" => Some(Self::Ge),
            "<=" => Some(Self::Le),
            "=" | "==" => Some(Self::Eq),
            _ => None,
        }
    }
}

/// `α(x) rel bound` for a positive root `α` (by index).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub root: usize,
    pub rel: Relation,
    pub bound: LambdaScalar,
}

impl Constraint {
    pub fn new(root: usize, rel: Relation, bound: LambdaScalar) -> Self {
        Self { root, rel, bound }
    }

    /// `(±α)(x) rel bound`, rewritten over the positive root.
    pub fn signed(root: SignedRoot, rel: Relation, bound: LambdaScalar) -> Self {
        if root.positive {
            Self::new(root.index, rel, bound)
        } else {
            Self::new(root.index, rel.flipped(), -bound)
        }
    }

    pub fn holds(&self, rs: &RootSystem, x: &ModelPoint) -> bool {
        let v = rs.eval_root(self.root, x);
        match self.rel {
            Relation::Ge => v >= self.bound,
            Relation::Le => v <= self.bound,
            Relation::Eq => v == self.bound,
        }
    }

    /// Equality at `x`.
    pub fn is_active(&self, rs: &RootSystem, x: &ModelPoint) -> bool {
        rs.eval_root(self.root, x) == self.bound
    }

    pub fn to_ineqs(&self, rs: &RootSystem) -> Vec<LinIneq> {
        let c = &rs.positive_roots()[self.root].coeffs;
        let neg: Vec<i64> = c.iter().map(|v| -v).collect();
        let ge = LinIneq::from_ints(c, self.bound.clone(), false);
        let le = LinIneq::from_ints(&neg, -&self.bound, false);
        match self.rel {
            Relation::Ge => vec![ge],
            Relation::Le => vec![le],
            Relation::Eq => vec![ge, le],
        }
    }

    /// The image of the constraint's solution set under `m`.
    pub fn image(&self, rs: &RootSystem, m: &AffineMap) -> Self {
        let beta = rs.root_image(m.weyl, self.root);
        let bt = rs.eval_root(beta.index, &m.translation);
        if beta.positive {
            Self::new(beta.index, self.rel, &self.bound + &bt)
        } else {
            Self::new(beta.index, self.rel.flipped(), &bt - &self.bound)
        }
    }
}

/// A finite intersection of closed root half-spaces and walls.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct WeylPolyhedron {
    constraints: Vec<Constraint>,
}

impl fmt::Debug for WeylPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .constraints
            .iter()
            .map(|c| format!("a{} {} {}", c.root, c.rel.symbol(), c.bound))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl WeylPolyhedron {
    pub fn new(constraints: Vec<Constraint>) -> Self {
        Self { constraints }
    }

    /// The whole model space.
    pub fn whole() -> Self {
        Self::default()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_whole_space(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut c = self.constraints.clone();
        c.extend(other.constraints.iter().cloned());
        Self::new(c)
    }

    pub fn with(&self, c: Constraint) -> Self {
        let mut out = self.clone();
        out.constraints.push(c);
        out
    }

    pub fn contains(&self, rs: &RootSystem, x: &ModelPoint) -> bool {
        self.constraints.iter().all(|c| c.holds(rs, x))
    }

    pub fn ineqs(&self, rs: &RootSystem) -> Vec<LinIneq> {
        self.constraints.iter().flat_map(|c| c.to_ineqs(rs)).collect()
    }

    fn lambda_rank_hint(&self) -> usize {
        self.constraints.first().map_or(1, |c| c.bound.rank())
    }

    pub fn feasible_point(&self, rs: &RootSystem, lambda_rank: usize) -> Option<ModelPoint> {
        feasible_point(&self.ineqs(rs), rs.rank(), lambda_rank).map(ModelPoint::new)
    }

    pub fn is_empty(&self, rs: &RootSystem) -> bool {
        self.feasible_point(rs, self.lambda_rank_hint()).is_none()
    }

    /// Whether every point satisfies `ineq`.
    pub fn implies(&self, rs: &RootSystem, ineq: &LinIneq) -> bool {
        let mut sys = self.ineqs(rs);
        sys.push(ineq.negated());
        feasible_point(&sys, rs.rank(), ineq.rhs.rank()).is_none()
    }

    pub fn implies_constraint(&self, rs: &RootSystem, c: &Constraint) -> bool {
        c.to_ineqs(rs).iter().all(|i| self.implies(rs, i))
    }

    pub fn is_subset_of(&self, rs: &RootSystem, other: &Self) -> bool {
        other.constraints.iter().all(|c| self.implies_constraint(rs, c))
    }

    pub fn same_set(&self, rs: &RootSystem, other: &Self) -> bool {
        self.is_subset_of(rs, other) && other.is_subset_of(rs, self)
    }

    /// `{ m(x) : x ∈ self }`.
    pub fn image(&self, rs: &RootSystem, m: &AffineMap) -> Self {
        Self::new(self.constraints.iter().map(|c| c.image(rs, m)).collect())
    }

    /// The unique point, if the polyhedron is a singleton.
    pub fn as_point(&self, rs: &RootSystem) -> Option<ModelPoint> {
        let k = self.lambda_rank_hint();
        if self.constraints.is_empty() {
            return None;
        }
        let v = self.feasible_point(rs, k)?;
        let n = rs.rank();
        for i in 0..n {
            let c = Constraint::new(rs.simple_root(i), Relation::Eq, v.coords()[i].clone());
            if !self.implies_constraint(rs, &c) {
                return None;
            }
        }
        Some(v)
    }

    /// The bounding constraint, if the polyhedron is exactly one closed
    /// half-apartment.
    pub fn as_half_apartment(&self, rs: &RootSystem) -> Option<Constraint> {
        let candidates = self.constraints.iter().filter(|c| c.rel != Relation::Eq);
        for c in candidates {
            let half = Self::new(vec![c.clone()]);
            if half.is_subset_of(rs, self) {
                return Some(c.clone());
            }
        }
        None
    }

    /// `(base, w)` if the polyhedron is exactly the Weyl chamber
    /// `base + w·C_f`.
    pub fn as_chamber(&self, rs: &RootSystem) -> Option<(ModelPoint, usize)> {
        let n = rs.rank();
        'w: for w in 0..rs.order() {
            let mut lows = Vec::with_capacity(n);
            for i in 0..n {
                let beta = rs.signed_root_image(
                    w,
                    SignedRoot {
                        index: rs.simple_root(i),
                        positive: true,
                    },
                );
                let mut best: Option<LambdaScalar> = None;
                for c in self.constraints.iter().filter(|c| c.root == beta.index) {
                    let lower = match (beta.positive, c.rel) {
                        (true, Relation::Ge | Relation::Eq) => c.bound.clone(),
                        (false, Relation::Le | Relation::Eq) => -&c.bound,
                        _ => continue,
                    };
                    if best.as_ref().is_none_or(|b| lower > *b) {
                        best = Some(lower);
                    }
                }
                match best {
                    Some(b) => lows.push(b),
                    None => continue 'w,
                }
            }
            let base = rs.act(w, &ModelPoint::new(lows));
            let chamber = super::WeylSimplexLocal::chamber(base.clone(), w).polyhedron(rs);
            if chamber.same_set(rs, self) {
                return Some((base, w));
            }
        }
        None
    }

    /// Vertices, found by solving every independent choice of `rank`
    /// constraints as equalities.
    pub fn vertices(&self, rs: &RootSystem) -> Vec<ModelPoint> {
        let n = rs.rank();
        let mut out = Vec::new();
        let mut pick = Vec::with_capacity(n);
        self.vertex_search(rs, 0, &mut pick, &mut out);
        out.sort();
        out.dedup();
        out
    }

    fn vertex_search(&self, rs: &RootSystem, start: usize, pick: &mut Vec<usize>, out: &mut Vec<ModelPoint>) {
        let n = rs.rank();
        if pick.len() == n {
            let a = pick
                .iter()
                .map(|&k| {
                    rs.positive_roots()[self.constraints[k].root]
                        .coeffs
                        .iter()
                        .map(|&c| BigRational::from_integer(c.into()))
                        .collect()
                })
                .collect();
            let b = pick.iter().map(|&k| self.constraints[k].bound.clone()).collect();
            if let Some(x) = solve_lambda(a, b) {
                let x = ModelPoint::new(x);
                if self.contains(rs, &x) {
                    out.push(x);
                }
            }
            return;
        }
        for k in start..self.constraints.len() {
            if pick.iter().any(|&p| self.constraints[p].root == self.constraints[k].root) {
                continue;
            }
            pick.push(k);
            self.vertex_search(rs, k + 1, pick, out);
            pick.pop();
        }
    }

    /// Whether every Weyl chamber of direction `w` has a sub-chamber in the
    /// polyhedron (the polyhedron's recession cone contains `w·C_f`).
    pub fn recession_contains(&self, rs: &RootSystem, w: usize) -> bool {
        let winv = rs.inverse(w);
        self.constraints.iter().all(|c| {
            let pos = rs.root_image(winv, c.root).positive;
            match c.rel {
                Relation::Ge => pos,
                Relation::Le => !pos,
                Relation::Eq => false,
            }
        })
    }

    /// Least `M ≥ 0` such that the chamber `base + M·wρ̌ + w·C_f` lies in
    /// the polyhedron, where `ρ̌` is the sum of fundamental coweights.
    pub fn recession_shift(&self, rs: &RootSystem, base: &ModelPoint, w: usize) -> Option<LambdaScalar> {
        if !self.recession_contains(rs, w) {
            return None;
        }
        let rho = rs.act_direction(w, &vec![1; rs.rank()]);
        let mut m = LambdaScalar::zero(base.lambda_rank());
        for c in &self.constraints {
            let h = rs.root_on_direction(c.root, &rho);
            let gap = &c.bound - &rs.eval_root(c.root, base);
            // α(base) + M h  rel  bound
            let need = gap.scale(&(BigRational::one() / BigRational::from_integer(h.into())));
            if need > m {
                m = need;
            }
        }
        Some(m)
    }
}
