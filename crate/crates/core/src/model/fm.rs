//! Fourier–Motzkin elimination over the ordered vector space `Λ^n`.
//!
//! Elimination is exact in any ordered divisible group, so emptiness and
//! implication questions about polyhedra are decided without rounding.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalars::LambdaScalar;

/// `coeffs · x ≥ rhs`, or `>` when `strict`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinIneq {
    pub coeffs: Vec<BigRational>,
    pub rhs: LambdaScalar,
    pub strict: bool,
}

impl LinIneq {
    pub fn new(coeffs: Vec<BigRational>, rhs: LambdaScalar, strict: bool) -> Self {
        Self { coeffs, rhs, strict }
    }

    pub fn from_ints(coeffs: &[i64], rhs: LambdaScalar, strict: bool) -> Self {
        Self::new(
            coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
            rhs,
            strict,
        )
    }

    pub fn negated(&self) -> Self {
        // ¬(a·x ≥ b) is (−a)·x > −b
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            rhs: -&self.rhs,
            strict: !self.strict,
        }
    }

    fn lhs(&self, x: &[LambdaScalar]) -> LambdaScalar {
        let mut acc = LambdaScalar::zero(self.rhs.rank());
        for (c, xi) in self.coeffs.iter().zip(x) {
            if !c.is_zero() {
                acc += &xi.scale(c);
            }
        }
        acc
    }

    pub fn holds(&self, x: &[LambdaScalar]) -> bool {
        let l = self.lhs(x);
        if self.strict {
            l > self.rhs
        } else {
            l >= self.rhs
        }
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn trivially_true(&self) -> bool {
        let z = LambdaScalar::zero(self.rhs.rank());
        if self.strict {
            z > self.rhs
        } else {
            z >= self.rhs
        }
    }

    /// Scales so the first nonzero coefficient has absolute value one.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            if !lead.is_one() {
                let inv = BigRational::one() / lead;
                for c in &mut self.coeffs {
                    *c = &*c * &inv;
                }
                self.rhs = self.rhs.scale(&inv);
            }
        }
        self
    }
}

/// Keeps only the strongest inequality per normal direction. Returns `None`
/// if a constant inequality is violated.
fn reduce(system: Vec<LinIneq>) -> Option<Vec<LinIneq>> {
    let mut best: HashMap<Vec<BigRational>, LinIneq> = HashMap::new();
    let mut order = Vec::new();
    for ineq in system {
        if ineq.is_trivial() {
            if !ineq.trivially_true() {
                return None;
            }
            continue;
        }
        let ineq = ineq.normalized();
        match best.get_mut(&ineq.coeffs) {
            Some(cur) => {
                if ineq.rhs > cur.rhs || (ineq.rhs == cur.rhs && ineq.strict) {
                    *cur = ineq;
                }
            }
            None => {
                order.push(ineq.coeffs.clone());
                best.insert(ineq.coeffs.clone(), ineq);
            }
        }
    }
    Some(order.into_iter().map(|k| best.remove(&k).expect("key present")).collect())
}

fn eliminate(system: &[LinIneq], j: usize) -> Option<Vec<LinIneq>> {
    let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for ineq in system {
        if ineq.coeffs[j].is_positive() {
            lower.push(ineq);
        } else if ineq.coeffs[j].is_negative() {
            upper.push(ineq);
        } else {
            rest.push(ineq.clone());
        }
    }
    for l in &lower {
        let fl = BigRational::one() / &l.coeffs[j];
        for u in &upper {
            let fu = BigRational::one() / -&u.coeffs[j];
            let coeffs = l
                .coeffs
                .iter()
                .zip(&u.coeffs)
                .map(|(a, b)| a * &fl + b * &fu)
                .collect();
            let rhs = l.rhs.scale(&fl) + u.rhs.scale(&fu);
            rest.push(LinIneq::new(coeffs, rhs, l.strict || u.strict));
        }
    }
    reduce(rest)
}

/// A point satisfying every inequality, or `None` if the system is empty.
/// `dim` variables, scalars of rank `lambda_rank`.
pub fn feasible_point(system: &[LinIneq], dim: usize, lambda_rank: usize) -> Option<Vec<LambdaScalar>> {
    let mut stages = vec![reduce(system.to_vec())?];
    for j in (0..dim).rev() {
        let next = eliminate(stages.last().expect("nonempty"), j)?;
        stages.push(next);
    }
    // stages[k] mentions variables 0..dim-k; back-substitute upward.
    let mut x = vec![LambdaScalar::zero(lambda_rank); dim];
    for j in 0..dim {
        let stage = &stages[dim - 1 - j];
        let mut lo: Option<(LambdaScalar, bool)> = None;
        let mut hi: Option<(LambdaScalar, bool)> = None;
        for ineq in stage {
            let a = &ineq.coeffs[j];
            if a.is_zero() {
                continue;
            }
            // a x_j ≥ rhs − Σ_{i<j} a_i x_i  (later variables are absent)
            let mut r = ineq.rhs.clone();
            for i in 0..j {
                if !ineq.coeffs[i].is_zero() {
                    r -= &x[i].scale(&ineq.coeffs[i]);
                }
            }
            let bound = r.scale(&(BigRational::one() / a));
            if a.is_positive() {
                if lo.as_ref().is_none_or(|(b, s)| bound > *b || (bound == *b && ineq.strict && !s)) {
                    lo = Some((bound, ineq.strict));
                }
            } else if hi.as_ref().is_none_or(|(b, s)| bound < *b || (bound == *b && ineq.strict && !s)) {
                hi = Some((bound, ineq.strict));
            }
        }
        let unit = LambdaScalar::unit(lambda_rank);
        x[j] = match (lo, hi) {
            (None, None) => LambdaScalar::zero(lambda_rank),
            (Some((l, false)), None) => l,
            (Some((l, true)), None) => &l + &unit,
            (None, Some((h, false))) => h,
            (None, Some((h, true))) => &h - &unit,
            (Some((l, ls)), Some((h, hs))) => {
                if l == h {
                    debug_assert!(!ls && !hs);
                    l
                } else if !ls {
                    l
                } else if !hs {
                    h
                } else {
                    (&l + &h).div_int(2).expect("nonzero")
                }
            }
        };
    }
    debug_assert!(system.iter().all(|c| c.holds(&x)));
    Some(x)
}
