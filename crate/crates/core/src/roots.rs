//! Crystallographic root systems and their finite Weyl groups.
//!
//! Points of the model space are stored by their simple-root evaluations
//! `x_i = α_i(x)`, i.e. in the basis of fundamental coweights. Row `i` of the
//! Cartan matrix holds the coordinates of the simple coroot `α̌_i`, so
//! `C[i][j] = α_j(α̌_i)`. Every Weyl group element is then an integer matrix.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::model::ModelPoint;
use crate::scalars::LambdaScalar;

/// Hard ceiling on the enumerated group order.
pub const MAX_GROUP_ORDER: usize = 100_000;
const MAX_ROOTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("Cartan matrix must be square and nonempty")]
    Shape,
    #[error("Cartan matrix entry ({0},{0}) must be 2")]
    Diagonal(usize),
    #[error("Cartan matrix entry ({0},{1}) must be a non-positive integer")]
    OffDiagonal(usize, usize),
    #[error("Cartan matrix entries ({0},{1}) and ({1},{0}) must vanish together")]
    ZeroPattern(usize, usize),
    #[error("not of finite type: principal submatrix on {indices:?} = {rows:?} has non-positive determinant")]
    NotFiniteType {
        indices: Vec<usize>,
        rows: Vec<Vec<i64>>,
    },
    #[error("unknown root system type `{0}`")]
    UnknownType(String),
    #[error("enumeration exceeded {0} elements")]
    EnumerationCap(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    rows: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, RootError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(RootError::Shape);
        }
        for i in 0..n {
            if rows[i][i] != 2 {
                return Err(RootError::Diagonal(i));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if rows[i][j] > 0 {
                    return Err(RootError::OffDiagonal(i, j));
                }
                if (rows[i][j] == 0) != (rows[j][i] == 0) {
                    return Err(RootError::ZeroPattern(i, j));
                }
            }
        }
        let m = Self { rows };
        m.check_finite_type()?;
        Ok(m)
    }

    /// Parses `A<n>`, `B<n>`, `C<n>`, `D<n>`, `G2` and `F4`.
    pub fn from_type(name: &str) -> Result<Self, RootError> {
        let unknown = || RootError::UnknownType(name.to_string());
        let name = name.trim();
        let (letter, rank) = name.split_at(1.min(name.len()));
        let n: usize = rank.parse().map_err(|_| unknown())?;
        let chain = |n: usize| -> Vec<Vec<i64>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match i.abs_diff(j) {
                            0 => 2,
                            1 => -1,
                            _ => 0,
                        })
                        .collect()
                })
                .collect()
        };
        let rows = match (letter, n) {
            ("A", n) if n >= 1 => chain(n),
            ("B", n) if n >= 2 => {
                let mut m = chain(n);
                m[n - 2][n - 1] = -2;
                m
            }
            ("C", n) if n >= 2 => {
                let mut m = chain(n);
                m[n - 1][n - 2] = -2;
                m
            }
            ("D", n) if n >= 4 => {
                let mut m = chain(n);
                m[n - 2][n - 1] = 0;
                m[n - 1][n - 2] = 0;
                m[n - 3][n - 1] = -1;
                m[n - 1][n - 3] = -1;
                m
            }
            ("G", 2) => vec![vec![2, -1], vec![-3, 2]],
            ("F", 4) => vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -2, 0],
                vec![0, -1, 2, -1],
                vec![0, 0, -1, 2],
            ],
            _ => return Err(unknown()),
        };
        Self::new(rows)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// `α_j(α̌_i)`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    fn check_finite_type(&self) -> Result<(), RootError> {
        let n = self.rank();
        // Subsets in order of size so the reported witness is minimal.
        let mut subsets: Vec<Vec<usize>> = (1u32..(1 << n))
            .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
            .collect();
        subsets.sort_by_key(|s| s.len());
        for idx in subsets {
            let sub: Vec<Vec<i64>> = idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.rows[i][j]).collect())
                .collect();
            if !determinant(&sub).is_positive() {
                return Err(RootError::NotFiniteType {
                    indices: idx,
                    rows: sub,
                });
            }
        }
        Ok(())
    }
}

fn determinant(m: &[Vec<i64>]) -> BigRational {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect();
    let mut det = BigRational::from_integer(1.into());
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    det
}

/// A root `±positive_roots[index]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRoot {
    pub index: usize,
    pub positive: bool,
}

impl SignedRoot {
    pub fn sign(&self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRoot {
    /// Coefficients over the simple roots.
    pub coeffs: Vec<i64>,
    /// The coroot in point coordinates.
    pub coroot: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// Row-major action on point coordinates.
    pub matrix: Vec<Vec<i64>>,
    /// A reduced word; `matrix = s_{word[0]} ⋯ s_{word[last]}`.
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// A root system `Φ` with its spherical Weyl group fully enumerated.
#[derive(Clone)]
pub struct RootSystem {
    name: String,
    cartan: CartanMatrix,
    positive_roots: Vec<PositiveRoot>,
    root_lookup: HashMap<Vec<i64>, usize>,
    simple: Vec<usize>,
    elements: Vec<WeylElement>,
    element_lookup: HashMap<Vec<Vec<i64>>, usize>,
    inverses: Vec<usize>,
    root_action: Vec<Vec<SignedRoot>>,
    longest: usize,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootSystem")
            .field("name", &self.name)
            .field("rank", &self.rank())
            .field("positive_roots", &self.positive_roots.len())
            .field("order", &self.order())
            .finish()
    }
}

impl RootSystem {
    pub fn from_type(name: &str) -> Result<Self, RootError> {
        let mut rs = Self::build(CartanMatrix::from_type(name)?)?;
        rs.name = name.trim().to_string();
        Ok(rs)
    }

    /// Enumerates `Φ⁺` by closing the simple roots under simple reflections,
    /// then `W̄` by breadth-first search from the identity (generators tried
    /// in index order).
    pub fn build(cartan: CartanMatrix) -> Result<Self, RootError> {
        let n = cartan.rank();
        let (positive_roots, root_lookup) = enumerate_roots(&cartan)?;
        let simple = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                root_lookup[&e]
            })
            .collect();

        let gens: Vec<Vec<Vec<i64>>> = (0..n).map(|j| simple_reflection(&cartan, j)).collect();
        let identity: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|k| i64::from(i == k)).collect())
            .collect();
        let mut elements = vec![WeylElement {
            matrix: identity.clone(),
            word: Vec::new(),
        }];
        let mut element_lookup = HashMap::from([(identity, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for (j, g) in gens.iter().enumerate() {
                let m = mat_mul(g, &elements[cur].matrix);
                if element_lookup.contains_key(&m) {
                    continue;
                }
                if elements.len() >= MAX_GROUP_ORDER {
                    return Err(RootError::EnumerationCap(MAX_GROUP_ORDER));
                }
                let mut word = vec![j];
                word.extend_from_slice(&elements[cur].word);
                element_lookup.insert(m.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(WeylElement { matrix: m, word });
            }
        }

        let inverses = elements
            .iter()
            .map(|e| element_lookup[&mat_inverse_unimodular(&e.matrix)])
            .collect::<Vec<_>>();

        let signed_lookup = |coeffs: &[i64]| -> SignedRoot {
            if let Some(&i) = root_lookup.get(coeffs) {
                return SignedRoot {
                    index: i,
                    positive: true,
                };
            }
            let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
            SignedRoot {
                index: root_lookup[&neg],
                positive: false,
            }
        };
        // (α ∘ w⁻¹) has coefficient row c · M(w⁻¹).
        let root_action = (0..elements.len())
            .map(|w| {
                let inv = &elements[inverses[w]].matrix;
                positive_roots
                    .iter()
                    .map(|r| signed_lookup(&row_times(&r.coeffs, inv)))
                    .collect()
            })
            .collect();

        let longest = (0..elements.len())
            .max_by_key(|&w| elements[w].length())
            .expect("group is nonempty");

        Ok(Self {
            name: format!("cartan{:?}", cartan.rows()),
            cartan,
            positive_roots,
            root_lookup,
            simple,
            elements,
            element_lookup,
            inverses,
            root_action,
            longest,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    /// Index of `α_i` among the positive roots.
    pub fn simple_root(&self, i: usize) -> usize {
        self.simple[i]
    }

    pub fn root_index(&self, coeffs: &[i64]) -> Option<SignedRoot> {
        if let Some(&i) = self.root_lookup.get(coeffs) {
            return Some(SignedRoot {
                index: i,
                positive: true,
            });
        }
        let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
        self.root_lookup.get(&neg).map(|&i| SignedRoot {
            index: i,
            positive: false,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, w: usize) -> &WeylElement {
        &self.elements[w]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn length(&self, w: usize) -> usize {
        self.elements[w].length()
    }

    /// The longest element `w₀`.
    pub fn longest(&self) -> usize {
        self.longest
    }

    /// Diameter of the Coxeter complex, `ℓ(w₀)`.
    pub fn diameter(&self) -> usize {
        self.length(self.longest)
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverses[w]
    }

    /// `a ∘ b`.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        let m = mat_mul(&self.elements[a].matrix, &self.elements[b].matrix);
        self.element_lookup[&m]
    }

    pub fn find_element(&self, matrix: &[Vec<i64>]) -> Option<usize> {
        self.element_lookup.get(matrix).copied()
    }

    /// The root `α ∘ w⁻¹`, i.e. the image of positive root `root` under `w`.
    pub fn root_image(&self, w: usize, root: usize) -> SignedRoot {
        self.root_action[w][root]
    }

    pub fn signed_root_image(&self, w: usize, root: SignedRoot) -> SignedRoot {
        let img = self.root_image(w, root.index);
        SignedRoot {
            index: img.index,
            positive: img.positive == root.positive,
        }
    }

    /// `w · ω̌_j` as an integer direction vector: column `j` of the matrix.
    pub fn chamber_generator(&self, w: usize, j: usize) -> Vec<i64> {
        self.elements[w].matrix.iter().map(|row| row[j]).collect()
    }

    pub fn act_direction(&self, w: usize, dir: &[i64]) -> Vec<i64> {
        self.elements[w]
            .matrix
            .iter()
            .map(|row| row.iter().zip(dir).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `α(d)` for a positive root and an integer direction.
    pub fn root_on_direction(&self, root: usize, dir: &[i64]) -> i64 {
        self.positive_roots[root]
            .coeffs
            .iter()
            .zip(dir)
            .map(|(c, d)| c * d)
            .sum()
    }

    /// `α(x) = Σ c_i x_i`.
    pub fn eval_coeffs(&self, coeffs: &[i64], x: &ModelPoint) -> LambdaScalar {
        let mut acc = LambdaScalar::zero(x.lambda_rank());
        for (c, xi) in coeffs.iter().zip(x.coords()) {
            match *c {
                0 => {}
                1 => acc += xi,
                -1 => acc -= xi,
                c => acc += &xi.scale_int(c),
            }
        }
        acc
    }

    pub fn eval_root(&self, root: usize, x: &ModelPoint) -> LambdaScalar {
        self.eval_coeffs(&self.positive_roots[root].coeffs, x)
    }

    pub fn eval_signed(&self, root: SignedRoot, x: &ModelPoint) -> LambdaScalar {
        let v = self.eval_root(root.index, x);
        if root.positive {
            v
        } else {
            -v
        }
    }

    pub fn act(&self, w: usize, x: &ModelPoint) -> ModelPoint {
        if w == 0 {
            return x.clone();
        }
        let m = &self.elements[w].matrix;
        ModelPoint::new(
            m.iter()
                .map(|row| {
                    let mut acc = LambdaScalar::zero(x.lambda_rank());
                    for (c, xi) in row.iter().zip(x.coords()) {
                        if *c != 0 {
                            acc += &xi.scale_int(*c);
                        }
                    }
                    acc
                })
                .collect(),
        )
    }

    /// `r_α(x) = x − α(x)·α̌`.
    pub fn reflect(&self, root: SignedRoot, x: &ModelPoint) -> ModelPoint {
        let a = self.eval_root(root.index, x);
        let coroot = &self.positive_roots[root.index].coroot;
        ModelPoint::new(
            x.coords()
                .iter()
                .zip(coroot)
                .map(|(xi, &c)| xi - &a.scale_int(c))
                .collect(),
        )
    }

    /// The Weyl group element `r_α`.
    pub fn reflection_element(&self, root: usize) -> usize {
        let n = self.rank();
        let r = &self.positive_roots[root];
        let m: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| i64::from(i == k) - r.coroot[i] * r.coeffs[k])
                    .collect()
            })
            .collect();
        self.element_lookup[&m]
    }
}

fn enumerate_roots(cartan: &CartanMatrix) -> Result<(Vec<PositiveRoot>, HashMap<Vec<i64>, usize>), RootError> {
    let n = cartan.rank();
    let mut roots = Vec::new();
    let mut lookup = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        lookup.insert(e.clone(), roots.len());
        queue.push_back(roots.len());
        roots.push(PositiveRoot {
            coeffs: e,
            coroot: cartan.rows()[i].clone(),
        });
    }
    while let Some(cur) = queue.pop_front() {
        for j in 0..n {
            let r = &roots[cur];
            // ⟨α, α̌_j⟩ and ⟨α_j, α̌⟩
            let pair: i64 = r.coeffs.iter().enumerate().map(|(i, c)| c * cartan.get(j, i)).sum();
            let copair = r.coroot[j];
            let mut coeffs = r.coeffs.clone();
            coeffs[j] -= pair;
            if coeffs.iter().any(|&c| c < 0) || lookup.contains_key(&coeffs) {
                continue;
            }
            let coroot: Vec<i64> = r
                .coroot
                .iter()
                .zip(&cartan.rows()[j])
                .map(|(a, b)| a - copair * b)
                .collect();
            if roots.len() >= MAX_ROOTS {
                return Err(RootError::EnumerationCap(MAX_ROOTS));
            }
            lookup.insert(coeffs.clone(), roots.len());
            queue.push_back(roots.len());
            roots.push(PositiveRoot { coeffs, coroot });
        }
    }
    Ok((roots, lookup))
}

fn simple_reflection(cartan: &CartanMatrix, j: usize) -> Vec<Vec<i64>> {
    let n = cartan.rank();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|k| i64::from(i == k) - i64::from(k == j) * cartan.get(j, i))
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn row_times(row: &[i64], m: &[Vec<i64>]) -> Vec<i64> {
    (0..row.len())
        .map(|j| row.iter().enumerate().map(|(i, c)| c * m[i][j]).sum())
        .collect()
}

/// Inverse of an integer matrix with determinant ±1.
fn mat_inverse_unimodular(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(i64::from(i == j).into())).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero()).expect("Weyl matrices are invertible");
        a.swap(p, col);
        inv.swap(p, col);
        let pivot = a[col][col].clone();
        for c in 0..n {
            a[col][c] = &a[col][c] / &pivot;
            inv[col][c] = &inv[col][c] / &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let va = &f * &a[col][c];
                a[r][c] -= va;
                let vi = &f * &inv[col][c];
                inv[r][c] -= vi;
            }
        }
    }
    inv.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|q| {
                    assert!(q.is_integer(), "Weyl matrix inverse must be integral");
                    i64::try_from(q.to_integer()).expect("small entries")
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelPoint;

    fn p(v: &[i64]) -> ModelPoint {
        ModelPoint::from_integers(v, 1)
    }

    /// Orbit of the simple roots under reflections, counted by brute force on
    /// explicit root vectors. Independent of the closure used in `build`.
    fn brute_force_root_count(cartan: &[Vec<i64>]) -> usize {
        let n = cartan.len();
        let mut seen = std::collections::HashSet::new();
        let mut frontier: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|k| i64::from(i == k)).collect())
            .collect();
        seen.extend(frontier.iter().cloned());
        while let Some(r) = frontier.pop() {
            for j in 0..n {
                // s_j(α) = α − ⟨α, α̌_j⟩ α_j with ⟨α_i, α̌_j⟩ = cartan[j][i]
                let pair: i64 = (0..n).map(|i| r[i] * cartan[j][i]).sum();
                let mut s = r.clone();
                s[j] -= pair;
                if seen.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn a2_positive_roots() {
        let rs = RootSystem::from_type("A2").unwrap();
        let mut coeffs: Vec<_> = rs.positive_roots().iter().map(|r| r.coeffs.clone()).collect();
        coeffs.sort();
        assert_eq!(coeffs, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(rs.order(), 6);
        assert_eq!(brute_force_root_count(rs.cartan().rows()), 6);
    }

    #[test]
    fn a1_and_b2_sizes() {
        let a1 = RootSystem::build(CartanMatrix::new(vec![vec![2]]).unwrap()).unwrap();
        assert_eq!(a1.positive_roots().len(), 1);
        assert_eq!(a1.order(), 2);
        let b2 = RootSystem::build(CartanMatrix::new(vec![vec![2, -2], vec![-1, 2]]).unwrap()).unwrap();
        assert_eq!(b2.positive_roots().len(), 4);
        assert_eq!(b2.order(), 8);
        assert_eq!(brute_force_root_count(b2.cartan().rows()), 8);
    }

    #[test]
    fn known_orders() {
        for (t, roots, order) in [("G2", 6, 12), ("A3", 6, 24), ("B3", 9, 48), ("C3", 9, 48), ("D4", 12, 192)] {
            let rs = RootSystem::from_type(t).unwrap();
            assert_eq!(rs.positive_roots().len(), roots, "{t}");
            assert_eq!(rs.order(), order, "{t}");
            assert_eq!(rs.diameter(), roots, "{t}");
            assert_eq!(brute_force_root_count(rs.cartan().rows()), 2 * roots, "{t}");
        }
    }

    #[test]
    fn lengths() {
        let a2 = RootSystem::from_type("A2").unwrap();
        assert_eq!(a2.length(a2.identity()), 0);
        assert_eq!(a2.length(a2.longest()), 3);
        let a1 = RootSystem::from_type("A1").unwrap();
        assert_eq!(a1.length(1), 1);
    }

    /// Word length recomputed by BFS over the right Cayley graph.
    #[test]
    fn length_matches_cayley_bfs() {
        for t in ["A2", "B2", "G2", "A3"] {
            let rs = RootSystem::from_type(t).unwrap();
            let n = rs.rank();
            let gens: Vec<usize> = (0..n).map(|j| rs.reflection_element(rs.simple_root(j))).collect();
            let mut dist = vec![usize::MAX; rs.order()];
            dist[0] = 0;
            let mut q = VecDeque::from([0]);
            while let Some(w) = q.pop_front() {
                for &g in &gens {
                    let v = rs.compose(w, g);
                    if dist[v] == usize::MAX {
                        dist[v] = dist[w] + 1;
                        q.push_back(v);
                    }
                }
            }
            for w in 0..rs.order() {
                assert_eq!(dist[w], rs.length(w), "{t} element {w}");
            }
        }
    }

    #[test]
    fn rejects_affine_and_malformed() {
        let err = CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).unwrap_err();
        assert_eq!(
            err,
            RootError::NotFiniteType {
                indices: vec![0, 1],
                rows: vec![vec![2, -2], vec![-2, 2]]
            }
        );
        let err = CartanMatrix::new(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]).unwrap_err();
        assert!(matches!(err, RootError::NotFiniteType { ref indices, .. } if indices.len() == 3));
        assert_eq!(CartanMatrix::new(vec![vec![3]]), Err(RootError::Diagonal(0)));
        assert_eq!(
            CartanMatrix::new(vec![vec![2, 1], vec![-1, 2]]),
            Err(RootError::OffDiagonal(0, 1))
        );
        assert_eq!(
            CartanMatrix::new(vec![vec![2, 0], vec![-1, 2]]),
            Err(RootError::ZeroPattern(0, 1))
        );
        assert!(RootSystem::from_type("E9").is_err());
    }

    #[test]
    fn reflections() {
        let a1 = RootSystem::from_type("A1").unwrap();
        let alpha = SignedRoot { index: 0, positive: true };
        assert_eq!(a1.reflect(alpha, &p(&[7])), p(&[-7]));
        let a2 = RootSystem::from_type("A2").unwrap();
        let a1_root = SignedRoot {
            index: a2.simple_root(0),
            positive: true,
        };
        assert_eq!(a2.reflect(a1_root, &p(&[1, 0])), p(&[-1, 1]));
        // fixed hyperplane
        assert_eq!(a2.reflect(a1_root, &p(&[0, 5])), p(&[0, 5]));
    }

    #[test]
    fn weyl_group_permutes_roots_and_reflections_are_involutions() {
        for t in ["A1", "A2", "B2", "G2", "A3"] {
            let rs = RootSystem::from_type(t).unwrap();
            for w in 0..rs.order() {
                let mut seen: Vec<usize> = (0..rs.positive_roots().len())
                    .map(|r| rs.root_image(w, r).index)
                    .collect();
                seen.sort();
                seen.dedup();
                assert_eq!(seen.len(), rs.positive_roots().len(), "{t}");
                // ℓ(w₀w) = ℓ(w₀) − ℓ(w)
                let w0w = rs.compose(rs.longest(), w);
                assert_eq!(rs.length(w0w), rs.diameter() - rs.length(w));
                assert_eq!(rs.compose(w, rs.inverse(w)), 0);
            }
            for r in 0..rs.positive_roots().len() {
                let s = rs.reflection_element(r);
                assert_eq!(rs.compose(s, s), 0);
                let x = ModelPoint::from_integers(&(1..=rs.rank() as i64).collect::<Vec<_>>(), 1);
                let sr = SignedRoot { index: r, positive: true };
                assert_eq!(rs.reflect(sr, &rs.reflect(sr, &x)), x);
                assert_eq!(rs.act(s, &x), rs.reflect(sr, &x));
            }
            // number of positive roots sent negative equals length
            for w in 0..rs.order() {
                let neg = (0..rs.positive_roots().len())
                    .filter(|&r| !rs.root_image(w, r).positive)
                    .count();
                assert_eq!(neg, rs.length(w), "{t}");
            }
        }
    }
}
