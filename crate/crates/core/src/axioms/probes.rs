use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::atlas::{AtlasError, AtlasSpace, ChartId, XGerm, XPoint};
use crate::model::{AffineMap, ModelPoint, TranslationGroup};
use crate::scalars::LambdaScalar;

pub const DEFAULT_PROBE_BUDGET: usize = 2_000;
pub const PROBE_CAP_ENV: &str = "LBL_PROBE_CAP";

/// Bounds and seed for generated probes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeConfig {
    /// Maximum number of pairs, triples, germ pairs or centers per check.
    pub budget: usize,
    /// Random chart points added to the structural probes.
    pub samples: usize,
    pub seed: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self {
            budget: DEFAULT_PROBE_BUDGET,
            samples: 24,
            seed: 0,
        }
    }
}

impl ProbeConfig {
    /// Default configuration with the budget taken from `LBL_PROBE_CAP`
    /// when set.
    pub fn from_env() -> Self {
        let mut c = Self::default();
        if let Some(b) = std::env::var(PROBE_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            c.budget = b;
        }
        c
    }

    pub fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

/// Marked data of a space with derived pairs and triples.
#[derive(Debug, Clone)]
pub struct ProbeSet {
    pub points: Vec<XPoint>,
    pub pairs: Vec<(usize, usize)>,
    /// Ordered triples of distinct points.
    pub triples: Vec<(usize, usize, usize)>,
    pub chambers: Vec<XGerm>,
    /// Chart points for structural checks: marked points, points of every
    /// gluing region and seeded random points.
    pub samples: Vec<(ChartId, ModelPoint)>,
}

impl ProbeSet {
    pub fn build(space: &AtlasSpace, config: &ProbeConfig) -> Result<Self, AtlasError> {
        let rs = space.root_system();
        let mut points = space.marked_xpoints()?;
        for g in space.marked_germs() {
            let b = space.germ_base(g)?;
            if !points.contains(&b) {
                points.push(b);
            }
        }
        let n = points.len();
        let mut pairs = Vec::new();
        'p: for i in 0..n {
            for j in i + 1..n {
                if pairs.len() >= config.budget {
                    break 'p;
                }
                pairs.push((i, j));
            }
        }
        let mut triples = Vec::new();
        't: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    if triples.len() >= config.budget {
                        break 't;
                    }
                    triples.push((i, j, k));
                }
            }
        }
        let chambers = space
            .marked_germs()
            .iter()
            .filter(|g| g.simplex.is_chamber())
            .cloned()
            .collect();

        let mut samples: Vec<(ChartId, ModelPoint)> = space.marked_points().to_vec();
        let cap = config.budget.max(space.marked_points().len());
        for g in space.gluings() {
            if samples.len() >= cap {
                break;
            }
            if let Some(p) = g.region.feasible_point(rs, space.lambda_rank()) {
                samples.push((g.from, p));
            }
            for v in g.region.vertices(rs) {
                samples.push((g.from, v));
            }
        }
        let mut rng = config.rng(1);
        for _ in 0..config.samples {
            let c = ChartId(rng.gen_range(0..space.chart_count()));
            samples.push((c, random_point(&mut rng, space.rank(), space.lambda_rank(), 8)));
        }
        samples.sort();
        samples.dedup();
        samples.truncate(cap);
        Ok(Self {
            points,
            pairs,
            triples,
            chambers,
            samples,
        })
    }
}

pub(crate) fn random_scalar(rng: &mut impl Rng, k: usize, range: i64) -> LambdaScalar {
    let v: Vec<i64> = (0..k).map(|_| rng.gen_range(-range..=range)).collect();
    LambdaScalar::from_integers(&v)
}

pub(crate) fn random_point(rng: &mut impl Rng, n: usize, k: usize, range: i64) -> ModelPoint {
    ModelPoint::new((0..n).map(|_| random_scalar(rng, k, range)).collect())
}

/// A random element of `W_T`.
pub(crate) fn random_affine(rng: &mut impl Rng, space: &AtlasSpace) -> AffineMap {
    let rs = space.root_system();
    let (n, k) = (space.rank(), space.lambda_rank());
    let weyl = rng.gen_range(0..rs.order());
    let translation = match space.translations() {
        TranslationGroup::Full => random_point(rng, n, k, 8),
        TranslationGroup::CorootLattice => {
            // Σ m_i α̌_i has coordinates Σ_i m_i C[i][j]
            let m: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
            let coords: Vec<i64> = (0..n)
                .map(|j| (0..n).map(|i| m[i] * rs.cartan().get(i, j)).sum())
                .collect();
            ModelPoint::from_integers(&coords, k)
        }
    };
    AffineMap { weyl, translation }
}
