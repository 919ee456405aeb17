//! Finite metric spaces, self-maps, metric-axiom validation, and seeded
//! random instance generation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::rational::Rational;

/// A labeled point. Indices are dense `0..n`, labels unique within a space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointId {
    pub index: usize,
    pub label: String,
}

/// A finite point set with an exact pairwise distance matrix.
///
/// Construction enforces shape only (square matrix, at least three points,
/// unique labels); the metric axioms themselves are checked by
/// [`validate_metric`] so that broken matrices can be represented and
/// diagnosed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMetricSpace {
    points: Vec<PointId>,
    dist: Vec<Vec<Rational>>,
}

/// Total map `point index -> point index` on a [`FiniteMetricSpace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfMap {
    image: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("a metric space needs at least three points, got {0}")]
    TooFewPoints(usize),
    #[error("distance matrix must be {n}x{n}, row {row} has {len} entries")]
    BadMatrixShape { n: usize, row: usize, len: usize },
    #[error("distance matrix has {rows} rows for {n} points")]
    BadRowCount { n: usize, rows: usize },
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("map image {image} out of range for {n} points")]
    ImageOutOfRange { image: usize, n: usize },
    #[error("map has {len} images for {n} points")]
    BadMapLength { len: usize, n: usize },
}

impl FiniteMetricSpace {
    /// Builds a space from labels and a distance matrix. Shape checks only.
    pub fn new(labels: Vec<String>, dist: Vec<Vec<Rational>>) -> Result<Self, SpaceError> {
        let n = labels.len();
        if n < 3 {
            return Err(SpaceError::TooFewPoints(n));
        }
        if dist.len() != n {
            return Err(SpaceError::BadRowCount { n, rows: dist.len() });
        }
        for (row, r) in dist.iter().enumerate() {
            if r.len() != n {
                return Err(SpaceError::BadMatrixShape { n, row, len: r.len() });
            }
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(SpaceError::DuplicateLabel(l.clone()));
            }
        }
        let points = labels
            .into_iter()
            .enumerate()
            .map(|(index, label)| PointId { index, label })
            .collect();
        Ok(FiniteMetricSpace { points, dist })
    }

    /// Convenience constructor for points on the rational line with the
    /// absolute-difference metric. Labels are the canonical renderings.
    pub fn on_line(values: &[Rational]) -> Result<Self, SpaceError> {
        let labels = values.iter().map(|v| v.to_string()).collect();
        let dist = values
            .iter()
            .map(|a| values.iter().map(|b| (a - b).abs()).collect())
            .collect();
        FiniteMetricSpace::new(labels, dist)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    pub fn label(&self, index: usize) -> &str {
        &self.points[index].label
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p.label == label)
    }

    /// Exact distance between points `i` and `j`.
    pub fn d(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i][j]
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.dist
    }

    /// Relabels points through `perm`: point `i` of the result is point
    /// `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.len();
        assert_eq!(perm.len(), n);
        let points = perm
            .iter()
            .enumerate()
            .map(|(index, &old)| PointId {
                index,
                label: self.points[old].label.clone(),
            })
            .collect();
        let dist = perm
            .iter()
            .map(|&a| perm.iter().map(|&b| self.dist[a][b].clone()).collect())
            .collect();
        FiniteMetricSpace { points, dist }
    }

    /// Multiplies every distance by a positive rational factor.
    pub fn scaled(&self, factor: &Rational) -> Self {
        assert!(factor.is_positive());
        let dist = self
            .dist
            .iter()
            .map(|row| row.iter().map(|d| d * factor).collect())
            .collect();
        FiniteMetricSpace {
            points: self.points.clone(),
            dist,
        }
    }
}

impl SelfMap {
    pub fn new(image: Vec<usize>, space: &FiniteMetricSpace) -> Result<Self, SpaceError> {
        let n = space.len();
        if image.len() != n {
            return Err(SpaceError::BadMapLength { len: image.len(), n });
        }
        if let Some(&bad) = image.iter().find(|&&i| i >= n) {
            return Err(SpaceError::ImageOutOfRange { image: bad, n });
        }
        Ok(SelfMap { image })
    }

    pub fn identity(n: usize) -> Self {
        SelfMap {
            image: (0..n).collect(),
        }
    }

    /// Image of point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    /// `T^k(i)`.
    pub fn apply_iter(&self, i: usize, k: usize) -> usize {
        (0..k).fold(i, |p, _| self.image[p])
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Conjugates by `perm` (same convention as [`FiniteMetricSpace::permuted`]):
    /// the result maps `i` the way `self` maps `perm[i]`, expressed in new indices.
    pub fn conjugated(&self, perm: &[usize]) -> Self {
        let n = self.image.len();
        assert_eq!(perm.len(), n);
        let mut inv = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        SelfMap {
            image: perm.iter().map(|&old| inv[self.image[old]]).collect(),
        }
    }
}

/// Metric axiom classes checked by [`validate_metric`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    ZeroDiagonal,
    Positivity,
    Symmetry,
    Triangle,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::ZeroDiagonal => "zero_diagonal",
            Axiom::Positivity => "positivity",
            Axiom::Symmetry => "symmetry",
            Axiom::Triangle => "triangle",
        }
    }
}

/// One violated axiom with its lexicographically first witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Result of [`validate_metric`]: `ok` iff no axiom class is violated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<AxiomViolation>,
}

/// Exhaustively checks zero diagonal, off-diagonal positivity, symmetry, and
/// all ordered triangle inequalities. Reports the lexicographically first
/// witness per violated axiom class. Triangle scanning is parallel with a
/// deterministic min-witness reduction.
pub fn validate_metric(space: &FiniteMetricSpace) -> ValidationReport {
    let n = space.len();
    let mut violations = Vec::new();

    'diag: for i in 0..n {
        if !space.d(i, i).is_zero() {
            violations.push(AxiomViolation {
                axiom: Axiom::ZeroDiagonal,
                witness: vec![i],
                lhs: space.d(i, i).clone(),
                rhs: Rational::zero(),
            });
            break 'diag;
        }
    }

    'pos: for i in 0..n {
        for j in 0..n {
            if i != j && !space.d(i, j).is_positive() {
                violations.push(AxiomViolation {
                    axiom: Axiom::Positivity,
                    witness: vec![i, j],
                    lhs: space.d(i, j).clone(),
                    rhs: Rational::zero(),
                });
                break 'pos;
            }
        }
    }

    'sym: for i in 0..n {
        for j in (i + 1)..n {
            if space.d(i, j) != space.d(j, i) {
                violations.push(AxiomViolation {
                    axiom: Axiom::Symmetry,
                    witness: vec![i, j],
                    lhs: space.d(i, j).clone(),
                    rhs: space.d(j, i).clone(),
                });
                break 'sym;
            }
        }
    }

    // d(i,j) <= d(i,k) + d(k,j) over all ordered triples of distinct indices.
    let triangle = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut first: Option<AxiomViolation> = None;
            for j in 0..n {
                if j == i {
                    continue;
                }
                for k in 0..n {
                    if k == i || k == j {
                        continue;
                    }
                    let rhs = space.d(i, k) + space.d(k, j);
                    if space.d(i, j) > &rhs {
                        first = Some(AxiomViolation {
                            axiom: Axiom::Triangle,
                            witness: vec![i, j, k],
                            lhs: space.d(i, j).clone(),
                            rhs,
                        });
                        break;
                    }
                }
                if first.is_some() {
                    break;
                }
            }
            first
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (Some(a), Some(b)) => {
                    if a.witness <= b.witness {
                        Some(a)
                    } else {
                        Some(b)
                    }
                }
                (Some(a), None) => Some(a),
                (None, b) => b,
            },
        );
    if let Some(v) = triangle {
        violations.push(v);
    }

    violations.sort_by_key(|v| v.axiom);
    ValidationReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// Draws a random space with off-diagonal entries `p/q` in `[1, 2]`,
/// `q <= denom_bound`. Any symmetric matrix with entries in `[1, 2]`
/// satisfies the triangle inequality, so the result always validates.
/// Deterministic for a fixed seed.
pub fn random_space(
    n: usize,
    denom_bound: u64,
    seed: u64,
) -> Result<FiniteMetricSpace, SpaceError> {
    if n < 3 {
        return Err(SpaceError::TooFewPoints(n));
    }
    assert!(denom_bound >= 1, "denom_bound must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_space_from_rng(n, denom_bound, &mut rng)
}

fn random_space_from_rng(
    n: usize,
    denom_bound: u64,
    rng: &mut ChaCha8Rng,
) -> Result<FiniteMetricSpace, SpaceError> {
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    let mut dist = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let q = rng.gen_range(1..=denom_bound);
            let p = rng.gen_range(q..=2 * q);
            let d = Rational::from_big(p.into(), q.into());
            dist[i][j] = d.clone();
            dist[j][i] = d;
        }
    }
    FiniteMetricSpace::new(labels, dist)
}

/// Uniform independent image per point; deterministic per seed.
pub fn random_map(space: &FiniteMetricSpace, seed: u64) -> SelfMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_map_from_rng(space, &mut rng)
}

fn random_map_from_rng(space: &FiniteMetricSpace, rng: &mut ChaCha8Rng) -> SelfMap {
    let n = space.len();
    SelfMap {
        image: (0..n).map(|_| rng.gen_range(0..n)).collect(),
    }
}

/// Seed-derived sub-seeds for rejection sampling loops.
pub(crate) fn subseeds(seed: u64, tries: usize) -> impl Iterator<Item = (u64, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..tries)
        .map(move |_| (rng.gen::<u64>(), rng.gen::<u64>()))
        .collect::<Vec<_>>()
        .into_iter()
}
