//! Triangle perimeters, the six-point support maximum, per-triple contraction
//! ratios, and full classification of a self-map against the two perimeter
//! contraction classes.
//!
//! For a triple (x, y, z) of distinct points the *strict* (Petrov-style) ratio
//! compares the image perimeter to the domain perimeter. The *weak* ratio
//! compares it to the maximum perimeter over all pairwise-distinct triples
//! drawn from the support {x, y, z, Tx, Ty, Tz}. A map is classified into a
//! class iff the exact maximum of the corresponding ratio over all C(n,3)
//! triples is strictly below 1; any constant strictly between that maximum
//! and 1 then witnesses the defining condition.

use rayon::prelude::*;

use crate::rational::Rational;
use crate::space::{FiniteMetricSpace, SelfMap};

/// Unordered triple of pairwise distinct point indices, stored sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    indices: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TripleError {
    #[error("triple indices must be pairwise distinct, got ({0}, {1}, {2})")]
    NotDistinct(usize, usize, usize),
    #[error("triple index {0} out of range for {1} points")]
    OutOfRange(usize, usize),
}

impl Triple {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self, TripleError> {
        if a == b || a == c || b == c {
            return Err(TripleError::NotDistinct(a, b, c));
        }
        let mut indices = [a, b, c];
        indices.sort_unstable();
        Ok(Triple { indices })
    }

    pub fn checked(a: usize, b: usize, c: usize, n: usize) -> Result<Self, TripleError> {
        let t = Triple::new(a, b, c)?;
        if let Some(&bad) = t.indices.iter().find(|&&i| i >= n) {
            return Err(TripleError::OutOfRange(bad, n));
        }
        Ok(t)
    }

    pub fn indices(&self) -> [usize; 3] {
        self.indices
    }

    /// All C(n,3) triples in lexicographic order.
    pub fn enumerate(n: usize) -> Vec<Triple> {
        let mut out = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    out.push(Triple { indices: [a, b, c] });
                }
            }
        }
        out
    }
}

/// The support maximum that the weak contraction condition compares against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MValueResult {
    pub value: Rational,
    /// Lexicographically smallest argmax triple over the support.
    pub witness: Triple,
    /// Deduplicated, sorted support indices drawn from {x, y, z, Tx, Ty, Tz}.
    pub support: Vec<usize>,
}

/// Full classification of a self-map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionReport {
    pub petrov_sup: Rational,
    pub petrov_witness: Triple,
    pub weak_sup: Rational,
    pub weak_witness: Triple,
    pub is_petrov: bool,
    pub is_weak: bool,
    pub has_period2_violation: bool,
    /// Smallest point index with Tx != x and T(Tx) = x, if any.
    pub period2_witness: Option<usize>,
    pub fixed_points: Vec<usize>,
}

/// d(a,b) + d(b,c) + d(c,a) for a pairwise distinct triple.
pub fn perimeter(space: &FiniteMetricSpace, t: Triple) -> Rational {
    let [a, b, c] = t.indices();
    space.d(a, b) + space.d(b, c) + space.d(c, a)
}

fn perimeter_raw(space: &FiniteMetricSpace, a: usize, b: usize, c: usize) -> Rational {
    space.d(a, b) + space.d(b, c) + space.d(c, a)
}

/// Perimeter of the image triple (Ta, Tb, Tc), degenerate when images coincide.
pub fn image_perimeter(space: &FiniteMetricSpace, map: &SelfMap, t: Triple) -> Rational {
    let [a, b, c] = t.indices();
    perimeter_raw(space, map.apply(a), map.apply(b), map.apply(c))
}

/// Maximum perimeter over all pairwise-distinct triples of the deduplicated
/// support {a, b, c, Ta, Tb, Tc}, with the lexicographically smallest argmax.
pub fn m_value(space: &FiniteMetricSpace, map: &SelfMap, t: Triple) -> MValueResult {
    let [a, b, c] = t.indices();
    support_m_value(space, [a, b, c], [map.apply(a), map.apply(b), map.apply(c)])
}

/// [`m_value`] with explicit images, usable when the map is only partially
/// defined as long as the triple itself has images.
pub(crate) fn support_m_value(
    space: &FiniteMetricSpace,
    domain: [usize; 3],
    images: [usize; 3],
) -> MValueResult {
    let mut support = vec![
        domain[0], domain[1], domain[2], images[0], images[1], images[2],
    ];
    support.sort_unstable();
    support.dedup();

    let mut best: Option<(Rational, Triple)> = None;
    for i in 0..support.len() {
        for j in (i + 1)..support.len() {
            for k in (j + 1)..support.len() {
                let cand = Triple {
                    indices: [support[i], support[j], support[k]],
                };
                let p = perimeter(space, cand);
                let better = match &best {
                    None => true,
                    Some((v, w)) => p > *v || (p == *v && cand < *w),
                };
                if better {
                    best = Some((p, cand));
                }
            }
        }
    }
    // support has at least three members because a, b, c are distinct
    let (value, witness) = best.expect("support of a distinct triple has >= 3 points");
    MValueResult {
        value,
        witness,
        support,
    }
}

/// image_perimeter(t) / m_value(t); the denominator is strictly positive.
pub fn weak_ratio(space: &FiniteMetricSpace, map: &SelfMap, t: Triple) -> Rational {
    let m = m_value(space, map, t);
    image_perimeter(space, map, t) / m.value
}

/// image_perimeter(t) / perimeter(t), the strict contraction ratio.
pub fn petrov_ratio(space: &FiniteMetricSpace, map: &SelfMap, t: Triple) -> Rational {
    image_perimeter(space, map, t) / perimeter(space, t)
}

/// Candidate for the deterministic max-with-witness reduction: keeps the
/// larger value, breaking ties toward the lexicographically smaller triple.
fn better(a: (Rational, Triple), b: (Rational, Triple)) -> (Rational, Triple) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

/// Exact classification: maxima of both ratios over all C(n,3) triples with
/// lexicographically smallest witnesses, fixed points, and the period-2
/// check. Triples are evaluated in parallel; the reduction is associative and
/// order-insensitive, so reports are identical for any worker count.
pub fn classify(space: &FiniteMetricSpace, map: &SelfMap) -> ContractionReport {
    let triples = Triple::enumerate(space.len());
    let (petrov, weak) = triples
        .par_iter()
        .map(|&t| {
            let img = image_perimeter(space, map, t);
            let petrov = (&img / &perimeter(space, t), t);
            let weak = (img / m_value(space, map, t).value, t);
            (Some(petrov), Some(weak))
        })
        .reduce(
            || (None, None),
            |a, b| (merge(a.0, b.0), merge(a.1, b.1)),
        );
    let (petrov_sup, petrov_witness) = petrov.expect("n >= 3 gives at least one triple");
    let (weak_sup, weak_witness) = weak.expect("n >= 3 gives at least one triple");

    let fixed_points: Vec<usize> = (0..space.len()).filter(|&i| map.apply(i) == i).collect();
    let period2_witness = (0..space.len())
        .find(|&i| map.apply(i) != i && map.apply(map.apply(i)) == i);

    let one = Rational::one();
    ContractionReport {
        is_petrov: petrov_sup < one,
        is_weak: weak_sup < one,
        petrov_sup,
        petrov_witness,
        weak_sup,
        weak_witness,
        has_period2_violation: period2_witness.is_some(),
        period2_witness,
        fixed_points,
    }
}

fn merge(
    a: Option<(Rational, Triple)>,
    b: Option<(Rational, Triple)>,
) -> Option<(Rational, Triple)> {
    match (a, b) {
        (Some(a), Some(b)) => Some(better(a, b)),
        (x, None) => x,
        (None, y) => y,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn tri(a: usize, b: usize, c: usize) -> Triple {
        Triple::new(a, b, c).unwrap()
    }

    #[test]
    fn triple_canonical_form() {
        assert_eq!(tri(3, 1, 2).indices(), [1, 2, 3]);
        assert!(Triple::new(1, 1, 2).is_err());
        assert!(Triple::checked(0, 1, 5, 4).is_err());
    }

    #[test]
    fn perimeter_examples() {
        let (space, map) = fixtures::example1();
        // labels 1..4 are indices 0..3
        let equilateral = {
            let one = Rational::one();
            let dist = (0..3)
                .map(|i| {
                    (0..3)
                        .map(|j| if i == j { Rational::zero() } else { one.clone() })
                        .collect()
                })
                .collect();
            FiniteMetricSpace::new(vec!["a".into(), "b".into(), "c".into()], dist).unwrap()
        };
        assert_eq!(perimeter(&equilateral, tri(0, 1, 2)), Rational::from_int(3));
        // triple (2,3,4): d(2,3)+d(3,4)+d(4,2) = 4
        assert_eq!(perimeter(&space, tri(1, 2, 3)), Rational::from_int(4));
        // triple (1,2,3): 1 + 1 + 2 = 4
        assert_eq!(perimeter(&space, tri(0, 1, 2)), Rational::from_int(4));
        // images of (2,3,4) are (1,2,3): d(1,2)+d(2,3)+d(3,1) = 4
        assert_eq!(image_perimeter(&space, &map, tri(1, 2, 3)), Rational::from_int(4));
        // images of (1,2,3) are (1,1,2): degenerate perimeter 2
        assert_eq!(image_perimeter(&space, &map, tri(0, 1, 2)), Rational::from_int(2));
    }

    #[test]
    fn constant_map_image_perimeter_is_zero() {
        let (space, _) = fixtures::example1();
        let constant = SelfMap::new(vec![0; 4], &space).unwrap();
        for t in Triple::enumerate(4) {
            assert!(image_perimeter(&space, &constant, t).is_zero());
        }
    }

    #[test]
    fn m_value_examples() {
        let (space, map) = fixtures::example1();
        // (2,3,4): support {1,2,3,4}, max perimeter 6
        let m = m_value(&space, &map, tri(1, 2, 3));
        assert_eq!(m.support, vec![0, 1, 2, 3]);
        assert_eq!(m.value, Rational::from_int(6));

        // identity on a triple: support is the triple itself
        let id = SelfMap::identity(4);
        let m = m_value(&space, &id, tri(0, 2, 3));
        assert_eq!(m.support, vec![0, 2, 3]);
        assert_eq!(m.value, perimeter(&space, tri(0, 2, 3)));

        // example 3, triple (0,3,4): images (0,2,3), support {0,2,3,4}, max 8
        let (space3, map3) = fixtures::example3();
        let m = m_value(&space3, &map3, tri(0, 3, 4));
        assert_eq!(m.support, vec![0, 2, 3, 4]);
        assert_eq!(m.value, Rational::from_int(8));
        assert_eq!(m.witness, tri(0, 2, 4));
    }

    #[test]
    fn ratio_examples() {
        let (space, map) = fixtures::example1();
        assert_eq!(weak_ratio(&space, &map, tri(1, 2, 3)), Rational::new(2, 3));
        assert_eq!(petrov_ratio(&space, &map, tri(1, 2, 3)), Rational::one());

        let id = SelfMap::identity(4);
        for t in Triple::enumerate(4) {
            assert_eq!(weak_ratio(&space, &id, t), Rational::one());
        }

        let constant = SelfMap::new(vec![2; 4], &space).unwrap();
        assert_eq!(petrov_ratio(&space, &constant, tri(0, 1, 2)), Rational::zero());

        let (space3, map3) = fixtures::example3();
        assert_eq!(weak_ratio(&space3, &map3, tri(0, 3, 4)), Rational::new(3, 4));
        assert_eq!(petrov_ratio(&space3, &map3, tri(1, 2, 3)), Rational::new(1, 2));
    }

    #[test]
    fn classify_example1() {
        let (space, map) = fixtures::example1();
        let report = classify(&space, &map);
        assert_eq!(report.petrov_sup, Rational::one());
        assert_eq!(report.petrov_witness, tri(1, 2, 3));
        assert!(!report.is_petrov);
        assert_eq!(report.weak_sup, Rational::new(2, 3));
        assert!(report.is_weak);
        assert_eq!(report.fixed_points, vec![0]);
        assert!(!report.has_period2_violation);
    }

    #[test]
    fn classify_example3() {
        let (space, map) = fixtures::example3();
        let report = classify(&space, &map);
        assert_eq!(report.weak_sup, Rational::new(3, 4));
        assert!(report.is_weak);
        assert_eq!(report.fixed_points, vec![0, 1]);
        assert!(!report.has_period2_violation);
        assert_eq!(report.petrov_sup, Rational::one());
        assert!(!report.is_petrov);
    }

    #[test]
    fn classify_identity() {
        let (space, _) = fixtures::example1();
        let report = classify(&space, &SelfMap::identity(4));
        assert_eq!(report.petrov_sup, Rational::one());
        assert_eq!(report.weak_sup, Rational::one());
        assert!(!report.is_weak);
        assert!(!report.is_petrov);
        assert_eq!(report.fixed_points, vec![0, 1, 2, 3]);
    }

    #[test]
    fn period2_detection() {
        let (space, _) = fixtures::example1();
        // 1 <-> 2 swap, others fixed
        let swap = SelfMap::new(vec![1, 0, 2, 3], &space).unwrap();
        let report = classify(&space, &swap);
        assert!(report.has_period2_violation);
        assert_eq!(report.period2_witness, Some(0));
    }
}
