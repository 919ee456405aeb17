//! Built-in instances: the two finite line spaces with their shift-style
//! maps, an exactly sampled restriction of the unit-interval map that is
//! discontinuous at 1, and the rejection sampler feeding the property suite.

use crate::contraction::{classify, ContractionReport};
use crate::rational::Rational;
use crate::space::{random_map, random_space, subseeds, FiniteMetricSpace, SelfMap};

/// X = {1,2,3,4} with |x - y|; T1 = 1, Tn = n - 1 otherwise.
pub fn example1() -> (FiniteMetricSpace, SelfMap) {
    let values: Vec<Rational> = (1..=4).map(Rational::from_int).collect();
    let space = FiniteMetricSpace::on_line(&values).expect("static fixture");
    let map = SelfMap::new(vec![0, 0, 1, 2], &space).expect("static fixture");
    (space, map)
}

/// X = {0,1,2,3,4} with |x - y|; T0 = 0, T1 = 1, Tn = n - 1 otherwise.
pub fn example3() -> (FiniteMetricSpace, SelfMap) {
    let values: Vec<Rational> = (0..=4).map(Rational::from_int).collect();
    let space = FiniteMetricSpace::on_line(&values).expect("static fixture");
    let map = SelfMap::new(vec![0, 1, 1, 2, 3], &space).expect("static fixture");
    (space, map)
}

/// The three points of [0,1] that the interval map shifts along the
/// harmonic sequence; everything else collapses to 0.
pub fn example2_special_set() -> [Rational; 3] {
    [Rational::one(), Rational::new(1, 2), Rational::new(1, 3)]
}

/// The sample every [`example2_instance`] contains.
pub fn example2_mandatory_sample() -> Vec<Rational> {
    vec![
        Rational::zero(),
        Rational::new(1, 4),
        Rational::new(1, 3),
        Rational::new(1, 2),
        Rational::new(4, 5),
        Rational::new(9, 10),
        Rational::one(),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("point {0} lies outside [0,1]")]
pub struct OutOfUnitInterval(pub Rational);

/// The interval map: 1 -> 1/2 -> 1/3 -> 1/4, and 0 everywhere else.
pub fn example2_map(x: &Rational) -> Result<Rational, OutOfUnitInterval> {
    if x.is_negative() || x > &Rational::one() {
        return Err(OutOfUnitInterval(x.clone()));
    }
    for (n, a) in example2_special_set().iter().enumerate() {
        if x == a {
            // a = 1/(n+1), image 1/(n+2)
            return Ok(Rational::new(1, n as i64 + 2));
        }
    }
    Ok(Rational::zero())
}

/// Exact finite restriction of the interval map: the space is the mandatory
/// sample plus `extra`, closed under the map (so the restriction is total),
/// with the |x - y| metric. Points are sorted ascending and deduplicated.
pub fn example2_instance(
    extra: &[Rational],
) -> Result<(FiniteMetricSpace, SelfMap), OutOfUnitInterval> {
    let mut sample = example2_mandatory_sample();
    sample.extend(extra.iter().cloned());
    // close under the map; images always land in {0, 1/4, 1/3, 1/2},
    // which the mandatory sample already contains, but stay general
    let mut frontier = sample.clone();
    while let Some(x) = frontier.pop() {
        let img = example2_map(&x)?;
        if !sample.contains(&img) {
            sample.push(img.clone());
            frontier.push(img);
        }
    }
    sample.sort();
    sample.dedup();

    let space = FiniteMetricSpace::on_line(&sample).expect("mandatory sample has 7 points");
    let image = sample
        .iter()
        .map(|x| {
            let img = example2_map(x).expect("sample is inside [0,1]");
            sample
                .iter()
                .position(|y| y == &img)
                .expect("sample is closed under the map")
        })
        .collect();
    let map = SelfMap::new(image, &space).expect("image indices in range");
    Ok((space, map))
}

/// Rejection-samples a random (space, map) pair until one classifies as a
/// weak contraction with no period-2 violation. Deterministic per seed;
/// `None` after `max_tries` rejections.
pub fn random_weak_instance(
    n: usize,
    denom_bound: u64,
    seed: u64,
    max_tries: usize,
) -> Option<(FiniteMetricSpace, SelfMap, ContractionReport)> {
    for (space_seed, map_seed) in subseeds(seed, max_tries) {
        let space = random_space(n, denom_bound, space_seed).expect("caller checked n >= 3");
        let map = random_map(&space, map_seed);
        let report = classify(&space, &map);
        if report.is_weak && !report.has_period2_violation {
            return Some((space, map, report));
        }
    }
    None
}
