//! Picard orbits, orbit perimeters, the three orbit lemma checks, fixed-point
//! iteration with loud cycle detection, geometric envelope diagnostics, and a
//! finite continuity probe for evaluable rules.
//!
//! Orbit-perimeter arguments are *index* triples: distinct indices whose
//! points coincide still contribute their (possibly degenerate) perimeter,
//! and argmax reporting lists index triples so witnesses stay well-defined.

use crate::rational::Rational;
use crate::space::{FiniteMetricSpace, SelfMap};

/// A Picard orbit prefix with its termination event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTrace {
    pub start: usize,
    /// x0, x1 = Tx0, ...; includes the first repeated point when the orbit
    /// stabilizes or cycles.
    pub points: Vec<usize>,
    /// First index `s` with T(x_s) = x_s.
    pub stabilized_at: Option<usize>,
    /// (entry index, period) of the first nontrivial cycle.
    pub cycle: Option<(usize, usize)>,
}

/// p(O(x, n)): exact maximum perimeter over all index triples in {0..n}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPerimeter {
    pub horizon: usize,
    pub value: Rational,
    /// Every argmax index triple, in lexicographic order.
    pub witnesses: Vec<[usize; 3]>,
}

/// Outcome of running the iteration to its fixed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointResult {
    pub limit: usize,
    pub steps: usize,
    /// The uniqueness clause applies only when the limit is never an iterate;
    /// on a finite space the orbit reaches its limit, so this is recorded
    /// honestly rather than asserted.
    pub unique_claim_applicable: bool,
    pub trace: OrbitTrace,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    /// A nontrivial cycle under a certified weak contraction with no 2-cycles
    /// would contradict the convergence theorem; surfaced loudly, never
    /// swallowed.
    #[error("nontrivial cycle detected: entry {entry}, period {period}")]
    CycleDetected { entry: usize, period: usize },
    #[error("no fixed point or cycle within {steps} steps")]
    MaxStepsExceeded { steps: usize },
}

/// Iterates from `x0` until a fixed point, a cycle, or `max_steps`
/// applications of the map.
pub fn orbit(space: &FiniteMetricSpace, map: &SelfMap, x0: usize, max_steps: usize) -> OrbitTrace {
    assert!(x0 < space.len(), "start point out of range");
    assert!(max_steps >= 1);
    let mut points = vec![x0];
    let mut stabilized_at = None;
    let mut cycle = None;
    while points.len() <= max_steps {
        let current = *points.last().expect("nonempty");
        let next = map.apply(current);
        if next == current {
            stabilized_at = Some(points.len() - 1);
            points.push(next);
            break;
        }
        if let Some(entry) = points.iter().position(|&p| p == next) {
            cycle = Some((entry, points.len() - entry));
            points.push(next);
            break;
        }
        points.push(next);
    }
    OrbitTrace {
        start: x0,
        points,
        stabilized_at,
        cycle,
    }
}

fn iterates(map: &SelfMap, x0: usize, n: usize) -> Vec<usize> {
    let mut pts = Vec::with_capacity(n + 1);
    pts.push(x0);
    for _ in 0..n {
        pts.push(map.apply(*pts.last().expect("nonempty")));
    }
    pts
}

/// Exact p(O(x, n)) with every argmax index triple.
pub fn orbit_perimeter(
    space: &FiniteMetricSpace,
    map: &SelfMap,
    x0: usize,
    n: usize,
) -> OrbitPerimeter {
    assert!(n >= 2, "orbit perimeter needs horizon n >= 2");
    let pts = iterates(map, x0, n);
    let mut value: Option<Rational> = None;
    let mut witnesses = Vec::new();
    for i in 0..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                let p = space.d(pts[i], pts[j])
                    + space.d(pts[j], pts[k])
                    + space.d(pts[k], pts[i]);
                match &value {
                    Some(v) if p < *v => {}
                    Some(v) if p == *v => witnesses.push([i, j, k]),
                    _ => {
                        value = Some(p);
                        witnesses.clear();
                        witnesses.push([i, j, k]);
                    }
                }
            }
        }
    }
    OrbitPerimeter {
        horizon: n,
        value: value.expect("n >= 2 gives at least one triple"),
        witnesses,
    }
}

/// Result of the iterate-triple bound check: every triple of iterates with
/// indices in {1..n} has perimeter at most k * p(O(x, n)).
///
/// Indices start at 1 deliberately: triples of iterates are images of
/// earlier triples and inherit the bound through the contraction condition,
/// while a triple containing the start point itself has no such pullback.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma1Report {
    pub p_n: Rational,
    pub bound: Rational,
    pub violations: Vec<([usize; 3], Rational)>,
    pub holds: bool,
}

pub fn check_lemma1(
    space: &FiniteMetricSpace,
    map: &SelfMap,
    x0: usize,
    n: usize,
    k: &Rational,
) -> Lemma1Report {
    assert!(n >= 3, "need n >= 3 for a triple of indices >= 1");
    let pts = iterates(map, x0, n);
    let p_n = orbit_perimeter(space, map, x0, n).value;
    let bound = k * &p_n;
    let mut violations = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k_idx in (j + 1)..=n {
                let p = space.d(pts[i], pts[j])
                    + space.d(pts[j], pts[k_idx])
                    + space.d(pts[k_idx], pts[i]);
                if p > bound {
                    violations.push(([i, j, k_idx], p));
                }
            }
        }
    }
    Lemma1Report {
        p_n,
        bound,
        holds: violations.is_empty(),
        violations,
    }
}

/// Verdict of the argmax-anchoring check: for a weak contraction, p(O(x, n))
/// must be attained by a triple containing index 0 (the start point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lemma2Verdict {
    Holds { witness: [usize; 3] },
    Fails { argmax: Vec<[usize; 3]> },
    /// The orbit carries fewer than three distinct points within the horizon.
    NotApplicable,
}

pub fn check_lemma2(
    space: &FiniteMetricSpace,
    map: &SelfMap,
    x0: usize,
    n: usize,
) -> Lemma2Verdict {
    assert!(n >= 2);
    let pts = iterates(map, x0, n);
    let mut distinct = pts.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 3 {
        return Lemma2Verdict::NotApplicable;
    }
    let op = orbit_perimeter(space, map, x0, n);
    match op.witnesses.iter().find(|w| w[0] == 0) {
        Some(&witness) => Lemma2Verdict::Holds { witness },
        None => Lemma2Verdict::Fails {
            argmax: op.witnesses,
        },
    }
}

/// Result of the orbit boundedness check:
/// p(O(x, infinity)) <= 2/(1-k) * d(x, Tx).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma3Report {
    pub p_inf: Rational,
    pub bound: Rational,
    pub holds: bool,
}

/// Horizon that exactly realizes the orbit's supremum perimeter: past
/// stabilization (or one full period past a cycle's entry) added indices
/// repeat points and cannot increase the maximum.
pub fn supremum_horizon(trace: &OrbitTrace) -> usize {
    let h = match (trace.stabilized_at, trace.cycle) {
        (Some(s), _) => s + 2,
        (_, Some((entry, period))) => entry + period + 1,
        _ => trace.points.len() - 1,
    };
    h.max(2)
}

pub fn check_lemma3(
    space: &FiniteMetricSpace,
    map: &SelfMap,
    x0: usize,
    k: &Rational,
) -> Lemma3Report {
    assert!(k < &Rational::one() && !k.is_negative(), "need 0 <= k < 1");
    let trace = orbit(space, map, x0, space.len());
    let horizon = supremum_horizon(&trace);
    let p_inf = orbit_perimeter(space, map, x0, horizon).value;
    let tx0 = map.apply(x0);
    let bound =
        Rational::from_int(2) / (Rational::one() - k.clone()) * space.d(x0, tx0).clone();
    Lemma3Report {
        holds: p_inf <= bound,
        p_inf,
        bound,
    }
}

/// Runs the Picard iteration to its fixed point.
///
/// Preconditions (checked by callers, not here): the map is a weak
/// contraction and has no period-2 violation. Under those hypotheses a
/// finite orbit must stabilize; a nontrivial cycle is surfaced as
/// [`OrbitError::CycleDetected`] because it would falsify either the
/// classification or the convergence theorem.
pub fn iterate(
    space: &FiniteMetricSpace,
    map: &SelfMap,
    x0: usize,
) -> Result<FixedPointResult, OrbitError> {
    let trace = orbit(space, map, x0, space.len());
    if let Some((entry, period)) = trace.cycle {
        return Err(OrbitError::CycleDetected { entry, period });
    }
    match trace.stabilized_at {
        Some(s) => {
            let limit = trace.points[s];
            // the limit is itself an iterate, so the uniqueness clause of the
            // convergence theorem never applies on a finite space
            let unique_claim_applicable = !trace.points.contains(&limit);
            Ok(FixedPointResult {
                limit,
                steps: s,
                unique_claim_applicable,
                trace,
            })
        }
        None => Err(OrbitError::MaxStepsExceeded {
            steps: trace.points.len() - 1,
        }),
    }
}

/// Exact enumeration of fixed points.
pub fn fixed_points(space: &FiniteMetricSpace, map: &SelfMap) -> Vec<usize> {
    (0..space.len()).filter(|&i| map.apply(i) == i).collect()
}

/// One consecutive-step envelope comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauchyRow {
    pub n: usize,
    pub step_distance: Rational,
    pub envelope: Rational,
    pub within: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairViolation {
    pub n: usize,
    pub p: usize,
    pub distance: Rational,
    pub bound: Rational,
}

/// Geometric envelope diagnostics along the orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauchyProfile {
    /// The orbit supremum perimeter used as the envelope scale M.
    pub m: Rational,
    pub rows: Vec<CauchyRow>,
    /// Number of (n, p) pair bounds checked.
    pub pair_checks: usize,
    pub pair_violations: Vec<PairViolation>,
    pub all_within: bool,
}

/// For each n >= 1 until stabilization, compares d(x_n, x_{n+1}) against
/// k^n * M with M = p(O(x, infinity)), and verifies the p-step geometric
/// bound d(x_n, x_{n+p}) <= k^n * M * (1 + k + ... + k^{p-1}) for every
/// represented pair.
pub fn cauchy_profile(
    space: &FiniteMetricSpace,
    map: &SelfMap,
    x0: usize,
    k: &Rational,
) -> Result<CauchyProfile, OrbitError> {
    // k = 0 is the exact weak supremum of a constant map and is accepted
    assert!(k < &Rational::one() && !k.is_negative(), "need 0 <= k < 1");
    let trace = orbit(space, map, x0, space.len());
    if let Some((entry, period)) = trace.cycle {
        return Err(OrbitError::CycleDetected { entry, period });
    }
    let s = trace
        .stabilized_at
        .ok_or(OrbitError::MaxStepsExceeded {
            steps: trace.points.len() - 1,
        })?;
    let m = orbit_perimeter(space, map, x0, supremum_horizon(&trace)).value;

    let mut rows = Vec::new();
    let mut all_within = true;
    for n in 1..=s {
        let step_distance = space.d(trace.points[n], trace.points[n + 1]).clone();
        let envelope = k.pow(n as u32) * &m;
        let within = step_distance <= envelope;
        all_within &= within;
        rows.push(CauchyRow {
            n,
            step_distance,
            envelope,
            within,
        });
    }

    let one = Rational::one();
    let geom_denom = &one - k;
    let mut pair_checks = 0;
    let mut pair_violations = Vec::new();
    for n in 1..=s {
        for p in 1..=(s + 1 - n) {
            let distance = space.d(trace.points[n], trace.points[n + p]).clone();
            let geom = (&one - &k.pow(p as u32)) / geom_denom.clone();
            let bound = k.pow(n as u32) * &m * geom;
            pair_checks += 1;
            if distance > bound {
                pair_violations.push(PairViolation {
                    n,
                    p,
                    distance,
                    bound,
                });
            }
        }
    }
    all_within &= pair_violations.is_empty();

    Ok(CauchyProfile {
        m,
        rows,
        pair_checks,
        pair_violations,
        all_within,
    })
}

/// Continuity probe verdict. The probe is a finite falsification /
/// consistency check, not a proof of continuity, hence the naming.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContinuityVerdict {
    ContinuousConsistent,
    DiscontinuityWitness { point: Rational, gap: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProbeError {
    #[error("approach sequence is empty")]
    EmptyApproach,
    #[error("tolerance must be positive")]
    InvalidTolerance,
    #[error("approach distances are not strictly decreasing at index {0}")]
    NotStrictlyDecreasing(usize),
    #[error("approach never enters the tolerance ball (closest distance {closest})")]
    NeverEntersTolBall { closest: Rational },
}

/// Checks whether an evaluable map looks continuous at `x_star` along a
/// finite approach: past the first point within `tol` of `x_star`, every
/// image must be within `tol` of the image of `x_star`. On failure returns
/// the witness with the largest gap.
pub fn continuity_probe(
    map_rule: &dyn Fn(&Rational) -> Rational,
    metric_rule: &dyn Fn(&Rational, &Rational) -> Rational,
    x_star: &Rational,
    approach: &[Rational],
    tol: &Rational,
) -> Result<ContinuityVerdict, ProbeError> {
    if approach.is_empty() {
        return Err(ProbeError::EmptyApproach);
    }
    if !tol.is_positive() {
        return Err(ProbeError::InvalidTolerance);
    }
    let dists: Vec<Rational> = approach.iter().map(|x| metric_rule(x, x_star)).collect();
    for i in 1..dists.len() {
        if dists[i] >= dists[i - 1] {
            return Err(ProbeError::NotStrictlyDecreasing(i));
        }
    }
    let entry = dists
        .iter()
        .position(|d| d <= tol)
        .ok_or_else(|| ProbeError::NeverEntersTolBall {
            closest: dists.last().expect("nonempty").clone(),
        })?;

    let image_star = map_rule(x_star);
    let mut worst: Option<(Rational, &Rational)> = None;
    for x in &approach[entry..] {
        let gap = metric_rule(&map_rule(x), &image_star);
        if gap > *tol {
            let replace = match &worst {
                None => true,
                Some((g, _)) => gap > *g,
            };
            if replace {
                worst = Some((gap, x));
            }
        }
    }
    Ok(match worst {
        None => ContinuityVerdict::ContinuousConsistent,
        Some((gap, point)) => ContinuityVerdict::DiscontinuityWitness {
            point: point.clone(),
            gap,
        },
    })
}

/// Default exact tolerance for continuity probes: 10^-6.
pub fn default_probe_tolerance() -> Rational {
    Rational::pow10_neg(6)
}
