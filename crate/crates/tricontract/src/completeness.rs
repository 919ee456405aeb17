//! Constructive demonstration that the fixed-point property fails on an
//! incomplete space: a self-map of rational points of [0, 2] that sends every
//! point into the tail of the non-convergent Cauchy sequence of decimal
//! truncations of sqrt(2), certified by exact 10-adic tail bounds.
//!
//! A finite metric space is complete, so no *total* self-map of one can be
//! fixed-point free while satisfying the no-2-cycle and weak perimeter
//! contraction conditions. The instance therefore represents a finite window
//! of the infinite construction: extras and a prefix of the truncation
//! sequence carry certified assignments, while the last few truncations are
//! image-only points whose own images lie beyond the represented horizon.
//! Every claim is checked exactly on the assigned domain.

use num::bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::contraction::{support_m_value, Triple};
use crate::rational::Rational;
use crate::space::FiniteMetricSpace;

/// floor(sqrt(2) * 10^n) / 10^n, computed exactly via the integer square
/// root of 2 * 10^(2n). Strictly between 1 and 2, within 10^-n of sqrt(2).
pub fn sqrt2_truncation(n: u32) -> Rational {
    assert!(n >= 1);
    let scale = BigInt::from(10u32).pow(n);
    let target = BigInt::from(2) * &scale * &scale;
    Rational::from_big(target.sqrt(), scale)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EscapeError {
    #[error("k must lie strictly between 0 and 1, got {0}")]
    InvalidK(Rational),
    #[error("depth must be at least 5, got {0}")]
    DepthTooSmall(usize),
    #[error("extra point {0} lies outside [0, 2]")]
    ExtraOutOfRange(Rational),
    #[error("extra point {0} collides with a truncation of sqrt(2)")]
    ExtraCollidesWithSequence(Rational),
    #[error("duplicate extra point {0}")]
    DuplicateExtra(Rational),
    #[error("no assignment for {point} fits within depth {depth}; raise the depth")]
    DepthExhausted { point: Rational, depth: usize },
    #[error("x^2 = 2 has no rational solution; got one anyway")]
    ImpossibleSqrt2,
    #[error("could not draw {count} distinct random extras")]
    RandomExtrasExhausted { count: usize },
}

/// Exact positive lower bound on |x - sqrt(2)| for rational x in [0, 2]:
/// |x^2 - 2| / (x + 3/2). Valid because x + sqrt(2) < x + 3/2.
pub fn dist_lower_bound_to_sqrt2(x: &Rational) -> Result<Rational, EscapeError> {
    assert!(
        !x.is_negative() && x <= &Rational::from_int(2),
        "x must lie in [0, 2]"
    );
    let x_sq = x * x;
    let two = Rational::from_int(2);
    if x_sq == two {
        return Err(EscapeError::ImpossibleSqrt2);
    }
    Ok((x_sq - two).abs() / (x + &Rational::new(3, 2)))
}

/// How a point of the instance participates in the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointRole {
    /// Position (1-based) in the deduplicated truncation sequence.
    Member { position: usize },
    Extra,
}

/// One certified assignment: the image is the `target`-th sequence element,
/// and `lhs < rhs` bounds the sequence tail beyond it strictly inside the
/// halved distance scale of the source point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentCert {
    /// Index of the source point in the instance space.
    pub point_index: usize,
    /// 1-based position of the image in the deduplicated sequence.
    pub target: usize,
    /// 2 * 10^-target: exact upper bound on the tail diameter past the image.
    pub lhs: Rational,
    /// (k/2) * delta, where delta is the certified lower bound on the source
    /// point's distance to every sequence element (for extras) or the exact
    /// distance to the image (for sequence members).
    pub rhs: Rational,
}

/// The built instance: space, roles, partial map, and certificate log.
#[derive(Debug, Clone)]
pub struct EscapeInstance {
    pub k: Rational,
    pub depth: usize,
    /// Deduplicated truncations x_1..x_depth, increasing.
    pub a_values: Vec<Rational>,
    /// Original truncation index of each deduplicated entry.
    pub a_original_index: Vec<usize>,
    pub extras: Vec<Rational>,
    /// All points (sequence members and extras), sorted ascending.
    pub space: FiniteMetricSpace,
    pub roles: Vec<PointRole>,
    /// `images[i]` is the space index of T(point i) where assigned.
    pub images: Vec<Option<usize>>,
    pub certs: Vec<AssignmentCert>,
}

impl EscapeInstance {
    pub fn image_of(&self, i: usize) -> Option<usize> {
        self.images[i]
    }

    pub fn assigned_indices(&self) -> Vec<usize> {
        (0..self.space.len())
            .filter(|&i| self.images[i].is_some())
            .collect()
    }

    /// Space index of the `position`-th (1-based) sequence element.
    pub fn member_space_index(&self, position: usize) -> usize {
        self.roles
            .iter()
            .position(|r| matches!(r, PointRole::Member { position: p } if *p == position))
            .expect("every sequence position is a space point")
    }

    /// Fixed points among assigned points (expected: none).
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.space.len())
            .filter(|&i| self.images[i] == Some(i))
            .collect()
    }
}

/// Draws `count` distinct rationals p/q in [0, 2] with q <= 50, avoiding the
/// truncation sequence and previously chosen points. Deterministic per seed.
pub fn seeded_random_extras(
    seed: u64,
    count: usize,
    avoid: &[Rational],
) -> Result<Vec<Rational>, EscapeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Rational> = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 100 * count.max(1) {
            return Err(EscapeError::RandomExtrasExhausted { count });
        }
        let q = rng.gen_range(1..=50u64);
        let p = rng.gen_range(0..=2 * q);
        let x = Rational::from_big(p.into(), q.into());
        if avoid.contains(&x) || out.contains(&x) {
            continue;
        }
        out.push(x);
    }
    Ok(out)
}

/// Builds the escape instance for contraction constant `k` over the first
/// `depth` truncations of sqrt(2), the given extras, and `random_extras`
/// additional seeded rational points of [0, 2].
///
/// For an extra x the image is the smallest sequence position N with
/// 2 * 10^-N < (k/2) * delta(x), where delta(x) is an exact lower bound on
/// the distance from x to *every* sequence element (represented ones by
/// direct minimum, the unrepresented tail through
/// [`dist_lower_bound_to_sqrt2`] halved). For a sequence member at position
/// n the image is the smallest position n' > n with
/// 2 * 10^-n' < (k/2) * |x_n - x_n'|. Extras that cannot be assigned within
/// `depth` raise [`EscapeError::DepthExhausted`]; trailing sequence members
/// with no in-range assignment stay image-only.
pub fn build_escape_map(
    k: &Rational,
    depth: usize,
    extras: &[Rational],
    seed: u64,
    random_extras: usize,
) -> Result<EscapeInstance, EscapeError> {
    if !k.is_positive() || k >= &Rational::one() {
        return Err(EscapeError::InvalidK(k.clone()));
    }
    if depth < 5 {
        return Err(EscapeError::DepthTooSmall(depth));
    }

    // deduplicated truncation sequence with original indices
    let mut a_values: Vec<Rational> = Vec::new();
    let mut a_original_index: Vec<usize> = Vec::new();
    for n in 1..=depth {
        let x = sqrt2_truncation(n as u32);
        if a_values.last() != Some(&x) {
            a_values.push(x);
            a_original_index.push(n);
        }
    }

    let two = Rational::from_int(2);
    let mut all_extras: Vec<Rational> = Vec::new();
    for x in extras {
        if x.is_negative() || x > &two {
            return Err(EscapeError::ExtraOutOfRange(x.clone()));
        }
        if a_values.contains(x) {
            return Err(EscapeError::ExtraCollidesWithSequence(x.clone()));
        }
        if all_extras.contains(x) {
            return Err(EscapeError::DuplicateExtra(x.clone()));
        }
        all_extras.push(x.clone());
    }
    if random_extras > 0 {
        let mut avoid = a_values.clone();
        avoid.extend(all_extras.iter().cloned());
        all_extras.extend(seeded_random_extras(seed, random_extras, &avoid)?);
    }

    // the space: every sequence element and extra, sorted ascending
    let mut values: Vec<(Rational, PointRole)> = a_values
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), PointRole::Member { position: i + 1 }))
        .chain(all_extras.iter().map(|v| (v.clone(), PointRole::Extra)))
        .collect();
    values.sort_by(|a, b| a.0.cmp(&b.0));
    let point_values: Vec<Rational> = values.iter().map(|(v, _)| v.clone()).collect();
    let roles: Vec<PointRole> = values.iter().map(|(_, r)| r.clone()).collect();
    let space =
        FiniteMetricSpace::on_line(&point_values).expect("instance has far more than 3 points");

    let member_space_index: Vec<usize> = (1..=a_values.len())
        .map(|pos| {
            roles
                .iter()
                .position(|r| matches!(r, PointRole::Member { position } if *position == pos))
                .expect("every sequence position is a point")
        })
        .collect();

    let half_k = k / &two;
    let tail_bound = |pos: usize| Rational::from_int(2) * Rational::pow10_neg(pos as u32);
    // the tail lower bound via sqrt(2) is only sound when the horizon error
    // 10^-depth is at most half the bound itself
    let depth_eps = Rational::pow10_neg(depth as u32);

    let mut images: Vec<Option<usize>> = vec![None; space.len()];
    let mut certs: Vec<AssignmentCert> = Vec::new();

    for i in 0..space.len() {
        let x = &point_values[i];
        match &roles[i] {
            PointRole::Extra => {
                let lb = dist_lower_bound_to_sqrt2(x)?;
                if lb < Rational::from_int(2) * &depth_eps {
                    return Err(EscapeError::DepthExhausted {
                        point: x.clone(),
                        depth,
                    });
                }
                let min_repr = a_values
                    .iter()
                    .map(|a| (x - a).abs())
                    .min()
                    .expect("sequence nonempty");
                let delta = min_repr.min(lb / &two);
                let rhs = &half_k * &delta;
                let target = (1..=a_values.len()).find(|&p| tail_bound(p) < rhs);
                match target {
                    Some(p) => {
                        images[i] = Some(member_space_index[p - 1]);
                        certs.push(AssignmentCert {
                            point_index: i,
                            target: p,
                            lhs: tail_bound(p),
                            rhs,
                        });
                    }
                    None => {
                        return Err(EscapeError::DepthExhausted {
                            point: x.clone(),
                            depth,
                        })
                    }
                }
            }
            PointRole::Member { position } => {
                let n = *position;
                let target = ((n + 1)..=a_values.len()).find(|&p| {
                    let gap = (&a_values[n - 1] - &a_values[p - 1]).abs();
                    tail_bound(p) < &half_k * &gap
                });
                if let Some(p) = target {
                    let gap = (&a_values[n - 1] - &a_values[p - 1]).abs();
                    images[i] = Some(member_space_index[p - 1]);
                    certs.push(AssignmentCert {
                        point_index: i,
                        target: p,
                        lhs: tail_bound(p),
                        rhs: &half_k * &gap,
                    });
                }
                // no in-range target: the point stays image-only
            }
        }
    }

    if !roles
        .iter()
        .zip(&images)
        .any(|(r, img)| matches!(r, PointRole::Member { .. }) && img.is_some())
    {
        return Err(EscapeError::DepthExhausted {
            point: a_values[0].clone(),
            depth,
        });
    }

    Ok(EscapeInstance {
        k: k.clone(),
        depth,
        a_values,
        a_original_index,
        extras: all_extras,
        space,
        roles,
        images,
        certs,
    })
}

/// One condition-(ii) evaluation that exceeded k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioViolation {
    pub triple: Triple,
    pub ratio: Rational,
}

/// Exhaustive verification report over the assigned domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapeReport {
    pub assigned_points: usize,
    /// Points violating the no-fixed-point / no-2-cycle condition.
    pub condition_i_violations: Vec<usize>,
    pub checked_triples: usize,
    pub condition_ii_violations: Vec<RatioViolation>,
    /// Largest observed weak ratio with its witness triple.
    pub max_weak_ratio: Option<(Rational, Triple)>,
    pub fixed_points: Vec<usize>,
    pub certs_ok: bool,
    pub ok: bool,
}

/// Brute-force checks condition (i) for every assigned point and condition
/// (ii) with the instance's k for every triple of assigned points, re-checks
/// each logged certificate inequality, and reports the maximum observed weak
/// ratio. Triples are scanned in parallel with a deterministic reduction.
pub fn verify_escape_conditions(inst: &EscapeInstance) -> EscapeReport {
    let space = &inst.space;
    let assigned = inst.assigned_indices();

    let mut condition_i_violations = Vec::new();
    for &i in &assigned {
        let ti = inst.images[i].expect("assigned");
        if ti == i {
            condition_i_violations.push(i);
            continue;
        }
        // where T(Ti) is represented, check T^2(i) != i exactly; otherwise
        // the image chain continues past the horizon with strictly larger
        // sequence positions and cannot return
        if let Some(tti) = inst.images[ti] {
            if tti == i {
                condition_i_violations.push(i);
            }
        }
    }

    let img = |i: usize| inst.images[i].expect("triples range over assigned points");
    let k = &inst.k;
    let mut triples = Vec::new();
    for a in 0..assigned.len() {
        for b in (a + 1)..assigned.len() {
            for c in (b + 1)..assigned.len() {
                triples.push([assigned[a], assigned[b], assigned[c]]);
            }
        }
    }
    let (max_weak_ratio, condition_ii_violations) = triples
        .par_iter()
        .map(|&[a, b, c]| {
            let m = support_m_value(space, [a, b, c], [img(a), img(b), img(c)]);
            let image_perimeter = space.d(img(a), img(b))
                + space.d(img(b), img(c))
                + space.d(img(c), img(a));
            let ratio = image_perimeter / m.value;
            let t = Triple::new(a, b, c).expect("assigned indices are distinct");
            let violation = if ratio > *k {
                vec![RatioViolation {
                    triple: t,
                    ratio: ratio.clone(),
                }]
            } else {
                Vec::new()
            };
            (Some((ratio, t)), violation)
        })
        .reduce(
            || (None, Vec::new()),
            |(ra, mut va), (rb, vb)| {
                let r = match (ra, rb) {
                    (Some(a), Some(b)) => {
                        if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                            Some(b)
                        } else {
                            Some(a)
                        }
                    }
                    (x, None) => x,
                    (None, y) => y,
                };
                va.extend(vb);
                (r, va)
            },
        );
    let mut condition_ii_violations = condition_ii_violations;
    condition_ii_violations.sort_by_key(|x| x.triple);

    let certs_ok = recheck_certificates(inst).is_empty();
    let fixed_points = inst.fixed_points();
    let ok = condition_i_violations.is_empty()
        && condition_ii_violations.is_empty()
        && fixed_points.is_empty()
        && certs_ok;

    EscapeReport {
        assigned_points: assigned.len(),
        condition_i_violations,
        checked_triples: triples.len(),
        condition_ii_violations,
        max_weak_ratio,
        fixed_points,
        certs_ok,
        ok,
    }
}

/// Recomputes every logged inequality from the instance data; returns the
/// indices of certificates that fail to re-verify (expected: none).
pub fn recheck_certificates(inst: &EscapeInstance) -> Vec<usize> {
    let two = Rational::from_int(2);
    let half_k = &inst.k / &two;
    let mut bad = Vec::new();
    for (ci, cert) in inst.certs.iter().enumerate() {
        let lhs = &two * Rational::pow10_neg(cert.target as u32);
        let point_value = point_value(inst, cert.point_index);
        let rhs = match &inst.roles[cert.point_index] {
            PointRole::Extra => {
                let lb = match dist_lower_bound_to_sqrt2(&point_value) {
                    Ok(lb) => lb,
                    Err(_) => {
                        bad.push(ci);
                        continue;
                    }
                };
                let min_repr = inst
                    .a_values
                    .iter()
                    .map(|a| (&point_value - a).abs())
                    .min()
                    .expect("sequence nonempty");
                &half_k * &min_repr.min(lb / &two)
            }
            PointRole::Member { position } => {
                let gap = (&inst.a_values[position - 1] - &inst.a_values[cert.target - 1]).abs();
                &half_k * &gap
            }
        };
        let image_ok =
            inst.images[cert.point_index] == Some(inst.member_space_index(cert.target));
        if !(lhs == cert.lhs && rhs == cert.rhs && lhs < rhs && image_ok) {
            bad.push(ci);
        }
    }
    bad
}

fn point_value(inst: &EscapeInstance, i: usize) -> Rational {
    match &inst.roles[i] {
        PointRole::Member { position } => inst.a_values[position - 1].clone(),
        PointRole::Extra => {
            // extras are the points that are not sequence members; recover the
            // value from the label, which is the canonical rendering
            inst.space
                .label(i)
                .parse()
                .expect("labels are canonical rational renderings")
        }
    }
}
