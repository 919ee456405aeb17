//! Probe the sampled interval map for continuity at two points: the orbit
//! limit 0 (consistent) and the point 1 (a certified discontinuity).
//!
//! ```bash
//! cargo run --example continuity_probe
//! ```

use tricontract::fixtures::example2_map;
use tricontract::orbit::{continuity_probe, default_probe_tolerance, ContinuityVerdict};
use tricontract::rational::Rational;

fn main() {
    let map_rule = |x: &Rational| example2_map(x).expect("probe points stay in [0,1]");
    let metric = |a: &Rational, b: &Rational| (a - b).abs();
    let tol = default_probe_tolerance();
    println!("tolerance {tol} (exact)");

    // approach 0 along 1/10^j: all images are 0 = T(0)
    let approach: Vec<Rational> = (1..=7).map(Rational::pow10_neg).collect();
    match continuity_probe(&map_rule, &metric, &Rational::zero(), &approach, &tol).unwrap() {
        ContinuityVerdict::ContinuousConsistent => {
            println!("at 0: continuous-consistent along 1/10^j")
        }
        ContinuityVerdict::DiscontinuityWitness { point, gap } => {
            println!("at 0: unexpected witness {point} with gap {gap}")
        }
    }

    // approach 1 along 1 - 1/(j+1): images jump to 0 while T(1) = 1/2
    let approach: Vec<Rational> = [1i64, 10, 100, 1_000, 10_000, 100_000, 1_000_000]
        .iter()
        .map(|&j| Rational::one() - Rational::new(1, j + 1))
        .collect();
    match continuity_probe(&map_rule, &metric, &Rational::one(), &approach, &tol).unwrap() {
        ContinuityVerdict::ContinuousConsistent => println!("at 1: unexpectedly consistent"),
        ContinuityVerdict::DiscontinuityWitness { point, gap } => println!(
            "at 1: discontinuity witness x = {point} with image gap {gap} (exactly 1/2)"
        ),
    }
}
