//! Rejection-sample random instances and survey how often a random map on a
//! random space is a weak contraction, then push one instance through the
//! full iteration diagnostics.
//!
//! ```bash
//! cargo run --example weak_instance_search
//! ```

use tricontract::contraction::classify;
use tricontract::fixtures::random_weak_instance;
use tricontract::orbit::iterate;
use tricontract::rational::Rational;
use tricontract::space::{random_map, random_space};

fn main() {
    // acceptance rate of the rejection filter, per size
    for n in 4..=7 {
        let mut weak = 0usize;
        let mut no_period2 = 0usize;
        let trials = 300u64;
        for seed in 0..trials {
            let space = random_space(n, 10, 1_000 + seed).unwrap();
            let map = random_map(&space, 2_000 + seed);
            let report = classify(&space, &map);
            if report.is_weak {
                weak += 1;
                if !report.has_period2_violation {
                    no_period2 += 1;
                }
            }
        }
        println!(
            "n={n}: {weak}/{trials} weak, {no_period2}/{trials} weak with no 2-cycle"
        );
    }
    println!();

    let (space, map, report) =
        random_weak_instance(6, 10, 12345, 500).expect("a weak instance exists nearby");
    println!(
        "sampled weak instance: n={}, weak maximum {} (< 1), fixed points {:?}",
        space.len(),
        report.weak_sup,
        report.fixed_points
    );
    assert!(report.weak_sup < Rational::one());
    for x0 in 0..space.len() {
        let result = iterate(&space, &map, x0).expect("converges by the contraction theorem");
        println!(
            "  start {} -> limit {} in {} steps",
            space.label(x0),
            space.label(result.limit),
            result.steps
        );
    }
}
