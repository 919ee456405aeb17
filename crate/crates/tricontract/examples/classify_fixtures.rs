//! Classify the built-in instances against both perimeter contraction
//! classes and print the exact constants with their witness triangles.
//!
//! ```bash
//! cargo run --example classify_fixtures
//! ```

use tricontract::contraction::classify;
use tricontract::fixtures;
use tricontract::space::{FiniteMetricSpace, SelfMap};

fn show(name: &str, space: &FiniteMetricSpace, map: &SelfMap) {
    let report = classify(space, map);
    let labels = |t: tricontract::contraction::Triple| {
        t.indices()
            .iter()
            .map(|&i| space.label(i).to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    println!("{name}: {} points", space.len());
    println!("  strict ratio maximum  {} at ({})", report.petrov_sup, labels(report.petrov_witness));
    println!("  weak ratio maximum    {} at ({})", report.weak_sup, labels(report.weak_witness));
    println!(
        "  strict contraction: {}   weak contraction: {}",
        report.is_petrov, report.is_weak
    );
    println!(
        "  fixed points: [{}]   period-2 violation: {}",
        report
            .fixed_points
            .iter()
            .map(|&i| space.label(i).to_string())
            .collect::<Vec<_>>()
            .join(", "),
        report.has_period2_violation
    );
    println!();
}

fn main() {
    let (space, map) = fixtures::example1();
    show("shift map on {1,2,3,4}", &space, &map);

    let (space, map) = fixtures::example3();
    show("shift map on {0,1,2,3,4} with two fixed points", &space, &map);

    let (space, map) = fixtures::example2_instance(&[]).expect("mandatory sample");
    show("sampled interval map (harmonic shift, constant 0 elsewhere)", &space, &map);

    // the interval map is weak but not strict: this triple certifies it
    let idx = |s: &str| space.index_of_label(s).unwrap();
    let t = tricontract::contraction::Triple::new(idx("1"), idx("9/10"), idx("4/5")).unwrap();
    println!(
        "witness that no strict constant exists: strict ratio at (1, 9/10, 4/5) is {} > 1, weak ratio is {}",
        tricontract::contraction::petrov_ratio(&space, &map, t),
        tricontract::contraction::weak_ratio(&space, &map, t),
    );
}
