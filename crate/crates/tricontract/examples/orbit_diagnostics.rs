//! Follow Picard orbits: traces, exact orbit perimeters with all argmax
//! index triples, and the fixed-point iteration with its step count.
//!
//! ```bash
//! cargo run --example orbit_diagnostics
//! ```

use tricontract::fixtures;
use tricontract::orbit::{fixed_points, iterate, orbit, orbit_perimeter};

fn main() {
    let (space, map) = fixtures::example3();
    println!("space: {{0,1,2,3,4}} with |x-y|, map 0->0, 1->1, n->n-1");
    println!("fixed points: {:?}", fixed_points(&space, &map));
    println!();

    for start in 0..space.len() {
        let trace = orbit(&space, &map, start, space.len());
        let labels: Vec<&str> = trace.points.iter().map(|&i| space.label(i)).collect();
        println!(
            "orbit from {}: {} (stabilized at index {:?})",
            space.label(start),
            labels.join(" -> "),
            trace.stabilized_at
        );
    }
    println!();

    // p(O(x, n)) over the orbit of 4 grows with the horizon and then freezes
    for n in 2..=5 {
        let op = orbit_perimeter(&space, &map, 4, n);
        println!(
            "p(O(4, {n})) = {} attained at index triples {:?}",
            op.value, op.witnesses
        );
    }
    println!();

    for start in [4usize, 2, 0] {
        let result = iterate(&space, &map, start).expect("weak map with no 2-cycles converges");
        println!(
            "iterate from {}: limit {} after {} steps",
            space.label(start),
            space.label(result.limit),
            result.steps
        );
    }
}
