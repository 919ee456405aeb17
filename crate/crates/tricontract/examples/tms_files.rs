//! The TMS v1 text format: write an instance, read it back, and see how
//! parse diagnostics carry line numbers.
//!
//! ```bash
//! cargo run --example tms_files
//! ```

use tricontract::fixtures;
use tricontract::tms;

fn main() {
    let (space, map) = fixtures::example1();
    let text = tms::write(&space, &map);
    println!("canonical TMS for the four-point shift instance:\n");
    print!("{text}");

    let parsed = tms::parse(&text).expect("canonical output parses");
    assert_eq!(parsed.space, space);
    assert_eq!(parsed.total_map().unwrap(), map);
    println!("\nround trip: space and map identical");

    let noisy = "\
# comments and blank lines are fine anywhere
tms 1

points a b c
metric
0 1/2 1/2
1/2 0 1/2
1/2 1/2 0
map
a -> b
b -> c
c -> c
";
    let parsed = tms::parse(noisy).unwrap();
    println!(
        "whitespace-tolerant parse: {} points, map total: {}",
        parsed.space.len(),
        parsed.total_map().is_ok()
    );

    let bad = "tms 1\npoints a b c\nmetric\n0 1 1\n1 0 oops\n1 1 0\n";
    match tms::parse(bad) {
        Err(e) => println!("diagnostics carry line numbers: {e}"),
        Ok(_) => unreachable!(),
    }
}
