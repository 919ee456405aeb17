//! Build distance matrices, run the exhaustive metric-axiom validator, and
//! show how violations are reported with exact witnesses.
//!
//! ```bash
//! cargo run --example validate_space
//! ```

use tricontract::rational::Rational;
use tricontract::space::{random_space, validate_metric, FiniteMetricSpace};

fn main() {
    // a valid space: five points on the rational line
    let values: Vec<Rational> = ["0", "1/2", "4/5", "9/10", "1"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let line = FiniteMetricSpace::on_line(&values).unwrap();
    let report = validate_metric(&line);
    println!("line space on {:?}: ok = {}", 5, report.ok);

    // a broken matrix: d(a,c) = 5 cannot coexist with d(a,b) = d(b,c) = 1
    let r = |n: i64| Rational::from_int(n);
    let broken = FiniteMetricSpace::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec![
            vec![r(0), r(1), r(5)],
            vec![r(1), r(0), r(1)],
            vec![r(5), r(1), r(0)],
        ],
    )
    .unwrap();
    let report = validate_metric(&broken);
    println!("broken space: ok = {}", report.ok);
    for v in &report.violations {
        let witness: Vec<&str> = v.witness.iter().map(|&i| broken.label(i)).collect();
        println!(
            "  {} violated at ({}): {} > {}",
            v.axiom.name(),
            witness.join(", "),
            v.lhs,
            v.rhs
        );
    }

    // random spaces draw entries from [1, 2], which forces every triangle
    // inequality, so they always validate
    for seed in 0..3 {
        let space = random_space(6, 10, seed).unwrap();
        assert!(validate_metric(&space).ok);
        println!(
            "random space (seed {seed}): d(p0,p1) = {}, d(p0,p2) = {}, ok",
            space.d(0, 1),
            space.d(0, 2)
        );
    }
}
