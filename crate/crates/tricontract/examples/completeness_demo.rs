//! Why completeness matters: build the fixed-point-free escape map over
//! decimal truncations of sqrt(2) and verify its contraction conditions
//! exhaustively in exact arithmetic.
//!
//! ```bash
//! cargo run --example completeness_demo
//! ```

use tricontract::completeness::{
    build_escape_map, sqrt2_truncation, verify_escape_conditions, PointRole,
};
use tricontract::rational::Rational;

fn main() {
    println!("truncations: x_1 = {}, x_2 = {}, x_3 = {}",
        sqrt2_truncation(1), sqrt2_truncation(2), sqrt2_truncation(3));

    let k = Rational::new(1, 2);
    let extras = vec![
        Rational::zero(),
        Rational::one(),
        Rational::new(3, 2),
        Rational::from_int(2),
    ];
    let inst = build_escape_map(&k, 30, &extras, 7, 6).expect("depth 30 suffices for k = 1/2");
    println!(
        "instance: {} sequence points (deduplicated from depth {}), {} extras, {} points total",
        inst.a_values.len(),
        inst.depth,
        inst.extras.len(),
        inst.space.len()
    );

    println!("\nsample assignments (point -> sequence position, certified lhs < rhs):");
    for cert in inst.certs.iter().take(6) {
        let role = match &inst.roles[cert.point_index] {
            PointRole::Extra => "extra ".to_string(),
            PointRole::Member { position } => format!("member #{position}"),
        };
        println!(
            "  {} {}  ->  x_{}   {} < {}",
            role,
            inst.space.label(cert.point_index),
            cert.target,
            cert.lhs,
            cert.rhs
        );
    }

    let report = verify_escape_conditions(&inst);
    println!(
        "\nverified {} triples over {} assigned points",
        report.checked_triples, report.assigned_points
    );
    println!(
        "condition (i) violations: {}   condition (ii) violations: {}",
        report.condition_i_violations.len(),
        report.condition_ii_violations.len()
    );
    match &report.max_weak_ratio {
        Some((ratio, _)) => println!("maximum observed weak ratio: {ratio} (k = {k})"),
        None => println!("no triples checked"),
    }
    println!("fixed points: {:?} (none, by construction)", report.fixed_points);
    println!("all certificates re-verified: {}", report.certs_ok);
    println!("overall: {}", if report.ok { "OK" } else { "VIOLATED" });
}
