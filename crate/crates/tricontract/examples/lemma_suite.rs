//! Run the orbit perimeter lemma checks and the geometric envelope profile
//! for a weak contraction, using the exact weak supremum as the constant.
//!
//! ```bash
//! cargo run --example lemma_suite
//! ```

use tricontract::contraction::classify;
use tricontract::fixtures;
use tricontract::orbit::{
    cauchy_profile, check_lemma1, check_lemma2, check_lemma3, orbit, supremum_horizon,
    Lemma2Verdict,
};

fn main() {
    let (space, map) = fixtures::example3();
    let report = classify(&space, &map);
    let k = &report.weak_sup;
    println!("weak supremum k = {k}");

    let x0 = 4;
    let trace = orbit(&space, &map, x0, space.len());
    let horizon = supremum_horizon(&trace).max(3);
    println!("start {} with horizon {horizon}", space.label(x0));

    let l1 = check_lemma1(&space, &map, x0, horizon, k);
    println!(
        "iterate-triple bound: every perimeter of (x_i, x_j, x_k), i,j,k >= 1, is at most k*p = {} -> {}",
        l1.bound,
        if l1.holds { "holds" } else { "FAILS" }
    );

    match check_lemma2(&space, &map, x0, horizon) {
        Lemma2Verdict::Holds { witness } => println!(
            "an argmax triple of p(O(x,n)) contains index 0: witness {witness:?}"
        ),
        Lemma2Verdict::Fails { argmax } => println!("no argmax triple contains index 0: {argmax:?}"),
        Lemma2Verdict::NotApplicable => println!("orbit has fewer than three distinct points"),
    }

    let l3 = check_lemma3(&space, &map, x0, k);
    println!(
        "orbit supremum perimeter {} <= 2/(1-k) * d(x, Tx) = {} -> {}",
        l3.p_inf,
        l3.bound,
        if l3.holds { "holds" } else { "FAILS" }
    );

    let profile = cauchy_profile(&space, &map, x0, k).expect("orbit stabilizes");
    println!("envelope scale M = {}", profile.m);
    for row in &profile.rows {
        println!(
            "  n={}  d(x_n, x_n+1) = {}  <=  k^n * M = {}  -> {}",
            row.n, row.step_distance, row.envelope, row.within
        );
    }
    println!(
        "geometric pair bounds: {} checked, {} violations",
        profile.pair_checks,
        profile.pair_violations.len()
    );
}
