//! Acceptance suite: one test per release criterion, each printing a
//! `criterion N: PASS` line (run with `cargo test --test acceptance --
//! --nocapture` to see them). Every tolerance here is exact rational
//! equality or an exact comparison; nothing is calibrated after the fact.

use std::sync::OnceLock;

use tricontract::completeness::{
    build_escape_map, dist_lower_bound_to_sqrt2, recheck_certificates, verify_escape_conditions,
    PointRole,
};
use tricontract::contraction::{classify, petrov_ratio, weak_ratio, ContractionReport, Triple};
use tricontract::fixtures::{
    example1, example2_instance, example2_map, example3, random_weak_instance,
};
use tricontract::orbit::{
    cauchy_profile, check_lemma1, check_lemma2, check_lemma3, continuity_probe,
    default_probe_tolerance, fixed_points, iterate, orbit, supremum_horizon, ContinuityVerdict,
    Lemma2Verdict,
};
use tricontract::rational::Rational;
use tricontract::space::{FiniteMetricSpace, SelfMap};

fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// Brute-force reimplementation of both supremum ratios: raw index loops,
/// a direct 6^3 support scan, and no helpers shared with the library path.
mod oracle {
    use tricontract::rational::Rational;
    use tricontract::space::{FiniteMetricSpace, SelfMap};

    pub struct Sups {
        pub petrov: Rational,
        pub weak: Rational,
    }

    fn tri_perim(space: &FiniteMetricSpace, a: usize, b: usize, c: usize) -> Rational {
        space.d(a, b) + space.d(b, c) + space.d(c, a)
    }

    pub fn sups(space: &FiniteMetricSpace, map: &SelfMap) -> Sups {
        let n = space.len();
        let mut petrov: Option<Rational> = None;
        let mut weak: Option<Rational> = None;
        for x in 0..n {
            for y in (x + 1)..n {
                for z in (y + 1)..n {
                    let img = tri_perim(space, map.apply(x), map.apply(y), map.apply(z));
                    let dom = tri_perim(space, x, y, z);
                    let p = &img / &dom;

                    let slots = [x, y, z, map.apply(x), map.apply(y), map.apply(z)];
                    let mut m: Option<Rational> = None;
                    for u in 0..6 {
                        for v in 0..6 {
                            for w in 0..6 {
                                let (a, b, c) = (slots[u], slots[v], slots[w]);
                                if a == b || b == c || a == c {
                                    continue;
                                }
                                let perim = tri_perim(space, a, b, c);
                                if m.as_ref().is_none_or(|best| perim > *best) {
                                    m = Some(perim);
                                }
                            }
                        }
                    }
                    let wk = img / m.expect("three distinct domain points");

                    if petrov.as_ref().is_none_or(|best| p > *best) {
                        petrov = Some(p);
                    }
                    if weak.as_ref().is_none_or(|best| wk > *best) {
                        weak = Some(wk);
                    }
                }
            }
        }
        Sups {
            petrov: petrov.expect("n >= 3"),
            weak: weak.expect("n >= 3"),
        }
    }
}

#[test]
fn criterion_1_example1_exact_reproduction() {
    let (space, map) = example1();
    let report = classify(&space, &map);
    assert_eq!(report.petrov_sup, Rational::one(), "petrov_sup must be 1");
    assert_eq!(
        report.petrov_witness.indices(),
        [1, 2, 3],
        "petrov witness must be the triple with labels (2,3,4)"
    );
    assert!(!report.is_petrov);
    assert_eq!(report.weak_sup, rat(2, 3), "weak_sup must be exactly 2/3");
    assert!(report.is_weak);
    assert_eq!(report.fixed_points, vec![0], "the only fixed point is 1");
    println!("criterion 1: PASS - example 1 reproduced exactly (petrov_sup=1 at (2,3,4), weak_sup=2/3, fixed point {{1}})");
}

#[test]
fn criterion_2_example3_exact_reproduction() {
    let (space, map) = example3();
    let report = classify(&space, &map);
    assert_eq!(report.weak_sup, rat(3, 4), "weak_sup must be exactly 3/4");
    assert_eq!(
        report.fixed_points,
        vec![0, 1],
        "fixed points must be {{0,1}}"
    );
    assert!(!report.has_period2_violation);
    println!("criterion 2: PASS - example 3 reproduced exactly (weak_sup=3/4, fixed points {{0,1}}, no period-2 violation)");
}

#[test]
fn criterion_3_example2_sampled_reproduction() {
    let (space, map) = example2_instance(&[]).unwrap();
    let idx = |s: &str| space.index_of_label(s).unwrap();
    let probe = Triple::new(idx("1"), idx("9/10"), idx("4/5")).unwrap();
    assert_eq!(petrov_ratio(&space, &map, probe), rat(5, 2));
    assert_eq!(weak_ratio(&space, &map, probe), rat(1, 2));

    // sampled weak maximum stays below 1 for several tested extra sets
    let extra_sets: Vec<Vec<Rational>> = vec![
        vec![],
        (1..=50).map(|q| Rational::new(1, q)).collect(),
        (1..=49).map(|p| Rational::new(p, 50)).collect(),
        vec![rat(33, 100), rat(167, 500)],
        (2..=40).map(|q| Rational::new(q - 1, q)).collect(),
    ];
    for extras in &extra_sets {
        assert!(extras.len() <= 50);
        let (s, m) = example2_instance(extras).unwrap();
        let report = classify(&s, &m);
        assert!(
            report.weak_sup < Rational::one(),
            "sampled weak maximum must stay below 1, got {}",
            report.weak_sup
        );
    }

    // the near-1/3 extras push the sampled maximum above 7/10 but not above
    // 3/4; the independent oracle must agree exactly
    let extras = [rat(33, 100), rat(167, 500)];
    let (s, m) = example2_instance(&extras).unwrap();
    let report = classify(&s, &m);
    assert!(report.weak_sup > rat(7, 10));
    assert!(report.weak_sup <= rat(3, 4));
    let oracle = oracle::sups(&s, &m);
    assert_eq!(oracle.weak, report.weak_sup, "oracle must agree exactly");
    println!("criterion 3: PASS - example 2 sample reproduced (petrov 5/2, weak 1/2, sampled max {} in (7/10, 3/4])", report.weak_sup);
}

type Instance = (FiniteMetricSpace, SelfMap, ContractionReport);

static CORPUS: OnceLock<Vec<Instance>> = OnceLock::new();

/// 500 weak instances with no period-2 violation, n in {4..8}, fixed seeds.
fn corpus() -> &'static [Instance] {
    CORPUS.get_or_init(|| {
        (0..500u64)
            .map(|i| {
                let n = 4 + (i % 5) as usize;
                random_weak_instance(n, 10, 31_000 + i, 500)
                    .unwrap_or_else(|| panic!("no weak instance within 500 tries for seed {i}"))
            })
            .collect()
    })
}

#[test]
fn criterion_4_theorem1_property_suite() {
    let mut checked_starts = 0usize;
    for (space, map, report) in corpus() {
        assert!(report.is_weak && !report.has_period2_violation);
        assert!(
            report.fixed_points.len() <= 2,
            "a weak contraction may have at most two fixed points, got {:?}",
            report.fixed_points
        );
        for x0 in 0..space.len() {
            let result = iterate(space, map, x0)
                .unwrap_or_else(|e| panic!("iteration must not abort, got {e}"));
            assert!(
                result.steps <= space.len(),
                "must converge within n steps, took {}",
                result.steps
            );
            assert_eq!(map.apply(result.limit), result.limit, "limit must be fixed");
            checked_starts += 1;
        }
    }
    println!(
        "criterion 4: PASS - {} instances, {} starts all reached a fixed point within n steps, fixed-point counts <= 2, zero cycles",
        corpus().len(),
        checked_starts
    );
}

#[test]
fn criterion_5_lemma_suite() {
    let mut lemma2_applicable = 0usize;
    for (space, map, report) in corpus() {
        let k = &report.weak_sup;
        for x0 in 0..space.len() {
            let trace = orbit(space, map, x0, space.len());
            let horizon = supremum_horizon(&trace).max(3);

            let l1 = check_lemma1(space, map, x0, horizon, k);
            assert!(
                l1.holds,
                "lemma 1 violated at start {x0}: {:?}",
                l1.violations
            );

            match check_lemma2(space, map, x0, horizon) {
                Lemma2Verdict::Holds { .. } => lemma2_applicable += 1,
                Lemma2Verdict::NotApplicable => (),
                Lemma2Verdict::Fails { argmax } => {
                    panic!("lemma 2 violated at start {x0}: argmax {argmax:?}")
                }
            }

            let l3 = check_lemma3(space, map, x0, k);
            assert!(
                l3.holds,
                "lemma 3 violated at start {x0}: p_inf {} > bound {}",
                l3.p_inf, l3.bound
            );

            let profile = cauchy_profile(space, map, x0, k)
                .unwrap_or_else(|e| panic!("profile aborted at start {x0}: {e}"));
            assert!(
                profile.all_within,
                "envelope violated at start {x0}: rows {:?} pairs {:?}",
                profile.rows, profile.pair_violations
            );
        }
    }
    println!(
        "criterion 5: PASS - lemma 1/2/3 and all envelope rows hold on all 500 instances (lemma 2 applicable {} times)",
        lemma2_applicable
    );
}

#[test]
fn criterion_6_oracle_equivalence() {
    let mut checked = 0usize;
    for i in 0..200u64 {
        let n = 3 + (i % 3) as usize;
        let denom_bound = 1 + (i % 10);
        let space = tricontract::space::random_space(n, denom_bound, 77_000 + i).unwrap();
        let map = tricontract::space::random_map(&space, 88_000 + i);
        let report = classify(&space, &map);
        let oracle = oracle::sups(&space, &map);
        assert_eq!(
            report.petrov_sup, oracle.petrov,
            "petrov_sup mismatch on pair {i}"
        );
        assert_eq!(report.weak_sup, oracle.weak, "weak_sup mismatch on pair {i}");
        checked += 1;
    }
    println!("criterion 6: PASS - brute-force oracle agrees exactly with classify on {checked} random pairs (n <= 5)");
}

#[test]
fn criterion_7_completeness_demonstration() {
    let base_extras = vec![Rational::zero(), Rational::one(), rat(3, 2), Rational::from_int(2)];
    for k in [rat(1, 2), rat(1, 4), rat(3, 4)] {
        let inst = build_escape_map(&k, 30, &base_extras, 2026, 20)
            .unwrap_or_else(|e| panic!("build must succeed for k={k}: {e}"));
        assert_eq!(inst.extras.len(), 24, "4 named + 20 seeded extras");

        let report = verify_escape_conditions(&inst);
        assert!(
            report.condition_i_violations.is_empty(),
            "condition (i) violations for k={k}: {:?}",
            report.condition_i_violations
        );
        assert!(
            report.condition_ii_violations.is_empty(),
            "condition (ii) violations for k={k}: {:?}",
            report.condition_ii_violations
        );
        assert!(report.fixed_points.is_empty(), "map must be fixed-point free");
        assert!(recheck_certificates(&inst).is_empty());

        // re-verify every logged inequality with independent arithmetic
        for cert in &inst.certs {
            let lhs = Rational::from_int(2) * Rational::pow10_neg(cert.target as u32);
            let x: Rational = inst
                .space
                .label(cert.point_index)
                .parse()
                .expect("labels are canonical renderings");
            let half_k = &k / &Rational::from_int(2);
            let rhs = match &inst.roles[cert.point_index] {
                PointRole::Extra => {
                    let min_repr = inst
                        .a_values
                        .iter()
                        .map(|a| (&x - a).abs())
                        .min()
                        .unwrap();
                    let lb = dist_lower_bound_to_sqrt2(&x).unwrap();
                    let delta = min_repr.min(lb / Rational::from_int(2));
                    half_k * delta
                }
                PointRole::Member { position } => {
                    let gap =
                        (&inst.a_values[position - 1] - &inst.a_values[cert.target - 1]).abs();
                    half_k * gap
                }
            };
            assert_eq!(lhs, cert.lhs, "logged lhs mismatch for k={k}");
            assert_eq!(rhs, cert.rhs, "logged rhs mismatch for k={k}");
            assert!(lhs < rhs, "certificate inequality must be strict for k={k}");
        }

        // the verified weak ratio maximum stays at or below the chosen k
        let (max_ratio, _) = report.max_weak_ratio.expect("triples checked");
        assert!(max_ratio <= k);
    }
    println!("criterion 7: PASS - escape map verified for k in {{1/4, 1/2, 3/4}} at depth 30: zero violations, no fixed points, all certificates re-verified");
}

#[test]
fn criterion_8_continuity_probes() {
    let map_rule = |x: &Rational| example2_map(x).expect("probe points are in [0,1]");
    let metric = |a: &Rational, b: &Rational| (a - b).abs();
    let tol = default_probe_tolerance();

    // at the orbit limit 0 the probe must be consistent
    let approach: Vec<Rational> = (1..=7).map(Rational::pow10_neg).collect();
    let verdict = continuity_probe(&map_rule, &metric, &Rational::zero(), &approach, &tol).unwrap();
    assert_eq!(verdict, ContinuityVerdict::ContinuousConsistent);

    // at 1, along x_j = 1 - 1/(j+1), the probe must find a gap of exactly 1/2
    let approach: Vec<Rational> = [1i64, 10, 100, 1_000, 10_000, 100_000, 1_000_000]
        .iter()
        .map(|&j| Rational::one() - Rational::new(1, j + 1))
        .collect();
    let verdict = continuity_probe(&map_rule, &metric, &Rational::one(), &approach, &tol).unwrap();
    match verdict {
        ContinuityVerdict::DiscontinuityWitness { gap, .. } => {
            assert_eq!(gap, rat(1, 2), "gap must be exactly 1/2")
        }
        other => panic!("expected a discontinuity witness, got {other:?}"),
    }
    println!("criterion 8: PASS - continuity probe consistent at 0, discontinuity witness with gap exactly 1/2 at 1");
}

#[test]
fn criterion_9_determinism() {
    // library level: classification byte-identical across pool sizes
    let (space, map, _) = &corpus()[0];
    let render = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| format!("{:?}", classify(space, map)))
    };
    let max_threads = std::thread::available_parallelism().map_or(8, |n| n.get());
    let one = render(1);
    assert_eq!(one, render(2), "1-thread and 2-thread reports must match");
    assert_eq!(one, render(max_threads), "max-thread report must match");

    // CLI level: identical bytes for classify and the completeness demo
    let dir = std::env::temp_dir().join("tricontract_acceptance_det");
    std::fs::create_dir_all(&dir).unwrap();
    let run = |args: &[&str]| {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv: Vec<String> = std::iter::once("tricontract".to_string())
            .chain(args.iter().map(|s| s.to_string()))
            .collect();
        let code = tricontract::cli::run(argv, &mut out, &mut err);
        (code, out)
    };
    let (code, _) = run(&["examples", "--emit", dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    let ex3 = dir.join("ex3.tms");
    let ex3 = ex3.to_str().unwrap();

    let (c1, base) = run(&["classify", ex3, "--threads", "1"]);
    let (c2, two) = run(&["classify", ex3, "--threads", "2"]);
    let (c3, many) = run(&["classify", ex3]);
    assert_eq!((c1, c2, c3), (0, 0, 0));
    assert_eq!(base, two);
    assert_eq!(base, many);

    let demo = [
        "completeness-demo",
        "--k",
        "1/2",
        "--depth",
        "30",
        "--random-extras",
        "20",
        "--seed",
        "2026",
    ];
    let (d1, demo_one) = run(&[&demo[..], &["--threads", "1"]].concat());
    let (d2, demo_two) = run(&[&demo[..], &["--threads", "2"]].concat());
    let (d3, demo_again) = run(&demo);
    assert_eq!((d1, d2, d3), (0, 0, 0));
    assert_eq!(demo_one, demo_two);
    assert_eq!(demo_one, demo_again);

    // same seed, two runs: identical generated instances
    let gen = ["generate", "--n", "6", "--denom-bound", "10", "--seed", "424242", "--weak"];
    let (g1, first) = run(&gen);
    let (g2, second) = run(&gen);
    assert_eq!((g1, g2), (0, 0));
    assert_eq!(first, second);
    println!("criterion 9: PASS - reports byte-identical across 1/2/max threads and across same-seed runs");
}

/// The emitted fixtures round-trip through the CLI bit-exactly.
#[test]
fn emitted_fixtures_round_trip_through_classify() {
    let dir = std::env::temp_dir().join("tricontract_acceptance_rt");
    std::fs::create_dir_all(&dir).unwrap();
    let run = |args: &[&str]| {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv: Vec<String> = std::iter::once("tricontract".to_string())
            .chain(args.iter().map(|s| s.to_string()))
            .collect();
        let code = tricontract::cli::run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    };
    let (code, _) = run(&["examples", "--emit", dir.to_str().unwrap()]);
    assert_eq!(code, 0);

    for (name, expect_exit) in [("ex1", 0), ("ex2", 0), ("ex3", 0)] {
        let path = dir.join(format!("{name}.tms"));
        let (code, from_file) = run(&["classify", path.to_str().unwrap()]);
        assert_eq!(code, expect_exit);
        let (_, sections) = run(&["examples", name]);
        let embedded: String = sections
            .lines()
            .skip(1) // the fixture=<name> line
            .map(|l| format!("{l}\n"))
            .collect::<String>()
            .trim_end()
            .to_string();
        assert_eq!(from_file.trim_end(), embedded, "round-trip mismatch for {name}");
    }

    // spot check: fixed points reported for the escape instance CLI
    let (space, map) = example1();
    assert_eq!(fixed_points(&space, &map), vec![0]);
}
