//! Command-line surface with bit-exact output for scripting and golden tests.
//!
//! Exit codes: 0 for success / verdict-true, 1 for verdict-false (for example
//! a map that is not a weak contraction, or a metric axiom violation), 2 for
//! input errors (unparseable files, unknown flags, bad labels).

use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::completeness::{build_escape_map, verify_escape_conditions};
use crate::contraction::classify;
use crate::fixtures;
use crate::orbit::{
    cauchy_profile, check_lemma1, check_lemma2, check_lemma3, fixed_points, iterate, orbit,
    supremum_horizon, Lemma2Verdict, OrbitError,
};
use crate::rational::Rational;
use crate::report::{Report, Scalar, Table};
use crate::space::{random_map, random_space, FiniteMetricSpace, SelfMap};
use crate::tms;

/// Seed used by `generate` when `--seed` is absent.
pub const SEED_ENV_VAR: &str = "TRICONTRACT_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "tricontract",
    version,
    about = "Exact classification and iteration diagnostics for perimeter-contracting self-maps"
)]
struct Cli {
    /// Render reports as JSON instead of key=value lines
    #[arg(long, global = true)]
    json: bool,

    /// Append decimal approximations (suffixed ~) to exact rationals
    #[arg(long, global = true)]
    approx: bool,

    /// Worker threads for triple scans; results are identical for any count
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the metric axioms of a TMS file exhaustively
    Validate { file: PathBuf },
    /// Classify the map against the strict and weak contraction classes
    Classify { file: PathBuf },
    /// Run the Picard iteration from a start point to its fixed point
    Iterate {
        file: PathBuf,
        /// Start point label
        #[arg(long)]
        start: String,
    },
    /// List all fixed points of the map
    FixedPoints { file: PathBuf },
    /// Print the orbit of a start point
    Orbit {
        file: PathBuf,
        /// Start point label
        #[arg(long)]
        start: String,
        /// Maximum map applications (default: number of points)
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Run the orbit lemma checks and the geometric envelope profile
    Lemmas {
        file: PathBuf,
        /// Start point label
        #[arg(long)]
        start: String,
        /// Contraction constant (default: the exact weak supremum)
        #[arg(long)]
        k: Option<String>,
        /// Orbit horizon for the perimeter lemmas (default: stabilization + 2)
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Build and verify the fixed-point-free map over sqrt(2) truncations
    CompletenessDemo {
        /// Contraction constant in (0, 1)
        #[arg(long, default_value = "1/2")]
        k: String,
        /// Number of decimal truncations of sqrt(2)
        #[arg(long, default_value_t = 30)]
        depth: usize,
        /// Comma-separated rational points of [0, 2] outside the sequence
        #[arg(long, default_value = "0,1,3/2,2")]
        extras: String,
        /// Additional seeded random rational points of [0, 2]
        #[arg(long, default_value_t = 0)]
        random_extras: usize,
        /// Seed for the random extras
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the instance as a TMS file (map lines for assigned points)
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Print or export the built-in instances
    Examples {
        /// Restrict to one instance: ex1, ex2, or ex3
        name: Option<String>,
        /// Write TMS files into this directory instead of printing reports
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Generate a random instance as a TMS file on stdout
    Generate {
        /// Number of points (at least 3)
        #[arg(long)]
        n: usize,
        /// Denominator bound for random distances
        #[arg(long, default_value_t = 10)]
        denom_bound: u64,
        /// Seed (default: the TRICONTRACT_SEED environment variable, else 0)
        #[arg(long)]
        seed: Option<u64>,
        /// Rejection-sample until the instance is a weak contraction with no
        /// period-2 violation
        #[arg(long)]
        weak: bool,
        /// Rejection budget for --weak
        #[arg(long, default_value_t = 100)]
        max_tries: usize,
    },
}

struct Failure {
    code: i32,
    msg: String,
}

fn fail(code: i32, msg: impl Into<String>) -> Failure {
    Failure {
        code,
        msg: msg.into(),
    }
}

type CmdResult = Result<(Report, i32), Failure>;

/// Runs the CLI against explicit argv and output streams; returns the exit
/// code. The first argv element is the program name.
pub fn run<I, S, O, E>(argv: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };

    let json = cli.json;
    let approx = cli.approx;
    let threads = cli.threads;

    // commands that stream non-report output (examples, generate) write into
    // this buffer so the dispatch closure stays Send for the thread pool
    let mut direct = Vec::new();
    let command = cli.command;
    let result: CmdResult = match threads {
        None => execute(command, &mut direct),
        Some(0) => Err(fail(2, "--threads must be at least 1")),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => {
                let (r, buf) = pool.install(move || {
                    let mut buf = Vec::new();
                    let r = execute(command, &mut buf);
                    (r, buf)
                });
                direct = buf;
                r
            }
            Err(e) => Err(fail(2, format!("could not build thread pool: {e}"))),
        },
    };

    let _ = out.write_all(&direct);
    match result {
        Ok((report, code)) => {
            let rendered = if json {
                report.render_json()
            } else {
                report.render_text(approx)
            };
            let _ = out.write_all(rendered.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Classify { file } => cmd_classify(&file),
        Command::Iterate { file, start } => cmd_iterate(&file, &start),
        Command::FixedPoints { file } => cmd_fixed_points(&file),
        Command::Orbit {
            file,
            start,
            max_steps,
        } => cmd_orbit(&file, &start, max_steps),
        Command::Lemmas {
            file,
            start,
            k,
            horizon,
        } => cmd_lemmas(&file, &start, k.as_deref(), horizon),
        Command::CompletenessDemo {
            k,
            depth,
            extras,
            random_extras,
            seed,
            emit,
        } => cmd_completeness(&k, depth, &extras, random_extras, seed, emit.as_deref()),
        Command::Examples { name, emit } => cmd_examples(name.as_deref(), emit.as_deref(), out),
        Command::Generate {
            n,
            denom_bound,
            seed,
            weak,
            max_tries,
        } => cmd_generate(n, denom_bound, seed, weak, max_tries, out),
    }
}

fn read_tms(file: &std::path::Path) -> Result<tms::TmsFile, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| fail(2, format!("cannot read {}: {e}", file.display())))?;
    tms::parse(&text).map_err(|e| fail(2, format!("{}: {e}", file.display())))
}

fn read_total(file: &std::path::Path) -> Result<(FiniteMetricSpace, SelfMap), Failure> {
    let parsed = read_tms(file)?;
    let map = parsed
        .total_map()
        .map_err(|e| fail(2, format!("{}: {}", file.display(), e.msg)))?;
    Ok((parsed.space, map))
}

fn resolve_start(space: &FiniteMetricSpace, label: &str) -> Result<usize, Failure> {
    space
        .index_of_label(label)
        .ok_or_else(|| fail(2, format!("unknown start point `{label}`")))
}

fn labels_of(space: &FiniteMetricSpace, indices: &[usize]) -> Vec<String> {
    indices
        .iter()
        .map(|&i| space.label(i).to_string())
        .collect()
}

fn triple_labels(space: &FiniteMetricSpace, t: crate::contraction::Triple) -> Vec<String> {
    labels_of(space, &t.indices())
}

fn parse_rational_arg(s: &str, what: &str) -> Result<Rational, Failure> {
    s.parse()
        .map_err(|_| fail(2, format!("invalid {what} `{s}` (expected p/q or integer)")))
}

fn cmd_validate(file: &std::path::Path) -> CmdResult {
    let parsed = read_tms(file)?;
    let space = parsed.space;
    let validation = crate::space::validate_metric(&space);
    let mut report = Report::new();
    report.uint("points", space.len()).bool("ok", validation.ok);
    let rows = validation
        .violations
        .iter()
        .map(|v| {
            vec![
                Scalar::Text(v.axiom.name().to_string()),
                Scalar::Labels(labels_of(&space, &v.witness)),
                Scalar::Rat(v.lhs.clone()),
                Scalar::Rat(v.rhs.clone()),
            ]
        })
        .collect();
    report.table(Table {
        name: "violation".into(),
        columns: vec!["axiom".into(), "witness".into(), "lhs".into(), "rhs".into()],
        rows,
    });
    let code = if validation.ok { 0 } else { 1 };
    Ok((report, code))
}

fn classification_report(space: &FiniteMetricSpace, map: &SelfMap) -> (Report, bool) {
    let c = classify(space, map);
    let mut report = Report::new();
    report
        .uint("points", space.len())
        .rat("petrov_sup", &c.petrov_sup)
        .labels("petrov_witness", triple_labels(space, c.petrov_witness))
        .rat("weak_sup", &c.weak_sup)
        .labels("weak_witness", triple_labels(space, c.weak_witness))
        .bool("is_petrov", c.is_petrov)
        .bool("is_weak", c.is_weak)
        .labels("fixed_points", labels_of(space, &c.fixed_points))
        .bool("has_period2_violation", c.has_period2_violation)
        .text(
            "period2_witness",
            c.period2_witness
                .map(|i| space.label(i).to_string())
                .unwrap_or_default(),
        );
    (report, c.is_weak)
}

fn cmd_classify(file: &std::path::Path) -> CmdResult {
    let (space, map) = read_total(file)?;
    let (report, is_weak) = classification_report(&space, &map);
    Ok((report, if is_weak { 0 } else { 1 }))
}

fn cmd_iterate(file: &std::path::Path, start: &str) -> CmdResult {
    let (space, map) = read_total(file)?;
    let x0 = resolve_start(&space, start)?;
    let c = classify(&space, &map);
    let mut report = Report::new();
    report.text("start", space.label(x0));
    if !c.is_weak {
        report
            .text("verdict", "not_weak")
            .rat("weak_sup", &c.weak_sup);
        return Ok((report, 1));
    }
    if c.has_period2_violation {
        report.text("verdict", "period2_violation").text(
            "period2_witness",
            c.period2_witness
                .map(|i| space.label(i).to_string())
                .unwrap_or_default(),
        );
        return Ok((report, 1));
    }
    match iterate(&space, &map, x0) {
        Ok(result) => {
            report
                .text("verdict", "converged")
                .text("limit", space.label(result.limit))
                .uint("steps", result.steps)
                .labels("orbit", labels_of(&space, &result.trace.points))
                .bool("unique_claim_applicable", result.unique_claim_applicable);
            Ok((report, 0))
        }
        Err(OrbitError::CycleDetected { entry, period }) => {
            report
                .text("verdict", "cycle_detected")
                .uint("cycle_entry", entry)
                .uint("cycle_period", period);
            Ok((report, 1))
        }
        Err(OrbitError::MaxStepsExceeded { steps }) => {
            report
                .text("verdict", "max_steps_exceeded")
                .uint("steps", steps);
            Ok((report, 1))
        }
    }
}

fn cmd_fixed_points(file: &std::path::Path) -> CmdResult {
    let (space, map) = read_total(file)?;
    let fp = fixed_points(&space, &map);
    let mut report = Report::new();
    report
        .uint("points", space.len())
        .labels("fixed_points", labels_of(&space, &fp))
        .uint("count", fp.len());
    Ok((report, 0))
}

fn cmd_orbit(file: &std::path::Path, start: &str, max_steps: Option<usize>) -> CmdResult {
    let (space, map) = read_total(file)?;
    let x0 = resolve_start(&space, start)?;
    let max_steps = max_steps.unwrap_or(space.len());
    if max_steps == 0 {
        return Err(fail(2, "--max-steps must be at least 1"));
    }
    let trace = orbit(&space, &map, x0, max_steps);
    let mut report = Report::new();
    report
        .text("start", space.label(x0))
        .labels("orbit", labels_of(&space, &trace.points))
        .text(
            "stabilized_at",
            trace.stabilized_at.map(|s| s.to_string()).unwrap_or_default(),
        )
        .text(
            "cycle_entry",
            trace.cycle.map(|(e, _)| e.to_string()).unwrap_or_default(),
        )
        .text(
            "cycle_period",
            trace.cycle.map(|(_, p)| p.to_string()).unwrap_or_default(),
        );
    Ok((report, 0))
}

fn cmd_lemmas(
    file: &std::path::Path,
    start: &str,
    k_arg: Option<&str>,
    horizon: Option<usize>,
) -> CmdResult {
    let (space, map) = read_total(file)?;
    let x0 = resolve_start(&space, start)?;
    let c = classify(&space, &map);
    let mut report = Report::new();
    report
        .text("start", space.label(x0))
        .rat("weak_sup", &c.weak_sup);
    if !c.is_weak {
        report.text("verdict", "not_weak");
        return Ok((report, 1));
    }
    let k = match k_arg {
        Some(s) => {
            let k = parse_rational_arg(s, "contraction constant")?;
            if k < c.weak_sup || k >= Rational::one() {
                return Err(fail(
                    2,
                    format!(
                        "k must satisfy weak_sup <= k < 1; weak_sup is {}",
                        c.weak_sup
                    ),
                ));
            }
            k
        }
        None => c.weak_sup.clone(),
    };
    let trace = orbit(&space, &map, x0, space.len());
    let horizon = horizon.unwrap_or_else(|| supremum_horizon(&trace).max(3));
    if horizon < 3 {
        return Err(fail(2, "--horizon must be at least 3"));
    }
    report.rat("k", &k).uint("horizon", horizon);

    let l1 = check_lemma1(&space, &map, x0, horizon, &k);
    report
        .text("lemma1", if l1.holds { "holds" } else { "fails" })
        .rat("lemma1_p", &l1.p_n)
        .rat("lemma1_bound", &l1.bound);

    let l2 = check_lemma2(&space, &map, x0, horizon);
    let (l2_text, l2_witness, l2_ok) = match &l2 {
        Lemma2Verdict::Holds { witness } => (
            "holds",
            witness.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
            true,
        ),
        Lemma2Verdict::Fails { .. } => ("fails", vec![], false),
        Lemma2Verdict::NotApplicable => ("not_applicable", vec![], true),
    };
    report
        .text("lemma2", l2_text)
        .labels("lemma2_witness", l2_witness);

    let l3 = check_lemma3(&space, &map, x0, &k);
    report
        .text("lemma3", if l3.holds { "holds" } else { "fails" })
        .rat("lemma3_p_inf", &l3.p_inf)
        .rat("lemma3_bound", &l3.bound);

    let profile = cauchy_profile(&space, &map, x0, &k)
        .map_err(|e| fail(1, format!("cauchy profile aborted: {e}")))?;
    report
        .rat("cauchy_m", &profile.m)
        .bool("cauchy_all_within", profile.all_within)
        .uint("cauchy_pair_checks", profile.pair_checks);
    report.table(Table {
        name: "profile".into(),
        columns: vec!["n".into(), "d".into(), "envelope".into(), "ok".into()],
        rows: profile
            .rows
            .iter()
            .map(|r| {
                vec![
                    Scalar::UInt(r.n),
                    Scalar::Rat(r.step_distance.clone()),
                    Scalar::Rat(r.envelope.clone()),
                    Scalar::Bool(r.within),
                ]
            })
            .collect(),
    });

    let all_ok = l1.holds && l2_ok && l3.holds && profile.all_within;
    Ok((report, if all_ok { 0 } else { 1 }))
}

fn cmd_completeness(
    k_arg: &str,
    depth: usize,
    extras_arg: &str,
    random_extras: usize,
    seed: u64,
    emit: Option<&std::path::Path>,
) -> CmdResult {
    let k = parse_rational_arg(k_arg, "contraction constant")?;
    let extras = extras_arg
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_rational_arg(s.trim(), "extra point"))
        .collect::<Result<Vec<_>, _>>()?;
    let inst = build_escape_map(&k, depth, &extras, seed, random_extras)
        .map_err(|e| fail(2, e.to_string()))?;
    let verification = verify_escape_conditions(&inst);

    let mut report = Report::new();
    report
        .rat("k", &inst.k)
        .uint("depth", inst.depth)
        .uint("sequence_points", inst.a_values.len())
        .uint("extras", inst.extras.len())
        .uint("points", inst.space.len())
        .uint("assigned_points", verification.assigned_points)
        .uint("checked_triples", verification.checked_triples)
        .uint(
            "condition_i_violations",
            verification.condition_i_violations.len(),
        )
        .uint(
            "condition_ii_violations",
            verification.condition_ii_violations.len(),
        );
    match &verification.max_weak_ratio {
        Some((ratio, witness)) => {
            report.rat("max_weak_ratio", ratio).labels(
                "max_weak_ratio_witness",
                triple_labels(&inst.space, *witness),
            );
        }
        None => {
            report
                .text("max_weak_ratio", "")
                .labels("max_weak_ratio_witness", vec![]);
        }
    }
    report
        .labels(
            "fixed_points",
            labels_of(&inst.space, &verification.fixed_points),
        )
        .uint("certificates", inst.certs.len())
        .bool("certs_ok", verification.certs_ok)
        .bool("ok", verification.ok);
    report.table(Table {
        name: "certificate".into(),
        columns: vec!["point".into(), "n".into(), "lhs".into(), "rhs".into()],
        rows: inst
            .certs
            .iter()
            .map(|c| {
                vec![
                    Scalar::Text(inst.space.label(c.point_index).to_string()),
                    Scalar::UInt(c.target),
                    Scalar::Rat(c.lhs.clone()),
                    Scalar::Rat(c.rhs.clone()),
                ]
            })
            .collect(),
    });

    if let Some(path) = emit {
        let text = tms::write_partial(&inst.space, &inst.images);
        std::fs::write(path, text)
            .map_err(|e| fail(2, format!("cannot write {}: {e}", path.display())))?;
        report.text("emitted", path.display().to_string());
    }

    Ok((report, if verification.ok { 0 } else { 1 }))
}

fn builtin_fixtures(name: Option<&str>) -> Result<Vec<(&'static str, FiniteMetricSpace, SelfMap)>, Failure> {
    let all: Vec<(&'static str, FiniteMetricSpace, SelfMap)> = {
        let (s1, m1) = fixtures::example1();
        let (s2, m2) = fixtures::example2_instance(&[]).expect("mandatory sample is in range");
        let (s3, m3) = fixtures::example3();
        vec![("ex1", s1, m1), ("ex2", s2, m2), ("ex3", s3, m3)]
    };
    match name {
        None => Ok(all),
        Some(n) => {
            let filtered: Vec<_> = all.into_iter().filter(|(id, _, _)| *id == n).collect();
            if filtered.is_empty() {
                Err(fail(2, format!("unknown example `{n}` (try ex1, ex2, ex3)")))
            } else {
                Ok(filtered)
            }
        }
    }
}

fn cmd_examples(
    name: Option<&str>,
    emit: Option<&std::path::Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let fixtures = builtin_fixtures(name)?;
    let mut report = Report::new();
    match emit {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| fail(2, format!("cannot create {}: {e}", dir.display())))?;
            let mut written = Vec::new();
            for (id, space, map) in &fixtures {
                let path = dir.join(format!("{id}.tms"));
                std::fs::write(&path, tms::write(space, map))
                    .map_err(|e| fail(2, format!("cannot write {}: {e}", path.display())))?;
                written.push(path.display().to_string());
            }
            report.labels("wrote", written);
            Ok((report, 0))
        }
        None => {
            for (id, space, map) in &fixtures {
                let (section, _) = classification_report(space, map);
                let _ = writeln!(out, "fixture={id}");
                let _ = out.write_all(section.render_text(false).as_bytes());
                let _ = writeln!(out);
            }
            Ok((Report::new(), 0))
        }
    }
}

fn cmd_generate(
    n: usize,
    denom_bound: u64,
    seed: Option<u64>,
    weak: bool,
    max_tries: usize,
    out: &mut dyn Write,
) -> CmdResult {
    let seed = match seed {
        Some(s) => s,
        None => match std::env::var(SEED_ENV_VAR) {
            Ok(v) => v
                .parse::<u64>()
                .map_err(|_| fail(2, format!("{SEED_ENV_VAR}=`{v}` is not a 64-bit seed")))?,
            Err(_) => 0,
        },
    };
    if n < 3 {
        return Err(fail(2, "--n must be at least 3"));
    }
    if denom_bound < 1 {
        return Err(fail(2, "--denom-bound must be at least 1"));
    }
    let (space, map) = if weak {
        match fixtures::random_weak_instance(n, denom_bound, seed, max_tries) {
            Some((space, map, _)) => (space, map),
            None => {
                return Err(fail(
                    1,
                    format!("no weak instance found within {max_tries} tries"),
                ))
            }
        }
    } else {
        let space = random_space(n, denom_bound, seed).map_err(|e| fail(2, e.to_string()))?;
        let map = random_map(&space, seed);
        (space, map)
    };
    let _ = out.write_all(tms::write(&space, &map).as_bytes());
    Ok((Report::new(), 0))
}
