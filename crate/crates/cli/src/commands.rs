//! Subcommands. Each one returns an [`Outcome`]: a JSON result and whether
//! every inequality it asserts held.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use crossing_core::curve::{default_samples, gap_integral_exact};
use crossing_core::lab::{default_test_samples, stage_premise_index, IntervalCover};
use crossing_core::suites::{run_suite, SUITES};
use crossing_core::{
    accelerate, counterpart_cover, curve_to_gates, format_rational, gap_crossings,
    gap_trace_crossings, integral_test, oracle_min_crossings, ratio_trace, sweep, transfer_cover,
    variation_bound, verify_bishop, verify_gate_inequality, Apex, ApproxPair, CrossingField, Error,
    GateConfig, Interval, PolyCurve, Rational, SlopeBand,
};
use serde_json::{json, Value};

use crate::instance::{
    curve_from_json, gates_from_json, pair_from_json, parse_band, parse_pair, parse_rational_arg,
    read_json, InputError, InputResult,
};
use crate::svg;

#[derive(Debug, Parser)]
#[command(
    name = "crossing",
    version,
    about = "Exact crossing counts and crossing inequalities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gate configurations: solve, verify, cross-check against the oracle.
    Slalom {
        #[command(subcommand)]
        cmd: SlalomCmd,
    },
    /// Polygonal curves: gap crossings and the curve inequality.
    Curve {
        #[command(subcommand)]
        cmd: CurveCmd,
    },
    /// Sequence pairs with known limits.
    Blp {
        #[command(subcommand)]
        cmd: BlpCmd,
    },
    /// Seeded randomized property suite.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct GateInput {
    /// Gate file: {"gates":[{"x":"0","m":"0","M":"1"}, ...]}
    #[arg(long)]
    pub gates: PathBuf,
    /// Slope band "alpha,beta" with alpha < beta.
    #[arg(long, value_parser = parse_band, allow_hyphen_values = true)]
    pub band: SlopeBand,
    /// Write a figure here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum SlalomCmd {
    /// Run the sweep; report T(x), its integral and optionally t at a point.
    Solve {
        #[command(flatten)]
        input: GateInput,
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        query: Option<(Rational, Rational)>,
    },
    /// Check (beta - alpha) * integral of T <= total gate length.
    Verify {
        #[command(flatten)]
        input: GateInput,
    },
    /// Compare the sweep with exhaustive enumeration at one point.
    Oracle {
        #[command(flatten)]
        input: GateInput,
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        query: (Rational, Rational),
    },
}

#[derive(Debug, Args)]
pub struct CurveInput {
    /// Curve file: {"vertices":[["0","0"],["1","2"], ...]}
    #[arg(long)]
    pub curve: PathBuf,
    #[arg(long, value_parser = parse_band, allow_hyphen_values = true)]
    pub band: SlopeBand,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Side {
    /// Watch the part of the curve right of the apex.
    Right,
    /// Watch the part left of the apex.
    Left,
}

#[derive(Debug, Subcommand)]
pub enum CurveCmd {
    /// Up- and downcrossings of the gap seen from an apex.
    Gapcount {
        #[command(flatten)]
        input: CurveInput,
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        apex: (Rational, Rational),
        #[arg(long, value_enum, default_value = "right")]
        side: Side,
    },
    /// Check sampled integral <= gate integral <= sum of tau * dx / (beta - alpha).
    Verify {
        #[command(flatten)]
        input: CurveInput,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
}

#[derive(Debug, Args)]
pub struct PairInput {
    /// Pair file: explicit {"A","B","a","b"} or {"generator":{"name","params"}}.
    #[arg(long)]
    pub pair: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum BlpCmd {
    /// Ratios (B - b_i) / (A - a_i).
    Trace {
        #[command(flatten)]
        input: PairInput,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Gap crossings of the prefix curve seen from (A, B).
    Crossings {
        #[command(flatten)]
        input: PairInput,
        #[arg(long, value_parser = parse_band, allow_hyphen_values = true)]
        band: SlopeBand,
        #[arg(long)]
        n: Option<usize>,
    },
    /// The integral test built from the prefix of length n.
    Test {
        #[command(flatten)]
        input: PairInput,
        #[arg(long, value_parser = parse_band, allow_hyphen_values = true)]
        band: SlopeBand,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Counterpart cover of total length at most eps (B - b_1).
    Cover {
        #[command(flatten)]
        input: PairInput,
        #[arg(long, value_parser = parse_rational_arg)]
        eps: Rational,
        /// Intervals built; uses n + 1 terms. Defaults to all stored terms.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Move a cover of A to a cover of B, scaling lengths by c.
    Transfer {
        #[command(flatten)]
        input: PairInput,
        #[arg(long, value_parser = parse_rational_arg)]
        c: Rational,
        /// Cover interval "lo,hi"; repeat for more.
        #[arg(long = "interval", value_parser = parse_pair, allow_hyphen_values = true, required = true)]
        intervals: Vec<(Rational, Rational)>,
    },
    /// Approximate A from a (slow) and b (fast, same limit) to a precision.
    Accelerate {
        #[command(flatten)]
        input: PairInput,
        #[arg(long, value_parser = parse_rational_arg)]
        c: Rational,
        #[arg(long, value_parser = parse_rational_arg)]
        precision: Rational,
    },
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub suite: String,
    #[arg(long, default_value_t = 100)]
    pub cases: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub result: Value,
    pub passed: bool,
}

impl Outcome {
    fn pass(result: Value) -> Self {
        Outcome {
            result,
            passed: true,
        }
    }
}

/// Core errors that mean "the input does not meet the requirements" become
/// input errors; broken invariants are verification failures.
fn classify(e: Error, path: &str) -> InputResult<Outcome> {
    match e {
        Error::Invariant(_) | Error::Exhausted { .. } => Ok(Outcome {
            result: json!({ "error": e.to_string() }),
            passed: false,
        }),
        other => Err(InputError::new(path, other.to_string())),
    }
}

fn s(r: &Rational) -> String {
    format_rational(r)
}

fn band_json(band: &SlopeBand) -> Value {
    json!([s(band.alpha()), s(band.beta())])
}

fn write_svg(path: &Option<PathBuf>, figure: impl FnOnce() -> String) -> InputResult<()> {
    if let Some(p) = path {
        std::fs::write(p, figure())
            .map_err(|e| InputError::new(p.display().to_string(), format!("cannot write: {e}")))?;
    }
    Ok(())
}

fn load_gates(path: &Path) -> InputResult<GateConfig> {
    gates_from_json(&read_json(path)?).map_err(|e| prefix(path, e))
}

fn load_curve(path: &Path) -> InputResult<PolyCurve> {
    curve_from_json(&read_json(path)?).map_err(|e| prefix(path, e))
}

fn load_pair(path: &Path) -> InputResult<ApproxPair> {
    pair_from_json(&read_json(path)?).map_err(|e| prefix(path, e))
}

fn prefix(file: &Path, e: InputError) -> InputError {
    let path = if e.path.is_empty() {
        file.display().to_string()
    } else {
        format!("{}: {}", file.display(), e.path)
    };
    InputError {
        path,
        message: e.message,
    }
}

pub fn run(cli: &Cli) -> InputResult<Outcome> {
    match &cli.command {
        Command::Slalom { cmd } => slalom(cmd),
        Command::Curve { cmd } => curve(cmd),
        Command::Blp { cmd } => blp(cmd),
        Command::Sweep(args) => suite(args),
    }
}

fn field_json(field: &CrossingField) -> Value {
    let profile: Vec<Value> = field
        .t_profile()
        .iter()
        .map(|t| json!({ "from": s(&t.from), "to": s(&t.to), "T": t.value }))
        .collect();
    let deaths: Vec<Value> = field
        .deaths()
        .iter()
        .map(|d| json!({ "x": s(&d.x), "level": d.level, "width": s(&d.width) }))
        .collect();
    json!({
        "x_dead": field.x_dead().map(s),
        "max_gate_x": field.max_gate_x().map(s),
        "integral_t": s(&field.integral_t()),
        "t_profile": profile,
        "deaths": deaths,
    })
}

fn slalom(cmd: &SlalomCmd) -> InputResult<Outcome> {
    let input = match cmd {
        SlalomCmd::Solve { input, .. }
        | SlalomCmd::Verify { input }
        | SlalomCmd::Oracle { input, .. } => input,
    };
    let cfg = load_gates(&input.gates)?;
    let band = &input.band;
    let field = sweep(&cfg, band);
    let query = match cmd {
        SlalomCmd::Solve { query, .. } => query.as_ref(),
        SlalomCmd::Oracle { query, .. } => Some(query),
        SlalomCmd::Verify { .. } => None,
    };
    write_svg(&input.svg, || {
        svg::slalom_figure(&cfg, band, &field, query.map(|(x, y)| (x, y)))
    })?;
    let base = json!({ "gates": cfg.len(), "band": band_json(band) });
    let mut result = base;
    let passed = match cmd {
        SlalomCmd::Solve { query, .. } => {
            result["field"] = field_json(&field);
            if let Some((x, y)) = query {
                result["query"] = json!({ "x": s(x), "y": s(y), "t": field.t_eval(x, y) });
            }
            true
        }
        SlalomCmd::Verify { .. } => match verify_gate_inequality(&cfg, band) {
            Ok(r) => {
                result["lhs"] = json!(s(&r.lhs));
                result["rhs"] = json!(s(&r.rhs));
                result["slack"] = json!(s(&r.slack));
                result["holds"] = json!(true);
                true
            }
            Err(e) => return classify(e, "gates"),
        },
        SlalomCmd::Oracle { query: (x, y), .. } => {
            let dp = field.t_eval(x, y);
            let oracle = oracle_min_crossings(&cfg, band, x, y)
                .map_err(|e| InputError::new("gates", e.to_string()))?;
            result["query"] = json!({ "x": s(x), "y": s(y) });
            result["sweep"] = json!(dp);
            result["oracle"] = json!(oracle);
            result["agree"] = json!(dp == oracle);
            dp == oracle
        }
    };
    Ok(Outcome { result, passed })
}

fn curve(cmd: &CurveCmd) -> InputResult<Outcome> {
    match cmd {
        CurveCmd::Gapcount {
            input,
            apex: (x, y),
            side,
        } => {
            let curve = load_curve(&input.curve)?;
            let band = &input.band;
            let apex = match side {
                Side::Right => Apex::right(x.clone(), y.clone()),
                Side::Left => Apex::left(x.clone(), y.clone()),
            };
            let gates = curve_to_gates(band, &curve);
            write_svg(&input.svg, || {
                svg::curve_figure(&curve, band, &gates, &sweep(&gates, band), Some(&apex))
            })?;
            let c = gap_crossings(band, &apex, &curve);
            let balanced = c.is_balanced();
            Ok(Outcome {
                result: json!({
                    "band": band_json(band),
                    "apex": { "x": s(x), "y": s(y), "side": format!("{side:?}").to_lowercase() },
                    "total": c.total,
                    "upcrossings": c.upcrossings,
                    "downcrossings": c.downcrossings,
                    "apex_on_curve": c.apex_on_curve,
                    "balanced": balanced,
                }),
                passed: balanced,
            })
        }
        CurveCmd::Verify { input, samples } => {
            let curve = load_curve(&input.curve)?;
            let band = &input.band;
            let gates = curve_to_gates(band, &curve);
            write_svg(&input.svg, || {
                svg::curve_figure(&curve, band, &gates, &sweep(&gates, band), None)
            })?;
            let xs = default_samples(band, &curve, *samples);
            let r = match verify_bishop(band, &curve, &xs) {
                Ok(r) => r,
                Err(e) => return classify(e, "vertices"),
            };
            let exact = match gap_integral_exact(band, &curve) {
                Ok(v) => v,
                Err(e) => return classify(e, "vertices"),
            };
            let passed = r.ok && r.sampled_lower <= exact && exact <= r.gate_lhs;
            Ok(Outcome {
                result: json!({
                    "band": band_json(band),
                    "vertices": curve.vertices().len(),
                    "samples": xs.len(),
                    "sampled_lower": s(&r.sampled_lower),
                    "gap_integral": s(&exact),
                    "gate_lhs": s(&r.gate_lhs),
                    "rhs": s(&r.rhs),
                    "variation_bound": s(&variation_bound(band, &curve)),
                    "holds": passed,
                }),
                passed,
            })
        }
    }
}

fn prefix_len(pair: &ApproxPair, n: Option<usize>) -> usize {
    n.unwrap_or(pair.len())
}

fn blp(cmd: &BlpCmd) -> InputResult<Outcome> {
    match cmd {
        BlpCmd::Trace { input, n } => {
            let pair = load_pair(&input.pair)?;
            let n = prefix_len(&pair, *n);
            let ratios = ratio_trace(&pair, n).map_err(|e| InputError::new("n", e.to_string()))?;
            let ratios: Vec<String> = ratios.iter().map(s).collect();
            Ok(Outcome::pass(json!({ "n": n, "ratios": ratios })))
        }
        BlpCmd::Crossings { input, band, n } => {
            let pair = load_pair(&input.pair)?;
            let n = prefix_len(&pair, *n);
            let c = gap_trace_crossings(&pair, band, n)
                .map_err(|e| InputError::new("n", e.to_string()))?;
            Ok(Outcome {
                result: json!({
                    "n": n,
                    "band": band_json(band),
                    "total": c.total,
                    "upcrossings": c.upcrossings,
                    "downcrossings": c.downcrossings,
                    "apex_on_curve": c.apex_on_curve,
                    "balanced": c.is_balanced(),
                }),
                passed: c.is_balanced(),
            })
        }
        BlpCmd::Test {
            input,
            band,
            n,
            samples,
        } => {
            let pair = load_pair(&input.pair)?;
            let n = prefix_len(&pair, *n);
            let xs = default_test_samples(&pair, band, n, *samples)
                .map_err(|e| InputError::new("n", e.to_string()))?;
            let r = match integral_test(&pair, band, n, &xs) {
                Ok(r) => r,
                Err(e) => return classify(e, "n"),
            };
            Ok(Outcome {
                result: json!({
                    "n": n,
                    "band": band_json(band),
                    "t_at_a": r.t_at_a,
                    "sampled_integral_lower": s(&r.sampled_integral_lower),
                    "gate_integral_upper": s(&r.gate_integral_upper),
                    "prefix_bound": s(&r.prefix_bound),
                    "uniform_bound": s(&r.uniform_bound),
                    "chain_holds": r.chain_holds(),
                }),
                passed: r.chain_holds(),
            })
        }
        BlpCmd::Cover { input, eps, n } => {
            let pair = load_pair(&input.pair)?;
            let n = n.unwrap_or(pair.len().saturating_sub(1));
            let cover = counterpart_cover(&pair, eps, n)
                .map_err(|e| InputError::new("eps", e.to_string()))?;
            let bound = eps * (pair.limit_b() - &pair.b()[0]);
            let premise = stage_premise_index(&pair, eps, n);
            let covers_a = cover.contains(pair.limit_a());
            let length_ok = cover.total_length() <= &bound;
            let disjoint = cover.is_ordered_disjoint();
            let passed = length_ok && disjoint && (premise.is_none() || covers_a);
            Ok(Outcome {
                result: json!({
                    "n": n,
                    "eps": s(eps),
                    "intervals": intervals_json(cover.intervals()),
                    "total_length": s(cover.total_length()),
                    "bound": s(&bound),
                    "length_ok": length_ok,
                    "disjoint": disjoint,
                    "premise_index": premise,
                    "covers_A": covers_a,
                }),
                passed,
            })
        }
        BlpCmd::Transfer {
            input,
            c,
            intervals,
        } => {
            let pair = load_pair(&input.pair)?;
            let ivs = intervals
                .iter()
                .enumerate()
                .map(|(i, (lo, hi))| {
                    Interval::new(lo.clone(), hi.clone())
                        .map_err(|e| InputError::new(format!("interval[{i}]"), e.to_string()))
                })
                .collect::<InputResult<Vec<_>>>()?;
            let cover =
                IntervalCover::new(ivs).map_err(|e| InputError::new("interval", e.to_string()))?;
            let out = match transfer_cover(&cover, &pair, c) {
                Ok(out) => out,
                Err(e) => return classify(e, "pair"),
            };
            let bound = c * cover.total_length();
            let length_ok = out.total_length() <= &bound;
            let covers_a = cover.contains(pair.limit_a());
            let covers_b = out.contains(pair.limit_b());
            Ok(Outcome {
                result: json!({
                    "c": s(c),
                    "input_total": s(cover.total_length()),
                    "intervals": intervals_json(out.intervals()),
                    "total_length": s(out.total_length()),
                    "bound": s(&bound),
                    "length_ok": length_ok,
                    "covers_A": covers_a,
                    "covers_B": covers_b,
                }),
                passed: length_ok && (covers_b || !covers_a),
            })
        }
        BlpCmd::Accelerate {
            input,
            c,
            precision,
        } => {
            let pair = load_pair(&input.pair)?;
            if pair.limit_a() != pair.limit_b() {
                return Err(InputError::new(
                    "pair",
                    "accelerate reads b as a faster approximation of A; B must equal A",
                ));
            }
            let run = match accelerate(pair.a(), pair.b(), c, precision, pair.limit_a()) {
                Ok(run) => run,
                Err(e) => return classify(e, "pair"),
            };
            let error = pair.limit_a() - &run.value;
            let passed = &error <= precision && run.rounds <= run.round_bound;
            let errors: Vec<String> = run.errors.iter().map(s).collect();
            Ok(Outcome {
                result: json!({
                    "c": s(c),
                    "precision": s(precision),
                    "value": s(&run.value),
                    "error": s(&error),
                    "rounds": run.rounds,
                    "round_bound": run.round_bound,
                    "errors": errors,
                }),
                passed,
            })
        }
    }
}

fn intervals_json(ivs: &[Interval]) -> Value {
    ivs.iter().map(|iv| json!([s(&iv.lo), s(&iv.hi)])).collect()
}

fn suite(args: &SweepArgs) -> InputResult<Outcome> {
    if !SUITES.contains(&args.suite.as_str()) {
        return Err(InputError::new(
            "--suite",
            format!(
                "unknown suite {:?}; known: {}",
                args.suite,
                SUITES.join(", ")
            ),
        ));
    }
    let r = run_suite(&args.suite, args.cases, args.seed)
        .map_err(|e| InputError::new("--suite", e.to_string()))?;
    let failures: Vec<Value> = r
        .failures
        .iter()
        .take(20)
        .map(|f| json!({ "case": f.case, "detail": f.detail }))
        .collect();
    Ok(Outcome {
        passed: r.all_passed(),
        result: json!({
            "suite": r.suite,
            "seed": r.seed,
            "cases": r.cases,
            "passed": r.passed,
            "failed": r.cases - r.passed,
            "failures": failures,
        }),
    })
}
