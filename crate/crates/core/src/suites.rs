//! Randomized property suites. Each check takes its own RNG and returns a
//! description of the first violation it finds.

use num_traits::{Signed, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::curve::{
    bishop_rhs, curve_to_gates, default_samples, gap_crossings, t_gap, tau, variation_bound,
    verify_bishop, verticalize, Apex, ChordClass, Orientation, Point, PolyCurve,
};
use crate::error::{Error, Result};
use crate::gen::{
    positive_rational, random_band, random_config, random_curve, random_gate, random_query,
    rational_between, rng_for, small_rational,
};
use crate::rational::{abs, int, Rational};
use crate::slalom::{
    oracle_min_crossings, sweep, verify_gate_inequality, Gate, GateConfig, SlopeBand,
};

pub type CaseResult = std::result::Result<(), String>;

pub const SUITES: &[&str] = &[
    "single-gate",
    "dp-vs-oracle",
    "gate-inequality",
    "invariance",
    "slab-law",
    "tau",
    "bishop",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseFailure {
    pub case: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: u64,
    pub passed: u64,
    pub failures: Vec<CaseFailure>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs `cases` independent cases of the named suite in parallel.
pub fn run_suite(name: &str, cases: u64, seed: u64) -> Result<SuiteReport> {
    let check: fn(&mut rand_chacha::ChaCha8Rng) -> CaseResult = match name {
        "single-gate" => check_single_gate_equality,
        "dp-vs-oracle" => |rng| check_dp_vs_oracle(rng, 5, 20),
        "gate-inequality" => |rng| check_gate_inequality(rng, 8).map(|_| ()),
        "invariance" => |rng| {
            check_shear(rng)?;
            check_translation(rng)?;
            check_scaling(rng)
        },
        "slab-law" => check_slab_law,
        "tau" => check_tau,
        "bishop" => |rng| check_bishop(rng, 12, 50, 64),
        other => {
            return Err(Error::InvalidParameter {
                name: "suite",
                reason: format!("unknown suite {other:?}; known: {}", SUITES.join(", ")),
            })
        }
    };
    let mut failures: Vec<CaseFailure> = (0..cases)
        .into_par_iter()
        .filter_map(|case| {
            let mut rng = rng_for(seed, case);
            check(&mut rng)
                .err()
                .map(|detail| CaseFailure { case, detail })
        })
        .collect();
    failures.sort_by_key(|f| f.case);
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        cases,
        passed: cases - failures.len() as u64,
        failures,
    })
}

pub fn check_single_gate_equality<R: Rng>(rng: &mut R) -> CaseResult {
    let band = random_band(rng);
    let gate = random_gate(rng);
    let cfg = GateConfig::new(vec![gate.clone()]);
    let r = verify_gate_inequality(&cfg, &band).map_err(|e| e.to_string())?;
    if !r.slack.is_zero() {
        return Err(format!(
            "single gate {gate:?} band {band:?}: slack {}",
            r.slack
        ));
    }
    Ok(())
}

/// Compares the sweep with the enumeration oracle at `queries` points.
pub fn check_dp_vs_oracle<R: Rng>(rng: &mut R, max_gates: usize, queries: usize) -> CaseResult {
    let band = random_band(rng);
    let cfg = random_config(rng, max_gates);
    let field = sweep(&cfg, &band);
    for _ in 0..queries {
        let (x, y) = random_query(rng, &cfg, &band);
        let dp = field.t_eval(&x, &y);
        let oracle = oracle_min_crossings(&cfg, &band, &x, &y).map_err(|e| e.to_string())?;
        if dp != oracle {
            return Err(format!(
                "t({x}, {y}) = {dp} by sweep, {oracle} by oracle; band {band:?}; {cfg:?}"
            ));
        }
    }
    Ok(())
}

/// Returns the slack so callers can look for strict cases.
pub fn check_gate_inequality<R: Rng>(
    rng: &mut R,
    max_gates: usize,
) -> std::result::Result<Rational, String> {
    let band = random_band(rng);
    let cfg = random_config(rng, max_gates);
    let r = verify_gate_inequality(&cfg, &band).map_err(|e| e.to_string())?;
    Ok(r.slack)
}

/// Two gates of equal length, the second half a shadow to the right and
/// lifted clear of the first: at the first gate's abscissa the profile has
/// two separate peaks on level 1, so the integral drops faster than
/// `(beta - alpha) T` and the inequality is strict.
pub fn staggered_pair<R: Rng>(rng: &mut R) -> (GateConfig, SlopeBand) {
    let band = random_band(rng);
    let x0 = small_rational(rng, 16);
    let m0 = small_rational(rng, 16);
    let len = positive_rational(rng, 8);
    let span = &len / band.width();
    let x1 = &x0 + &span * crate::rational::half();
    let m1 = &m0 + band.alpha() * (&x1 - &x0) + &len * int(2);
    let gates = vec![
        Gate::new(x0, m0.clone(), &m0 + &len).unwrap(),
        Gate::new(x1, m1.clone(), &m1 + &len).unwrap(),
    ];
    (GateConfig::new(gates), band)
}

fn compare_fields(
    label: &str,
    cfg: &GateConfig,
    band: &SlopeBand,
    other_cfg: &GateConfig,
    other_band: &SlopeBand,
    map: impl Fn(&Rational, &Rational) -> (Rational, Rational),
    rng: &mut impl Rng,
) -> CaseResult {
    let f = sweep(cfg, band);
    let g = sweep(other_cfg, other_band);
    for _ in 0..12 {
        let (x, y) = random_query(rng, cfg, band);
        let (x2, y2) = map(&x, &y);
        let (a, b) = (f.t_eval(&x, &y), g.t_eval(&x2, &y2));
        if a != b {
            return Err(format!("{label}: t({x}, {y}) = {a} but mapped value {b}"));
        }
    }
    Ok(())
}

pub fn check_shear<R: Rng>(rng: &mut R) -> CaseResult {
    let band = random_band(rng);
    let cfg = random_config(rng, 6);
    let gamma = small_rational(rng, 8);
    let sheared = GateConfig::new(
        cfg.gates
            .iter()
            .map(|g| Gate {
                x: g.x.clone(),
                m: &g.m + &gamma * &g.x,
                top: &g.top + &gamma * &g.x,
            })
            .collect(),
    );
    let band2 = SlopeBand::new(band.alpha() + &gamma, band.beta() + &gamma).unwrap();
    compare_fields(
        "shear",
        &cfg,
        &band,
        &sheared,
        &band2,
        |x, y| (x.clone(), y + &gamma * x),
        rng,
    )?;
    let (r1, r2) = (
        verify_gate_inequality(&cfg, &band).map_err(|e| e.to_string())?,
        verify_gate_inequality(&sheared, &band2).map_err(|e| e.to_string())?,
    );
    if r1 != r2 {
        return Err(format!("shear changed the report: {r1:?} vs {r2:?}"));
    }
    Ok(())
}

pub fn check_translation<R: Rng>(rng: &mut R) -> CaseResult {
    let band = random_band(rng);
    let cfg = random_config(rng, 6);
    let (dx, dy) = (small_rational(rng, 32), small_rational(rng, 32));
    let moved = GateConfig::new(
        cfg.gates
            .iter()
            .map(|g| Gate {
                x: &g.x + &dx,
                m: &g.m + &dy,
                top: &g.top + &dy,
            })
            .collect(),
    );
    compare_fields(
        "translation",
        &cfg,
        &band,
        &moved,
        &band,
        |x, y| (x + &dx, y + &dy),
        rng,
    )?;
    let (r1, r2) = (
        verify_gate_inequality(&cfg, &band).map_err(|e| e.to_string())?,
        verify_gate_inequality(&moved, &band).map_err(|e| e.to_string())?,
    );
    if r1 != r2 {
        return Err(format!("translation changed the report: {r1:?} vs {r2:?}"));
    }
    Ok(())
}

pub fn check_scaling<R: Rng>(rng: &mut R) -> CaseResult {
    let band = random_band(rng);
    let cfg = random_config(rng, 6);
    let lambda = positive_rational(rng, 16);
    let scaled = GateConfig::new(
        cfg.gates
            .iter()
            .map(|g| Gate {
                x: &g.x * &lambda,
                m: g.m.clone(),
                top: g.top.clone(),
            })
            .collect(),
    );
    let band2 = SlopeBand::new(band.alpha() / &lambda, band.beta() / &lambda).unwrap();
    compare_fields(
        "scaling",
        &cfg,
        &band,
        &scaled,
        &band2,
        |x, y| (x * &lambda, y.clone()),
        rng,
    )?;
    let r1 = verify_gate_inequality(&cfg, &band).map_err(|e| e.to_string())?;
    let r2 = verify_gate_inequality(&scaled, &band2).map_err(|e| e.to_string())?;
    if r2.lhs != &r1.lhs * &lambda || r2.rhs != &r1.rhs * &lambda || r2.slack != &r1.slack * &lambda
    {
        return Err(format!("scaling by {lambda}: {r1:?} vs {r2:?}"));
    }
    Ok(())
}

/// Within each slab: `I(x)` is the sum over superlevel components of their
/// shrunken widths, and `I(x_right) - I(x) >= (beta - alpha) * integral of T
/// over [x, x_right]`.
pub fn check_slab_law<R: Rng>(rng: &mut R) -> CaseResult {
    let band = random_band(rng);
    let cfg = random_config(rng, 8);
    let field = sweep(&cfg, &band);
    let rate = band.width();
    let slabs = field.slabs();
    for (j, slab) in slabs.iter().enumerate() {
        let x_left = match slabs.get(j + 1) {
            Some(s) => s.x_right.clone(),
            None => {
                field
                    .x_dead()
                    .cloned()
                    .unwrap_or_else(|| slab.x_right.clone())
                    - int(1)
            }
        };
        let i_right = field.integral_at(&slab.x_right);
        let mut xs: Vec<Rational> = (0..6)
            .map(|_| rational_between(rng, &x_left, &slab.x_right, 40))
            .collect();
        xs.extend(
            field
                .deaths()
                .iter()
                .filter(|d| d.x > x_left && d.x <= slab.x_right)
                .map(|d| d.x.clone()),
        );
        for x in xs.iter().filter(|x| **x > x_left) {
            let reach = &rate * (&slab.x_right - x);
            let expected = slab
                .profile
                .components()
                .map(|(_, iv)| iv.width() - &reach)
                .filter(|w| !w.is_negative())
                .fold(Rational::zero(), |a, w| a + w);
            let i_x = field.integral_at(x);
            if i_x != expected {
                return Err(format!("I({x}) = {i_x}, component sum {expected}"));
            }
            let lhs = &i_right - &i_x;
            let rhs = &rate * field.integral_t_between(x, &slab.x_right);
            if lhs < rhs {
                return Err(format!(
                    "slab at {}: I drop {lhs} < {rhs} from x = {x}",
                    slab.x_right
                ));
            }
        }
    }
    Ok(())
}

/// `|tau(s) - |s|| <= |alpha| + |beta|`, `tau >= beta - alpha`, and the
/// verticalized gate length is `tau * dx`, including `s = alpha, beta`.
pub fn check_tau<R: Rng>(rng: &mut R) -> CaseResult {
    let band = random_band(rng);
    let s = match rng.gen_range(0..4) {
        0 => band.alpha().clone(),
        1 => band.beta().clone(),
        _ => small_rational(rng, 64),
    };
    let t = tau(&band, &s);
    if abs(&(&t - abs(&s))) > abs(band.alpha()) + abs(band.beta()) {
        return Err(format!(
            "|tau({s}) - |s|| too large, tau = {t}, band {band:?}"
        ));
    }
    if t < band.width() {
        return Err(format!("tau({s}) = {t} below band width"));
    }
    let a = Point::new(small_rational(rng, 16), small_rational(rng, 16));
    let dx = positive_rational(rng, 8);
    let b = Point::new(&a.x + &dx, &a.y + &s * &dx);
    let g = verticalize(&band, &a, &b).map_err(|e| e.to_string())?;
    if g.length() != &t * &dx || g.x != b.x {
        return Err(format!(
            "verticalize({a:?}, {b:?}) = {g:?}, expected length {}",
            &t * &dx
        ));
    }
    Ok(())
}

/// `per_segment + 1` equally spaced points on every segment, sorted by `x`.
pub fn dense_points(curve: &PolyCurve, per_segment: i64) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::new();
    for (u, v) in curve.segments() {
        for j in 0..=per_segment {
            let t = Rational::new(j.into(), per_segment.into());
            pts.push(Point::new(
                &u.x + (&v.x - &u.x) * &t,
                &u.y + (&v.y - &u.y) * &t,
            ));
        }
    }
    pts.sort_by(|p, q| p.x.cmp(&q.x));
    pts.dedup();
    pts
}

/// Gap classification and switch count over a dense sample of curve
/// points; written independently of the vertex scan in [`crate::curve`].
pub fn dense_gap_count(
    band: &SlopeBand,
    apex: &Apex,
    curve: &PolyCurve,
    per_segment: i64,
) -> (u32, u32) {
    dense_gap_count_on(band, apex, curve, &dense_points(curve, per_segment))
}

/// [`dense_gap_count`] over precomputed [`dense_points`]; the point where
/// the curve crosses the apex abscissa is added here.
pub fn dense_gap_count_on(
    band: &SlopeBand,
    apex: &Apex,
    curve: &PolyCurve,
    pts: &[Point],
) -> (u32, u32) {
    let right = apex.orientation == Orientation::CurveRight;
    let clip: Vec<Point> = curve
        .segments()
        .filter(|(u, v)| u.x < apex.x && apex.x < v.x)
        .map(|(u, v)| {
            let t = (&apex.x - &u.x) / (&v.x - &u.x);
            Point::new(apex.x.clone(), &u.y + (&v.y - &u.y) * t)
        })
        .collect();
    // samples on the apex abscissa are watched from both sides
    let watched: Vec<&Point> = if right {
        let from = pts.partition_point(|p| p.x < apex.x);
        clip.iter().chain(&pts[from..]).collect()
    } else {
        let to = pts.partition_point(|p| p.x <= apex.x);
        pts[..to].iter().chain(&clip).collect()
    };
    let class = |p: &Point| -> Option<ChordClass> {
        let dx = &p.x - &apex.x;
        let dy = &p.y - &apex.y;
        if dx.is_zero() {
            if dy.is_zero() {
                return None;
            }
            let above = dy.is_positive();
            return Some(if above == right {
                ChordClass::High
            } else {
                ChordClass::Low
            });
        }
        let s = dy / dx;
        Some(if &s < band.alpha() {
            ChordClass::Low
        } else if &s > band.beta() {
            ChordClass::High
        } else {
            ChordClass::Mid
        })
    };
    let seq: Vec<ChordClass> = watched
        .into_iter()
        .filter_map(class)
        .filter(|c| *c != ChordClass::Mid)
        .collect();
    let mut up = 0;
    let mut down = 0;
    for w in seq.windows(2) {
        match (w[0], w[1]) {
            (ChordClass::Low, ChordClass::High) => up += 1,
            (ChordClass::High, ChordClass::Low) => down += 1,
            _ => {}
        }
    }
    (up, down)
}

/// Random apex near the curve.
pub fn random_apex<R: Rng>(rng: &mut R, curve: &PolyCurve) -> Apex {
    let (a, b) = curve.span();
    let width = b - a;
    let x = rational_between(rng, &(a - &width), b, 96);
    let (lo, hi) = curve
        .vertices()
        .iter()
        .fold((int(0), int(0)), |(lo, hi), p| {
            (
                if p.y < lo { p.y.clone() } else { lo },
                if p.y > hi { p.y.clone() } else { hi },
            )
        });
    let y = rational_between(rng, &(lo - int(4)), &(hi + int(4)), 96);
    if rng.gen_bool(0.5) {
        Apex::right(x, y)
    } else {
        Apex::left(x, y)
    }
}

/// The Bishop chain for one random curve: `sampled_lower <= gate_lhs <=
/// rhs <= variation_bound`, parity and oracle agreement at `apexes` random
/// apexes, and pointwise `T_gap <= T_gates` at the samples.
pub fn check_bishop<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    apexes: usize,
    samples: usize,
) -> CaseResult {
    let band = random_band(rng);
    let curve = random_curve(rng, max_vertices);
    let xs = default_samples(&band, &curve, samples);
    let report = verify_bishop(&band, &curve, &xs).map_err(|e| e.to_string())?;
    if !report.ok {
        return Err(format!("chain fails: {report:?}; band {band:?}; {curve:?}"));
    }
    let vb = variation_bound(&band, &curve);
    if bishop_rhs(&band, &curve) > vb {
        return Err(format!("rhs {} above variation bound {vb}", report.rhs));
    }
    let field = sweep(&curve_to_gates(&band, &curve), &band);
    for x in &xs {
        let (tg, tf) = (t_gap(&band, &curve, x), field.t_max_at(x));
        if tg > tf {
            return Err(format!("T_gap({x}) = {tg} > T_gates = {tf}; {curve:?}"));
        }
    }
    let dense = dense_points(&curve, 100);
    for _ in 0..apexes {
        let apex = random_apex(rng, &curve);
        let g = gap_crossings(&band, &apex, &curve);
        if !g.is_balanced() {
            return Err(format!("unbalanced {g:?} at {apex:?}"));
        }
        let d = dense_gap_count_on(&band, &apex, &curve, &dense);
        if d != (g.upcrossings, g.downcrossings) {
            return Err(format!(
                "vertex scan {g:?} vs dense {d:?} at {apex:?}; {curve:?}"
            ));
        }
    }
    Ok(())
}
