use crossing_core::curve::{default_samples, gap_integral_exact, sampled_gap_lower};
use crossing_core::gen::{
    random_band, random_config, random_curve, random_gate, random_query, rng_for,
};
use crossing_core::rational::{int, rat};
use crossing_core::suites::staggered_pair;
use crossing_core::*;
use proptest::prelude::*;

/// Breakpoints and one value per open piece, built so `from_pieces` accepts
/// them.
fn pieces() -> impl Strategy<Value = (Vec<Rational>, Vec<u32>)> {
    (1i64..=4, prop::collection::btree_set(-24i64..24, 2..8)).prop_flat_map(|(den, pts)| {
        let bps: Vec<Rational> = pts.into_iter().map(|p| rat(p, den)).collect();
        let n = bps.len() - 1;
        (Just(bps), prop::collection::vec(0u32..4, n))
    })
}

fn window() -> impl Strategy<Value = (Rational, Rational)> {
    (-8i64..8, 0i64..8, 1i64..=4).prop_map(|(lo, len, den)| (rat(lo, den), rat(lo + len, den)))
}

/// Pointwise evaluation straight from the piece list.
fn piece_value(bps: &[Rational], values: &[u32], y: &Rational) -> u32 {
    if let Some(i) = bps.iter().position(|b| b == y) {
        let left = if i > 0 { values[i - 1] } else { 0 };
        let right = values.get(i).copied().unwrap_or(0);
        return left.max(right);
    }
    match bps.iter().position(|b| b > y) {
        Some(0) | None => 0,
        Some(i) => values[i - 1],
    }
}

/// Points where the piecewise function and its window minimum can change.
fn probe_points(bps: &[Rational], lo: &Rational, hi: &Rational) -> Vec<Rational> {
    let mut ys: Vec<Rational> = Vec::new();
    for b in bps {
        ys.push(b - lo);
        ys.push(b - hi);
        ys.push(b.clone());
    }
    ys.sort();
    ys.dedup();
    let mut out = ys.clone();
    for w in ys.windows(2) {
        out.push((&w[0] + &w[1]) / int(2));
    }
    out.push(&ys[0] - int(1));
    out.push(ys.last().unwrap() + int(1));
    out
}

fn window_min(bps: &[Rational], values: &[u32], y: &Rational, lo: &Rational, hi: &Rational) -> u32 {
    let (a, b) = (y + lo, y + hi);
    let mut cand = vec![a.clone(), b.clone()];
    cand.extend(bps.iter().filter(|p| **p >= a && **p <= b).cloned());
    cand.sort();
    let mids: Vec<Rational> = cand.windows(2).map(|w| (&w[0] + &w[1]) / int(2)).collect();
    cand.extend(mids);
    cand.iter()
        .map(|u| piece_value(bps, values, u))
        .min()
        .unwrap()
}

proptest! {
    #[test]
    fn from_pieces_matches_pointwise((bps, values) in pieces()) {
        let p = StepProfile::from_pieces(&bps, &values).unwrap();
        for y in probe_points(&bps, &int(0), &int(0)) {
            prop_assert_eq!(p.value_at(&y), piece_value(&bps, &values, &y), "y = {}", y);
        }
        let expect: Rational = bps
            .windows(2)
            .zip(&values)
            .map(|(w, v)| (&w[1] - &w[0]) * int(*v as i64))
            .sum();
        prop_assert_eq!(p.integral(), expect);
        prop_assert_eq!(p.canonicalize(), p);
    }

    #[test]
    fn erosion_is_a_window_minimum((bps, values) in pieces(), (lo, hi) in window()) {
        let p = StepProfile::from_pieces(&bps, &values).unwrap();
        let e = p.erode(&lo, &hi).unwrap();
        prop_assert_eq!(e.canonicalize(), e.clone());
        for y in probe_points(&bps, &lo, &hi) {
            let oracle = window_min(&bps, &values, &y, &lo, &hi);
            prop_assert_eq!(e.value_at(&y), oracle, "y = {}", y);
            prop_assert_eq!(p.eroded_value_at(&y, &lo, &hi), oracle, "lazy, y = {}", y);
        }
        prop_assert!(e.component_count() <= p.component_count());
        prop_assert!(e.max_value() <= p.max_value());
    }

    #[test]
    fn erosion_composes((bps, values) in pieces(), (l1, h1) in window(), (l2, h2) in window()) {
        let p = StepProfile::from_pieces(&bps, &values).unwrap();
        let twice = p.erode(&l1, &h1).unwrap().erode(&l2, &h2).unwrap();
        let once = p.erode(&(&l1 + &l2), &(&h1 + &h2)).unwrap();
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn erosion_is_monotone((bps, values) in pieces(), (lo, hi) in window(), grow in 0i64..6) {
        let p = StepProfile::from_pieces(&bps, &values).unwrap();
        let wide = p.erode(&(&lo - rat(grow, 2)), &hi).unwrap();
        let narrow = p.erode(&lo, &hi).unwrap();
        for y in probe_points(&bps, &lo, &hi) {
            prop_assert!(wide.value_at(&y) <= narrow.value_at(&y));
        }
    }

    #[test]
    fn add_indicator_is_pointwise((bps, values) in pieces(), (m, top) in window()) {
        let p = StepProfile::from_pieces(&bps, &values).unwrap();
        let q = p.add_indicator(&m, &top).unwrap();
        prop_assert_eq!(q.canonicalize(), q.clone());
        let mut all = bps.clone();
        all.push(m.clone());
        all.push(top.clone());
        all.sort();
        all.dedup();
        for y in probe_points(&all, &int(0), &int(0)) {
            let bump = u32::from(y >= m && y <= top);
            prop_assert_eq!(q.value_at(&y), p.value_at(&y) + bump, "y = {}", y);
        }
        prop_assert_eq!(q.integral(), p.integral() + (&top - &m));
    }

    #[test]
    fn pieces_round_trip((bps, values) in pieces()) {
        let p = StepProfile::from_pieces(&bps, &values).unwrap();
        let (b2, v2) = p.pieces();
        let q = StepProfile::from_pieces(&b2, &v2).unwrap();
        prop_assert_eq!(q, p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sweep_agrees_with_oracle(seed in any::<u64>()) {
        let mut rng = rng_for(seed, 0);
        let band = random_band(&mut rng);
        let cfg = random_config(&mut rng, 5);
        let field = sweep(&cfg, &band);
        for _ in 0..10 {
            let (x, y) = random_query(&mut rng, &cfg, &band);
            let oracle = oracle_min_crossings(&cfg, &band, &x, &y).unwrap();
            prop_assert_eq!(field.t_eval(&x, &y), oracle, "({}, {})", x, y);
        }
    }

    #[test]
    fn t_max_matches_oracle_max(seed in any::<u64>()) {
        let mut rng = rng_for(seed, 1);
        let band = random_band(&mut rng);
        let cfg = random_config(&mut rng, 4);
        let field = sweep(&cfg, &band);
        for _ in 0..4 {
            let (x, _) = random_query(&mut rng, &cfg, &band);
            let profile = field.profile_at(&x);
            let (ys, _) = profile.pieces();
            let mut cand = ys.clone();
            cand.extend(ys.windows(2).map(|w| (&w[0] + &w[1]) / int(2)));
            let best = cand
                .iter()
                .map(|y| oracle_min_crossings(&cfg, &band, &x, y).unwrap())
                .max()
                .unwrap_or(0);
            prop_assert_eq!(field.t_max_at(&x), best, "x = {}", x);
        }
    }

    #[test]
    fn extra_gate_never_helps(seed in any::<u64>()) {
        let mut rng = rng_for(seed, 2);
        let band = random_band(&mut rng);
        let cfg = random_config(&mut rng, 5);
        let mut more = cfg.clone();
        more.gates.push(random_gate(&mut rng));
        let (f, g) = (sweep(&cfg, &band), sweep(&more, &band));
        for _ in 0..10 {
            let (x, y) = random_query(&mut rng, &more, &band);
            prop_assert!(f.t_eval(&x, &y) <= g.t_eval(&x, &y));
        }
        prop_assert!(f.integral_t() <= g.integral_t());
    }

    #[test]
    fn narrower_band_never_helps(seed in any::<u64>(), da in 0i64..4, db in 0i64..4) {
        let mut rng = rng_for(seed, 3);
        let band = random_band(&mut rng);
        let cut = band.width() / int(8);
        let narrow = SlopeBand::new(
            band.alpha() + &cut * int(da),
            band.beta() - &cut * int(db),
        ).unwrap();
        let cfg = random_config(&mut rng, 5);
        let (f, g) = (sweep(&cfg, &band), sweep(&cfg, &narrow));
        for _ in 0..10 {
            let (x, y) = random_query(&mut rng, &cfg, &band);
            prop_assert!(f.t_eval(&x, &y) <= g.t_eval(&x, &y));
        }
    }

    #[test]
    fn gate_inequality_slack_is_nonnegative(seed in any::<u64>()) {
        let mut rng = rng_for(seed, 4);
        let band = random_band(&mut rng);
        let cfg = random_config(&mut rng, 8);
        let r = verify_gate_inequality(&cfg, &band).unwrap();
        prop_assert!(r.slack >= int(0));
        if cfg.len() == 1 {
            prop_assert_eq!(r.slack, int(0));
        }
    }

    #[test]
    fn staggered_pairs_are_strict(seed in any::<u64>()) {
        let (cfg, band) = staggered_pair(&mut rng_for(seed, 5));
        let r = verify_gate_inequality(&cfg, &band).unwrap();
        prop_assert!(r.slack > int(0));
    }

    #[test]
    fn gap_integral_chain(seed in any::<u64>()) {
        let mut rng = rng_for(seed, 6);
        let band = random_band(&mut rng);
        let curve = random_curve(&mut rng, 8);
        let exact = gap_integral_exact(&band, &curve).unwrap();
        let sampled = sampled_gap_lower(&band, &curve, &default_samples(&band, &curve, 40)).unwrap();
        let gates = sweep(&curve_to_gates(&band, &curve), &band).integral_t();
        prop_assert!(sampled <= exact, "{} > {}", sampled, exact);
        prop_assert!(exact <= gates, "{} > {}", exact, gates);
        prop_assert!(gates <= bishop_rhs(&band, &curve));
        prop_assert!(bishop_rhs(&band, &curve) <= variation_bound(&band, &curve));
    }

    #[test]
    fn gap_count_survives_half_turn(seed in any::<u64>()) {
        let mut rng = rng_for(seed, 7);
        let band = random_band(&mut rng);
        let curve = random_curve(&mut rng, 8);
        let origin = Point::new(int(0), int(0));
        let turned = curve.reflect_through(&origin);
        let (x0, _) = curve.span();
        let x = x0 - int(1);
        let (_, y) = random_query(&mut rng, &curve_to_gates(&band, &curve), &band);
        let right = gap_crossings(&band, &Apex::right(x.clone(), y.clone()), &curve);
        let left = gap_crossings(&band, &Apex::left(-x, -y), &turned);
        prop_assert_eq!(right.total, left.total);
        prop_assert_eq!(right.upcrossings, left.downcrossings);
        prop_assert_eq!(right.apex_on_curve, left.apex_on_curve);
    }

    #[test]
    fn oscillator_crossings_grow_with_prefix(alternations in 1usize..6, extra in 0usize..4) {
        let band = SlopeBand::new(int(1), int(2)).unwrap();
        let pair = Generator::Oscillator {
            limit_a: int(1),
            limit_b: int(1),
            alpha: int(1),
            beta: int(2),
            alternations,
            len: alternations + 2 + extra,
        }
        .build()
        .unwrap();
        let mut last = 0;
        for n in 2..=pair.len() {
            let c = gap_trace_crossings(&pair, &band, n).unwrap();
            prop_assert!(c.total >= last);
            prop_assert!(c.is_balanced());
            last = c.total;
        }
        prop_assert_eq!(last as usize, alternations);
    }
}
