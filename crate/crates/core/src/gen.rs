//! Seeded random instances for property sweeps.
//!
//! Every case draws from its own [`ChaCha8Rng`] keyed by `(seed, case)`, so
//! cases are reproducible one at a time and can run in any order.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{Point, PolyCurve};
use crate::rational::{int, Rational};
use crate::slalom::{Gate, GateConfig, SlopeBand};

/// Bound on numerators and denominators of generated coordinates.
pub const COORD_BOUND: i64 = 64;

pub fn rng_for(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

/// `p / q` with `|p| <= bound`, `1 <= q <= bound`.
pub fn small_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound);
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `p / q` with `1 <= p <= bound`, `1 <= q <= bound`.
pub fn positive_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let p = rng.gen_range(1..=bound);
    let q = rng.gen_range(1..=bound);
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Uniform-ish rational in `[lo, hi]` on a grid of `steps` cells.
pub fn rational_between<R: Rng>(rng: &mut R, lo: &Rational, hi: &Rational, steps: i64) -> Rational {
    let k = rng.gen_range(0..=steps);
    lo + (hi - lo) * Rational::new(BigInt::from(k), BigInt::from(steps))
}

pub fn random_band<R: Rng>(rng: &mut R) -> SlopeBand {
    let alpha = small_rational(rng, 16);
    let beta = &alpha + positive_rational(rng, 16);
    SlopeBand::new(alpha, beta).expect("beta > alpha")
}

pub fn random_gate<R: Rng>(rng: &mut R) -> Gate {
    let x = small_rational(rng, COORD_BOUND);
    let m = small_rational(rng, COORD_BOUND);
    // occasional degenerate gate
    let top = if rng.gen_ratio(1, 12) {
        m.clone()
    } else {
        &m + positive_rational(rng, 16)
    };
    Gate::new(x, m, top).expect("m <= top")
}

/// Between 0 and `max_gates` gates; some share an abscissa.
pub fn random_config<R: Rng>(rng: &mut R, max_gates: usize) -> GateConfig {
    let n = rng.gen_range(0..=max_gates);
    let mut gates: Vec<Gate> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut g = random_gate(rng);
        if !gates.is_empty() && rng.gen_ratio(1, 6) {
            g.x = gates[rng.gen_range(0..gates.len())].x.clone();
        }
        gates.push(g);
    }
    GateConfig::new(gates)
}

/// A start point aimed at the interesting region: left of some gate within
/// reach of its triangle, with a height that is often exactly on a line
/// through a gate endpoint with slope `alpha` or `beta`.
pub fn random_query<R: Rng>(
    rng: &mut R,
    config: &GateConfig,
    band: &SlopeBand,
) -> (Rational, Rational) {
    if config.is_empty() || rng.gen_ratio(1, 10) {
        return (
            small_rational(rng, COORD_BOUND),
            small_rational(rng, COORD_BOUND),
        );
    }
    let g = &config.gates[rng.gen_range(0..config.len())];
    let reach = (g.length() + int(2)) / band.width();
    let x = match rng.gen_range(0..5) {
        0 => g.x.clone(),
        1 => &g.x + positive_rational(rng, 4),
        _ => &g.x - rational_between(rng, &int(0), &reach, 48),
    };
    let target = &config.gates[rng.gen_range(0..config.len())];
    let dx = &target.x - &x;
    let y = match rng.gen_range(0..6) {
        0 => &target.m - band.alpha() * &dx,
        1 => &target.m - band.beta() * &dx,
        2 => &target.top - band.alpha() * &dx,
        3 => &target.top - band.beta() * &dx,
        _ => {
            let lo = &target.m - band.beta() * &dx - int(1);
            let hi = &target.top - band.alpha() * &dx + int(1);
            if lo <= hi {
                rational_between(rng, &lo, &hi, 64)
            } else {
                rational_between(rng, &hi, &lo, 64)
            }
        }
    };
    (x, y)
}

/// Polygonal curve with `2..=max_vertices` vertices and mixed slopes.
pub fn random_curve<R: Rng>(rng: &mut R, max_vertices: usize) -> PolyCurve {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let mut x = small_rational(rng, 16);
    let mut vertices = Vec::with_capacity(n);
    for _ in 0..n {
        vertices.push(Point::new(x.clone(), small_rational(rng, 16)));
        x += positive_rational(rng, 8);
    }
    PolyCurve::new(vertices).expect("abscissas increase")
}
