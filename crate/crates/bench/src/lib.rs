//! Fixed-seed instances shared by the benchmarks.

use crossing_core::gen::{random_band, random_config, random_curve, rng_for};
use crossing_core::{GateConfig, PolyCurve, SlopeBand};

pub fn gate_instances(count: u64, max_gates: usize) -> Vec<(GateConfig, SlopeBand)> {
    (0..count)
        .map(|case| {
            let mut rng = rng_for(0xbe9c, case);
            let band = random_band(&mut rng);
            (random_config(&mut rng, max_gates), band)
        })
        .collect()
}

pub fn curve_instances(count: u64, max_vertices: usize) -> Vec<(PolyCurve, SlopeBand)> {
    (0..count)
        .map(|case| {
            let mut rng = rng_for(0xc0e5, case);
            let band = random_band(&mut rng);
            (random_curve(&mut rng, max_vertices), band)
        })
        .collect()
}
