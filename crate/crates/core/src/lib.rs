//! Exact crossing inequalities for slope-constrained trajectories.
//!
//! * [`profile`]: piecewise-constant integer profiles with sliding-window
//!   minimum, the kernel of the moving-line sweep.
//! * [`slalom`]: the anti-slalom game, its exact solver and a brute-force
//!   oracle.
//! * [`curve`]: polygonal curves, the `tau` cost, verticalized gates and gap
//!   up/downcrossing counts.
//! * [`lab`]: sequence pairs with known limits, integral tests and interval
//!   covers.
//! * [`gen`] and [`suites`]: seeded random instances and property suites.
//!
//! All arithmetic is over [`Rational`]; nothing rounds.

pub mod curve;
pub mod error;
pub mod gen;
pub mod lab;
pub mod profile;
pub mod rational;
pub mod slalom;
pub mod suites;

pub use curve::{
    bishop_rhs, curve_to_gates, gap_crossings, t_gap, tau, variation_bound, verify_bishop,
    verticalize, Apex, BishopReport, ChordClass, GapCount, Orientation, Point, PolyCurve,
};
pub use error::{Error, Result};
pub use lab::{
    accelerate, counterpart_cover, gap_trace_crossings, integral_test, ratio_trace, transfer_cover,
    Acceleration, ApproxPair, Generator, IntegralTestReport, IntervalCover,
};
pub use profile::{Interval, StepProfile};
pub use rational::{format_rational, parse_rational, Rational};
pub use slalom::{
    oracle_min_crossings, sweep, verify_gate_inequality, CrossingField, Gate, GateConfig,
    GateReport, SlopeBand, TSegment,
};
