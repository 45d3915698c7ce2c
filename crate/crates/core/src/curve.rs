//! Polygonal curves against a slope band: the per-unit-length cost `tau`,
//! replacement of curve segments by vertical gates, and counting how often
//! a curve crosses the gap between the `alpha`- and `beta`-rays of an apex.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{abs, int, max, midpoint, min, Rational};
use crate::slalom::{sweep, Gate, GateConfig, SlopeBand};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    /// Point reflection through `center`.
    pub fn reflect_through(&self, center: &Point) -> Point {
        Point {
            x: int(2) * &center.x - &self.x,
            y: int(2) * &center.y - &self.y,
        }
    }
}

/// Graph of a piecewise-linear function: at least two vertices with
/// strictly increasing abscissas.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyCurve {
    vertices: Vec<Point>,
}

impl PolyCurve {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::CurveTooShort(vertices.len()));
        }
        if let Some(i) = vertices.windows(2).position(|w| w[0].x >= w[1].x) {
            return Err(Error::NonIncreasingAbscissa { index: i + 1 });
        }
        Ok(PolyCurve { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.vertices.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn slopes(&self) -> Vec<Rational> {
        self.segments()
            .map(|(a, b)| (&b.y - &a.y) / (&b.x - &a.x))
            .collect()
    }

    /// `[a, b]`, the abscissa range.
    pub fn span(&self) -> (&Rational, &Rational) {
        (
            &self.vertices[0].x,
            &self.vertices[self.vertices.len() - 1].x,
        )
    }

    /// Sum of absolute rises.
    pub fn variation(&self) -> Rational {
        self.segments()
            .fold(Rational::zero(), |acc, (a, b)| acc + abs(&(&b.y - &a.y)))
    }

    /// Point reflection through `center`; the vertex order is reversed to
    /// keep abscissas increasing.
    pub fn reflect_through(&self, center: &Point) -> PolyCurve {
        PolyCurve {
            vertices: self
                .vertices
                .iter()
                .rev()
                .map(|p| p.reflect_through(center))
                .collect(),
        }
    }
}

/// Which side of the apex the curve is watched on. `CurveRight` is the
/// picture with trajectories leaving the apex to the right; `CurveLeft` is
/// the same picture rotated by 180 degrees, with the curve approaching the
/// apex from the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    CurveRight,
    CurveLeft,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Apex {
    pub x: Rational,
    pub y: Rational,
    pub orientation: Orientation,
}

impl Apex {
    pub fn right(x: Rational, y: Rational) -> Self {
        Apex {
            x,
            y,
            orientation: Orientation::CurveRight,
        }
    }

    pub fn left(x: Rational, y: Rational) -> Self {
        Apex {
            x,
            y,
            orientation: Orientation::CurveLeft,
        }
    }

    fn point(&self) -> Point {
        Point::new(self.x.clone(), self.y.clone())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GapCount {
    pub total: u32,
    pub upcrossings: u32,
    pub downcrossings: u32,
    /// The apex lies on the curve; coincident points were skipped.
    pub apex_on_curve: bool,
}

/// Position of a curve point relative to the gap seen from an apex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChordClass {
    /// Chord slope strictly below `alpha`.
    Low,
    /// Chord slope within `[alpha, beta]`.
    Mid,
    /// Chord slope strictly above `beta`.
    High,
}

/// Chord slope from an apex, with vertical chords mapped to infinities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Slope {
    pub fn classify(&self, band: &SlopeBand) -> ChordClass {
        match self {
            Slope::NegInf => ChordClass::Low,
            Slope::PosInf => ChordClass::High,
            Slope::Finite(s) if s < band.alpha() => ChordClass::Low,
            Slope::Finite(s) if s > band.beta() => ChordClass::High,
            Slope::Finite(_) => ChordClass::Mid,
        }
    }
}

/// `tau(s)`: `s - alpha` above the band, `beta - alpha` inside it,
/// `beta - s` below it.
pub fn tau(band: &SlopeBand, s: &Rational) -> Rational {
    if s >= band.beta() {
        s - band.alpha()
    } else if s <= band.alpha() {
        band.beta() - s
    } else {
        band.width()
    }
}

/// Vertical gate at `b.x` that every slope-constrained trajectory crossing
/// segment `ab` must also meet. Its length is `tau(slope) * dx`.
pub fn verticalize(band: &SlopeBand, a: &Point, b: &Point) -> Result<Gate> {
    if a.x >= b.x {
        return Err(Error::DegenerateSegment);
    }
    let dx = &b.x - &a.x;
    let low = min(&b.y, &(&a.y + band.alpha() * &dx));
    let high = max(&b.y, &(&a.y + band.beta() * &dx));
    Gate::new(b.x.clone(), low, high)
}

/// One gate per segment.
pub fn curve_to_gates(band: &SlopeBand, curve: &PolyCurve) -> GateConfig {
    GateConfig::new(
        curve
            .segments()
            .map(|(a, b)| verticalize(band, a, b).expect("abscissas increase"))
            .collect(),
    )
}

/// `(1 / (beta - alpha)) * sum of tau(s_i) * dx_i`.
pub fn bishop_rhs(band: &SlopeBand, curve: &PolyCurve) -> Rational {
    let total = curve
        .segments()
        .zip(curve.slopes())
        .fold(Rational::zero(), |acc, ((a, b), s)| {
            acc + tau(band, &s) * (&b.x - &a.x)
        });
    total / band.width()
}

/// `(Var(y) + (|alpha| + |beta|) * (b - a)) / (beta - alpha)`, an upper
/// bound for [`bishop_rhs`] because `tau(s) <= |s| + |alpha| + |beta|`.
pub fn variation_bound(band: &SlopeBand, curve: &PolyCurve) -> Rational {
    let (a, b) = curve.span();
    (curve.variation() + (abs(band.alpha()) + abs(band.beta())) * (b - a)) / band.width()
}

pub(crate) fn chord_slope(apex: &Point, p: &Point, orientation: Orientation) -> Option<Slope> {
    let dx = &p.x - &apex.x;
    let dy = &p.y - &apex.y;
    if dx.is_zero() {
        // Seen from the right a point straight above the apex is the limit of
        // slopes -> +inf; seen from the left the same point is the limit -> -inf.
        return match (dy.cmp(&Rational::zero()), orientation) {
            (Ordering::Equal, _) => None,
            (Ordering::Greater, Orientation::CurveRight)
            | (Ordering::Less, Orientation::CurveLeft) => Some(Slope::PosInf),
            _ => Some(Slope::NegInf),
        };
    }
    Some(Slope::Finite(dy / dx))
}

fn point_on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    if p.x < a.x || p.x > b.x {
        return false;
    }
    (&b.x - &a.x) * (&p.y - &a.y) == (&b.y - &a.y) * (&p.x - &a.x)
}

/// The part of the curve on the watched side of the apex, as points in
/// left-to-right order: every vertex on that side, plus the point where the
/// curve meets the apex's vertical line when a segment straddles it.
pub(crate) fn watched_points(curve: &PolyCurve, apex: &Apex) -> Vec<Point> {
    let x0 = &apex.x;
    let on_side = |p: &Point| match apex.orientation {
        Orientation::CurveRight => &p.x >= x0,
        Orientation::CurveLeft => &p.x <= x0,
    };
    let mut out = Vec::new();
    for (i, v) in curve.vertices.iter().enumerate() {
        if i > 0 {
            let u = &curve.vertices[i - 1];
            if &u.x < x0 && x0 < &v.x {
                let t = (x0 - &u.x) / (&v.x - &u.x);
                let y = &u.y + (&v.y - &u.y) * t;
                let clip = Point::new(x0.clone(), y);
                if apex.orientation == Orientation::CurveRight {
                    out.push(clip);
                } else {
                    out.push(clip);
                    break;
                }
            }
        }
        if on_side(v) {
            out.push(v.clone());
        }
    }
    out
}

fn count_switches(classes: impl Iterator<Item = ChordClass>) -> (u32, u32) {
    let mut up = 0;
    let mut down = 0;
    let mut last: Option<ChordClass> = None;
    for c in classes.filter(|c| *c != ChordClass::Mid) {
        match (last, c) {
            (Some(ChordClass::Low), ChordClass::High) => up += 1,
            (Some(ChordClass::High), ChordClass::Low) => down += 1,
            _ => {}
        }
        last = Some(c);
    }
    (up, down)
}

/// Number of alternations of the curve between "below the `alpha`-ray" and
/// "above the `beta`-ray" as seen from `apex`. Upcrossings go from low to
/// high in left-to-right order.
///
/// Only vertices (and the clip point at the apex abscissa) are classified:
/// along a straight segment that avoids the apex, the chord slope is
/// monotone, so interior points cannot add alternations.
pub fn gap_crossings(band: &SlopeBand, apex: &Apex, curve: &PolyCurve) -> GapCount {
    let ap = apex.point();
    let pts = watched_points(curve, apex);
    let mut apex_on_curve = false;
    let classes: Vec<ChordClass> = pts
        .iter()
        .filter_map(|p| match chord_slope(&ap, p, apex.orientation) {
            None => {
                apex_on_curve = true;
                None
            }
            Some(s) => Some(s.classify(band)),
        })
        .collect();
    if !apex_on_curve {
        apex_on_curve = curve.segments().any(|(a, b)| point_on_segment(&ap, a, b));
    }
    let (up, down) = count_switches(classes.into_iter());
    GapCount {
        total: up + down,
        upcrossings: up,
        downcrossings: down,
        apex_on_curve,
    }
}

/// Heights at which the class of some watched point changes for an apex on
/// the vertical line `x` (curve to the right).
fn critical_heights(band: &SlopeBand, curve: &PolyCurve, x: &Rational) -> Vec<Rational> {
    let apex = Apex::right(x.clone(), Rational::zero());
    let mut ys: Vec<Rational> = Vec::new();
    for p in watched_points(curve, &apex) {
        if &p.x == x {
            ys.push(p.y.clone());
        } else {
            let dx = &p.x - x;
            ys.push(&p.y - band.alpha() * &dx);
            ys.push(&p.y - band.beta() * &dx);
        }
    }
    ys.sort();
    ys.dedup();
    ys
}

/// `T(x) = max over y of gap_crossings` with a right-facing apex at `(x, y)`.
pub fn t_gap(band: &SlopeBand, curve: &PolyCurve, x: &Rational) -> u32 {
    let ys = critical_heights(band, curve, x);
    let (Some(first), Some(last)) = (ys.first(), ys.last()) else {
        return 0;
    };
    let mut probes: Vec<Rational> = Vec::with_capacity(2 * ys.len() + 1);
    probes.push(first - int(1));
    probes.push(last + int(1));
    for w in ys.windows(2) {
        probes.push(midpoint(&w[0], &w[1]));
    }
    probes.extend(ys.iter().cloned());
    probes
        .into_iter()
        .map(|y| gap_crossings(band, &Apex::right(x.clone(), y), curve).total)
        .max()
        .unwrap_or(0)
}

/// Open interval of abscissas on which [`t_gap`] is constant.
/// `None` bounds are infinite.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GapCell {
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
}

impl GapCell {
    pub fn width(&self) -> Option<Rational> {
        Some(self.hi.as_ref()? - self.lo.as_ref()?)
    }
}

/// Lines `y = intercept + slope * x` in the apex plane across which the
/// class of a watched point flips, for apexes strictly inside one strip
/// between consecutive vertex abscissas.
fn strip_lines(band: &SlopeBand, curve: &PolyCurve, strip: usize) -> Vec<(Rational, Rational)> {
    // strip j: apex abscissa in (x_{j-1}, x_j); strip 0 is left of the curve
    let v = curve.vertices();
    let mut lines = Vec::new();
    for p in &v[strip..] {
        lines.push((band.alpha().clone(), &p.y - band.alpha() * &p.x));
        lines.push((band.beta().clone(), &p.y - band.beta() * &p.x));
    }
    if strip > 0 {
        let (a, b) = (&v[strip - 1], &v[strip]);
        let s = (&b.y - &a.y) / (&b.x - &a.x);
        let c = &a.y - &s * &a.x;
        lines.push((s, c));
    }
    lines.sort();
    lines.dedup();
    lines
}

/// Sorted abscissas in the open strip where two flip lines cross.
fn strip_breakpoints(band: &SlopeBand, curve: &PolyCurve, strip: usize) -> Vec<Rational> {
    let v = curve.vertices();
    let lo = strip.checked_sub(1).map(|j| &v[j].x);
    let hi = v.get(strip).map(|p| &p.x);
    let lines = strip_lines(band, curve, strip);
    let mut xs = BTreeSet::new();
    for (i, (s1, c1)) in lines.iter().enumerate() {
        for (s2, c2) in &lines[i + 1..] {
            if s1 == s2 {
                continue;
            }
            let x = (c2 - c1) / (s1 - s2);
            if lo.is_none_or(|l| &x > l) && hi.is_none_or(|h| &x < h) {
                xs.insert(x);
            }
        }
    }
    xs.into_iter().collect()
}

fn strip_of(curve: &PolyCurve, x: &Rational) -> std::result::Result<usize, ()> {
    // Ok(j): x strictly inside strip j; Err: x is a vertex abscissa
    let v = curve.vertices();
    let j = v.partition_point(|p| &p.x < x);
    if v.get(j).is_some_and(|p| &p.x == x) {
        Err(())
    } else {
        Ok(j)
    }
}

/// The maximal open interval around `x` on which [`t_gap`] is constant, or
/// `None` when `x` itself is a breakpoint.
///
/// Inside a strip between consecutive vertex abscissas the watched points
/// are fixed, and the class of each flips only across a line in the apex
/// plane. Between consecutive crossing abscissas of those lines the
/// vertical order of the lines is fixed, so the set of faces met by the
/// vertical line through the apex (and hence the maximum) is fixed.
pub fn gap_cell(band: &SlopeBand, curve: &PolyCurve, x: &Rational) -> Option<GapCell> {
    let v = curve.vertices();
    let strip = strip_of(curve, x).ok()?;
    if strip == v.len() {
        return Some(GapCell {
            lo: Some(v[v.len() - 1].x.clone()),
            hi: None,
        });
    }
    let bps = strip_breakpoints(band, curve, strip);
    let k = bps.partition_point(|b| b < x);
    if bps.get(k) == Some(x) {
        return None;
    }
    let lo = if k > 0 {
        Some(bps[k - 1].clone())
    } else {
        strip.checked_sub(1).map(|j| v[j].x.clone())
    };
    let hi = bps.get(k).cloned().or_else(|| Some(v[strip].x.clone()));
    Some(GapCell { lo, hi })
}

/// Exact `integral of t_gap(x) dx`, cell by cell.
pub fn gap_integral_exact(band: &SlopeBand, curve: &PolyCurve) -> Result<Rational> {
    let v = curve.vertices();
    let mut total = Rational::zero();
    for strip in 0..v.len() {
        let mut edges = strip_breakpoints(band, curve, strip);
        if strip > 0 {
            edges.insert(0, v[strip - 1].x.clone());
        }
        edges.push(v[strip].x.clone());
        if strip == 0 {
            let probe = &edges[0] - int(1);
            let value = t_gap(band, curve, &probe);
            if value != 0 {
                return Err(Error::Invariant(format!(
                    "gap count {value} on an unbounded cell left of {}",
                    edges[0]
                )));
            }
        }
        for w in edges.windows(2) {
            let value = t_gap(band, curve, &midpoint(&w[0], &w[1]));
            total += (&w[1] - &w[0]) * Rational::from_integer(value.into());
        }
    }
    Ok(total)
}

/// Exact integral of [`t_gap`] over the cells hit by `sample_xs`. A lower
/// bound on the full integral; samples sitting on a breakpoint contribute
/// nothing.
pub fn sampled_gap_lower(
    band: &SlopeBand,
    curve: &PolyCurve,
    sample_xs: &[Rational],
) -> Result<Rational> {
    let mut seen = BTreeSet::new();
    let mut total = Rational::zero();
    for x in sample_xs {
        let Some(cell) = gap_cell(band, curve, x) else {
            continue;
        };
        if !seen.insert(cell.clone()) {
            continue;
        }
        let value = t_gap(band, curve, x);
        if value == 0 {
            continue;
        }
        let width = cell.width().ok_or_else(|| {
            Error::Invariant(format!("gap count {value} on an unbounded cell at x = {x}"))
        })?;
        total += width * Rational::from_integer(value.into());
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BishopReport {
    pub rhs: Rational,
    pub gate_lhs: Rational,
    pub sampled_lower: Rational,
    pub ok: bool,
}

/// Checks `sampled_lower <= gate_lhs <= rhs`: a sampled lower bound on the
/// integral of the gap count, the exact integral of `T` for the
/// verticalized gates (which dominates the gap count pointwise), and the
/// `tau` bound.
pub fn verify_bishop(
    band: &SlopeBand,
    curve: &PolyCurve,
    sample_xs: &[Rational],
) -> Result<BishopReport> {
    let rhs = bishop_rhs(band, curve);
    let gate_lhs = sweep(&curve_to_gates(band, curve), band).integral_t();
    let sampled_lower = sampled_gap_lower(band, curve, sample_xs)?;
    let ok = sampled_lower <= gate_lhs && gate_lhs <= rhs;
    Ok(BishopReport {
        rhs,
        gate_lhs,
        sampled_lower,
        ok,
    })
}

/// `count` equally spaced abscissas covering the support of the
/// verticalized gates' `T`, endpoints included.
pub fn default_samples(band: &SlopeBand, curve: &PolyCurve, count: usize) -> Vec<Rational> {
    let field = sweep(&curve_to_gates(band, curve), band);
    let (Some(lo), Some(hi)) = (field.x_dead(), field.max_gate_x()) else {
        return Vec::new();
    };
    equally_spaced(lo, hi, count)
}

pub fn equally_spaced(lo: &Rational, hi: &Rational, count: usize) -> Vec<Rational> {
    match count {
        0 => Vec::new(),
        1 => vec![midpoint(lo, hi)],
        n => {
            let step = (hi - lo) / Rational::from_integer((n as i64 - 1).into());
            (0..n)
                .map(|i| lo + &step * Rational::from_integer((i as i64).into()))
                .collect()
        }
    }
}

impl GapCount {
    /// Sanity check: up and down counts alternate.
    pub fn is_balanced(&self) -> bool {
        self.upcrossings.abs_diff(self.downcrossings) <= 1
            && self.total == self.upcrossings + self.downcrossings
    }
}
