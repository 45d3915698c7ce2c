//! The anti-slalom game: a player starts at `(x, y)`, moves right with
//! slope confined to `[alpha, beta]`, and tries to miss as many vertical
//! gates as possible.
//!
//! [`sweep`] computes the game value `t(x, y)` for every start point with a
//! right-to-left moving line. Between gate abscissas the profile
//! `y -> t(x, y)` is eroded by the window `[alpha * dx, beta * dx]`; at a
//! gate abscissa the gate's indicator is added. [`oracle_min_crossings`] is
//! an independent forward enumeration used to check the sweep.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::profile::StepProfile;
use crate::rational::Rational;

/// Closed vertical segment `[m, top]` at abscissa `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub x: Rational,
    pub m: Rational,
    pub top: Rational,
}

impl Gate {
    pub fn new(x: Rational, m: Rational, top: Rational) -> Result<Self> {
        if m > top {
            return Err(Error::InvalidGate {
                x: x.to_string(),
                m: m.to_string(),
                top: top.to_string(),
            });
        }
        Ok(Gate { x, m, top })
    }

    pub fn length(&self) -> Rational {
        &self.top - &self.m
    }
}

/// Admissible slopes `[alpha, beta]`, `alpha < beta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlopeBand {
    alpha: Rational,
    beta: Rational,
}

impl SlopeBand {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self> {
        if alpha >= beta {
            return Err(Error::InvalidBand {
                alpha: alpha.to_string(),
                beta: beta.to_string(),
            });
        }
        Ok(SlopeBand { alpha, beta })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn width(&self) -> Rational {
        &self.beta - &self.alpha
    }

    pub fn contains(&self, s: &Rational) -> bool {
        &self.alpha <= s && s <= &self.beta
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GateConfig {
    pub gates: Vec<Gate>,
}

impl GateConfig {
    pub fn new(gates: Vec<Gate>) -> Self {
        GateConfig { gates }
    }

    pub fn total_length(&self) -> Rational {
        self.gates
            .iter()
            .fold(Rational::zero(), |acc, g| acc + g.length())
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

/// Profile of `t(x_right, .)` at one distinct gate abscissa, gates at
/// `x_right` included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slab {
    pub x_right: Rational,
    pub profile: StepProfile,
}

/// A superlevel component shrinking to nothing while the line moves left.
/// At `x` the component is a single point; left of `x` it is gone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeathEvent {
    pub x: Rational,
    pub level: u32,
    pub width: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingField {
    band: SlopeBand,
    slabs: Vec<Slab>,
    x_dead: Option<Rational>,
    deaths: Vec<DeathEvent>,
}

/// Piece of `T(x) = max_y t(x, y)` on the closed interval `[from, to]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSegment {
    pub from: Rational,
    pub to: Rational,
    pub value: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateReport {
    pub lhs: Rational,
    pub rhs: Rational,
    pub slack: Rational,
}

fn death_abscissa(x_right: &Rational, width: &Rational, band: &SlopeBand) -> Rational {
    x_right - width / band.width()
}

/// Runs the moving-line sweep over all gates.
pub fn sweep(config: &GateConfig, band: &SlopeBand) -> CrossingField {
    let mut gates: Vec<&Gate> = config.gates.iter().collect();
    gates.sort_by(|a, b| b.x.cmp(&a.x));

    let mut slabs: Vec<Slab> = Vec::new();
    let mut deaths = Vec::new();
    let mut i = 0;
    while i < gates.len() {
        let x = gates[i].x.clone();
        let mut profile = match slabs.last() {
            None => StepProfile::zero(),
            Some(prev) => {
                let dx = &prev.x_right - &x;
                let reach = band.width() * &dx;
                for (level, iv) in prev.profile.components() {
                    let w = iv.width();
                    if w < reach {
                        deaths.push(DeathEvent {
                            x: death_abscissa(&prev.x_right, &w, band),
                            level,
                            width: w,
                        });
                    }
                }
                prev.profile
                    .erode(&(band.alpha() * &dx), &(band.beta() * &dx))
                    .expect("alpha < beta and dx > 0")
            }
        };
        while i < gates.len() && gates[i].x == x {
            profile = profile
                .add_indicator(&gates[i].m, &gates[i].top)
                .expect("gate endpoints validated");
            i += 1;
        }
        slabs.push(Slab {
            x_right: x,
            profile,
        });
    }

    let mut x_dead = None;
    if let Some(last) = slabs.last() {
        for (level, iv) in last.profile.components() {
            let w = iv.width();
            deaths.push(DeathEvent {
                x: death_abscissa(&last.x_right, &w, band),
                level,
                width: w,
            });
        }
        x_dead = last
            .profile
            .level_max_width(1)
            .map(|w| death_abscissa(&last.x_right, &w, band));
    }

    CrossingField {
        band: band.clone(),
        slabs,
        x_dead,
        deaths,
    }
}

impl CrossingField {
    pub fn band(&self) -> &SlopeBand {
        &self.band
    }

    /// Slabs by decreasing abscissa.
    pub fn slabs(&self) -> &[Slab] {
        &self.slabs
    }

    /// Left end of the support; `None` for an empty configuration.
    pub fn x_dead(&self) -> Option<&Rational> {
        self.x_dead.as_ref()
    }

    pub fn max_gate_x(&self) -> Option<&Rational> {
        self.slabs.first().map(|s| &s.x_right)
    }

    pub fn deaths(&self) -> &[DeathEvent] {
        &self.deaths
    }

    /// The slab governing abscissa `x` together with the distance to its
    /// right edge.
    fn slab_for(&self, x: &Rational) -> Option<(&Slab, Rational)> {
        // slabs are sorted by decreasing x_right; take the last one with x_right >= x
        let idx = self.slabs.partition_point(|s| &s.x_right >= x);
        let slab = self.slabs.get(idx.checked_sub(1)?)?;
        Some((slab, &slab.x_right - x))
    }

    /// The profile `y -> t(x, y)`.
    pub fn profile_at(&self, x: &Rational) -> StepProfile {
        match self.slab_for(x) {
            None => StepProfile::zero(),
            Some((slab, dx)) => slab
                .profile
                .erode(&(self.band.alpha() * &dx), &(self.band.beta() * &dx))
                .expect("dx >= 0"),
        }
    }

    /// Game value `t(x, y)`; a gate at abscissa `x` itself counts.
    pub fn t_eval(&self, x: &Rational, y: &Rational) -> u32 {
        match self.slab_for(x) {
            None => 0,
            Some((slab, dx)) => slab.profile.eroded_value_at(
                y,
                &(self.band.alpha() * &dx),
                &(self.band.beta() * &dx),
            ),
        }
    }

    /// `T(x) = max_y t(x, y)`, exact at every abscissa including gate
    /// abscissas and death points.
    pub fn t_max_at(&self, x: &Rational) -> u32 {
        self.profile_at(x).max_value()
    }

    /// `I(x) = integral of t(x, .) dy`.
    pub fn integral_at(&self, x: &Rational) -> Rational {
        self.profile_at(x).integral()
    }

    /// `T` as nonzero pieces of positive length, sorted by `from`; adjacent
    /// pieces with equal values are merged. Isolated points where `T`
    /// exceeds both neighbours (degenerate gates) are not listed;
    /// [`CrossingField::t_max_at`] reports them.
    pub fn t_profile(&self) -> Vec<TSegment> {
        let reach_rate = self.band.width();
        let mut pieces: Vec<TSegment> = Vec::new();
        for (j, slab) in self.slabs.iter().enumerate() {
            let x_left = self.slabs.get(j + 1).map(|s| &s.x_right);
            // level k stays alive on [x_right - w_k / (beta - alpha), x_right];
            // w_k is nonincreasing in k because levels are nested.
            let mut alive_from: Vec<Rational> = (1..=slab.profile.max_value())
                .map(|k| {
                    let w = slab.profile.level_max_width(k).expect("level nonempty");
                    &slab.x_right - w / &reach_rate
                })
                .collect();
            if let Some(xl) = x_left {
                for a in alive_from.iter_mut() {
                    if &*a < xl {
                        *a = xl.clone();
                    }
                }
            }
            // T = k on [alive_from[k-1], alive_from[k]] (alive_from[max] = x_right)
            let n = alive_from.len();
            let mut local = Vec::new();
            for k in 1..=n {
                let from = alive_from[k - 1].clone();
                let to = if k < n {
                    alive_from[k].clone()
                } else {
                    slab.x_right.clone()
                };
                if from < to {
                    local.push(TSegment {
                        from,
                        to,
                        value: k as u32,
                    });
                }
            }
            // slabs run right to left; collect and sort at the end
            pieces.extend(local);
        }
        pieces.sort_by(|a, b| a.from.cmp(&b.from));
        let mut merged: Vec<TSegment> = Vec::with_capacity(pieces.len());
        for p in pieces {
            match merged.last_mut() {
                Some(last) if last.to == p.from && last.value == p.value => last.to = p.to,
                _ => merged.push(p),
            }
        }
        merged
    }

    /// Exact `integral of T(x) dx`.
    pub fn integral_t(&self) -> Rational {
        self.t_profile().iter().fold(Rational::zero(), |acc, s| {
            acc + (&s.to - &s.from) * Rational::from_integer(s.value.into())
        })
    }

    /// Exact integral of `T` over `[lo, hi]`.
    pub fn integral_t_between(&self, lo: &Rational, hi: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for s in self.t_profile() {
            let a = if &s.from > lo { &s.from } else { lo };
            let b = if &s.to < hi { &s.to } else { hi };
            if a < b {
                acc += (b - a) * Rational::from_integer(s.value.into());
            }
        }
        acc
    }
}

/// Left side and right side of the crossing inequality for gates,
/// `integral T <= total_length / (beta - alpha)`.
pub fn verify_gate_inequality(config: &GateConfig, band: &SlopeBand) -> Result<GateReport> {
    let field = sweep(config, band);
    let lhs = field.integral_t();
    let rhs = config.total_length() / band.width();
    let slack = &rhs - &lhs;
    if slack.is_negative() {
        return Err(Error::Invariant(format!(
            "gate crossing inequality fails: lhs {lhs} > rhs {rhs}"
        )));
    }
    Ok(GateReport { lhs, rhs, slack })
}

/// Largest number of gates the enumeration oracle accepts.
pub const ORACLE_GATE_LIMIT: usize = 12;

/// Set of reachable heights on one vertical line, with exact open/closed
/// endpoints. Always nonempty.
#[derive(Clone, Debug)]
struct Reach {
    lo: Rational,
    lo_closed: bool,
    hi: Rational,
    hi_closed: bool,
}

impl Reach {
    fn point(y: &Rational) -> Self {
        Reach {
            lo: y.clone(),
            lo_closed: true,
            hi: y.clone(),
            hi_closed: true,
        }
    }

    fn checked(self) -> Option<Self> {
        match self.lo.cmp(&self.hi) {
            Ordering::Less => Some(self),
            Ordering::Equal if self.lo_closed && self.hi_closed => Some(self),
            _ => None,
        }
    }

    fn advance(&self, dx: &Rational, band: &SlopeBand) -> Self {
        Reach {
            lo: &self.lo + band.alpha() * dx,
            lo_closed: self.lo_closed,
            hi: &self.hi + band.beta() * dx,
            hi_closed: self.hi_closed,
        }
    }

    fn with_lower(&self, v: &Rational, closed: bool) -> Option<Self> {
        let mut r = self.clone();
        match v.cmp(&self.lo) {
            Ordering::Greater => {
                r.lo = v.clone();
                r.lo_closed = closed;
            }
            Ordering::Equal => r.lo_closed &= closed,
            Ordering::Less => {}
        }
        r.checked()
    }

    fn with_upper(&self, v: &Rational, closed: bool) -> Option<Self> {
        let mut r = self.clone();
        match v.cmp(&self.hi) {
            Ordering::Less => {
                r.hi = v.clone();
                r.hi_closed = closed;
            }
            Ordering::Equal => r.hi_closed &= closed,
            Ordering::Greater => {}
        }
        r.checked()
    }
}

/// Minimal crossings from `(x, y)` by exhaustive enumeration: each gate at
/// or right of `x` is either crossed, passed strictly above, or passed
/// strictly below, and the reachable interval is propagated forward
/// exactly. Exponential in the number of relevant gates.
pub fn oracle_min_crossings(
    config: &GateConfig,
    band: &SlopeBand,
    x: &Rational,
    y: &Rational,
) -> Result<u32> {
    let mut gates: Vec<&Gate> = config.gates.iter().filter(|g| &g.x >= x).collect();
    if gates.len() > ORACLE_GATE_LIMIT {
        return Err(Error::OracleBudget {
            gates: gates.len(),
            limit: ORACLE_GATE_LIMIT,
        });
    }
    gates.sort_by(|a, b| a.x.cmp(&b.x));

    fn search(
        gates: &[&Gate],
        band: &SlopeBand,
        at: &Rational,
        reach: Reach,
        crossed: u32,
        best: &mut u32,
    ) {
        if crossed >= *best {
            return;
        }
        let Some((g, rest)) = gates.split_first() else {
            *best = crossed;
            return;
        };
        let reach = reach.advance(&(&g.x - at), band);
        if let Some(r) = reach.with_lower(&g.top, false) {
            search(rest, band, &g.x, r, crossed, best);
        }
        if let Some(r) = reach.with_upper(&g.m, false) {
            search(rest, band, &g.x, r, crossed, best);
        }
        if let Some(r) = reach
            .with_lower(&g.m, true)
            .and_then(|r| r.with_upper(&g.top, true))
        {
            search(rest, band, &g.x, r, crossed + 1, best);
        }
    }

    let mut best = u32::MAX;
    search(&gates, band, x, Reach::point(y), 0, &mut best);
    debug_assert!(best != u32::MAX, "crossing every gate is always feasible");
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn gate(x: Rational, m: Rational, top: Rational) -> Gate {
        Gate::new(x, m, top).unwrap()
    }

    fn unit_band() -> SlopeBand {
        SlopeBand::new(int(0), int(1)).unwrap()
    }

    fn single() -> GateConfig {
        GateConfig::new(vec![gate(int(0), int(0), int(1))])
    }

    #[test]
    fn band_must_be_strict() {
        assert!(SlopeBand::new(int(1), int(1)).is_err());
        assert!(SlopeBand::new(int(2), int(1)).is_err());
        assert!(Gate::new(int(0), int(2), int(1)).is_err());
    }

    #[test]
    fn single_gate_triangle() {
        let f = sweep(&single(), &unit_band());
        assert_eq!(
            f.profile_at(&int(0)),
            StepProfile::indicator(int(0), int(1)).unwrap()
        );
        assert_eq!(
            f.profile_at(&rat(-1, 2)),
            StepProfile::indicator(int(0), rat(1, 2)).unwrap()
        );
        assert!(f.profile_at(&rat(-101, 100)).is_zero());
        assert_eq!(f.x_dead(), Some(&int(-1)));
        assert_eq!(f.t_eval(&int(-2), &int(0)), 0);
        assert_eq!(f.t_eval(&int(0), &rat(1, 2)), 1);
        assert_eq!(f.t_eval(&int(-1), &int(0)), 1);
        assert_eq!(f.t_eval(&rat(1, 100), &rat(1, 2)), 0);
        assert_eq!(
            f.t_profile(),
            vec![TSegment {
                from: int(-1),
                to: int(0),
                value: 1
            }]
        );
        assert_eq!(f.integral_t(), int(1));
        assert_eq!(f.deaths().len(), 1);
        assert_eq!(f.deaths()[0].x, int(-1));
    }

    #[test]
    fn empty_config_is_zero() {
        let f = sweep(&GateConfig::default(), &unit_band());
        assert!(f.slabs().is_empty());
        assert_eq!(f.x_dead(), None);
        assert_eq!(f.t_eval(&int(0), &int(0)), 0);
        assert!(f.t_profile().is_empty());
        assert_eq!(f.integral_t(), int(0));
        let r = verify_gate_inequality(&GateConfig::default(), &unit_band()).unwrap();
        assert_eq!((r.lhs, r.rhs, r.slack), (int(0), int(0), int(0)));
    }

    #[test]
    fn single_gate_equality() {
        let r = verify_gate_inequality(&single(), &unit_band()).unwrap();
        assert_eq!(r.slack, int(0));
        assert_eq!(r.lhs, int(1));
    }

    #[test]
    fn shared_abscissa_gates_add_together() {
        let cfg = GateConfig::new(vec![
            gate(int(0), int(0), int(2)),
            gate(int(0), int(1), int(3)),
        ]);
        let f = sweep(&cfg, &unit_band());
        assert_eq!(f.slabs().len(), 1);
        assert_eq!(f.t_eval(&int(0), &rat(3, 2)), 2);
        assert_eq!(f.t_eval(&int(0), &rat(5, 2)), 1);
    }

    #[test]
    fn oracle_basics() {
        let band = unit_band();
        assert_eq!(
            oracle_min_crossings(&single(), &band, &rat(-1, 2), &rat(1, 4)).unwrap(),
            1
        );
        assert_eq!(
            oracle_min_crossings(&single(), &band, &int(1), &int(0)).unwrap(),
            0
        );
        assert_eq!(
            oracle_min_crossings(&single(), &band, &int(-1), &int(0)).unwrap(),
            1
        );
        assert_eq!(
            oracle_min_crossings(&single(), &band, &int(-1), &rat(1, 100)).unwrap(),
            0
        );
    }

    #[test]
    fn oracle_budget_guard() {
        let cfg = GateConfig::new((0..13).map(|i| gate(int(i), int(0), int(1))).collect());
        assert!(matches!(
            oracle_min_crossings(&cfg, &unit_band(), &int(-1), &int(0)),
            Err(Error::OracleBudget { .. })
        ));
        // only gates at or right of the query count toward the budget
        assert!(oracle_min_crossings(&cfg, &unit_band(), &int(2), &int(0)).is_ok());
    }

    #[test]
    fn two_gates_match_oracle() {
        let cfg = GateConfig::new(vec![
            gate(int(0), int(0), int(1)),
            gate(int(2), int(0), int(1)),
        ]);
        let band = unit_band();
        let f = sweep(&cfg, &band);
        let x = int(-1);
        let y = rat(1, 4);
        assert_eq!(
            f.t_eval(&x, &y),
            oracle_min_crossings(&cfg, &band, &x, &y).unwrap()
        );
    }
}
