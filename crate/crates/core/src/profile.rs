//! Piecewise-constant, nonnegative, integer-valued functions of one
//! variable with finite support.
//!
//! A [`StepProfile`] is stored as its nested superlevel sets
//! `S_k = {y : f(y) >= k}`, each a sorted list of pairwise disjoint closed
//! intervals separated by gaps of positive length. This is the upper
//! semicontinuous representative: at a breakpoint the value is the maximum
//! of the neighbouring values, and a degenerate interval `[p, p]` carries a
//! value at a single point. Sliding-window minimum acts on each component
//! independently (`[p, q] -> [p - lo, q - hi]`), which is why this
//! representation is used instead of a breakpoint/value list.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{max, midpoint, min, Rational};

/// Closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Interval { lo, hi })
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, y: &Rational) -> bool {
        &self.lo <= y && y <= &self.hi
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct StepProfile {
    // levels[k] is the superlevel set for value >= k + 1.
    levels: Vec<Vec<Interval>>,
}

/// Sorts and merges overlapping or touching intervals.
fn normalize(mut v: Vec<Interval>) -> Vec<Interval> {
    v.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
    let mut out: Vec<Interval> = Vec::with_capacity(v.len());
    for iv in v {
        match out.last_mut() {
            Some(last) if iv.lo <= last.hi => {
                if iv.hi > last.hi {
                    last.hi = iv.hi;
                }
            }
            _ => out.push(iv),
        }
    }
    out
}

fn intersect(level: &[Interval], with: &Interval) -> Vec<Interval> {
    level
        .iter()
        .filter_map(|iv| {
            let lo = max(&iv.lo, &with.lo);
            let hi = min(&iv.hi, &with.hi);
            (lo <= hi).then_some(Interval { lo, hi })
        })
        .collect()
}

impl StepProfile {
    pub fn zero() -> Self {
        StepProfile::default()
    }

    /// Indicator of the closed interval `[lo, hi]`.
    pub fn indicator(lo: Rational, hi: Rational) -> Result<Self> {
        let iv = Interval::new(lo, hi)?;
        Ok(StepProfile {
            levels: vec![vec![iv]],
        })
    }

    /// Builds a profile from a breakpoint list and one value per open
    /// interval between consecutive breakpoints. The value at a breakpoint
    /// is taken to be the maximum of its neighbours.
    pub fn from_pieces(breakpoints: &[Rational], values: &[u32]) -> Result<Self> {
        if breakpoints.is_empty() && values.is_empty() {
            return Ok(Self::zero());
        }
        if values.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidProfile(format!(
                "{} breakpoints need {} values, got {}",
                breakpoints.len(),
                breakpoints.len().saturating_sub(1),
                values.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidProfile(
                "breakpoints must strictly increase".into(),
            ));
        }
        let top = values.iter().copied().max().unwrap_or(0);
        let mut levels = Vec::with_capacity(top as usize);
        for k in 1..=top {
            let mut level = Vec::new();
            let mut run_start: Option<usize> = None;
            for (j, &v) in values.iter().enumerate() {
                match (v >= k, run_start) {
                    (true, None) => run_start = Some(j),
                    (false, Some(s)) => {
                        level.push(Interval {
                            lo: breakpoints[s].clone(),
                            hi: breakpoints[j].clone(),
                        });
                        run_start = None;
                    }
                    _ => {}
                }
            }
            if let Some(s) = run_start {
                level.push(Interval {
                    lo: breakpoints[s].clone(),
                    hi: breakpoints[values.len()].clone(),
                });
            }
            levels.push(level);
        }
        Ok(StepProfile { levels })
    }

    pub(crate) fn from_levels(levels: Vec<Vec<Interval>>) -> Self {
        let mut levels: Vec<Vec<Interval>> = levels.into_iter().map(normalize).collect();
        while levels.last().is_some_and(|l| l.is_empty()) {
            levels.pop();
        }
        StepProfile { levels }
    }

    /// Superlevel sets, lowest level first.
    pub fn levels(&self) -> &[Vec<Interval>] {
        &self.levels
    }

    pub fn is_zero(&self) -> bool {
        self.levels.is_empty()
    }

    /// Re-runs normalization; a no-op on every profile produced by this
    /// module.
    pub fn canonicalize(&self) -> Self {
        Self::from_levels(self.levels.clone())
    }

    /// Iterates over `(level, component)` pairs; levels start at 1.
    pub fn components(&self) -> impl Iterator<Item = (u32, &Interval)> {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(k, l)| l.iter().map(move |iv| (k as u32 + 1, iv)))
    }

    pub fn component_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn value_at(&self, y: &Rational) -> u32 {
        let zero = Rational::zero();
        self.eroded_value_at(y, &zero, &zero)
    }

    /// Value at `y` of `self.erode(lo, hi)` without materializing the
    /// eroded profile.
    pub fn eroded_value_at(&self, y: &Rational, lo: &Rational, hi: &Rational) -> u32 {
        let mut value = 0;
        for level in &self.levels {
            // first component whose eroded right end reaches y
            let idx = level.partition_point(|iv| &(&iv.hi - hi) < y);
            let hit = level
                .get(idx)
                .is_some_and(|iv| &(&iv.lo - lo) <= y && &iv.lo - lo <= &iv.hi - hi);
            if !hit {
                break;
            }
            value += 1;
        }
        value
    }

    /// Sliding-window minimum: `result(y) = min { self(u) : u in [y + lo, y + hi] }`.
    pub fn erode(&self, lo: &Rational, hi: &Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidWindow {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        let levels = self
            .levels
            .iter()
            .map(|level| {
                level
                    .iter()
                    .filter_map(|iv| {
                        let p = &iv.lo - lo;
                        let q = &iv.hi - hi;
                        (p <= q).then_some(Interval { lo: p, hi: q })
                    })
                    .collect()
            })
            .collect();
        Ok(Self::from_levels(levels))
    }

    /// Adds the indicator of `[m, top]`.
    pub fn add_indicator(&self, m: &Rational, top: &Rational) -> Result<Self> {
        let ind = Interval::new(m.clone(), top.clone())?;
        let n = self.levels.len();
        let mut levels = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut next = self.levels.get(k).cloned().unwrap_or_default();
            if k == 0 {
                next.push(ind.clone());
            } else {
                next.extend(intersect(&self.levels[k - 1], &ind));
            }
            levels.push(next);
        }
        Ok(Self::from_levels(levels))
    }

    pub fn integral(&self) -> Rational {
        self.components()
            .fold(Rational::zero(), |acc, (_, iv)| acc + iv.width())
    }

    pub fn max_value(&self) -> u32 {
        self.levels.len() as u32
    }

    /// Widest component of level `k` (1-based), if the level is nonempty.
    pub fn level_max_width(&self, k: u32) -> Option<Rational> {
        let level = self.levels.get(k.checked_sub(1)? as usize)?;
        level.iter().map(Interval::width).max()
    }

    /// Breakpoint/value view: strictly increasing breakpoints and the value
    /// on each open interval between consecutive ones. Adjacent intervals
    /// with equal values are merged unless the shared breakpoint carries a
    /// larger point value.
    pub fn pieces(&self) -> (Vec<Rational>, Vec<u32>) {
        let mut pts: Vec<Rational> = self
            .components()
            .flat_map(|(_, iv)| [iv.lo.clone(), iv.hi.clone()])
            .collect();
        pts.sort();
        pts.dedup();
        if pts.len() < 2 {
            return (pts, Vec::new());
        }
        let mut bps = vec![pts[0].clone()];
        let mut vals: Vec<u32> = Vec::new();
        for w in pts.windows(2) {
            let v = self.value_at(&midpoint(&w[0], &w[1]));
            let at_last = self.value_at(bps.last().unwrap());
            if vals.last() == Some(&v) && at_last == v {
                *bps.last_mut().unwrap() = w[1].clone();
            } else {
                vals.push(v);
                bps.push(w[1].clone());
            }
        }
        (bps, vals)
    }
}
