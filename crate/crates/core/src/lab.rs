//! Desk-scale experiments on pairs of increasing rational sequences
//! `a_n -> A`, `b_n -> B` with known limits: ratio traces, gap crossings
//! of the curve through `(a_n, b_n)` seen from `(A, B)`, the integral test
//! built from the crossing count, and the interval-cover constructions for
//! boundedness, transfer of non-randomness, and acceleration.
//!
//! Randomness of the limits is not decidable; the pairs here are designed
//! so that the hypotheses hold by construction, and what gets checked are
//! the exact inequalities and coverage properties.

use num_traits::{One, Signed, Zero};

use crate::curve::{
    curve_to_gates, equally_spaced, gap_crossings, sampled_gap_lower, t_gap, variation_bound, Apex,
    GapCount, Point, PolyCurve,
};
use crate::error::{Error, Result};
use crate::profile::Interval;
use crate::rational::{abs, max, pow, rat, Rational};
use crate::slalom::{sweep, SlopeBand};

/// How a pair was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `a_i = A - ratio_a^i`, `b_i = B - ratio_b^i`.
    Geometric {
        limit_a: Rational,
        limit_b: Rational,
        ratio_a: Rational,
        ratio_b: Rational,
        len: usize,
    },
    /// `a_i = A - ratio_a^i`, `b_i = kappa * a_i + offset`, `B = kappa * A + offset`.
    Scaled {
        limit_a: Rational,
        kappa: Rational,
        offset: Rational,
        ratio_a: Rational,
        len: usize,
    },
    /// Chord slopes from `(A, B)` alternate across the band `alternations`
    /// times and then stay below it.
    Oscillator {
        limit_a: Rational,
        limit_b: Rational,
        alpha: Rational,
        beta: Rational,
        alternations: usize,
        len: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxPair {
    a: Vec<Rational>,
    b: Vec<Rational>,
    limit_a: Rational,
    limit_b: Rational,
    generator: Option<Generator>,
}

fn check_increasing_below(name: &'static str, v: &[Rational], limit: &Rational) -> Result<()> {
    for (i, x) in v.iter().enumerate() {
        if x >= limit || (i > 0 && &v[i - 1] >= x) {
            return Err(Error::NotIncreasing { name, index: i + 1 });
        }
    }
    Ok(())
}

fn check_ratio(name: &'static str, r: &Rational) -> Result<()> {
    if !r.is_positive() || r >= &Rational::one() {
        return Err(Error::InvalidParameter {
            name,
            reason: format!("{r} not in (0, 1)"),
        });
    }
    Ok(())
}

impl ApproxPair {
    pub fn new(
        a: Vec<Rational>,
        b: Vec<Rational>,
        limit_a: Rational,
        limit_b: Rational,
    ) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::InvalidParameter {
                name: "b",
                reason: format!("length {} differs from a's {}", b.len(), a.len()),
            });
        }
        check_increasing_below("a", &a, &limit_a)?;
        check_increasing_below("b", &b, &limit_b)?;
        Ok(ApproxPair {
            a,
            b,
            limit_a,
            limit_b,
            generator: None,
        })
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn limit_a(&self) -> &Rational {
        &self.limit_a
    }

    pub fn limit_b(&self) -> &Rational {
        &self.limit_b
    }

    pub fn generator(&self) -> Option<&Generator> {
        self.generator.as_ref()
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    fn check_prefix(&self, n: usize) -> Result<()> {
        if n > self.len() {
            return Err(Error::PrefixTooLong {
                requested: n,
                stored: self.len(),
            });
        }
        Ok(())
    }

    /// The polygonal curve through `(a_1, b_1), ..., (a_n, b_n)`.
    pub fn test_curve(&self, n: usize) -> Result<PolyCurve> {
        self.check_prefix(n)?;
        PolyCurve::new(
            self.a[..n]
                .iter()
                .zip(&self.b[..n])
                .map(|(x, y)| Point::new(x.clone(), y.clone()))
                .collect(),
        )
    }

    fn apex(&self) -> Apex {
        Apex::left(self.limit_a.clone(), self.limit_b.clone())
    }
}

impl Generator {
    pub fn build(&self) -> Result<ApproxPair> {
        let (a, b, limit_a, limit_b) = match self {
            Generator::Geometric {
                limit_a,
                limit_b,
                ratio_a,
                ratio_b,
                len,
            } => {
                check_ratio("ratio_a", ratio_a)?;
                check_ratio("ratio_b", ratio_b)?;
                let a = (1..=*len).map(|i| limit_a - pow(ratio_a, i)).collect();
                let b = (1..=*len).map(|i| limit_b - pow(ratio_b, i)).collect();
                (a, b, limit_a.clone(), limit_b.clone())
            }
            Generator::Scaled {
                limit_a,
                kappa,
                offset,
                ratio_a,
                len,
            } => {
                check_ratio("ratio_a", ratio_a)?;
                if !kappa.is_positive() {
                    return Err(Error::InvalidParameter {
                        name: "kappa",
                        reason: format!("{kappa} must be positive"),
                    });
                }
                let a: Vec<Rational> = (1..=*len).map(|i| limit_a - pow(ratio_a, i)).collect();
                let b = a.iter().map(|x| kappa * x + offset).collect();
                (a, b, limit_a.clone(), kappa * limit_a + offset)
            }
            Generator::Oscillator {
                limit_a,
                limit_b,
                alpha,
                beta,
                alternations,
                len,
            } => {
                let band = SlopeBand::new(alpha.clone(), beta.clone())?;
                if !alpha.is_positive() {
                    return Err(Error::InvalidParameter {
                        name: "alpha",
                        reason: "ratios of increasing sequences are positive; alpha must be > 0"
                            .into(),
                    });
                }
                let (a, b) = oscillator(limit_a, limit_b, &band, *alternations, *len);
                (a, b, limit_a.clone(), limit_b.clone())
            }
        };
        let mut pair = ApproxPair::new(a, b, limit_a, limit_b)?;
        pair.generator = Some(self.clone());
        Ok(pair)
    }
}

/// `a_i = A - rho^i`; `b_i = B - r_i * rho^i` where the target chord slope
/// `r_i` is `r_low < alpha` or `r_high > beta`. Increasing `b` needs
/// `r_high * rho < r_low`, which fixes `rho = 2^-j`.
fn oscillator(
    limit_a: &Rational,
    limit_b: &Rational,
    band: &SlopeBand,
    alternations: usize,
    len: usize,
) -> (Vec<Rational>, Vec<Rational>) {
    let half_width = band.width() * rat(1, 2);
    let r_low = max(&(band.alpha() - &half_width), &(band.alpha() * rat(1, 2)));
    let r_high = band.beta() + &half_width;
    let mut rho = rat(1, 2);
    while &r_high * &rho >= r_low {
        rho *= rat(1, 2);
    }
    let mut a = Vec::with_capacity(len);
    let mut b = Vec::with_capacity(len);
    let mut d = Rational::one();
    for i in 1..=len {
        d *= &rho;
        // the last designed term (index alternations + 1) is low, as is the tail
        let high = i <= alternations + 1 && (alternations + 1 - i) % 2 == 1;
        let r = if high { &r_high } else { &r_low };
        a.push(limit_a - &d);
        b.push(limit_b - r * &d);
    }
    (a, b)
}

/// `(B - b_i) / (A - a_i)` for `i = 1..=n`.
pub fn ratio_trace(pair: &ApproxPair, n: usize) -> Result<Vec<Rational>> {
    pair.check_prefix(n)?;
    Ok((0..n)
        .map(|i| (&pair.limit_b - &pair.b[i]) / (&pair.limit_a - &pair.a[i]))
        .collect())
}

/// Gap crossings of the prefix curve seen from `(A, B)`, the curve
/// approaching from the left. The chord slope to `(a_i, b_i)` is the
/// `i`-th ratio.
pub fn gap_trace_crossings(pair: &ApproxPair, band: &SlopeBand, n: usize) -> Result<GapCount> {
    pair.check_prefix(n)?;
    if n < 2 {
        return Ok(GapCount::default());
    }
    Ok(gap_crossings(band, &pair.apex(), &pair.test_curve(n)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralTestReport {
    /// Maximum gap count over apexes on the vertical line through `A`.
    pub t_at_a: u32,
    pub sampled_integral_lower: Rational,
    pub gate_integral_upper: Rational,
    /// Variation bound of the prefix curve itself.
    pub prefix_bound: Rational,
    /// The same bound with `(a_n, b_n)` replaced by `(A, B)`; independent of `n`.
    pub uniform_bound: Rational,
}

impl IntegralTestReport {
    pub fn chain_holds(&self) -> bool {
        self.sampled_integral_lower <= self.gate_integral_upper
            && self.gate_integral_upper <= self.prefix_bound
            && self.prefix_bound <= self.uniform_bound
    }
}

/// `(B - b_1 + (|alpha| + |beta|) (A - a_1)) / (beta - alpha)`.
pub fn uniform_bound(pair: &ApproxPair, band: &SlopeBand) -> Result<Rational> {
    let (a1, b1) = match (pair.a.first(), pair.b.first()) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::PrefixTooLong {
                requested: 1,
                stored: 0,
            })
        }
    };
    Ok(
        ((&pair.limit_b - b1) + (abs(band.alpha()) + abs(band.beta())) * (&pair.limit_a - a1))
            / band.width(),
    )
}

/// The prefix curve rotated by 180 degrees about the origin, so the apex
/// `(A, .)` sees it to its right.
fn rotated(pair: &ApproxPair, n: usize) -> Result<PolyCurve> {
    let origin = Point::new(Rational::zero(), Rational::zero());
    Ok(pair.test_curve(n)?.reflect_through(&origin))
}

/// The integral test from the prefix of length `n`:
/// `T(a) = max_b t(a, b)` where `t` counts gap crossings seen from `(a, b)`.
/// `T(A)` grows without bound on oscillating pairs while the integral
/// stays below a bound that does not depend on `n`.
pub fn integral_test(
    pair: &ApproxPair,
    band: &SlopeBand,
    n: usize,
    sample_as: &[Rational],
) -> Result<IntegralTestReport> {
    if n < 2 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: "prefix needs >= 2 points".into(),
        });
    }
    let curve = rotated(pair, n)?;
    let t_at_a = t_gap(band, &curve, &-&pair.limit_a);
    let gate_integral_upper = sweep(&curve_to_gates(band, &curve), band).integral_t();
    let mirrored: Vec<Rational> = sample_as.iter().map(|a| -a).collect();
    let sampled_integral_lower = sampled_gap_lower(band, &curve, &mirrored)?;
    Ok(IntegralTestReport {
        t_at_a,
        sampled_integral_lower,
        gate_integral_upper,
        prefix_bound: variation_bound(band, &curve),
        uniform_bound: uniform_bound(pair, band)?,
    })
}

/// `count` equally spaced abscissas covering the support of the test's
/// gate bound for the prefix of length `n`.
pub fn default_test_samples(
    pair: &ApproxPair,
    band: &SlopeBand,
    n: usize,
    count: usize,
) -> Result<Vec<Rational>> {
    let curve = rotated(pair, n)?;
    let field = sweep(&curve_to_gates(band, &curve), band);
    let (Some(lo), Some(hi)) = (field.x_dead(), field.max_gate_x()) else {
        return Ok(Vec::new());
    };
    // back to the original orientation
    Ok(equally_spaced(&-hi, &-lo, count))
}

/// Finite family of closed intervals with exact total length.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntervalCover {
    intervals: Vec<Interval>,
    total_length: Rational,
}

impl IntervalCover {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if let Some(iv) = intervals.iter().find(|iv| iv.lo >= iv.hi) {
            return Err(Error::InvalidInterval {
                lo: iv.lo.to_string(),
                hi: iv.hi.to_string(),
            });
        }
        let total_length = intervals
            .iter()
            .fold(Rational::zero(), |acc, iv| acc + iv.width());
        Ok(IntervalCover {
            intervals,
            total_length,
        })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn total_length(&self) -> &Rational {
        &self.total_length
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    /// True when the intervals, in stored order, are increasing and pairwise
    /// disjoint except possibly for shared endpoints.
    pub fn is_ordered_disjoint(&self) -> bool {
        self.intervals.windows(2).all(|w| w[0].hi <= w[1].lo)
    }

    /// Open gaps `(hi_i, lo_{i+1})` between consecutive intervals.
    pub fn gaps(&self) -> Vec<(Rational, Rational)> {
        self.intervals
            .windows(2)
            .filter(|w| w[0].hi < w[1].lo)
            .map(|w| (w[0].hi.clone(), w[1].lo.clone()))
            .collect()
    }
}

/// Counterparts of `(b_i, b_{i+1})` for `i = 1..=n` on the `A` axis: the
/// `i`-th has length `eps (b_{i+1} - b_i)` and starts at `a_i` or at the
/// right end of the previous counterpart, whichever is bigger. Needs
/// `n + 1` stored terms.
pub fn counterpart_cover(pair: &ApproxPair, eps: &Rational, n: usize) -> Result<IntervalCover> {
    if !eps.is_positive() {
        return Err(Error::InvalidParameter {
            name: "eps",
            reason: format!("{eps} must be > 0"),
        });
    }
    pair.check_prefix(n + 1)?;
    let mut intervals = Vec::with_capacity(n);
    let mut prev_right: Option<Rational> = None;
    for i in 0..n {
        let left = match &prev_right {
            Some(r) if r > &pair.a[i] => r.clone(),
            _ => pair.a[i].clone(),
        };
        let right = &left + eps * (&pair.b[i + 1] - &pair.b[i]);
        prev_right = Some(right.clone());
        intervals.push(Interval {
            lo: left,
            hi: right,
        });
    }
    IntervalCover::new(intervals)
}

/// First `k <= n` (1-based) with `A - a_k < eps (B - b_k)`.
pub fn premise_index(pair: &ApproxPair, eps: &Rational, n: usize) -> Option<usize> {
    (0..n.min(pair.len()))
        .find(|&i| &pair.limit_a - &pair.a[i] < eps * (&pair.limit_b - &pair.b[i]))
        .map(|i| i + 1)
}

/// First `k <= n` (1-based) with `A - a_k < eps (b_{n+1} - b_k)`: the
/// stage-`n` form of the premise, under which the first `n` counterparts
/// already reach past `A`.
pub fn stage_premise_index(pair: &ApproxPair, eps: &Rational, n: usize) -> Option<usize> {
    let b_next = pair.b.get(n)?;
    (0..n)
        .find(|&i| &pair.limit_a - &pair.a[i] < eps * (b_next - &pair.b[i]))
        .map(|i| i + 1)
}

/// Moves a cover of `A` to a cover of `B`: for each interval, wait for the
/// first `a_i` inside it and emit `[b_i, b_i + c (q - p)]`. Intervals no
/// stored `a_i` enters are dropped. Requires `B - b_i <= c (A - a_i)`.
pub fn transfer_cover(
    cover: &IntervalCover,
    pair: &ApproxPair,
    c: &Rational,
) -> Result<IntervalCover> {
    if !c.is_positive() {
        return Err(Error::InvalidParameter {
            name: "c",
            reason: format!("{c} must be > 0"),
        });
    }
    for i in 0..pair.len() {
        if &pair.limit_b - &pair.b[i] > c * (&pair.limit_a - &pair.a[i]) {
            return Err(Error::Premise {
                index: i + 1,
                reason: format!("B - b_i > {c} (A - a_i)"),
            });
        }
    }
    let intervals = cover
        .intervals()
        .iter()
        .filter_map(|iv| {
            let i = pair.a.iter().position(|a| iv.contains(a))?;
            let lo = pair.b[i].clone();
            let hi = &lo + c * iv.width();
            Some(Interval { lo, hi })
        })
        .collect();
    IntervalCover::new(intervals)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Acceleration {
    pub value: Rational,
    pub rounds: usize,
    /// Least `k` with `c^k (A - a_1) <= precision`.
    pub round_bound: usize,
    /// `A - current` after initialization and after each round.
    pub errors: Vec<Rational>,
}

/// Least `k` with `c^k * start <= precision`.
pub fn rounds_needed(c: &Rational, start: &Rational, precision: &Rational) -> usize {
    let mut k = 0;
    let mut e = start.clone();
    while &e > precision {
        e *= c;
        k += 1;
    }
    k
}

/// Computes `A` to within `precision` from two sequences converging to it
/// at different speeds (`A - a'_i <= c (A - a_i)`, `c < 1`): start from
/// `a'_1`, then repeatedly wait for the first `a_i` above the current
/// approximation and jump to `a'_i`. Each round shrinks the error by `c`.
///
/// `limit` is only used to check the premise and to decide when the
/// requested precision has been reached.
pub fn accelerate(
    a: &[Rational],
    a_prime: &[Rational],
    c: &Rational,
    precision: &Rational,
    limit: &Rational,
) -> Result<Acceleration> {
    if !c.is_positive() || c >= &Rational::one() {
        return Err(Error::InvalidParameter {
            name: "c",
            reason: format!("{c} not in (0, 1)"),
        });
    }
    if !precision.is_positive() {
        return Err(Error::InvalidParameter {
            name: "precision",
            reason: format!("{precision} must be > 0"),
        });
    }
    let n = a.len().min(a_prime.len());
    if n == 0 {
        return Err(Error::PrefixTooLong {
            requested: 1,
            stored: 0,
        });
    }
    check_increasing_below("a", &a[..n], limit)?;
    check_increasing_below("a_prime", &a_prime[..n], limit)?;
    for i in 0..n {
        if limit - &a_prime[i] > c * (limit - &a[i]) {
            return Err(Error::Premise {
                index: i + 1,
                reason: format!("A - a'_i > {c} (A - a_i)"),
            });
        }
    }

    let round_bound = rounds_needed(c, &(limit - &a[0]), precision);
    let mut current = a_prime[0].clone();
    let mut errors = vec![limit - &current];
    let mut rounds = 0;
    while &(limit - &current) > precision {
        let Some(i) = a[..n].iter().position(|x| x > &current) else {
            return Err(Error::Exhausted {
                rounds,
                error: limit - &current,
            });
        };
        current = a_prime[i].clone();
        rounds += 1;
        errors.push(limit - &current);
    }
    Ok(Acceleration {
        value: current,
        rounds,
        round_bound,
        errors,
    })
}

/// `A - 2^-i` style prefixes used by examples and tests.
pub fn geometric_prefix(limit: &Rational, ratio: &Rational, len: usize) -> Vec<Rational> {
    (1..=len).map(|i| limit - pow(ratio, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::ChordClass;
    use crate::rational::int;

    fn geometric(ra: Rational, rb: Rational, len: usize) -> ApproxPair {
        Generator::Geometric {
            limit_a: int(1),
            limit_b: int(2),
            ratio_a: ra,
            ratio_b: rb,
            len,
        }
        .build()
        .unwrap()
    }

    #[test]
    fn constant_ratio_trace() {
        let pair = Generator::Scaled {
            limit_a: int(1),
            kappa: int(2),
            offset: int(0),
            ratio_a: rat(1, 2),
            len: 8,
        }
        .build()
        .unwrap();
        assert!(ratio_trace(&pair, 8).unwrap().iter().all(|r| r == &int(2)));
        let band = SlopeBand::new(int(3), int(4)).unwrap();
        assert_eq!(gap_trace_crossings(&pair, &band, 8).unwrap().total, 0);
    }

    #[test]
    fn geometric_ratio_trace() {
        let pair = geometric(rat(1, 2), rat(1, 3), 6);
        let trace = ratio_trace(&pair, 6).unwrap();
        for (i, r) in trace.iter().enumerate() {
            assert_eq!(r, &pow(&rat(2, 3), i + 1));
        }
        assert!(matches!(
            ratio_trace(&pair, 7),
            Err(Error::PrefixTooLong { .. })
        ));
    }

    #[test]
    fn pair_validation() {
        assert!(
            ApproxPair::new(vec![int(0), int(2)], vec![int(0), int(1)], int(1), int(2)).is_err()
        );
        assert!(
            ApproxPair::new(vec![int(0), int(0)], vec![int(0), int(1)], int(1), int(2)).is_err()
        );
        assert!(ApproxPair::new(vec![int(0)], vec![int(0), int(1)], int(1), int(2)).is_err());
        let bad = Generator::Geometric {
            limit_a: int(1),
            limit_b: int(1),
            ratio_a: int(1),
            ratio_b: rat(1, 2),
            len: 3,
        };
        assert!(bad.build().is_err());
    }

    #[test]
    fn oscillator_alternates_exactly() {
        let band = SlopeBand::new(int(1), rat(5, 4)).unwrap();
        for k in [0usize, 1, 2, 5, 10] {
            let pair = Generator::Oscillator {
                limit_a: int(1),
                limit_b: int(3),
                alpha: int(1),
                beta: rat(5, 4),
                alternations: k,
                len: k + 6,
            }
            .build()
            .unwrap();
            let classes: Vec<ChordClass> = ratio_trace(&pair, k + 6)
                .unwrap()
                .iter()
                .map(|r| crate::curve::Slope::Finite(r.clone()).classify(&band))
                .collect();
            assert!(!classes.contains(&ChordClass::Mid));
            let g = gap_trace_crossings(&pair, &band, k + 6).unwrap();
            assert_eq!(g.total as usize, k, "k = {k}");
        }
    }

    #[test]
    fn counterpart_lengths_telescope() {
        let pair = geometric(rat(1, 2), rat(1, 2), 12);
        let eps = rat(1, 4);
        let cover = counterpart_cover(&pair, &eps, 11).unwrap();
        assert_eq!(
            cover.total_length(),
            &(&eps * (&pair.b()[11] - &pair.b()[0]))
        );
        assert!(cover.is_ordered_disjoint());
        assert!(counterpart_cover(&pair, &int(0), 3).is_err());
        assert!(counterpart_cover(&pair, &eps, 12).is_err());
    }

    #[test]
    fn transfer_single_interval() {
        let pair = geometric(rat(1, 2), rat(1, 2), 6);
        let cover = IntervalCover::new(vec![Interval {
            lo: int(0),
            hi: rat(3, 4),
        }])
        .unwrap();
        let out = transfer_cover(&cover, &pair, &int(2)).unwrap();
        let b1 = pair.b()[0].clone();
        assert_eq!(
            out.intervals(),
            &[Interval {
                lo: b1.clone(),
                hi: b1 + rat(3, 2)
            }]
        );

        let below = IntervalCover::new(vec![Interval {
            lo: int(-3),
            hi: int(-1),
        }])
        .unwrap();
        let out = transfer_cover(&below, &pair, &int(2)).unwrap();
        assert!(out.intervals().is_empty());
        assert_eq!(out.total_length(), &int(0));
    }

    #[test]
    fn transfer_rejects_violated_premise() {
        let pair = geometric(rat(1, 4), rat(1, 2), 6);
        let cover = IntervalCover::new(vec![Interval {
            lo: int(0),
            hi: int(1),
        }])
        .unwrap();
        assert!(matches!(
            transfer_cover(&cover, &pair, &int(2)),
            Err(Error::Premise { .. })
        ));
    }

    #[test]
    fn accelerate_immediate_when_coarse() {
        let a = geometric_prefix(&int(1), &rat(1, 2), 10);
        let ap = geometric_prefix(&int(1), &rat(1, 4), 10);
        let run = accelerate(&a, &ap, &rat(1, 2), &rat(1, 2), &int(1)).unwrap();
        assert_eq!(run.rounds, 0);
        assert_eq!(run.value, ap[0]);
    }

    #[test]
    fn accelerate_reports_exhaustion() {
        let a = geometric_prefix(&int(1), &rat(1, 2), 4);
        let ap = geometric_prefix(&int(1), &rat(1, 4), 4);
        assert!(matches!(
            accelerate(&a, &ap, &rat(1, 2), &pow(&rat(1, 2), 40), &int(1)),
            Err(Error::Exhausted { .. })
        ));
    }

    #[test]
    fn accelerate_checks_premise() {
        let a = geometric_prefix(&int(1), &rat(1, 2), 6);
        let ap = geometric_prefix(&int(1), &rat(1, 4), 6);
        assert!(matches!(
            accelerate(&a, &ap, &rat(1, 4), &rat(1, 1000), &int(1)),
            Err(Error::Premise { index: 1, .. })
        ));
        assert!(accelerate(&a, &ap, &int(1), &rat(1, 2), &int(1)).is_err());
    }

    #[test]
    fn short_prefix_integral_test() {
        let pair = geometric(rat(1, 2), rat(1, 3), 4);
        let band = SlopeBand::new(rat(1, 4), rat(1, 2)).unwrap();
        let samples = default_test_samples(&pair, &band, 2, 50).unwrap();
        let r = integral_test(&pair, &band, 2, &samples).unwrap();
        assert!(r.t_at_a <= 1);
        assert!(r.chain_holds());
        assert!(integral_test(&pair, &band, 1, &samples).is_err());
    }
}
