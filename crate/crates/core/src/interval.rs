//! Ranges `[a, b]` and subsets of the significand circle `[1, 10)`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{BenfordError, Result};
use crate::significand::split;

/// A closed interval `[a, b]` with `0 < a < b`, both finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRange")]
pub struct RangeSpec {
    a: f64,
    b: f64,
}

#[derive(Deserialize)]
struct RawRange {
    a: f64,
    b: f64,
}

impl TryFrom<RawRange> for RangeSpec {
    type Error = BenfordError;

    fn try_from(raw: RawRange) -> Result<Self> {
        RangeSpec::new(raw.a, raw.b)
    }
}

impl RangeSpec {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a.is_finite() && b.is_finite() && a > 0.0 && a < b {
            Ok(RangeSpec { a, b })
        } else {
            Err(BenfordError::InvalidRange { a, b })
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Exact comparison of `b` against the real number `10a`.
    ///
    /// The fused multiply-add rounds `10a - b` once, which preserves its sign.
    pub fn cmp_upper_to_decade(&self) -> Ordering {
        let diff = 10f64.mul_add(self.a, -self.b);
        if diff > 0.0 {
            Ordering::Less
        } else if diff < 0.0 {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }
}

impl fmt::Display for RangeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

/// Orders of magnitude spanned by a range, `log10(b / a)`.
pub fn span_orders(range: &RangeSpec) -> f64 {
    (range.b / range.a).log10().max(0.0)
}

/// An interval of reals with independently open or closed endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn closed_open(lo: f64, hi: f64) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn contains(&self, t: f64) -> bool {
        let above = if self.lo_closed { t >= self.lo } else { t > self.lo };
        let below = if self.hi_closed { t <= self.hi } else { t < self.hi };
        above && below
    }

    pub fn length(&self) -> f64 {
        (self.hi - self.lo).max(0.0)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// A sorted union of pairwise disjoint, nonempty subintervals of `[1, 10)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    /// The whole significand circle `[1, 10)`.
    pub fn full() -> Self {
        IntervalSet {
            intervals: vec![Interval::closed_open(1.0, 10.0)],
        }
    }

    /// Builds a set from arbitrary intervals: drops empty ones, sorts, and
    /// merges any that overlap or touch.
    pub fn from_intervals(mut parts: Vec<Interval>) -> Self {
        parts.retain(|i| !i.is_empty());
        parts.sort_by(|x, y| {
            x.lo.total_cmp(&y.lo)
                .then_with(|| y.lo_closed.cmp(&x.lo_closed))
        });
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
        for next in parts {
            if let Some(last) = out.last_mut() {
                let joins = next.lo < last.hi
                    || (next.lo == last.hi && (next.lo_closed || last.hi_closed));
                if joins {
                    if next.hi > last.hi {
                        last.hi = next.hi;
                        last.hi_closed = next.hi_closed;
                    } else if next.hi == last.hi {
                        last.hi_closed |= next.hi_closed;
                    }
                    continue;
                }
            }
            out.push(next);
        }
        IntervalSet { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.intervals.len() == 1 && {
            let i = self.intervals[0];
            i.lo == 1.0 && i.lo_closed && i.hi >= 10.0
        }
    }

    pub fn contains(&self, t: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(t))
    }

    /// Total length of the set.
    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(Interval::length).sum()
    }

    /// The complement within `[1, 10)`.
    pub fn complement(&self) -> IntervalSet {
        let mut out = Vec::new();
        let mut cursor = 1.0;
        let mut cursor_closed = true;
        for i in &self.intervals {
            out.push(Interval {
                lo: cursor,
                hi: i.lo,
                lo_closed: cursor_closed,
                hi_closed: !i.lo_closed,
            });
            cursor = i.hi;
            cursor_closed = !i.hi_closed;
        }
        out.push(Interval {
            lo: cursor,
            hi: 10.0,
            lo_closed: cursor_closed,
            hi_closed: false,
        });
        out.retain(|i| !i.is_empty() && i.lo < 10.0);
        IntervalSet { intervals: out }
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.intervals.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" U "))
    }
}

/// The set `{S(x) : x in [a, b]}` of significands a range can produce.
///
/// Equal to all of `[1, 10)` exactly when `b >= 10a`. Otherwise the range
/// meets at most two decades and the image is one closed interval, or a
/// closed interval at 1 together with one running up to 10.
pub fn significand_image(range: &RangeSpec) -> IntervalSet {
    if range.cmp_upper_to_decade() != Ordering::Less {
        return IntervalSet::full();
    }
    let (ka, sa) = split(range.a);
    let (kb, sb) = split(range.b);
    if ka == kb {
        IntervalSet::from_intervals(vec![Interval::closed(sa, sb)])
    } else {
        debug_assert_eq!(kb, ka + 1);
        IntervalSet::from_intervals(vec![
            Interval::closed(1.0, sb),
            Interval::closed_open(sa, 10.0),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn range(a: f64, b: f64) -> RangeSpec {
        RangeSpec::new(a, b).unwrap()
    }

    #[test]
    fn range_validation() {
        assert!(RangeSpec::new(0.0, 1.0).is_err());
        assert!(RangeSpec::new(-1.0, 1.0).is_err());
        assert!(RangeSpec::new(2.0, 2.0).is_err());
        assert!(RangeSpec::new(3.0, 2.0).is_err());
        assert!(RangeSpec::new(1.0, f64::INFINITY).is_err());
        assert!(RangeSpec::new(f64::NAN, 2.0).is_err());
        let r: std::result::Result<RangeSpec, _> = serde_json::from_str(r#"{"a":5,"b":1}"#);
        assert!(r.is_err());
    }

    #[test]
    fn single_decade_image() {
        let img = significand_image(&range(2.0, 5.0));
        assert_eq!(img.intervals(), &[Interval::closed(2.0, 5.0)]);
    }

    #[test]
    fn wrapping_image() {
        let img = significand_image(&range(8.0, 20.0));
        assert_eq!(
            img.intervals(),
            &[Interval::closed(1.0, 2.0), Interval::closed_open(8.0, 10.0)]
        );
    }

    #[test]
    fn image_of_100_999_omits_top() {
        let img = significand_image(&range(100.0, 999.0));
        assert_eq!(img.intervals(), &[Interval::closed(1.0, 9.99)]);
        assert!(!img.contains(9.995));
        assert_eq!(img.complement().intervals(), &[Interval::open(9.99, 10.0)]);
    }

    #[test]
    fn full_image_at_one_decade() {
        assert!(significand_image(&range(73.0, 730.0)).is_full());
        assert!(significand_image(&range(100.0, 1000.0001)).is_full());
        assert!(!significand_image(&range(73.0, 729.99)).is_full());
    }

    #[test]
    fn image_reaching_a_power_of_ten() {
        let img = significand_image(&range(2.0, 10.0));
        assert_eq!(
            img.intervals(),
            &[Interval::closed(1.0, 1.0), Interval::closed_open(2.0, 10.0)]
        );
        assert_eq!(
            img.complement().intervals(),
            &[Interval::open(1.0, 2.0)]
        );
    }

    #[test]
    fn complement_of_single_decade() {
        let gaps = significand_image(&range(2.0, 5.0)).complement();
        assert_eq!(
            gaps.intervals(),
            &[Interval::closed_open(1.0, 2.0), Interval::open(5.0, 10.0)]
        );
        assert!(IntervalSet::full().complement().is_empty());
        assert!(IntervalSet::empty().complement().is_full());
    }

    #[test]
    fn merging() {
        let s = IntervalSet::from_intervals(vec![
            Interval::closed(3.0, 4.0),
            Interval::open(1.0, 2.0),
            Interval::closed_open(2.0, 3.0),
            Interval::open(5.0, 5.0),
        ]);
        assert_eq!(
            s.intervals(),
            &[Interval {
                lo: 1.0,
                hi: 4.0,
                lo_closed: false,
                hi_closed: true
            }]
        );
    }

    #[test]
    fn spans() {
        assert_eq!(span_orders(&range(100.0, 1000.0)), 1.0);
        assert_eq!(span_orders(&range(73.0, 730.0)), 1.0);
        assert!((span_orders(&range(100.0, 999.0)) - 0.999_565_488_225_982_3).abs() < 1e-14);
    }

    #[test]
    fn display() {
        assert_eq!(Interval::open(9.99, 10.0).to_string(), "(9.99, 10)");
        assert_eq!(
            significand_image(&range(8.0, 20.0)).to_string(),
            "[1, 2] U [8, 10)"
        );
    }

    #[test]
    fn exact_decade_comparison() {
        assert_eq!(range(73.0, 730.0).cmp_upper_to_decade(), Ordering::Equal);
        assert_eq!(range(0.1, 1.0).cmp_upper_to_decade(), Ordering::Less);
        // fl(10 * 0.1) == 1 but the double 0.1 is slightly above one tenth
        assert_eq!(10.0 * 0.1, 1.0);
    }
}
