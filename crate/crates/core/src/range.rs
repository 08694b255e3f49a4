//! Which Benford distributions fit inside a bounded range `[a, b]`.
//!
//! The answer is a trichotomy on `b` against `10a`:
//!
//! - `b < 10a`: none. Some significands are unreachable from `[a, b]` while a
//!   Benford variable must put positive mass near every significand.
//! - `b = 10a`: exactly one, `a * 10^U`.
//! - `b > 10a`: infinitely many Benford variables `(a + c) * 10^U` for
//!   `c` in `(0, b/10 - a)`, and infinitely many non-Benford uniforms
//!   `U[a + c, 10a + c]` for `c` in `(0, b - 10a)`.
//!
//! Uniqueness in the middle case is a structural statement here: the only
//! witness this module can build is `ScaledBenford(a)`.
//!
//! The comparison of `b` with `10a` is exact (see
//! [`RangeSpec::cmp_upper_to_decade`]), so ranges within one ulp of the
//! boundary are classified by the binary values actually supplied.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::distributions::DistributionSpec;
use crate::error::{BenfordError, Result};
use crate::interval::{significand_image, Interval, IntervalSet, RangeSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum RangeClassification {
    /// No Benford distribution fits; `gap` holds the unreachable significands.
    Infeasible { gap: IntervalSet },
    /// Exactly one Benford distribution fits.
    UniqueBenford { witness: DistributionSpec },
    /// Infinitely many Benford and non-Benford distributions fit.
    Rich {
        benford_c: Interval,
        non_benford_c: Interval,
    },
}

impl RangeClassification {
    pub fn name(&self) -> &'static str {
        match self {
            RangeClassification::Infeasible { .. } => "infeasible",
            RangeClassification::UniqueBenford { .. } => "unique_benford",
            RangeClassification::Rich { .. } => "rich",
        }
    }
}

/// `b - 10a`, rounded once.
fn excess_over_decade(range: &RangeSpec) -> f64 {
    (-10f64).mul_add(range.a(), range.b())
}

/// Upper end of the open interval of valid `c` for the Benford family.
pub fn benford_c_bound(range: &RangeSpec) -> f64 {
    excess_over_decade(range) / 10.0
}

/// Upper end of the open interval of valid `c` for the uniform family.
pub fn non_benford_c_bound(range: &RangeSpec) -> f64 {
    excess_over_decade(range)
}

pub fn classify_range(range: &RangeSpec) -> RangeClassification {
    match range.cmp_upper_to_decade() {
        Ordering::Less => RangeClassification::Infeasible {
            gap: significand_image(range).complement(),
        },
        Ordering::Equal => RangeClassification::UniqueBenford {
            witness: DistributionSpec::ScaledBenford { scale: range.a() },
        },
        Ordering::Greater => RangeClassification::Rich {
            benford_c: Interval::open(0.0, benford_c_bound(range)),
            non_benford_c: Interval::open(0.0, non_benford_c_bound(range)),
        },
    }
}

fn require_rich(range: &RangeSpec) -> Result<()> {
    if range.cmp_upper_to_decade() == Ordering::Greater {
        Ok(())
    } else {
        Err(BenfordError::WrongCase {
            a: range.a(),
            b: range.b(),
            expected: "b > 10a",
        })
    }
}

fn check_c(c: f64, hi: f64) -> Result<()> {
    if c.is_finite() && c > 0.0 && c < hi {
        Ok(())
    } else {
        Err(BenfordError::ParameterOutOfRange {
            name: "c",
            value: c,
            lo: 0.0,
            hi,
        })
    }
}

/// `X_c = (a + c) * 10^U`, Benford and supported on `[a + c, 10(a + c)]`.
pub fn benford_witness(range: &RangeSpec, c: f64) -> Result<DistributionSpec> {
    require_rich(range)?;
    let hi = benford_c_bound(range);
    check_c(c, hi)?;
    let scale = range.a() + c;
    // 10 * scale <= b, checked exactly; can only fail through rounding of a + c
    if 10f64.mul_add(scale, -range.b()) > 0.0 {
        return Err(BenfordError::ParameterOutOfRange {
            name: "c",
            value: c,
            lo: 0.0,
            hi,
        });
    }
    DistributionSpec::scaled_benford(scale)
}

/// `Y_c = U[a + c, 10a + c]`, supported in `[a, b]` and not Benford.
pub fn non_benford_witness(range: &RangeSpec, c: f64) -> Result<DistributionSpec> {
    require_rich(range)?;
    let bound = non_benford_c_bound(range);
    check_c(c, bound)?;
    let lo = range.a() + c;
    let hi = 10f64.mul_add(range.a(), c);
    if hi > range.b() || lo >= hi {
        return Err(BenfordError::ParameterOutOfRange {
            name: "c",
            value: c,
            lo: 0.0,
            hi: bound,
        });
    }
    DistributionSpec::bounded_uniform(lo, hi)
}

/// Significands in `[1, 10)` that no value of `[a, b]` can produce.
pub fn infeasibility_certificate(range: &RangeSpec) -> Result<IntervalSet> {
    if range.cmp_upper_to_decade() != Ordering::Less {
        return Err(BenfordError::WrongCase {
            a: range.a(),
            b: range.b(),
            expected: "b < 10a",
        });
    }
    Ok(significand_image(range).complement())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::ks_distance_exact;

    fn range(a: f64, b: f64) -> RangeSpec {
        RangeSpec::new(a, b).unwrap()
    }

    #[test]
    fn trichotomy_examples() {
        match classify_range(&range(100.0, 999.0)) {
            RangeClassification::Infeasible { gap } => {
                assert_eq!(gap.intervals(), &[Interval::open(9.99, 10.0)]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            classify_range(&range(73.0, 730.0)),
            RangeClassification::UniqueBenford {
                witness: DistributionSpec::ScaledBenford { scale: 73.0 }
            }
        );
        match classify_range(&range(100.0, 1000.0001)) {
            RangeClassification::Rich {
                benford_c,
                non_benford_c,
            } => {
                assert!(!benford_c.lo_closed && !benford_c.hi_closed);
                assert_eq!(benford_c.lo, 0.0);
                // the double nearest 1000.0001 is off by up to half an ulp of 1000
                let rep = 1000f64.next_up() - 1000.0;
                assert!((benford_c.hi - 1e-5).abs() <= rep / 10.0);
                assert!((non_benford_c.hi - 1e-4).abs() <= rep);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn benford_witness_examples() {
        let r = range(100.0, 1000.0001);
        let w = benford_witness(&r, 1e-6).unwrap();
        assert_eq!(w, DistributionSpec::ScaledBenford { scale: 100.000001 });
        let (lo, hi, _) = w.support();
        assert!(r.contains(lo) && r.contains(hi));

        let w = benford_witness(&range(1.0, 100.0), 4.0).unwrap();
        assert_eq!(w, DistributionSpec::ScaledBenford { scale: 5.0 });
        assert_eq!(w.support(), (5.0, 50.0, true));
    }

    #[test]
    fn benford_witness_rejects() {
        assert!(matches!(
            benford_witness(&range(73.0, 730.0), 1.0),
            Err(BenfordError::WrongCase { .. })
        ));
        let r = range(1.0, 100.0);
        for c in [0.0, -1.0, 9.0, 9.5, f64::NAN] {
            assert!(
                matches!(
                    benford_witness(&r, c),
                    Err(BenfordError::ParameterOutOfRange { hi, .. }) if hi == 9.0
                ),
                "c={c}"
            );
        }
    }

    #[test]
    fn non_benford_witness_examples() {
        let w = non_benford_witness(&range(1.0, 100.0), 1.0).unwrap();
        assert_eq!(w, DistributionSpec::BoundedUniform { lo: 2.0, hi: 11.0 });
        assert!(ks_distance_exact(&w) > 0.05);

        let w = non_benford_witness(&range(100.0, 1000.0001), 0.00005).unwrap();
        assert_eq!(
            w,
            DistributionSpec::BoundedUniform {
                lo: 100.00005,
                hi: 1000.00005
            }
        );
        assert!(matches!(
            non_benford_witness(&range(100.0, 999.0), 1.0),
            Err(BenfordError::WrongCase { .. })
        ));
        assert!(non_benford_witness(&range(1.0, 100.0), 90.0).is_err());
        assert!(non_benford_witness(&range(1.0, 100.0), 0.0).is_err());
    }

    #[test]
    fn certificates() {
        let gap = infeasibility_certificate(&range(100.0, 999.0)).unwrap();
        assert_eq!(gap.intervals(), &[Interval::open(9.99, 10.0)]);

        let gap = infeasibility_certificate(&range(73.0, 729.99)).unwrap();
        assert_eq!(gap.intervals(), &[Interval::open(7.2999, 7.3)]);

        let gap = infeasibility_certificate(&range(2.0, 5.0)).unwrap();
        assert_eq!(
            gap.intervals(),
            &[Interval::closed_open(1.0, 2.0), Interval::open(5.0, 10.0)]
        );
        assert!(infeasibility_certificate(&range(73.0, 730.0)).is_err());
        assert!(infeasibility_certificate(&range(1.0, 11.0)).is_err());
    }

    #[test]
    fn serialization_tags() {
        let c = classify_range(&range(73.0, 730.0));
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(
            json,
            r#"{"case":"unique_benford","witness":{"family":"scaled_benford","scale":73.0}}"#
        );
    }
}
