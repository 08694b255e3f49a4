//! Decimal significand arithmetic, Benford conformance statistics, and
//! constructive Benford / non-Benford distributions on bounded ranges.
//!
//! The central fact the range module makes concrete: a range spanning exactly
//! one order of magnitude, such as `[73, 730]`, already supports a Benford
//! distribution (`classify_range` returns `UniqueBenford`), while a uniform
//! on the same range stays far from Benford.

pub mod conformance;
pub mod distributions;
pub mod error;
pub mod interval;
pub mod range;
pub mod sampling;
pub mod significand;

pub use conformance::{
    chi_square_statistic, conformance_report, empirical_significand_cdf, first_digit_frequencies,
    ks_statistic, mad_statistic, sorted_significands, ConformanceReport, DigitFrequencies,
    ObservedRange,
};
pub use distributions::{
    benford_cdf, exact_significand_cdf, first_digit_law, fold_to_significand_density,
    ks_distance_exact, piecewise_density_cdf, piecewise_density_pdf, DistributionSpec,
};
pub use error::{BenfordError, Result};
pub use interval::{significand_image, span_orders, Interval, IntervalSet, RangeSpec};
pub use range::{
    benford_c_bound, benford_witness, classify_range, infeasibility_certificate,
    non_benford_c_bound, non_benford_witness, RangeClassification,
};
pub use sampling::{sample, Provenance, Sample, RNG_ALGORITHM};
pub use significand::{
    decade, digit, log_mantissa, significand, significant_digits, SignificandValue,
};
