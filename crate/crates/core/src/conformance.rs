//! Empirical Benford conformance statistics.
//!
//! Zeros carry no significand in `[1, 10)` and are excluded from every
//! statistic; they are only counted in `DigitFrequencies::excluded`.
//! Negative values enter through their absolute value.

use std::ops::Add;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::first_digit_law;
use crate::error::{BenfordError, Result};
use crate::significand::{first_digit_nonzero, log_mantissa_of, split};

const CHUNK: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DigitFrequencies {
    /// `counts[d - 1]` is the number of values with first digit `d`.
    pub counts: [u64; 9],
    pub n: u64,
    pub excluded: u64,
}

impl DigitFrequencies {
    pub fn count(&self, d: u8) -> u64 {
        self.counts[usize::from(d) - 1]
    }

    pub fn proportion(&self, d: u8) -> f64 {
        self.count(d) as f64 / self.n as f64
    }

    /// Combines counts from disjoint partitions. Associative and commutative.
    pub fn merge(self, other: DigitFrequencies) -> DigitFrequencies {
        let mut counts = self.counts;
        for (c, o) in counts.iter_mut().zip(other.counts) {
            *c += o;
        }
        DigitFrequencies {
            counts,
            n: self.n + other.n,
            excluded: self.excluded + other.excluded,
        }
    }

    fn from_slice(values: &[f64]) -> DigitFrequencies {
        let mut f = DigitFrequencies::default();
        for &x in values {
            if x == 0.0 {
                f.excluded += 1;
            } else {
                f.counts[usize::from(first_digit_nonzero(x.abs())) - 1] += 1;
                f.n += 1;
            }
        }
        f
    }
}

impl Add for DigitFrequencies {
    type Output = DigitFrequencies;

    fn add(self, rhs: DigitFrequencies) -> DigitFrequencies {
        self.merge(rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservedRange {
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConformanceReport {
    pub n: u64,
    pub digit_freqs: DigitFrequencies,
    pub ks: f64,
    pub chi_square: f64,
    pub mad: f64,
    pub span_orders: f64,
    /// Smallest and largest absolute nonzero value.
    pub observed_range: ObservedRange,
}

fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().find(|v| !v.is_finite()) {
        Some(&bad) => Err(BenfordError::NonFinite(bad)),
        None => Ok(()),
    }
}

/// Significands of the nonzero values, sorted ascending.
pub fn sorted_significands(values: &[f64]) -> Result<Vec<f64>> {
    check_finite(values)?;
    let mut sig: Vec<f64> = values
        .par_iter()
        .filter(|&&x| x != 0.0)
        .map(|&x| split(x.abs()).1)
        .collect();
    if sig.is_empty() {
        return Err(BenfordError::EmptySample);
    }
    sig.par_sort_unstable_by(f64::total_cmp);
    Ok(sig)
}

/// Fraction of nonzero values whose significand is at most `t`.
pub fn empirical_significand_cdf(values: &[f64], t: f64) -> Result<f64> {
    if !(1.0..=10.0).contains(&t) {
        return Err(BenfordError::domain("t", t, "[1, 10]"));
    }
    check_finite(values)?;
    let (hits, n) = values
        .iter()
        .filter(|&&x| x != 0.0)
        .fold((0u64, 0u64), |(h, n), &x| {
            (h + u64::from(split(x.abs()).1 <= t), n + 1)
        });
    if n == 0 {
        return Err(BenfordError::EmptySample);
    }
    Ok(hits as f64 / n as f64)
}

/// One-sample Kolmogorov-Smirnov distance between the empirical significand
/// CDF and `log10 t`, evaluated on both sides of every order statistic.
pub fn ks_statistic(values: &[f64]) -> Result<f64> {
    let sig = sorted_significands(values)?;
    Ok(ks_from_sorted(&sig))
}

pub(crate) fn ks_from_sorted(sig: &[f64]) -> f64 {
    let n = sig.len() as f64;
    sig.iter()
        .enumerate()
        .map(|(i, &s)| {
            let f = log_mantissa_of(s);
            let above = (i + 1) as f64 / n - f;
            let below = f - i as f64 / n;
            above.max(below)
        })
        .fold(0.0, f64::max)
}

pub fn first_digit_frequencies(values: &[f64]) -> Result<DigitFrequencies> {
    check_finite(values)?;
    Ok(values
        .par_chunks(CHUNK)
        .map(DigitFrequencies::from_slice)
        .reduce(DigitFrequencies::default, DigitFrequencies::merge))
}

fn expected(d: u8) -> f64 {
    first_digit_law(d).expect("d in 1..=9")
}

/// Pearson chi-square of first-digit counts against the first-digit law.
pub fn chi_square_statistic(freqs: &DigitFrequencies) -> Result<f64> {
    if freqs.n == 0 {
        return Err(BenfordError::EmptySample);
    }
    let n = freqs.n as f64;
    Ok((1..=9u8)
        .map(|d| {
            let e = n * expected(d);
            let diff = freqs.count(d) as f64 - e;
            diff * diff / e
        })
        .sum())
}

/// Mean absolute deviation of first-digit proportions from the first-digit law.
pub fn mad_statistic(freqs: &DigitFrequencies) -> Result<f64> {
    if freqs.n == 0 {
        return Err(BenfordError::EmptySample);
    }
    let total: f64 = (1..=9u8)
        .map(|d| (freqs.proportion(d) - expected(d)).abs())
        .sum();
    Ok(total / 9.0)
}

pub fn conformance_report(values: &[f64]) -> Result<ConformanceReport> {
    let sig = sorted_significands(values)?;
    let digit_freqs = first_digit_frequencies(values)?;
    let (min, max) = values
        .iter()
        .filter(|&&x| x != 0.0)
        .map(|x| x.abs())
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), x| (lo.min(x), hi.max(x)));
    Ok(ConformanceReport {
        n: digit_freqs.n,
        digit_freqs,
        ks: ks_from_sorted(&sig),
        chi_square: chi_square_statistic(&digit_freqs)?,
        mad: mad_statistic(&digit_freqs)?,
        span_orders: (max / min).log10().max(0.0),
        observed_range: ObservedRange { min, max },
    })
}
