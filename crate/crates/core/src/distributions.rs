//! Distribution families on the positive reals and their exact significand
//! laws.
//!
//! Three families are supported:
//!
//! - `ScaledBenford { scale: m }`: `m * 10^U` with `U` uniform on `[0, 1]`,
//!   supported on `[m, 10m]`. Benford for every `m > 0`.
//! - `BoundedUniform { lo, hi }`: uniform on `[lo, hi]`. Never Benford.
//! - `PiecewiseDensity`: the two-decade density on `[1, 100)` with
//!   `f(x) = (x - 1) log10(e) / x^2` on `[1, 10)` and `10 log10(e) / x^2` on
//!   `[10, 100)`. Its significand has density `log10(e) / t`, so it is Benford
//!   even though it is not of the form `m * 10^U`.

use std::f64::consts::{LN_10, LOG10_E};

use serde::{Deserialize, Serialize};

use crate::error::{BenfordError, Result};
use crate::significand::split;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum DistributionSpec {
    ScaledBenford { scale: f64 },
    BoundedUniform { lo: f64, hi: f64 },
    #[serde(rename = "paper_density")]
    PiecewiseDensity,
}

impl DistributionSpec {
    pub fn scaled_benford(scale: f64) -> Result<Self> {
        DistributionSpec::ScaledBenford { scale }.validated()
    }

    pub fn bounded_uniform(lo: f64, hi: f64) -> Result<Self> {
        DistributionSpec::BoundedUniform { lo, hi }.validated()
    }

    pub fn piecewise_density() -> Self {
        DistributionSpec::PiecewiseDensity
    }

    /// Checks the parameter invariants; specs built through serde or struct
    /// literals should pass through here before use.
    pub fn validated(self) -> Result<Self> {
        match self {
            DistributionSpec::ScaledBenford { scale } => {
                if !(scale.is_finite() && scale > 0.0 && (scale * 10.0).is_finite()) {
                    return Err(BenfordError::InvalidSpec(format!(
                        "scale must be positive and finite (with 10*scale finite), got {scale}"
                    )));
                }
            }
            DistributionSpec::BoundedUniform { lo, hi } => {
                if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
                    return Err(BenfordError::InvalidSpec(format!(
                        "uniform bounds must satisfy 0 < lo < hi, both finite, got lo={lo} hi={hi}"
                    )));
                }
            }
            DistributionSpec::PiecewiseDensity => {}
        }
        Ok(self)
    }

    /// Support as `(lo, hi, hi_inclusive)`; the lower end is always included.
    pub fn support(&self) -> (f64, f64, bool) {
        match *self {
            DistributionSpec::ScaledBenford { scale } => (scale, scale * 10.0, true),
            DistributionSpec::BoundedUniform { lo, hi } => (lo, hi, true),
            DistributionSpec::PiecewiseDensity => (1.0, 100.0, false),
        }
    }

    pub fn in_support(&self, x: f64) -> bool {
        let (lo, hi, closed) = self.support();
        x >= lo && if closed { x <= hi } else { x < hi }
    }

    /// Probability density at `x`.
    pub fn pdf(&self, x: f64) -> f64 {
        if !self.in_support(x) {
            return 0.0;
        }
        match *self {
            DistributionSpec::ScaledBenford { .. } => 1.0 / (x * LN_10),
            DistributionSpec::BoundedUniform { lo, hi } => 1.0 / (hi - lo),
            DistributionSpec::PiecewiseDensity => piecewise_density_pdf(x),
        }
    }

    /// `true` for the families whose significand is exactly Benford.
    pub fn is_benford(&self) -> bool {
        !matches!(self, DistributionSpec::BoundedUniform { .. })
    }
}

fn check_t(t: f64) -> Result<()> {
    if (1.0..=10.0).contains(&t) {
        Ok(())
    } else {
        Err(BenfordError::domain("t", t, "[1, 10]"))
    }
}

/// The Benford significand CDF, `log10(t)` on `[1, 10]`.
pub fn benford_cdf(t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(t.log10())
}

/// `P(D1 = d) = log10(1 + 1/d)` for `d` in `1..=9`.
pub fn first_digit_law(d: u8) -> Result<f64> {
    if !(1..=9).contains(&d) {
        return Err(BenfordError::domain("d", d, "1..=9"));
    }
    Ok((1.0 + 1.0 / f64::from(d)).log10())
}

pub fn piecewise_density_pdf(x: f64) -> f64 {
    if (1.0..10.0).contains(&x) {
        (x - 1.0) / (x * x) * LOG10_E
    } else if (10.0..100.0).contains(&x) {
        10.0 / (x * x) * LOG10_E
    } else {
        0.0
    }
}

/// Closed-form CDF of the two-decade density.
pub fn piecewise_density_cdf(x: f64) -> f64 {
    if x < 1.0 {
        0.0
    } else if x < 10.0 {
        LOG10_E * (x.ln() + 1.0 / x - 1.0)
    } else if x < 100.0 {
        piecewise_density_cdf_at_ten() + 10.0 * LOG10_E * (0.1 - 1.0 / x)
    } else {
        1.0
    }
}

fn piecewise_density_cdf_at_ten() -> f64 {
    LOG10_E * (LN_10 + 0.1 - 1.0)
}

/// `10^k`, exact for `0 <= k <= 22`.
fn pow10(k: i32) -> f64 {
    if k >= 0 {
        10f64.powi(k)
    } else {
        1.0 / 10f64.powi(-k)
    }
}

/// `P(S(X) <= t)` for `X ~ spec`, in closed form.
pub fn exact_significand_cdf(spec: &DistributionSpec, t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(match *spec {
        DistributionSpec::ScaledBenford { .. } | DistributionSpec::PiecewiseDensity => t.log10(),
        DistributionSpec::BoundedUniform { lo, hi } => uniform_significand_cdf(lo, hi, t),
    })
}

fn uniform_significand_cdf(lo: f64, hi: f64, t: f64) -> f64 {
    if t >= 10.0 {
        return 1.0;
    }
    let (klo, _) = split(lo);
    let (khi, _) = split(hi);
    let mut mass = 0.0;
    for k in klo..=khi {
        let p = pow10(k);
        let seg_lo = lo.max(p);
        let seg_hi = hi.min(10.0 * p);
        if seg_hi > seg_lo {
            mass += (p * t).clamp(seg_lo, seg_hi) - seg_lo;
        }
    }
    (mass / (hi - lo)).clamp(0.0, 1.0)
}

/// Density of `S(X)` at `t`: `sum over k of 10^k * pdf(10^k * t)`.
pub fn fold_to_significand_density(spec: &DistributionSpec, t: f64) -> Result<f64> {
    if !(1.0..10.0).contains(&t) {
        return Err(BenfordError::domain("t", t, "[1, 10)"));
    }
    let (lo, hi, _) = spec.support();
    let (klo, _) = split(lo);
    let (khi, _) = split(hi);
    Ok((klo - 1..=khi)
        .map(|k| {
            let p = pow10(k);
            p * spec.pdf(p * t)
        })
        .sum())
}

/// `sup over t in [1, 10] of |P(S(X) <= t) - log10 t|`.
///
/// Zero for the Benford families. For a uniform the significand CDF is
/// piecewise linear with kinks only at `S(lo)` and `S(hi)`; on each linear
/// piece the deviation is convex, so its extremes sit at the piece ends or at
/// the stationary point `t = log10(e) / slope`.
pub fn ks_distance_exact(spec: &DistributionSpec) -> f64 {
    let (lo, hi) = match *spec {
        DistributionSpec::BoundedUniform { lo, hi } => (lo, hi),
        _ => return 0.0,
    };
    let mut knots = vec![1.0, split(lo).1, split(hi).1, 10.0];
    knots.sort_by(f64::total_cmp);
    knots.dedup();

    let dev = |t: f64| (uniform_significand_cdf(lo, hi, t) - t.log10()).abs();
    let mut best = knots.iter().map(|&t| dev(t)).fold(0.0, f64::max);
    for w in knots.windows(2) {
        let (t1, t2) = (w[0], w[1]);
        let slope =
            (uniform_significand_cdf(lo, hi, t2) - uniform_significand_cdf(lo, hi, t1)) / (t2 - t1);
        if slope > 0.0 {
            let t_star = LOG10_E / slope;
            if t1 < t_star && t_star < t2 {
                best = best.max(dev(t_star));
            }
        }
    }
    best
}
