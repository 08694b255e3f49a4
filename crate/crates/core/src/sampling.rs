//! Seeded, reproducible samplers and the `Sample` container.
//!
//! Draws come from ChaCha8 seeded with `seed_from_u64(seed)`. The output is
//! cut into fixed blocks of `BLOCK` draws and block `i` uses ChaCha stream
//! `i`, so blocks are generated in parallel while the values stay a pure
//! function of `(spec, seed, n)`, independent of thread count.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{piecewise_density_cdf, DistributionSpec};
use crate::error::{BenfordError, Result};

/// Identifier of the generator contract recorded in provenance.
pub const RNG_ALGORITHM: &str = "chacha8/seed_from_u64/stream-per-65536-block/u53";

const BLOCK: usize = 1 << 16;

/// CDF tolerance for the bisection inverse of the two-decade density.
const INVERSE_CDF_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Generated {
        spec: DistributionSpec,
        seed: u64,
        n: usize,
        rng: String,
    },
    External {
        source: String,
    },
    Scaled {
        factor: f64,
        source: Box<Provenance>,
    },
}

/// An ordered multiset of finite reals plus where it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    values: Vec<f64>,
    provenance: Provenance,
}

impl Sample {
    /// Wraps externally sourced values; every value must be finite.
    pub fn from_values(values: Vec<f64>, source: impl Into<String>) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(BenfordError::NonFinite(bad));
        }
        Ok(Sample {
            values,
            provenance: Provenance::External {
                source: source.into(),
            },
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Every value multiplied by `factor` (one floating-point rounding each).
    pub fn scaled(&self, factor: f64) -> Result<Sample> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(BenfordError::domain("factor", factor, "positive finite reals"));
        }
        let values: Vec<f64> = self.values.iter().map(|v| v * factor).collect();
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(BenfordError::NonFinite(bad));
        }
        Ok(Sample {
            values,
            provenance: Provenance::Scaled {
                factor,
                source: Box::new(self.provenance.clone()),
            },
        })
    }

    /// Re-runs the generator recorded in the provenance, if any.
    pub fn regenerate(&self) -> Option<Result<Sample>> {
        match &self.provenance {
            Provenance::Generated { spec, seed, n, .. } => Some(sample(spec, *n, *seed)),
            _ => None,
        }
    }
}

/// `n` independent draws from `spec`, deterministic in `(spec, seed, n)`.
pub fn sample(spec: &DistributionSpec, n: usize, seed: u64) -> Result<Sample> {
    let spec = spec.validated()?;
    if n == 0 {
        return Err(BenfordError::domain("n", n, "counts >= 1"));
    }
    let blocks = n.div_ceil(BLOCK);
    let values: Vec<f64> = (0..blocks)
        .into_par_iter()
        .flat_map_iter(|block| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(block as u64);
            let len = BLOCK.min(n - block * BLOCK);
            (0..len)
                .map(move |_| draw(&spec, unit(&mut rng)))
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(Sample {
        values,
        provenance: Provenance::Generated {
            spec,
            seed,
            n,
            rng: RNG_ALGORITHM.to_string(),
        },
    })
}

/// Uniform on `[0, 1)` with 53 random bits.
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn draw(spec: &DistributionSpec, u: f64) -> f64 {
    match *spec {
        DistributionSpec::ScaledBenford { scale } => {
            let mult = 10f64.powf(u).clamp(1.0, 10.0);
            scale * mult
        }
        DistributionSpec::BoundedUniform { lo, hi } => (lo + (hi - lo) * u).clamp(lo, hi),
        DistributionSpec::PiecewiseDensity => invert_piecewise_cdf(u),
    }
}

/// Bisection on the closed-form CDF over `[1, 100)`.
pub fn invert_piecewise_cdf(u: f64) -> f64 {
    let (mut lo, mut hi) = (1.0f64, 100.0f64);
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let f = piecewise_density_cdf(mid);
        if (f - u).abs() <= INVERSE_CDF_TOL || mid <= lo || mid >= hi {
            break;
        }
        if f < u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    mid.clamp(1.0, 100f64.next_down())
}
