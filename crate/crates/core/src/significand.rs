//! Decimal significand and significant-digit arithmetic.
//!
//! `significand(x)` is the unique `t` in `[1, 10)` with `|x| = 10^k * t`,
//! rounded once (to nearest, ties to even) from the exact value of the binary
//! input. The decade `k` is never taken from a rounded logarithm alone: it is
//! estimated with `log10` and then confirmed with exact comparisons, either in
//! hardware (fused multiply-add against exactly representable powers of ten)
//! or, outside that window, with big-integer arithmetic.
//!
//! Digits are read from the exact decimal expansion of the binary value, so
//! `digit(0.0219, 3)` is 8: the double nearest to 0.0219 is
//! 0.021899999999999999...
//!
//! Zero maps to significand 0 and to digit 0 at every position.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{BenfordError, Result};

/// Largest double strictly below 10.
pub const BELOW_TEN: f64 = 9.999_999_999_999_998;

/// Largest double strictly below 1.
const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// Exactly representable powers of ten, `10^0 ..= 10^22`.
const POW10: [f64; 23] = [
    1e0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9, 1e10, 1e11, 1e12, 1e13, 1e14, 1e15, 1e16,
    1e17, 1e18, 1e19, 1e20, 1e21, 1e22,
];

/// A decimal significand: either exactly 0 or a value in `[1, 10)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct SignificandValue(f64);

impl SignificandValue {
    pub const ZERO: SignificandValue = SignificandValue(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if value == 0.0 || (1.0..10.0).contains(&value) {
            Ok(SignificandValue(value))
        } else {
            Err(BenfordError::domain("significand", value, "{0} U [1, 10)"))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }
}

impl From<SignificandValue> for f64 {
    fn from(s: SignificandValue) -> f64 {
        s.0
    }
}

fn check_finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(BenfordError::NonFinite(x))
    }
}

/// The decimal significand `S(x)`.
pub fn significand(x: f64) -> Result<SignificandValue> {
    check_finite(x)?;
    if x == 0.0 {
        return Ok(SignificandValue::ZERO);
    }
    Ok(SignificandValue(split(x.abs()).1))
}

/// The decade exponent `k` with `10^k <= |x| < 10^(k+1)`.
pub fn decade(x: f64) -> Result<i32> {
    check_finite(x)?;
    if x == 0.0 {
        return Err(BenfordError::domain("x", x, "nonzero finite reals"));
    }
    Ok(split(x.abs()).0)
}

/// `log10(S(x))`, the fractional part of `log10|x|`, in `[0, 1)`.
pub fn log_mantissa(x: f64) -> Result<f64> {
    check_finite(x)?;
    if x == 0.0 {
        return Err(BenfordError::domain("x", x, "nonzero finite reals"));
    }
    Ok(log_mantissa_of(split(x.abs()).1))
}

pub(crate) fn log_mantissa_of(s: f64) -> f64 {
    let r = s.log10();
    if r >= 1.0 {
        BELOW_ONE
    } else {
        r
    }
}

/// The `position`-th significant decimal digit `D_position(x)`, 1-based.
pub fn digit(x: f64, position: usize) -> Result<u8> {
    check_finite(x)?;
    if position < 1 {
        return Err(BenfordError::domain("position", position, "integers >= 1"));
    }
    if x == 0.0 {
        return Ok(0);
    }
    if position == 1 {
        return Ok(first_digit_nonzero(x.abs()));
    }
    let digits = exact_digits(x.abs());
    Ok(digits
        .as_bytes()
        .get(position - 1)
        .map_or(0, |b| b - b'0'))
}

/// First significant digit of a finite nonzero magnitude.
pub(crate) fn first_digit_nonzero(ax: f64) -> u8 {
    let s = split(ax).1;
    // A rounded significand that lands on an integer may have come from just
    // below it; only the exact expansion can tell.
    if s.fract() != 0.0 {
        s as u8
    } else {
        exact_digits(ax).as_bytes()[0] - b'0'
    }
}

/// The significant digits of the exact decimal expansion of `|x|`, without
/// trailing zeros. Empty for zero.
pub fn significant_digits(x: f64) -> Result<String> {
    check_finite(x)?;
    if x == 0.0 {
        return Ok(String::new());
    }
    Ok(exact_digits(x.abs()))
}

fn exact_digits(ax: f64) -> String {
    let (m, e) = decompose(ax);
    let n = if e >= 0 {
        BigUint::from(m) << (e as usize)
    } else {
        // m / 2^-e == m * 5^-e / 10^-e
        BigUint::from(m) * BigUint::from(5u32).pow((-e) as u32)
    };
    let s = n.to_string();
    s.trim_end_matches('0').to_string()
}

/// `(mantissa, exponent)` with `ax == mantissa * 2^exponent` exactly.
fn decompose(ax: f64) -> (u64, i32) {
    let bits = ax.to_bits();
    let exp_bits = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    if exp_bits == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_bits - 1075)
    }
}

/// `(k, S)` for a finite positive magnitude.
pub(crate) fn split(ax: f64) -> (i32, f64) {
    split_fast(ax).unwrap_or_else(|| split_exact(ax))
}

fn clamp_below_ten(s: f64) -> f64 {
    if s >= 10.0 {
        BELOW_TEN
    } else {
        s
    }
}

/// Hardware path, valid while the relevant powers of ten are exact doubles.
fn split_fast(ax: f64) -> Option<(i32, f64)> {
    let mut k = ax.log10().floor() as i32;
    for _ in 0..4 {
        if (0..=22).contains(&k) {
            let p = POW10[k as usize];
            if ax < p {
                k -= 1;
                continue;
            }
            // sign of the exact 10p - ax
            if 10f64.mul_add(p, -ax) <= 0.0 {
                k += 1;
                continue;
            }
            return Some((k, clamp_below_ten(ax / p)));
        } else if (-22..0).contains(&k) {
            let p = POW10[(-k) as usize];
            if ax.mul_add(p, -1.0) < 0.0 {
                k -= 1;
                continue;
            }
            if ax.mul_add(p, -10.0) >= 0.0 {
                k += 1;
                continue;
            }
            return Some((k, clamp_below_ten(ax * p)));
        } else {
            return None;
        }
    }
    None
}

/// Big-integer path, exact for every finite positive double.
pub(crate) fn split_exact(ax: f64) -> (i32, f64) {
    let (m, e) = decompose(ax);
    let (mut num, mut den) = if e >= 0 {
        (BigUint::from(m) << (e as usize), BigUint::one())
    } else {
        (BigUint::from(m), BigUint::one() << ((-e) as usize))
    };
    let ten = BigUint::from(10u32);
    let mut k = ax.log10().floor() as i32;
    if k >= 0 {
        den *= ten.pow(k as u32);
    } else {
        num *= ten.pow((-k) as u32);
    }
    while num < den {
        num *= &ten;
        k -= 1;
    }
    while num >= &den * &ten {
        den *= &ten;
        k += 1;
    }
    (k, clamp_below_ten(round_ratio(&num, &den)))
}

/// Correctly rounded `num / den` for a ratio known to lie in `[1, 10)`.
fn round_ratio(num: &BigUint, den: &BigUint) -> f64 {
    let mut j = 0u32;
    while (den << ((j + 1) as usize)) <= *num {
        j += 1;
    }
    let scaled = num << ((52 - j) as usize);
    let mut q = &scaled / den;
    let r = &scaled - &q * den;
    let twice = &r << 1usize;
    if twice > *den || (twice == *den && q.bit(0)) {
        q += 1u32;
    }
    debug_assert!(!q.is_zero());
    let q = q.to_u64().expect("quotient fits in 54 bits");
    q as f64 * 2f64.powi(j as i32 - 52)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: f64) -> f64 {
        significand(x).unwrap().value()
    }

    #[test]
    fn worked_values() {
        assert_eq!(s(2019.0), 2.019);
        assert_eq!(s(0.02019), 2.019);
        assert_eq!(s(-20.19), 2.019);
        assert_eq!(s(0.0), 0.0);
        assert_eq!(s(1.0), 1.0);
        assert!(s(9.999_999_999_999_999) < 10.0);
    }

    #[test]
    fn decade_boundaries() {
        for k in -30..30 {
            let x: f64 = format!("1e{k}").parse().unwrap();
            let (dk, sig) = split_exact(x);
            assert_eq!(s(x), sig, "1e{k}");
            assert_eq!(decade(x).unwrap(), dk);
        }
        assert_eq!(s(0.001), 1.0);
        assert_eq!(decade(0.001).unwrap(), -3);
        assert_eq!(decade(1000.0).unwrap(), 3);
        assert_eq!(decade(999.999_999_999_9).unwrap(), 2);
        // the double nearest 1e23 is 99999999999999991611392
        assert_eq!(decade(1e23).unwrap(), 22);
        assert_eq!(digit(1e23, 1).unwrap(), 9);
    }

    #[test]
    fn subnormals_and_extremes() {
        let tiny = f64::from_bits(1); // 4.94e-324
        assert_eq!(decade(tiny).unwrap(), -324);
        assert_eq!(s(tiny), 4.940_656_458_412_465);
        assert_eq!(digit(tiny, 1).unwrap(), 4);
        assert_eq!(decade(f64::MAX).unwrap(), 308);
        assert_eq!(s(f64::MAX), 1.797_693_134_862_315_7);
        assert_eq!(decade(f64::MIN_POSITIVE).unwrap(), -308);
    }

    #[test]
    fn non_finite_rejected() {
        assert!(matches!(significand(f64::NAN), Err(BenfordError::NonFinite(_))));
        assert!(significand(f64::INFINITY).is_err());
        assert!(digit(f64::NEG_INFINITY, 1).is_err());
        assert!(log_mantissa(f64::NAN).is_err());
    }

    #[test]
    fn digits_of_2019() {
        let d: Vec<u8> = (1..=8).map(|p| digit(2019.0, p).unwrap()).collect();
        assert_eq!(d, vec![2, 0, 1, 9, 0, 0, 0, 0]);
        assert_eq!(digit(2019.0, 400).unwrap(), 0);
        assert_eq!(digit(0.0219, 1).unwrap(), 2);
        assert_eq!(digit(-20.19, 1).unwrap(), 2);
    }

    #[test]
    fn digit_edge_cases() {
        assert!(digit(2019.0, 0).is_err());
        assert_eq!(digit(0.0, 1).unwrap(), 0);
        assert_eq!(digit(0.0, 7).unwrap(), 0);
        // exact expansion of the double nearest 0.0219
        assert_eq!(significant_digits(0.0219).unwrap()[..6].to_string(), "218999");
        assert_eq!(digit(0.0219, 3).unwrap(), 8);
    }

    #[test]
    fn first_digit_on_rounded_integer_significand() {
        // exact significand 1.9999999999999999...; rounds to 2.0
        let x = 2.0 - f64::EPSILON;
        assert_eq!(s(x), x);
        let y = 0.199_999_999_999_999_99;
        assert_eq!(digit(y, 1).unwrap(), significant_digits(y).unwrap().as_bytes()[0] - b'0');
    }

    #[test]
    fn log_mantissa_values() {
        assert_eq!(log_mantissa(100.0).unwrap(), 0.0);
        assert!((log_mantissa(2019.0).unwrap() - 0.305_136_318_943_639_28).abs() < 1e-15);
        assert_eq!(log_mantissa(0.02019).unwrap(), log_mantissa(2019.0).unwrap());
        assert!(log_mantissa(0.0).is_err());
        assert!(log_mantissa(BELOW_TEN).unwrap() < 1.0);
    }

    #[test]
    fn significand_value_invariant() {
        assert!(SignificandValue::new(10.0).is_err());
        assert!(SignificandValue::new(0.5).is_err());
        assert!(SignificandValue::new(0.0).unwrap().is_zero());
        assert_eq!(SignificandValue::new(3.0).unwrap().value(), 3.0);
    }

    proptest::proptest! {
        #![proptest_config(proptest::test_runner::Config::with_cases(10_000))]

        #[test]
        fn fast_path_agrees_with_exact(bits in 0x0010_0000_0000_0000u64..0x7fe0_0000_0000_0000u64) {
            let x = f64::from_bits(bits);
            if let Some(fast) = split_fast(x) {
                proptest::prop_assert_eq!(fast, split_exact(x));
            }
        }

        #[test]
        fn fast_path_near_decades(k in -22i32..=22, ulps in -4i64..=4) {
            let p: f64 = format!("1e{k}").parse().unwrap();
            let x = f64::from_bits((p.to_bits() as i64 + ulps) as u64);
            if let Some(fast) = split_fast(x) {
                proptest::prop_assert_eq!(fast, split_exact(x));
            }
        }
    }
}
