//! The check table behind `benford verify-paper`.
//!
//! Every worked example and every numerical acceptance check, run at seeds
//! fixed in this file. Nothing depends on the clock or the thread count, so
//! two runs print identical bytes. Runtime budgets are not checked here for
//! that reason; the `acceptance` test target times them.

use benford::{
    benford_witness, classify_range, conformance_report, decade, digit, first_digit_frequencies,
    first_digit_law, fold_to_significand_density, ks_distance_exact, ks_statistic, mad_statistic,
    non_benford_witness, piecewise_density_pdf, sample, significand, significand_image,
    span_orders, DistributionSpec, Interval, IntervalSet, RangeClassification, RangeSpec,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use serde::Serialize;

use crate::table::{num, render};

pub const N: usize = 1_000_000;
pub const SEED_ONE_DECADE: u64 = 0x5EED_0003;
pub const SEED_UNIFORM: u64 = 0x5EED_0004;
pub const SEED_DENSITY: u64 = 0x5EED_0005;
pub const SEED_DIGITS: u64 = 0x5EED_0006;
pub const SEED_SCALE: u64 = 0x5EED_0007;
pub const SEED_PROPERTIES: u64 = 0x5EED_0008;
pub const PROPERTY_CASES: u32 = 10_000;

/// `t* = 9 log10(e)` maximises `log10 t - (t - 1)/9`, the deviation of
/// `U[1, 10]` from the Benford CDF.
pub fn uniform_decade_distance() -> f64 {
    let t = 9.0 * std::f64::consts::LOG10_E;
    t.log10() - (t - 1.0) / 9.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub tolerance: String,
    pub passed: bool,
}

impl Check {
    fn new(
        criterion: u8,
        name: impl Into<String>,
        expected: impl Into<String>,
        observed: impl Into<String>,
        tolerance: impl Into<String>,
        passed: bool,
    ) -> Self {
        Check {
            criterion,
            name: name.into(),
            expected: expected.into(),
            observed: observed.into(),
            tolerance: tolerance.into(),
            passed,
        }
    }

    fn exact<T: std::fmt::Debug + PartialEq>(criterion: u8, name: &str, expected: T, observed: T) -> Self {
        let passed = expected == observed;
        Check::new(criterion, name, format!("{expected:?}"), format!("{observed:?}"), "exact", passed)
    }

    fn within(criterion: u8, name: &str, expected: f64, observed: f64, tol: f64) -> Self {
        Check::new(
            criterion,
            name,
            format!("{expected:.6}"),
            format!("{observed:.6}"),
            format!("±{tol:e}"),
            (observed - expected).abs() <= tol,
        )
    }

    fn below(criterion: u8, name: &str, bound: f64, observed: f64) -> Self {
        Check::new(
            criterion,
            name,
            format!("< {bound}"),
            format!("{observed:.6}"),
            "bound",
            observed < bound,
        )
    }
}

pub fn run_all() -> Vec<Check> {
    let mut checks = worked_examples();
    checks.extend(trichotomy());
    checks.extend(one_decade_conformance());
    checks.extend(uniform_non_conformance());
    checks.extend(two_decade_density());
    checks.extend(first_digit_law_checks());
    checks.extend(scale_invariance());
    checks.extend(property_suites());
    checks
}

pub fn render_table(checks: &[Check]) -> String {
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| {
            vec![
                c.criterion.to_string(),
                c.name.clone(),
                c.expected.clone(),
                c.observed.clone(),
                c.tolerance.clone(),
                if c.passed { "PASS" } else { "FAIL" }.to_owned(),
            ]
        })
        .collect();
    let mut out = render(&["#", "check", "expected", "observed", "tolerance", "status"], &rows);
    let passed = checks.iter().filter(|c| c.passed).count();
    out.push_str(&format!("\n{passed}/{} checks passed\n", checks.len()));
    out
}

fn sig(x: f64) -> f64 {
    significand(x).expect("finite input").value()
}

/// Criterion 1: significands and digits of the worked examples.
pub fn worked_examples() -> Vec<Check> {
    let digits: Vec<u8> = (1..=4).map(|p| digit(2019.0, p).unwrap()).collect();
    let tail_zero = (5..=40).all(|p| digit(2019.0, p).unwrap() == 0);
    vec![
        Check::exact(1, "S(2019)", 2.019, sig(2019.0)),
        Check::exact(1, "D1..D4(2019)", vec![2u8, 0, 1, 9], digits),
        Check::exact(1, "Dk(2019) = 0 for k in 5..=40", true, tail_zero),
        Check::exact(1, "S(-20.19)", 2.019, sig(-20.19)),
        Check::exact(1, "S(0.02019)", 2.019, sig(0.02019)),
        Check::exact(1, "S(0.0219)", 2.19, sig(0.0219)),
        Check::exact(1, "D1(0.0219)", 2u8, digit(0.0219, 1).unwrap()),
        Check::exact(1, "D1(-20.19)", 2u8, digit(-20.19, 1).unwrap()),
        Check::exact(1, "S(20.19) = S(-20.19)", sig(20.19), sig(-20.19)),
    ]
}

/// Criterion 2: the three worked ranges.
pub fn trichotomy() -> Vec<Check> {
    let mut out = Vec::new();
    let r = RangeSpec::new(100.0, 999.0).unwrap();
    let expect = IntervalSet::from_intervals(vec![Interval::open(9.99, 10.0)]);
    out.push(match classify_range(&r) {
        RangeClassification::Infeasible { gap } => Check::new(
            2,
            "classify [100, 999]",
            format!("infeasible, gap {expect}"),
            format!("infeasible, gap {gap}"),
            "exact",
            gap == expect,
        ),
        other => Check::new(2, "classify [100, 999]", "infeasible", other.name(), "exact", false),
    });

    let r = RangeSpec::new(73.0, 730.0).unwrap();
    let expect = RangeClassification::UniqueBenford {
        witness: DistributionSpec::ScaledBenford { scale: 73.0 },
    };
    let got = classify_range(&r);
    out.push(Check::new(
        2,
        "classify [73, 730]",
        "unique_benford, scale 73",
        match &got {
            RangeClassification::UniqueBenford { witness } => {
                format!("unique_benford, {}", crate::report::spec_text(witness))
            }
            other => other.name().to_owned(),
        },
        "exact",
        got == expect,
    ));

    // 1000.0001 is not a double; the bounds can only be as exact as its
    // nearest binary value, which is within half an ulp of 1000
    let rep = 1000f64.next_up() - 1000.0;
    let r = RangeSpec::new(100.0, 1000.0001).unwrap();
    out.push(match classify_range(&r) {
        RangeClassification::Rich {
            benford_c,
            non_benford_c,
        } => {
            let open = |i: &Interval| !i.lo_closed && !i.hi_closed && i.lo == 0.0;
            let ok = open(&benford_c)
                && open(&non_benford_c)
                && (benford_c.hi - 1e-5).abs() <= rep / 10.0
                && (non_benford_c.hi - 1e-4).abs() <= rep;
            Check::new(
                2,
                "classify [100, 1000.0001]",
                "rich, (0, 1e-5) and (0, 1e-4)",
                format!("rich, {benford_c} and {non_benford_c}"),
                format!("ulp(1000) = {rep:e}"),
                ok,
            )
        }
        other => Check::new(2, "classify [100, 1000.0001]", "rich", other.name(), "exact", false),
    });
    out
}

/// Criterion 3: Benford conformance within a single decade.
pub fn one_decade_conformance() -> Vec<Check> {
    let s = sample(&DistributionSpec::scaled_benford(73.0).unwrap(), N, SEED_ONE_DECADE).unwrap();
    let r = conformance_report(s.values()).unwrap();
    vec![
        Check::below(3, "ks of 10^6 ScaledBenford(73) draws", 0.003, r.ks),
        Check::new(
            3,
            "span_orders of the same sample",
            "<= 1",
            format!("{:.6}", r.span_orders),
            "bound",
            r.span_orders <= 1.0,
        ),
    ]
}

/// Criterion 4: uniforms on one decade.
pub fn uniform_non_conformance() -> Vec<Check> {
    let target = 0.26884;
    let mut out = vec![Check::within(
        4,
        "analytic t* = 9 log10(e) distance",
        target,
        uniform_decade_distance(),
        0.0005,
    )];
    for a in [1.0, 73.0, 100.0] {
        let spec = DistributionSpec::bounded_uniform(a, 10.0 * a).unwrap();
        out.push(Check::within(
            4,
            &format!("ks_exact U[{a}, {}]", 10.0 * a),
            target,
            ks_distance_exact(&spec),
            0.0005,
        ));
        let s = sample(&spec, N, SEED_UNIFORM).unwrap();
        out.push(Check::within(
            4,
            &format!("empirical ks U[{a}, {}]", 10.0 * a),
            target,
            ks_statistic(s.values()).unwrap(),
            0.01,
        ));
    }
    out
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels * 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * i as f64);
    }
    acc * h / 3.0
}

/// Criterion 5: the two-decade density.
pub fn two_decade_density() -> Vec<Check> {
    // integrate each smooth piece separately, right endpoint kept on its piece
    let integral: f64 = [(1.0f64, 10.0f64), (10.0, 100.0)]
        .iter()
        .map(|&(a, b)| {
            let top = b.next_down();
            simpson(|x| piecewise_density_pdf(x.min(top)), a, b, 20_000)
        })
        .sum();
    let spec = DistributionSpec::piecewise_density();
    let fold_err = (0..10_000)
        .map(|i| {
            let t = 1.0 + 9.0 * i as f64 / 10_000.0;
            (fold_to_significand_density(&spec, t).unwrap() - std::f64::consts::LOG10_E / t).abs()
        })
        .fold(0.0, f64::max);
    let s = sample(&spec, N, SEED_DENSITY).unwrap();
    vec![
        Check::within(5, "integral of pdf over [1, 100)", 1.0, integral, 1e-9),
        Check::new(
            5,
            "max |fold(t) - log10(e)/t|, 10^4 grid",
            "0",
            format!("{fold_err:e}"),
            "1e-12",
            fold_err <= 1e-12,
        ),
        Check::below(5, "ks of 10^6 inverse-CDF draws", 0.003, ks_statistic(s.values()).unwrap()),
    ]
}

/// Criterion 6: the first-digit law.
pub fn first_digit_law_checks() -> Vec<Check> {
    let total: f64 = (1..=9).map(|d| first_digit_law(d).unwrap()).sum();
    let s = sample(&DistributionSpec::scaled_benford(1.0).unwrap(), N, SEED_DIGITS).unwrap();
    let freqs = first_digit_frequencies(s.values()).unwrap();
    let mut out = vec![Check::within(6, "sum of log10(1 + 1/d)", 1.0, total, 1e-12)];
    for d in 1..=9u8 {
        out.push(Check::within(
            6,
            &format!("frequency of digit {d}"),
            first_digit_law(d).unwrap(),
            freqs.proportion(d),
            0.002,
        ));
    }
    out.push(Check::below(6, "mad", 0.002, mad_statistic(&freqs).unwrap()));
    out
}

/// Criterion 7: rescaling a fixed Benford sample.
pub fn scale_invariance() -> Vec<Check> {
    let s = sample(&DistributionSpec::scaled_benford(1.0).unwrap(), N, SEED_SCALE).unwrap();
    let base = ks_statistic(s.values()).unwrap();
    let mut out = Vec::new();
    for f in [2.0, 3.7, 10.0, 0.04] {
        let ks = ks_statistic(s.scaled(f).unwrap().values()).unwrap();
        out.push(Check::within(7, &format!("ks change under x{f}"), 0.0, ks - base, 0.005));
    }
    let ks10 = ks_statistic(s.scaled(10.0).unwrap().values()).unwrap();
    out.push(Check::new(
        7,
        "ks under x10, bit-level",
        num(base),
        num(ks10),
        "exact",
        ks10.to_bits() == base.to_bits(),
    ));
    out
}

fn seed_bytes(seed: u64) -> [u8; 32] {
    let mut b = [0u8; 32];
    for (i, chunk) in b.chunks_mut(8).enumerate() {
        chunk.copy_from_slice(&(seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)).to_le_bytes());
    }
    b
}

fn property<S>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Check
where
    S: Strategy,
    S::Value: std::fmt::Debug,
{
    let config = Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        max_global_rejects: 10 * PROPERTY_CASES,
        ..Config::default()
    };
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &seed_bytes(SEED_PROPERTIES));
    let mut runner = TestRunner::new_with_rng(config, rng);
    let outcome = runner.run(&strategy, test);
    let expected = format!("{PROPERTY_CASES} cases pass");
    match outcome {
        Ok(()) => Check::new(8, name, expected, format!("{PROPERTY_CASES} passed"), "exact", true),
        Err(e) => Check::new(8, name, expected, e.to_string().replace('\n', " "), "exact", false),
    }
}

fn finite_nonzero() -> impl Strategy<Value = f64> {
    (1u64..0x7ff0_0000_0000_0000u64, any::<bool>())
        .prop_map(|(bits, neg)| if neg { -f64::from_bits(bits) } else { f64::from_bits(bits) })
}

/// Significand correctly rounded from the formatter's exact expansion.
fn formatter_significand(x: f64) -> f64 {
    let s = format!("{:.800e}", x.abs());
    let (mant, _) = s.split_once('e').unwrap();
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let digits = digits.trim_end_matches('0');
    let t: f64 = format!("{}.{}0", &digits[..1], &digits[1..]).parse().unwrap();
    t.min(10f64.next_down())
}

fn pow10(k: i32) -> f64 {
    format!("1e{k}").parse().unwrap()
}

fn reachable(range: &RangeSpec, t: f64) -> bool {
    let lo = range.a().log10().floor() as i32 - 1;
    let hi = range.b().log10().floor() as i32 + 1;
    (lo..=hi).any(|k| range.contains(t * pow10(k)))
}

/// Criterion 8: randomized property suites.
pub fn property_suites() -> Vec<Check> {
    let mut out = Vec::new();

    out.push(property("significand idempotent, matches exact expansion", finite_nonzero(), |x| {
        let s = sig(x);
        prop_assert!((1.0..10.0).contains(&s));
        prop_assert_eq!(sig(s), s);
        prop_assert_eq!(s, formatter_significand(x));
        Ok(())
    }));

    out.push(property(
        "decade invariance on exact products",
        (1u64..(1u64 << 30), -900i32..900, 0u32..=6),
        |(m, e, k)| {
            let x = m as f64 * 2f64.powi(e);
            let y = (m * 10u64.pow(k)) as f64 * 2f64.powi(e);
            prop_assume!(x.is_normal() && y.is_normal());
            prop_assert_eq!(sig(y), sig(x));
            prop_assert_eq!(decade(y).unwrap(), decade(x).unwrap() + k as i32);
            Ok(())
        },
    ));

    out.push(property("reconstruction |x| = 10^k S(x)", -22.0f64..22.99, |l| {
        let x = 10f64.powf(l);
        let k = decade(x).unwrap();
        let s = sig(x);
        let back = if k >= 0 { s * pow10(k) } else { s / pow10(-k) };
        prop_assert!((back - x).abs() <= 2.0 * (x.next_up() - x));
        prop_assert_eq!(s, formatter_significand(x));
        Ok(())
    }));

    let ranges = (-5.0f64..5.0, 0.0001f64..2.5).prop_map(|(la, span)| {
        let a = 10f64.powf(la);
        RangeSpec::new(a, a * 10f64.powf(span)).unwrap()
    });
    out.push(property("significand image vs brute-force grid", ranges, |range| {
        let img = significand_image(&range);
        let ends: Vec<f64> = img.intervals().iter().flat_map(|i| [i.lo, i.hi]).collect();
        for i in 0..2000 {
            let t = 1.0 + 9.0 * (i as f64 + 0.5) / 2000.0;
            if ends.iter().any(|&e| (e - t).abs() < 1e-9) {
                continue;
            }
            prop_assert_eq!(img.contains(t), reachable(&range, t));
        }
        let span = span_orders(&range);
        if (span - 1.0).abs() > 1e-12 {
            prop_assert_eq!(img.is_full(), span >= 1.0);
        }
        Ok(())
    }));

    let rich = (-6.0f64..6.0, 1e-6f64..3.0, 0.001f64..0.999, 0.001f64..0.999).prop_map(
        |(la, extra, u, v)| {
            let a = 10f64.powf(la);
            (RangeSpec::new(a, a * 10f64.powf(1.0 + extra)).unwrap(), u, v)
        },
    );
    out.push(property("witness validity on rich ranges", rich, |(range, u, v)| {
        let RangeClassification::Rich {
            benford_c,
            non_benford_c,
        } = classify_range(&range)
        else {
            return Err(TestCaseError::fail("expected rich case"));
        };
        let x = benford_witness(&range, benford_c.hi * u).unwrap();
        let y = non_benford_witness(&range, non_benford_c.hi * v).unwrap();
        for w in [x, y] {
            let (lo, hi, _) = w.support();
            prop_assert!(range.contains(lo) && range.contains(hi));
        }
        prop_assert_eq!(ks_distance_exact(&x), 0.0);
        prop_assert!(ks_distance_exact(&y) > 0.05);
        Ok(())
    }));

    let specs = (0u8..3, 0.001f64..1e6, 0.001f64..1e3, any::<u64>(), 1usize..40);
    out.push(property("sampling determinism", specs, |(family, p, width, seed, n)| {
        let spec = match family {
            0 => DistributionSpec::scaled_benford(p).unwrap(),
            1 => DistributionSpec::bounded_uniform(p, p * (1.0 + width)).unwrap(),
            _ => DistributionSpec::piecewise_density(),
        };
        let a = sample(&spec, n, seed).unwrap();
        let b = sample(&spec, n, seed).unwrap();
        prop_assert_eq!(a.len(), n);
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert_eq!(x.to_bits(), y.to_bits());
            prop_assert!(spec.in_support(*x));
        }
        Ok(())
    }));

    out
}
