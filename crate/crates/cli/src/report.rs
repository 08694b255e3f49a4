//! The versioned report document shared by `analyze` and `classify`.
//!
//! The JSON form round-trips: serialising, parsing and serialising again
//! gives the same bytes (doubles are written in shortest round-trip form and
//! parsed with correct rounding).

use benford::{
    first_digit_law, ConformanceReport, DistributionSpec, Provenance, RangeClassification,
};
use serde::{Deserialize, Serialize};

use crate::ingest::InputFormat;
use crate::table::{num, render};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub command: CommandRecord,
    pub provenance: Source,
    pub columns: Vec<ColumnReport>,
    /// Set by `classify`; per-column classifications live in `columns`.
    pub classification: Option<RangeClassification>,
    /// Example witnesses at the midpoint of each valid `c` interval.
    pub witnesses: Vec<WitnessExample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandRecord {
    pub name: String,
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Source {
    File {
        path: String,
        format: InputFormat,
        /// Generator record found in a `benford sample` header, if any.
        generated: Option<Provenance>,
    },
    Range {
        a: f64,
        b: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnReport {
    pub column: String,
    pub skipped: u64,
    pub report: ConformanceReport,
    /// Classification of `[min, max]` of the observed absolute values; absent
    /// when all nonzero values are equal.
    pub classification: Option<RangeClassification>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessExample {
    pub role: WitnessRole,
    /// `None` for the unique witness, which has no free parameter.
    pub c: Option<f64>,
    pub spec: DistributionSpec,
    pub ks_exact: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessRole {
    Benford,
    NonBenford,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.provenance {
            Source::File {
                path, generated, ..
            } => {
                out.push_str(&format!("file  {path}\n"));
                if let Some(Provenance::Generated { spec, seed, n, .. }) = generated {
                    out.push_str(&format!("generated  {}  seed={seed}  n={n}\n", spec_text(spec)));
                }
            }
            Source::Range { a, b } => {
                out.push_str(&format!("range  [{}, {}]\n", num(*a), num(*b)));
            }
        }
        for col in &self.columns {
            out.push('\n');
            out.push_str(&column_text(col));
        }
        if let Some(class) = &self.classification {
            out.push('\n');
            out.push_str(&classification_text(class));
        }
        if !self.witnesses.is_empty() {
            out.push('\n');
            let rows: Vec<Vec<String>> = self
                .witnesses
                .iter()
                .map(|w| {
                    vec![
                        match w.role {
                            WitnessRole::Benford => "benford".to_owned(),
                            WitnessRole::NonBenford => "non_benford".to_owned(),
                        },
                        w.c.map_or("-".to_owned(), num),
                        spec_text(&w.spec),
                        format!("{:.6}", w.ks_exact),
                    ]
                })
                .collect();
            out.push_str(&render(&["witness", "c", "distribution", "ks_exact"], &rows));
        }
        out
    }
}

pub fn spec_text(spec: &DistributionSpec) -> String {
    match spec {
        DistributionSpec::ScaledBenford { scale } => format!("scaled_benford(scale={})", num(*scale)),
        DistributionSpec::BoundedUniform { lo, hi } => {
            format!("uniform[{}, {}]", num(*lo), num(*hi))
        }
        DistributionSpec::PiecewiseDensity => "paper_density[1, 100)".to_owned(),
    }
}

fn column_text(col: &ColumnReport) -> String {
    let r = &col.report;
    let mut rows = vec![
        vec!["n".to_owned(), r.n.to_string()],
        vec!["zeros_excluded".to_owned(), r.digit_freqs.excluded.to_string()],
        vec!["skipped".to_owned(), col.skipped.to_string()],
        vec!["ks".to_owned(), format!("{:.6}", r.ks)],
        vec!["chi_square".to_owned(), format!("{:.4}", r.chi_square)],
        vec!["mad".to_owned(), format!("{:.6}", r.mad)],
        vec!["span_orders".to_owned(), format!("{:.6}", r.span_orders)],
        vec!["min_abs".to_owned(), num(r.observed_range.min)],
        vec!["max_abs".to_owned(), num(r.observed_range.max)],
    ];
    rows.push(vec![
        "range_case".to_owned(),
        col.classification
            .as_ref()
            .map_or("-".to_owned(), |c| c.name().to_owned()),
    ]);
    let mut out = format!("column  {}\n", col.column);
    out.push_str(&render(&["statistic", "value"], &rows));
    out.push('\n');
    let digits: Vec<Vec<String>> = (1..=9u8)
        .map(|d| {
            let p = if r.digit_freqs.n == 0 {
                0.0
            } else {
                r.digit_freqs.proportion(d)
            };
            vec![
                d.to_string(),
                r.digit_freqs.count(d).to_string(),
                format!("{p:.6}"),
                format!("{:.6}", first_digit_law(d).expect("digit in 1..=9")),
            ]
        })
        .collect();
    out.push_str(&render(&["digit", "count", "observed", "expected"], &digits));
    out
}

fn classification_text(class: &RangeClassification) -> String {
    let mut rows = vec![vec!["case".to_owned(), class.name().to_owned()]];
    match class {
        RangeClassification::Infeasible { gap } => {
            rows.push(vec!["unreachable_significands".to_owned(), gap.to_string()]);
        }
        RangeClassification::UniqueBenford { witness } => {
            rows.push(vec!["witness".to_owned(), spec_text(witness)]);
        }
        RangeClassification::Rich {
            benford_c,
            non_benford_c,
        } => {
            rows.push(vec!["benford_c".to_owned(), benford_c.to_string()]);
            rows.push(vec!["non_benford_c".to_owned(), non_benford_c.to_string()]);
        }
    }
    render(&["field", "value"], &rows)
}
