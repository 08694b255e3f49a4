use std::io::Write;
use std::path::Path;

use benford::{
    benford_witness, classify_range, conformance_report, ks_distance_exact, non_benford_witness,
    sample, DistributionSpec, Interval, RangeClassification, RangeSpec,
};
use clap::ValueEnum;
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::ingest::{ingest, sample_header, DatasetColumn, InputFormat, SAMPLE_HEADER_PREFIX};
use crate::report::{
    ColumnReport, CommandRecord, ReportDocument, Source, WitnessExample, WitnessRole,
    SCHEMA_VERSION,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    ScaledBenford,
    Uniform,
    PaperDensity,
    BenfordWitness,
    NonBenfordWitness,
}

/// Parameters of `sample`; which ones are required depends on the family.
#[derive(Debug, Clone, Default)]
pub struct SpecArgs {
    pub scale: Option<f64>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
}

fn required(v: Option<f64>, flag: &str, family: &str) -> Result<f64> {
    v.ok_or_else(|| CliError::Usage(format!("{family} requires {flag}")))
}

pub fn build_spec(family: Family, args: &SpecArgs) -> Result<DistributionSpec> {
    let spec = match family {
        Family::ScaledBenford => {
            DistributionSpec::scaled_benford(required(args.scale, "--scale", "scaled-benford")?)?
        }
        Family::Uniform => DistributionSpec::bounded_uniform(
            required(args.lo, "--lo", "uniform")?,
            required(args.hi, "--hi", "uniform")?,
        )?,
        Family::PaperDensity => DistributionSpec::piecewise_density(),
        Family::BenfordWitness | Family::NonBenfordWitness => {
            let name = if family == Family::BenfordWitness {
                "benford-witness"
            } else {
                "non-benford-witness"
            };
            let range = RangeSpec::new(
                required(args.a, "--a", name)?,
                required(args.b, "--b", name)?,
            )?;
            let c = required(args.c, "--c", name)?;
            if family == Family::BenfordWitness {
                benford_witness(&range, c)?
            } else {
                non_benford_witness(&range, c)?
            }
        }
    };
    Ok(spec)
}

/// Writes the header comment, a `value` column header, then one value per
/// line in shortest round-trip form. The output reads back with
/// `analyze --format csv`.
pub fn write_sample(out: &mut impl Write, spec: &DistributionSpec, n: usize, seed: u64) -> Result<()> {
    let s = sample(spec, n, seed)?;
    let io = |e| CliError::io("<output>", e);
    let header = serde_json::to_string(s.provenance()).expect("provenance serialises");
    writeln!(out, "{SAMPLE_HEADER_PREFIX}{header}").map_err(io)?;
    writeln!(out, "value").map_err(io)?;
    for v in s.values() {
        writeln!(out, "{v:?}").map_err(io)?;
    }
    out.flush().map_err(io)
}

fn observed_classification(col: &benford::ConformanceReport) -> Option<RangeClassification> {
    RangeSpec::new(col.observed_range.min, col.observed_range.max)
        .ok()
        .map(|r| classify_range(&r))
}

pub fn analyze(
    path: &Path,
    selectors: &[String],
    format: InputFormat,
    command: CommandRecord,
) -> Result<ReportDocument> {
    let columns = ingest(path, selectors, format)?;
    let generated = sample_header(path)?;
    let reports = columns
        .par_iter()
        .map(|c: &DatasetColumn| {
            let report = conformance_report(&c.values)?;
            Ok(ColumnReport {
                column: c.name.clone(),
                skipped: c.skipped,
                classification: observed_classification(&report),
                report,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReportDocument {
        version: SCHEMA_VERSION.to_owned(),
        command,
        provenance: Source::File {
            path: path.display().to_string(),
            format,
            generated,
        },
        columns: reports,
        classification: None,
        witnesses: Vec::new(),
    })
}

fn midpoint(i: &Interval) -> f64 {
    i.lo + (i.hi - i.lo) / 2.0
}

pub fn classify(a: f64, b: f64, command: CommandRecord) -> Result<ReportDocument> {
    let range = RangeSpec::new(a, b)
        .map_err(|_| CliError::Usage(format!("classify requires 0 < a < b, got a={a} b={b}")))?;
    let class = classify_range(&range);
    let mut witnesses = Vec::new();
    match &class {
        RangeClassification::UniqueBenford { witness } => witnesses.push(WitnessExample {
            role: WitnessRole::Benford,
            c: None,
            spec: *witness,
            ks_exact: ks_distance_exact(witness),
        }),
        RangeClassification::Rich {
            benford_c,
            non_benford_c,
        } => {
            let c = midpoint(benford_c);
            let spec = benford_witness(&range, c)?;
            witnesses.push(WitnessExample {
                role: WitnessRole::Benford,
                c: Some(c),
                spec,
                ks_exact: ks_distance_exact(&spec),
            });
            let c = midpoint(non_benford_c);
            let spec = non_benford_witness(&range, c)?;
            witnesses.push(WitnessExample {
                role: WitnessRole::NonBenford,
                c: Some(c),
                spec,
                ks_exact: ks_distance_exact(&spec),
            });
        }
        RangeClassification::Infeasible { .. } => {}
    }
    Ok(ReportDocument {
        version: SCHEMA_VERSION.to_owned(),
        command,
        provenance: Source::Range { a, b },
        columns: Vec::new(),
        classification: Some(class),
        witnesses,
    })
}
