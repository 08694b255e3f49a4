//! Argument parsing and dispatch for the `benford` binary, kept in the
//! library so it can run in-process against any output stream.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::{self, Family, SpecArgs};
use crate::error::{exit, CliError, Result};
use crate::ingest::InputFormat;
use crate::report::{CommandRecord, ReportDocument};
use crate::verify;

#[derive(Parser, Debug)]
#[command(
    name = "benford",
    version,
    about = "Significand analysis: Benford conformance distances, range classification, seeded samplers"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Conformance report for numeric columns of a CSV or JSON-lines file
    Analyze {
        path: PathBuf,
        /// Column name or 0-based index; repeat for several columns
        #[arg(long)]
        column: Vec<String>,
        #[arg(long, value_enum, default_value_t = InputFormat::Csv)]
        format: InputFormat,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// Draw a seeded sample from a distribution family
    Sample {
        #[arg(value_enum)]
        family: Family,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, allow_negative_numbers = true)]
        scale: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        lo: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        hi: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        a: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        b: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        c: Option<f64>,
        /// Write to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Which Benford distributions fit inside [a, b]
    Classify {
        #[arg(value_name = "A", allow_negative_numbers = true)]
        a_pos: Option<f64>,
        #[arg(value_name = "B", allow_negative_numbers = true)]
        b_pos: Option<f64>,
        #[arg(long = "a", allow_negative_numbers = true)]
        a: Option<f64>,
        #[arg(long = "b", allow_negative_numbers = true)]
        b: Option<f64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// Reproduce every worked example and numerical check
    VerifyPaper,
}

fn one_of(pos: Option<f64>, flag: Option<f64>, name: &str) -> Result<f64> {
    match (pos, flag) {
        (Some(v), None) | (None, Some(v)) => Ok(v),
        (Some(_), Some(_)) => Err(CliError::Usage(format!(
            "give {name} either positionally or as --{name}, not both"
        ))),
        (None, None) => Err(CliError::Usage(format!("missing {name}"))),
    }
}

fn emit(out: &mut dyn Write, doc: &ReportDocument, output: OutputFormat) -> Result<()> {
    let text = match output {
        OutputFormat::Json => doc.to_json(),
        OutputFormat::Text => doc.to_text(),
    };
    write_all(out, &text)
}

fn write_all(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .and_then(|()| out.flush())
        .map_err(|e| CliError::io("<stdout>", e))
}

/// Runs a parsed command. `args` are the raw arguments after the
/// subcommand name, recorded verbatim in reports.
pub fn run(cli: Cli, args: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let record = |name: &str| CommandRecord {
        name: name.to_owned(),
        args: args.clone(),
    };
    match cli.command {
        Command::Analyze {
            path,
            column,
            format,
            output,
        } => {
            let doc = commands::analyze(&path, &column, format, record("analyze"))?;
            emit(out, &doc, output)
        }
        Command::Sample {
            family,
            n,
            seed,
            scale,
            lo,
            hi,
            a,
            b,
            c,
            out: out_path,
        } => {
            let args = SpecArgs {
                scale,
                lo,
                hi,
                a,
                b,
                c,
            };
            let spec = commands::build_spec(family, &args)?;
            match out_path {
                Some(path) => {
                    let file = File::create(&path)
                        .map_err(|e| CliError::io(path.display().to_string(), e))?;
                    commands::write_sample(&mut BufWriter::new(file), &spec, n, seed)
                }
                None => commands::write_sample(&mut BufWriter::new(out), &spec, n, seed),
            }
        }
        Command::Classify {
            a_pos,
            b_pos,
            a,
            b,
            output,
        } => {
            let a = one_of(a_pos, a, "a")?;
            let b = one_of(b_pos, b, "b")?;
            let doc = commands::classify(a, b, record("classify"))?;
            emit(out, &doc, output)
        }
        Command::VerifyPaper => {
            let checks = verify::run_all();
            write_all(out, &verify::render_table(&checks))?;
            let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                for c in &failed {
                    let _ = writeln!(
                        err,
                        "failed: [{}] {}: expected {}, observed {}",
                        c.criterion, c.name, c.expected, c.observed
                    );
                }
                Err(CliError::VerificationFailed(failed.len()))
            }
        }
    }
}


/// Parses `argv` (program name first), runs the command and returns the
/// process exit code. Diagnostics go to `err`.
pub fn main_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                exit::USAGE
            } else {
                let _ = out.write_all(text.as_bytes());
                exit::OK
            };
        }
    };
    let args = argv
        .iter()
        .skip(2)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match run(cli, args, out, err) {
        Ok(()) => exit::OK,
        Err(e) => {
            let _ = writeln!(err, "benford: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use std::fs;
    use std::path::Path;

    use benford::RangeClassification;
    use tempfile::TempDir;

    use super::*;
    use crate::ingest::ingest;

    struct Output {
        code: u8,
        stdout: Vec<u8>,
        stderr: Vec<u8>,
    }

    fn benford(args: &[&str]) -> Output {
        let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
        let argv = std::iter::once("benford").chain(args.iter().copied());
        let code = main_with(argv, &mut stdout, &mut stderr);
        Output {
            code,
            stdout,
            stderr,
        }
    }

    fn code(o: &Output) -> u8 {
        o.code
    }

    fn stdout(o: &Output) -> String {
        String::from_utf8(o.stdout.clone()).unwrap()
    }

    fn values_of(sample_output: &str) -> Vec<f64> {
        sample_output
            .lines()
            .filter(|l| !l.starts_with('#') && *l != "value")
            .map(|l| l.parse().unwrap())
            .collect()
    }

    fn write(dir: &TempDir, name: &str, body: &str) -> String {
        let p = dir.path().join(name);
        fs::write(&p, body).unwrap();
        p.display().to_string()
    }

    const VOTES: &str = "votes\n2019\n0.0219\n-20.19\n";

    #[test]
    fn analyze_three_value_sample() {
        let dir = TempDir::new().unwrap();
        let p = write(&dir, "v.csv", VOTES);
        let o = benford(&["analyze", &p, "--column", "votes", "--output", "json"]);
        assert_eq!(code(&o), exit::OK, "{}", String::from_utf8_lossy(&o.stderr));
        let doc = ReportDocument::from_json(&stdout(&o)).unwrap();
        let r = &doc.columns[0].report;
        assert_eq!(r.digit_freqs.count(2), 3);
        assert_eq!(r.n, 3);
        assert_eq!(doc.version, "1");
        assert_eq!(doc.command.name, "analyze");
    }

    #[test]
    fn analyze_error_codes() {
        let dir = TempDir::new().unwrap();
        let zeros = write(&dir, "z.csv", "x\n0\n0.0\n-0\n");
        assert_eq!(code(&benford(&["analyze", &zeros])), exit::EMPTY_SAMPLE);

        let missing = dir.path().join("nope.csv").display().to_string();
        assert_eq!(code(&benford(&["analyze", &missing])), exit::MISSING_FILE);

        let p = write(&dir, "v.csv", VOTES);
        let o = benford(&["analyze", &p, "--column", "turnout"]);
        assert_eq!(code(&o), exit::UNKNOWN_COLUMN);
        assert!(String::from_utf8_lossy(&o.stderr).contains("votes"));

        let text = write(&dir, "t.csv", "x\nabc\n\n");
        assert_eq!(code(&benford(&["analyze", &text])), exit::NO_VALUES);

        let bad = write(&dir, "b.jsonl", "{\"x\": 1}\n{oops\n");
        assert_eq!(
            code(&benford(&["analyze", &bad, "--format", "jsonl"])),
            exit::MALFORMED
        );
        let j = write(&dir, "j.jsonl", "{\"x\": 1}\n");
        assert_eq!(
            code(&benford(&["analyze", &j, "--format", "jsonl", "--column", "y"])),
            exit::UNKNOWN_COLUMN
        );

        assert_eq!(code(&benford(&["analyze", &p, "--format", "xml"])), exit::USAGE);
        assert_eq!(code(&benford(&["frobnicate"])), exit::USAGE);
        assert_eq!(code(&benford(&["--help"])), exit::OK);
    }

    #[test]
    fn sample_families() {
        let o = benford(&["sample", "scaled-benford", "--scale", "73", "--n", "1000", "--seed", "7"]);
        assert_eq!(code(&o), exit::OK);
        let text = stdout(&o);
        assert!(text.starts_with("# benford sample {\"kind\":\"generated\""));
        assert!(text.contains("\"seed\":7") && text.contains("\"n\":1000"));
        let v = values_of(&text);
        assert_eq!(v.len(), 1000);
        assert!(v.iter().all(|x| (73.0..=730.0).contains(x)));

        let v = values_of(&stdout(&benford(&[
            "sample", "uniform", "--lo", "2", "--hi", "11", "--n", "500", "--seed", "1",
        ])));
        assert_eq!(v.len(), 500);
        assert!(v.iter().all(|x| (2.0..=11.0).contains(x)));

        let v = values_of(&stdout(&benford(&["sample", "paper-density", "--n", "500"])));
        assert!(v.iter().all(|x| (1.0..100.0).contains(x)));

        let v = values_of(&stdout(&benford(&[
            "sample", "benford-witness", "--a", "100", "--b", "1000.0001", "--c", "0.000001",
        ])));
        assert!(v.iter().all(|&x| (100.0..=1000.0001).contains(&x)));
        let v = values_of(&stdout(&benford(&[
            "sample", "non-benford-witness", "--a", "1", "--b", "100", "--c", "1",
        ])));
        assert!(v.iter().all(|x| (2.0..=11.0).contains(x)));
    }

    #[test]
    fn sample_parameter_errors() {
        let o = benford(&["sample", "scaled-benford", "--scale", "-1"]);
        assert_eq!(code(&o), exit::PARAMETER);
        let o = benford(&["sample", "uniform", "--lo", "5", "--hi", "2"]);
        assert_eq!(code(&o), exit::PARAMETER);
        let o = benford(&["sample", "benford-witness", "--a", "1", "--b", "100", "--c", "9.5"]);
        assert_eq!(code(&o), exit::PARAMETER);
        assert!(String::from_utf8_lossy(&o.stderr).contains("(0, 9)"));
        let o = benford(&["sample", "non-benford-witness", "--a", "73", "--b", "730", "--c", "1"]);
        assert_eq!(code(&o), exit::PARAMETER);
        let o = benford(&["sample", "scaled-benford"]);
        assert_eq!(code(&o), exit::USAGE);
        assert_eq!(code(&benford(&["sample", "uniform", "--lo", "1"])), exit::USAGE);
    }

    fn classify_json(args: &[&str]) -> ReportDocument {
        let mut full = vec!["classify"];
        full.extend_from_slice(args);
        full.extend_from_slice(&["--output", "json"]);
        let o = benford(&full);
        assert_eq!(code(&o), exit::OK);
        ReportDocument::from_json(&stdout(&o)).unwrap()
    }

    #[test]
    fn classify_worked_ranges() {
        match classify_json(&["100", "999"]).classification.unwrap() {
            RangeClassification::Infeasible { gap } => assert_eq!(gap.to_string(), "(9.99, 10)"),
            other => panic!("{other:?}"),
        }
        let doc = classify_json(&["--a", "73", "--b", "730"]);
        assert_eq!(doc.classification.unwrap().name(), "unique_benford");
        assert_eq!(doc.witnesses.len(), 1);

        let doc = classify_json(&["100", "1000.0001"]);
        match doc.classification.unwrap() {
            RangeClassification::Rich {
                benford_c,
                non_benford_c,
            } => {
                assert!((benford_c.hi - 1e-5).abs() < 1e-13);
                assert!((non_benford_c.hi - 1e-4).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(doc.witnesses.len(), 2);
        assert_eq!(doc.witnesses[0].ks_exact, 0.0);
        assert!(doc.witnesses[1].ks_exact > 0.05);

        let text = stdout(&benford(&["classify", "100", "999"]));
        assert!(text.contains("infeasible") && text.contains("(9.99, 10)"));
    }

    #[test]
    fn classify_usage_errors() {
        assert_eq!(code(&benford(&["classify", "-1", "5"])), exit::USAGE);
        assert_eq!(code(&benford(&["classify", "5", "1"])), exit::USAGE);
        assert_eq!(code(&benford(&["classify", "5", "5"])), exit::USAGE);
        assert_eq!(code(&benford(&["classify", "5"])), exit::USAGE);
        assert_eq!(code(&benford(&["classify", "1", "--a", "1", "--b", "5"])), exit::USAGE);
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let dir = TempDir::new().unwrap();
        let p = write(&dir, "v.csv", "a,b\n2019,0.3\n0.0219,17\n-20.19,0\n1e-300,4.4e300\n");
        for args in [
            vec!["analyze", p.as_str(), "--column", "a", "--column", "b", "--output", "json"],
            vec!["classify", "100", "1000.0001", "--output", "json"],
            vec!["classify", "100", "999", "--output", "json"],
            vec!["classify", "73", "730", "--output", "json"],
        ] {
            let first = stdout(&benford(&args));
            let doc = ReportDocument::from_json(&first).unwrap();
            assert_eq!(doc.to_json(), first);
            let again = ReportDocument::from_json(&doc.to_json()).unwrap();
            assert_eq!(again, doc);
        }
    }

    #[test]
    fn sample_then_analyze_one_decade() {
        let dir = TempDir::new().unwrap();
        let path = dir.path().join("s73.csv").display().to_string();
        let o = benford(&[
            "sample", "scaled-benford", "--scale", "73", "--n", "1000000", "--seed", "42", "--out", &path,
        ]);
        assert_eq!(code(&o), exit::OK);
        let o = benford(&["analyze", &path, "--output", "json"]);
        assert_eq!(code(&o), exit::OK);
        let doc = ReportDocument::from_json(&stdout(&o)).unwrap();
        let r = &doc.columns[0].report;
        assert_eq!(r.n, 1_000_000);
        assert!(r.ks < 0.003, "ks = {}", r.ks);
        assert!(r.span_orders <= 1.0);
        match &doc.provenance {
            crate::report::Source::File { generated, .. } => assert!(generated.is_some()),
            other => panic!("{other:?}"),
        }
        // the file re-reads to the exact doubles that were generated
        let regenerated = benford::sample(
            &benford::DistributionSpec::scaled_benford(73.0).unwrap(),
            1_000_000,
            42,
        )
        .unwrap();
        let cols = ingest(Path::new(&path), &[], InputFormat::Csv).unwrap();
        assert_eq!(cols[0].values, regenerated.values());
    }

    #[test]
    fn determinism_and_vocabulary() {
        let dir = TempDir::new().unwrap();
        let p = write(&dir, "v.csv", VOTES);
        let runs: Vec<Vec<&str>> = vec![
            vec!["sample", "paper-density", "--n", "2000", "--seed", "9"],
            vec!["analyze", p.as_str()],
            vec!["analyze", p.as_str(), "--output", "json"],
            vec!["classify", "73", "729.99"],
        ];
        for args in runs {
            let a = benford(&args);
            let b = benford(&args);
            assert_eq!(a.stdout, b.stdout, "{args:?}");
            let text = stdout(&a).to_lowercase();
            assert!(!text.contains("fraud") && !text.contains("anomal"), "{args:?}");
        }
    }

    #[test]
    fn verify_paper_is_deterministic() {
        let a = benford(&["verify-paper"]);
        let b = benford(&["verify-paper"]);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.code, b.code);
        let text = stdout(&a);
        assert!(text.contains("check") && text.contains("tolerance"));
        // exit status mirrors the table
        let all_pass = !text.lines().any(|l| l.ends_with("FAIL"));
        assert_eq!(code(&a) == exit::OK, all_pass);
        if !all_pass {
            assert_eq!(code(&a), exit::VERIFICATION);
        }
    }
}
