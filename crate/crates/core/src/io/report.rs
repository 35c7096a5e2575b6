use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

use crate::analytics::DensityReport;
use crate::{Error, Result};

pub const REPORT_FIELDS: [&str; 8] = ["n", "exact_num", "exact_den", "approx", "estimate", "halfwidth", "trials", "seed"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(Error::InvalidParameter(format!("unknown report format `{s}`"))),
        }
    }
}

/// One persisted density record. The exact value is stored as a separate
/// numerator and denominator so that no precision is lost.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub n: u64,
    pub exact_num: Option<BigInt>,
    pub exact_den: Option<BigInt>,
    pub approx: Option<f64>,
    pub estimate: f64,
    pub halfwidth: f64,
    pub trials: u64,
    pub seed: u64,
}

impl From<&DensityReport> for ReportRow {
    fn from(r: &DensityReport) -> Self {
        Self {
            n: r.n,
            exact_num: r.exact.as_ref().map(|q| q.numer().clone()),
            exact_den: r.exact.as_ref().map(|q| q.denom().clone()),
            approx: r.approx,
            estimate: r.mc_estimate,
            halfwidth: r.mc_halfwidth,
            trials: r.trials,
            seed: r.seed,
        }
    }
}

fn float_text(x: f64) -> String {
    // Rust's shortest round-trip representation.
    format!("{x:?}")
}

impl ReportRow {
    fn csv_record(&self) -> [String; 8] {
        let opt = |v: &Option<BigInt>| v.as_ref().map(ToString::to_string).unwrap_or_default();
        [
            self.n.to_string(),
            opt(&self.exact_num),
            opt(&self.exact_den),
            self.approx.map(float_text).unwrap_or_default(),
            float_text(self.estimate),
            float_text(self.halfwidth),
            self.trials.to_string(),
            self.seed.to_string(),
        ]
    }

    fn from_csv_record(rec: &csv::StringRecord) -> Result<Self> {
        let field = |i: usize| rec.get(i).ok_or_else(|| bad(format!("missing column `{}`", REPORT_FIELDS[i])));
        let opt_int = |i: usize| -> Result<Option<BigInt>> {
            let s = field(i)?;
            if s.is_empty() {
                return Ok(None);
            }
            s.parse().map(Some).map_err(|_| bad(format!("`{s}` is not an integer")))
        };
        let num = |i: usize| -> Result<f64> {
            let s = field(i)?;
            s.parse().map_err(|_| bad(format!("`{s}` is not a number")))
        };
        let uint = |i: usize| -> Result<u64> {
            let s = field(i)?;
            s.parse().map_err(|_| bad(format!("`{s}` is not an unsigned integer")))
        };
        Ok(Self {
            n: uint(0)?,
            exact_num: opt_int(1)?,
            exact_den: opt_int(2)?,
            approx: if field(3)?.is_empty() { None } else { Some(num(3)?) },
            estimate: num(4)?,
            halfwidth: num(5)?,
            trials: uint(6)?,
            seed: uint(7)?,
        })
    }

    fn json_value(&self) -> Value {
        let big = |v: &Option<BigInt>| match v {
            Some(b) => Value::Number(Number::from_str(&b.to_string()).expect("integer literal")),
            None => Value::Null,
        };
        let float = |x: f64| Number::from_f64(x).map_or(Value::Null, Value::Number);
        let mut m = Map::new();
        m.insert("n".into(), self.n.into());
        m.insert("exact_num".into(), big(&self.exact_num));
        m.insert("exact_den".into(), big(&self.exact_den));
        m.insert("approx".into(), self.approx.map_or(Value::Null, float));
        m.insert("estimate".into(), float(self.estimate));
        m.insert("halfwidth".into(), float(self.halfwidth));
        m.insert("trials".into(), self.trials.into());
        m.insert("seed".into(), self.seed.into());
        Value::Object(m)
    }

    fn from_json_value(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| bad("record is not an object".into()))?;
        let get = |k: &str| obj.get(k).ok_or_else(|| bad(format!("missing field `{k}`")));
        let uint = |k: &str| get(k)?.as_u64().ok_or_else(|| bad(format!("`{k}` is not an unsigned integer")));
        let float = |k: &str| get(k)?.as_f64().ok_or_else(|| bad(format!("`{k}` is not a number")));
        let big = |k: &str| -> Result<Option<BigInt>> {
            match get(k)? {
                Value::Null => Ok(None),
                Value::Number(x) => x
                    .to_string()
                    .parse()
                    .map(Some)
                    .map_err(|_| bad(format!("`{k}` is not an integer"))),
                _ => Err(bad(format!("`{k}` is not an integer"))),
            }
        };
        Ok(Self {
            n: uint("n")?,
            exact_num: big("exact_num")?,
            exact_den: big("exact_den")?,
            approx: match get("approx")? {
                Value::Null => None,
                _ => Some(float("approx")?),
            },
            estimate: float("estimate")?,
            halfwidth: float("halfwidth")?,
            trials: uint("trials")?,
            seed: uint("seed")?,
        })
    }
}

fn bad(msg: String) -> Error {
    Error::InvalidParameter(format!("malformed report: {msg}"))
}

/// CSV with a fixed header, or a JSON array holding one object per row.
pub fn write_report<W: Write>(rows: &[ReportRow], format: ReportFormat, mut out: W) -> Result<()> {
    match format {
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(REPORT_FIELDS)?;
            for r in rows {
                w.write_record(r.csv_record())?;
            }
            w.flush()?;
        }
        ReportFormat::Json => {
            let values: Vec<Value> = rows.iter().map(ReportRow::json_value).collect();
            serde_json::to_writer_pretty(&mut out, &values)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn write_report_file(rows: &[ReportRow], format: ReportFormat, path: &Path) -> Result<()> {
    let mut file = BufWriter::new(File::create(path)?);
    write_report(rows, format, &mut file)?;
    file.flush()?;
    Ok(())
}

pub fn read_report<R: Read>(format: ReportFormat, input: R) -> Result<Vec<ReportRow>> {
    match format {
        ReportFormat::Csv => {
            let mut r = csv::Reader::from_reader(input);
            let header = r.headers()?.clone();
            if header.iter().ne(REPORT_FIELDS) {
                return Err(bad(format!("unexpected header `{}`", header.iter().collect::<Vec<_>>().join(","))));
            }
            r.records().map(|rec| ReportRow::from_csv_record(&rec?)).collect()
        }
        ReportFormat::Json => {
            let v: Value = serde_json::from_reader(input)?;
            let items = v.as_array().ok_or_else(|| bad("top level is not an array".into()))?;
            items.iter().map(ReportRow::from_json_value).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn sample() -> Vec<ReportRow> {
        let big: BigInt = "123456789012345678901234567890123".parse().unwrap();
        vec![
            ReportRow {
                n: 2,
                exact_num: Some(5.into()),
                exact_den: Some(8.into()),
                approx: Some(0.625),
                estimate: 0.62480712890625,
                halfwidth: 0.0011734,
                trials: 100_000,
                seed: 1,
            },
            ReportRow {
                n: 700,
                exact_num: None,
                exact_den: None,
                approx: Some(0.042636_f64.sqrt()),
                estimate: 1.0 / 3.0,
                halfwidth: 1e-17,
                trials: 10,
                seed: u64::MAX,
            },
            ReportRow {
                n: 9,
                exact_num: Some(big.clone()),
                exact_den: Some(big * 7),
                approx: None,
                estimate: 0.0,
                halfwidth: 1.0,
                trials: 1,
                seed: 0,
            },
        ]
    }

    #[test]
    fn one_report_one_csv_line() {
        let rep = DensityReport {
            n: 2,
            exact: Some(Rational::new(5.into(), 8.into())),
            approx: Some(0.625),
            mc_estimate: 0.5,
            mc_halfwidth: 0.25,
            trials: 4,
            sites_per_trial: 64,
            seed: 3,
        };
        let mut buf = Vec::new();
        write_report(&[ReportRow::from(&rep)], ReportFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "n,exact_num,exact_den,approx,estimate,halfwidth,trials,seed\n2,5,8,0.625,0.5,0.25,4,3\n");
    }

    #[test]
    fn round_trips() {
        for format in [ReportFormat::Csv, ReportFormat::Json] {
            let mut buf = Vec::new();
            write_report(&sample(), format, &mut buf).unwrap();
            assert_eq!(read_report(format, buf.as_slice()).unwrap(), sample(), "{format:?}");
        }
    }

    #[test]
    fn json_integers_are_plain_numbers() {
        let mut buf = Vec::new();
        write_report(&sample()[2..], ReportFormat::Json, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("\"exact_num\": 123456789012345678901234567890123"));
        assert!(text.contains("\"approx\": null"));
    }

    #[test]
    fn rejects_wrong_header() {
        assert!(read_report(ReportFormat::Csv, "n,exact\n1,2\n".as_bytes()).is_err());
        assert!("xml".parse::<ReportFormat>().is_err());
    }

    #[test]
    fn unwritable_path() {
        let err = write_report_file(&sample(), ReportFormat::Csv, Path::new("/nonexistent/dir/out.csv"));
        assert!(matches!(err, Err(Error::Io(_))));
    }
}
