use pcasim::analytics::{mc_density, McParams, ParticleInit};
use pcasim::io::{read_report, write_report, ReportFormat, ReportRow, REPORT_FIELDS};
use pcasim::lattice::Model;
use pcasim::verify::verify_domination;

const GOLDEN_CSV: &str = "n,exact_num,exact_den,approx,estimate,halfwidth,trials,seed\n";

#[test]
fn csv_header_is_fixed() {
    let rep = mc_density(Model::C, ParticleInit::Full, 2, &McParams::new(50, 1, 64)).unwrap();
    let mut buf = Vec::new();
    write_report(&[ReportRow::from(&rep)], ReportFormat::Csv, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with(GOLDEN_CSV));
    assert_eq!(text.lines().count(), 2);
    let fields: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&fields[..3], ["2", "5", "8"]);
    assert_eq!(REPORT_FIELDS.join(",") + "\n", GOLDEN_CSV);
}

#[test]
fn json_objects_use_the_csv_field_names() {
    let rep = mc_density(Model::B, ParticleInit::Full, 1, &McParams::new(20, 3, 64)).unwrap();
    let mut buf = Vec::new();
    write_report(&[ReportRow::from(&rep)], ReportFormat::Json, &mut buf).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
    let obj = v.as_array().unwrap()[0].as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    let mut want = REPORT_FIELDS.to_vec();
    keys.sort_unstable();
    want.sort_unstable();
    assert_eq!(keys, want);
    assert_eq!(read_report(ReportFormat::Json, buf.as_slice()).unwrap()[0], ReportRow::from(&rep));
}

#[test]
fn case_report_fields_are_fixed() {
    let v = serde_json::to_value(verify_domination()).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["cases_passed", "cases_total", "failures", "suite"]);
}
