//! Result files and space-time diagrams.

mod diagram;
mod report;

pub use diagram::{render, DiagramFormat, DiagramStyle, Genealogy, SvgPalette};
pub use report::{read_report, write_report, write_report_file, ReportFormat, ReportRow, REPORT_FIELDS};
