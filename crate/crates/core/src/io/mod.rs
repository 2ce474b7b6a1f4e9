//! Reading datasets and writing reports.

pub mod delimited;
pub mod histogram;
pub mod report;

pub use delimited::{
    filter_target_max, load_csv, read_dataset, write_dataset, LoadOptions, MissingPolicy, MISSING_CODE,
};
pub use histogram::{histogram, Histogram};
pub use report::{
    render, write_report, Destination, Format, Metadata, ReportBody, ReportDocument, SCHEMA_VERSION,
};
