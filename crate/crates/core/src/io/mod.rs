//! File formats: JSON states/operators in, CSV/JSON reports out.

pub mod files;
pub mod report;

pub use files::{
    operator_to_json, parse_operator, parse_operator_str, parse_state, parse_state_str,
    state_to_json, FileError, LabeledState, OperatorFile, StateFile,
};
pub use report::{strip_timestamp, write_commented_csv, write_json, ReportRow};
