//! Library side of the command-line tool: tuple files, the verification
//! suite, demo generators and report rendering.

mod demo;
mod file;
mod report;
mod suite;

pub use demo::{demo_tuple, generate_demo, DemoKind};
pub use file::TupleFile;
pub use report::{
    emit_report, render_json, render_text, CheckLine, Format, Status, Verdict, VerificationReport,
    VALIDATION_PREFIX,
};
pub use suite::{
    run_full_suite, run_suite, run_validate, validate_report, SuiteOptions, CHECK_NAMES,
};
