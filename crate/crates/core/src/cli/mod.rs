//! File formats, commands and reports.

pub mod check;
pub mod corpus;
pub mod report;
pub mod spec;

pub use check::{cmd_check, cmd_validate, read_spec, CheckOptions, Mode};
pub use corpus::{cmd_corpus, fixture, fixtures, run_fixture, CorpusEntry, CorpusReport, Expectation, Fixture};
pub use report::{CheckRecord, ErrorInfo, Report, Status, Summary};
pub use spec::SpecFile;
