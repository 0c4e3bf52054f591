//! Problem-spec ingestion, task orchestration and report emission for
//! `cocyclelab`.
//!
//! ```no_run
//! let doc = std::fs::read_to_string("spec.json").unwrap();
//! let spec = cocyclelab_cli::parse_spec(&doc).unwrap();
//! let report = cocyclelab_cli::run(&spec, Default::default());
//! print!("{}", report.to_text());
//! ```

pub mod explain;
pub mod report;
pub mod run;
pub mod spec;
pub mod tasks;

pub use report::{Outcome, Report, TaskReport};
pub use run::{run, RunOptions, WitnessMode};
pub use spec::{parse_spec, Options, ProblemSpec, SchemaError};
pub use tasks::TaskKind;
