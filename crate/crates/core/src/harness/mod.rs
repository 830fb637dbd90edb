//! Configuration, scenario dispatch and file output.

pub mod config;
pub mod output;
pub mod scenarios;
pub mod study;

pub use config::{FormKind, ModelKind, RawConfig, RunConfig};
pub use output::{write_diagnostics_csv, write_snapshot, Summary};
pub use scenarios::{build, info, Setup, SCENARIOS};
pub use study::{convergence, crash_study, probe, run_scenario, CrashCell, RunOutcome};
