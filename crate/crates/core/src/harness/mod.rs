//! Experiment sweeps, invariant suites and their machine-readable output.

mod bt;
mod config;
pub mod oracle;
mod record;
mod sweep;
mod verify;

pub use bt::{brun_titchmarsh_report, BtRow, BT_MAX_X};
pub use config::{SweepConfig, TheoremId};
pub use record::{read_csv, read_json, write_records, Format, RecordWriter, Regime, ResultRecord, CSV_HEADER};
pub use sweep::{run_sweep, run_sweep_streaming};
pub use verify::{run_suite, small_grid, verify, Check, Suite, VerifyReport};
