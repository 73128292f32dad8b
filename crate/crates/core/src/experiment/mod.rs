//! Consistency-versus-length sweeps and their CSV and SVG outputs.

mod config;
mod plot;
mod report;
mod sweep;

pub use config::{resolve_mapping, run_sweep, InputSpec, SweepConfig};
pub use plot::{plot_csv, plot_svg};
pub use report::{ConsistencyReport, ReportRow, REPORT_HEADER};
pub use sweep::{sweep, LagWindow, LengthSchedule, SweepOptions};
