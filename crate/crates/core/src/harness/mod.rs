//! Config-driven sweeps, fixture audits, and plot-ready series.

mod config;
mod plot;
mod run;
mod verify;

pub use config::{ExperimentConfig, FamilySpec, Grid};
pub use plot::{emit_plot_data, series_points, SeriesPoint};
pub use run::{
    all_profiles, run_experiment, summarize, ResultRow, ResultSet, SummaryRow, TimingRow, Witness,
};
pub use verify::{verify_bundle, verify_fixture, AuditReport, Check, CheckStatus};
