//! Exact worst-case distortion and the tools around it.

pub mod closure;
mod distortion;
pub mod lp;
pub mod sampling;

pub use closure::{threshold_metric, unbounded_witness, zero_closure};
pub use distortion::{
    instance_distortion, minimal_committees, realized_ratio, selection_ratio, verify_report,
    worst_case_ratio, DistortionReport, OracleOptions, Ratio, ORACLE_CAP,
};
pub use lp::{audit, lp_solve, Family, LpOutcome, LpProblem, Relation};
pub use sampling::{
    random_instance, rng_from_seed, sample_consistent_metrics, sample_metrics, Strategy,
};
