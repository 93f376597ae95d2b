//! Instances, metrics, committees, and their costs.

mod committee;
mod cost;
mod instance;
mod metric;

pub use committee::{all_committees, binomial, Committee};
pub use cost::{
    brute_force_optimum, compare_committees, kth_favorite, pivot, pivots, q_cost, social_cost,
    top_q, CostModel, ENUMERATION_CAP,
};
pub use instance::{Instance, Regime};
pub use metric::{check_consistency, Metric, Violation};
