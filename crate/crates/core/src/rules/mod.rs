//! Voting rules and committee reductions.

mod completion;
mod dictator;
pub mod matching;
mod outcome;
mod polar;
mod reduction;

pub use completion::{
    classify_type, complete_vector, completion_candidates, constant_n_rule, AlternativeType,
    CompletionVector, TypeCount,
};
pub use dictator::{randomized_dictatorship, sample_dictator};
pub use matching::{matching_single_winner, CandidateProfile, MatchingWinner};
pub use outcome::{CompletionStats, Outcome, RuleId, RuleOutcome, RuleTrace, Selection};
pub use polar::{construct_s, polar_opposites, top_k_committee, top_set};
pub use reduction::{
    committee_profile, exhaustive_committee_rule, select_among, top_k_reduced_rule,
};

use crate::error::{Error, Result};
use crate::model::Instance;

/// Runs a rule by id. `cap` bounds committee and completion-vector
/// enumeration; `override_regime` lets rules run outside the regime they
/// are defined for when the rule itself can still execute.
pub fn run_rule(
    rule: RuleId,
    instance: &Instance,
    cap: u128,
    override_regime: bool,
) -> Result<RuleOutcome> {
    let regime = instance.regime();
    if !override_regime && !rule.supports(regime) {
        return Err(Error::Regime(format!(
            "{rule} is not defined in the {} regime",
            regime.label()
        )));
    }
    match rule {
        RuleId::PolarOpposites => polar_opposites(instance),
        RuleId::RandomDictator => Ok(randomized_dictatorship(instance)),
        RuleId::ExhaustiveReduction => exhaustive_committee_rule(instance, cap),
        RuleId::TopkReduction => top_k_reduced_rule(instance),
        RuleId::ConstantN => constant_n_rule(instance, cap),
    }
}
