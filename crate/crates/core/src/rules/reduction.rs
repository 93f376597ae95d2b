//! Committee rules for `q > k/2` built from the matching single-winner rule
//! applied to a set of candidate committees.

use crate::error::{Error, Result};
use crate::model::{all_committees, pivot, Committee, Instance};
use crate::rules::matching::CandidateProfile;
use crate::rules::{top_k_committee, CompletionStats, RuleId, RuleOutcome, RuleTrace, Selection};

/// Candidate lists at most this long are copied into the trace.
const LISTED_CANDIDATES: usize = 64;

pub(crate) fn require_constant_regime(instance: &Instance, rule: RuleId) -> Result<()> {
    if 2 * instance.q() <= instance.k() {
        return Err(Error::Regime(format!(
            "{rule} needs q > k/2, got k={}, q={}",
            instance.k(),
            instance.q()
        )));
    }
    Ok(())
}

/// Each agent's ranking of `candidates` (which must be in canonical order):
/// by the rank of her q-th favorite member, ties by canonical order.
pub fn committee_profile(
    instance: &Instance,
    candidates: &[Committee],
) -> Result<CandidateProfile> {
    if candidates.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter(
            "candidate committees must be distinct and sorted".into(),
        ));
    }
    let positions = (0..instance.n())
        .map(|agent| {
            let mut order: Vec<usize> = (0..candidates.len()).collect();
            let keys: Vec<usize> = candidates
                .iter()
                .map(|c| instance.position(agent, pivot(instance, agent, c)))
                .collect();
            order.sort_by_key(|&c| (keys[c], c));
            let mut pos = vec![0; candidates.len()];
            for (p, c) in order.into_iter().enumerate() {
                pos[c] = p;
            }
            pos
        })
        .collect();
    CandidateProfile::from_positions(positions)
}

/// Runs the matching rule over `candidates` and packages the result.
pub fn select_among(
    instance: &Instance,
    rule: RuleId,
    candidates: Vec<Committee>,
    completions: Option<CompletionStats>,
) -> Result<RuleOutcome> {
    for c in &candidates {
        instance.check_committee(c)?;
    }
    let profile = committee_profile(instance, &candidates)?;
    let w = profile.winner()?;
    let committee = candidates[w.winner].clone();
    let listed = (candidates.len() <= LISTED_CANDIDATES).then(|| candidates.clone());
    Ok(RuleOutcome {
        rule,
        selection: Selection::Committee(committee),
        trace: RuleTrace::Matching {
            candidates: candidates.len(),
            listed,
            winner: w.winner,
            matching: w.matching,
            rejected: w.rejected,
            completions,
        },
    })
}

/// Matching rule over all `C(m, k)` committees.
pub fn exhaustive_committee_rule(instance: &Instance, cap: u128) -> Result<RuleOutcome> {
    require_constant_regime(instance, RuleId::ExhaustiveReduction)?;
    let candidates = all_committees(instance.m(), instance.k(), cap)?;
    select_among(instance, RuleId::ExhaustiveReduction, candidates, None)
}

/// Matching rule over the agents' distinct top-k committees.
pub fn top_k_reduced_rule(instance: &Instance) -> Result<RuleOutcome> {
    require_constant_regime(instance, RuleId::TopkReduction)?;
    let mut candidates: Vec<Committee> = (0..instance.n())
        .map(|i| top_k_committee(instance, i))
        .collect();
    candidates.sort();
    candidates.dedup();
    select_among(instance, RuleId::TopkReduction, candidates, None)
}
