use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;

use crate::model::{Committee, Instance};
use crate::rational::Rational;
use crate::rules::{top_k_committee, Outcome, RuleId, RuleOutcome, RuleTrace, Selection};

/// Each agent's top-k committee with probability `1/n`, duplicates merged,
/// listed in canonical order.
pub fn randomized_dictatorship(instance: &Instance) -> RuleOutcome {
    let n = instance.n();
    let committees: Vec<Committee> = (0..n).map(|i| top_k_committee(instance, i)).collect();
    let share = Rational::new(1.into(), (n as i64).into());
    let mut merged: BTreeMap<Committee, Rational> = BTreeMap::new();
    for c in &committees {
        *merged.entry(c.clone()).or_insert_with(Rational::zero) += &share;
    }
    RuleOutcome {
        rule: RuleId::RandomDictator,
        selection: Selection::Distribution(
            merged
                .into_iter()
                .map(|(committee, probability)| Outcome {
                    committee,
                    probability,
                })
                .collect(),
        ),
        trace: RuleTrace::RandomDictator { committees },
    }
}

/// One draw of the dictatorship lottery.
pub fn sample_dictator<R: Rng + ?Sized>(instance: &Instance, rng: &mut R) -> Committee {
    top_k_committee(instance, rng.random_range(0..instance.n()))
}
