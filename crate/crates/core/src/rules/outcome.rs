use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Committee, Instance, Regime};
use crate::rational::{serde_exact, Rational};

/// Stable string identifiers for the rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleId {
    PolarOpposites,
    RandomDictator,
    ExhaustiveReduction,
    TopkReduction,
    ConstantN,
}

impl RuleId {
    pub const ALL: [RuleId; 5] = [
        RuleId::PolarOpposites,
        RuleId::RandomDictator,
        RuleId::ExhaustiveReduction,
        RuleId::TopkReduction,
        RuleId::ConstantN,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::PolarOpposites => "polar-opposites",
            RuleId::RandomDictator => "random-dictator",
            RuleId::ExhaustiveReduction => "exhaustive-reduction",
            RuleId::TopkReduction => "topk-reduction",
            RuleId::ConstantN => "constant-n",
        }
    }

    /// Whether the rule is defined for `(k, q)` in this regime.
    pub fn supports(self, regime: Regime) -> bool {
        match self {
            RuleId::RandomDictator => true,
            RuleId::PolarOpposites => regime != Regime::Constant,
            RuleId::ExhaustiveReduction | RuleId::TopkReduction | RuleId::ConstantN => {
                regime == Regime::Constant
            }
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown rule id {s:?}")))
    }
}

/// What a rule returns: one committee, or an exact distribution over
/// committees in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Selection {
    Committee(Committee),
    Distribution(Vec<Outcome>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub committee: Committee,
    #[serde(with = "serde_exact")]
    pub probability: Rational,
}

impl Selection {
    /// `(committee, probability)` pairs; a single committee has probability 1.
    pub fn support(&self) -> Vec<(Committee, Rational)> {
        match self {
            Selection::Committee(c) => vec![(c.clone(), Rational::one())],
            Selection::Distribution(d) => d
                .iter()
                .map(|o| (o.committee.clone(), o.probability.clone()))
                .collect(),
        }
    }

    pub fn committee(&self) -> Option<&Committee> {
        match self {
            Selection::Committee(c) => Some(c),
            Selection::Distribution(_) => None,
        }
    }

    /// Checks that every committee fits the instance and probabilities are
    /// positive and sum to one.
    pub fn validate(&self, instance: &Instance) -> Result<()> {
        let support = self.support();
        let mut total = Rational::zero();
        for (c, p) in &support {
            instance.check_committee(c)?;
            if p <= &Rational::zero() {
                return Err(Error::Validation(format!(
                    "committee {c} has probability {p}"
                )));
            }
            total += p;
        }
        if !total.is_one() {
            return Err(Error::Validation(format!("probabilities sum to {total}")));
        }
        Ok(())
    }
}

/// Internal choices of a rule, recorded for inspection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RuleTrace {
    PolarOpposites {
        i: usize,
        j: usize,
        /// `T_i ∪ T_j` in ascending order.
        union: Vec<usize>,
    },
    RandomDictator {
        /// Top-k committee of each agent, in agent order.
        committees: Vec<Committee>,
    },
    Matching {
        candidates: usize,
        /// Candidate list when it is small enough to be useful to print.
        #[serde(skip_serializing_if = "Option::is_none", default)]
        listed: Option<Vec<Committee>>,
        winner: usize,
        /// `matching[i]` is the agent matched to agent `i` in the winner's
        /// graph.
        matching: Vec<usize>,
        /// Candidates tested and rejected before the winner.
        rejected: usize,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        completions: Option<CompletionStats>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionStats {
    pub vectors: u128,
    pub feasible: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleOutcome {
    pub rule: RuleId,
    pub selection: Selection,
    pub trace: RuleTrace,
}

impl RuleOutcome {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("outcomes always serialize")
    }
}
