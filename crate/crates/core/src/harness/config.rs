use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::generators::KCoverInput;
use crate::model::{Regime, ENUMERATION_CAP};
use crate::oracle::ORACLE_CAP;
use crate::rules::RuleId;

fn default_oracle_cap() -> u128 {
    ORACLE_CAP
}

fn default_rule_cap() -> u128 {
    ENUMERATION_CAP
}

/// A sweep: instance families with parameter grids, the rules to run on each
/// instance, and caps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_oracle_cap")]
    pub oracle_cap: u128,
    #[serde(default = "default_rule_cap")]
    pub rule_cap: u128,
    /// Run rules outside their regime; such rows are flagged.
    #[serde(default)]
    pub override_regime: bool,
    #[serde(default)]
    pub families: Vec<FamilySpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    #[serde(flatten)]
    pub grid: Grid,
    #[serde(default)]
    pub rules: Vec<RuleId>,
    /// Also evaluate every committee of every instance as a fixed outcome.
    #[serde(default)]
    pub committees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Grid {
    Unbounded {
        k: Vec<usize>,
        q: Vec<usize>,
        #[serde(default = "one")]
        replication: usize,
    },
    Linear {
        k: Vec<usize>,
        q: Vec<usize>,
        x: Vec<usize>,
    },
    Kcover {
        inputs: Vec<KCoverInput>,
    },
    Appendix {
        m: Vec<usize>,
        seeds: Vec<u64>,
    },
    /// Uniformly random profiles, `count` per parameter combination.
    Random {
        n: Vec<usize>,
        m: Vec<usize>,
        k: Vec<usize>,
        q: Vec<usize>,
        count: usize,
    },
    /// Every profile with `n` agents over `m` alternatives.
    Profiles {
        n: usize,
        m: usize,
        k: usize,
        q: usize,
    },
}

fn one() -> usize {
    1
}

impl Grid {
    pub fn name(&self) -> &'static str {
        match self {
            Grid::Unbounded { .. } => "unbounded",
            Grid::Linear { .. } => "linear",
            Grid::Kcover { .. } => "kcover",
            Grid::Appendix { .. } => "appendix",
            Grid::Random { .. } => "random",
            Grid::Profiles { .. } => "profiles",
        }
    }

    /// Every `(k, q)` pair the grid produces.
    pub fn parameter_pairs(&self) -> Vec<(usize, usize)> {
        let cross = |k: &[usize], q: &[usize]| -> Vec<(usize, usize)> {
            k.iter()
                .flat_map(|&k| q.iter().map(move |&q| (k, q)))
                .collect()
        };
        match self {
            Grid::Unbounded { k, q, .. }
            | Grid::Linear { k, q, .. }
            | Grid::Random { k, q, .. } => cross(k, q),
            Grid::Kcover { inputs } => inputs.iter().map(|i| (i.q - 1 + i.k_sets, i.q)).collect(),
            Grid::Appendix { m, .. } => m.iter().map(|&m| (m / 2, m / 2)).collect(),
            Grid::Profiles { k, q, .. } => vec![(*k, *q)],
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: ExperimentConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    /// Rejects rules paired with a regime they are not defined for (unless
    /// overridden) and grids whose family needs a different regime.
    pub fn validate(&self) -> Result<()> {
        for (e, spec) in self.families.iter().enumerate() {
            for (k, q) in spec.grid.parameter_pairs() {
                if q == 0 || k < q {
                    return Err(Error::Parameter(format!(
                        "family entry {e}: need 1 <= q <= k, got k={k}, q={q}"
                    )));
                }
                let regime = Regime::of(k, q);
                let family_ok = match spec.grid {
                    Grid::Unbounded { .. } => regime == Regime::Unbounded,
                    Grid::Linear { .. } => regime == Regime::Linear,
                    _ => true,
                };
                if !family_ok {
                    return Err(Error::Regime(format!(
                        "family entry {e}: {} fixtures do not exist for k={k}, q={q}",
                        spec.grid.name()
                    )));
                }
                if self.override_regime {
                    continue;
                }
                if let Some(rule) = spec.rules.iter().find(|r| !r.supports(regime)) {
                    return Err(Error::Regime(format!(
                        "family entry {e}: {rule} is not defined for k={k}, q={q} ({})",
                        regime.label()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("configs always serialize");
        Sha256::digest(canonical.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}
