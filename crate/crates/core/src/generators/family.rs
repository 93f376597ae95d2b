use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{check_consistency, Committee, Instance, Metric};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coin {
    Heads,
    Tails,
}

/// Construction parameters, tagged by family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilyMeta {
    Unbounded {
        #[serde(rename = "L")]
        l: usize,
        /// Copies of every agent.
        replication: usize,
    },
    Linear {
        x: usize,
    },
    Kcover {
        #[serde(rename = "K")]
        k_sets: usize,
        universe: usize,
        sets: Vec<Vec<usize>>,
        /// Alternatives `0..specials` are the special ones; set `s` is
        /// alternative `specials + s`.
        specials: usize,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        planted: Option<Vec<usize>>,
    },
    Appendix {
        coins: Vec<Coin>,
    },
}

impl FamilyMeta {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyMeta::Unbounded { .. } => "unbounded",
            FamilyMeta::Linear { .. } => "linear",
            FamilyMeta::Kcover { .. } => "kcover",
            FamilyMeta::Appendix { .. } => "appendix",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedMetric {
    pub name: String,
    pub metric: Metric,
}

/// A profile with the metrics its construction uses and, when known, an
/// optimal committee under the designated metric.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedFamily {
    pub instance: Instance,
    pub metrics: Vec<NamedMetric>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub optimum: Option<Committee>,
    /// Name of the metric under which `optimum` is optimal.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub designated: Option<String>,
    pub meta: FamilyMeta,
}

impl GeneratedFamily {
    pub fn metric(&self, name: &str) -> Option<&Metric> {
        self.metrics
            .iter()
            .find(|m| m.name == name)
            .map(|m| &m.metric)
    }

    pub fn designated_metric(&self) -> Option<&Metric> {
        self.designated
            .as_deref()
            .and_then(|name| self.metric(name))
    }

    /// Every metric is consistent with the instance and the optimum fits it.
    pub fn validate(&self) -> Result<()> {
        for named in &self.metrics {
            check_consistency(&self.instance, &named.metric)
                .map_err(|v| Error::Validation(format!("metric {}: {v}", named.name)))?;
        }
        if let Some(o) = &self.optimum {
            self.instance.check_committee(o)?;
        }
        if let Some(name) = &self.designated {
            if self.metric(name).is_none() {
                return Err(Error::Validation(format!(
                    "designated metric {name} is missing"
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("families always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub(crate) fn named(name: &str, metric: Metric) -> NamedMetric {
    NamedMetric {
        name: name.to_string(),
        metric,
    }
}
