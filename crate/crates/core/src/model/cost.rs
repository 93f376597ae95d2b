//! q-costs, social costs, and the ordinal committee comparison.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{all_committees, check_consistency, Committee, Instance, Metric};
use crate::rational::Rational;

/// Default cap on `C(m, k)` for exhaustive committee loops.
pub const ENUMERATION_CAP: u128 = 1_000_000;

/// The `count` alternatives of `set` that `agent` ranks highest, returned in
/// ascending id order.
pub fn top_q(instance: &Instance, agent: usize, set: &[usize], count: usize) -> Result<Vec<usize>> {
    if count == 0 || set.len() < count {
        return Err(Error::Parameter(format!(
            "top-{count} requested from a set of {} alternatives",
            set.len()
        )));
    }
    let mut by_rank: Vec<usize> = set.to_vec();
    by_rank.sort_by_key(|&x| instance.position(agent, x));
    if by_rank.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Parameter("set lists an alternative twice".into()));
    }
    let mut top = by_rank[..count].to_vec();
    top.sort_unstable();
    Ok(top)
}

/// The `rank`-th (1-based) alternative of `set` in the ranking of `agent`.
pub fn kth_favorite(instance: &Instance, agent: usize, set: &[usize], rank: usize) -> usize {
    debug_assert!(rank >= 1 && rank <= set.len());
    let mut by_rank: Vec<usize> = set.to_vec();
    let (_, nth, _) =
        by_rank.select_nth_unstable_by_key(rank - 1, |&x| instance.position(agent, x));
    *nth
}

/// The q-th favorite member of `committee` for `agent`: under any consistent
/// metric the agent's q-cost is exactly the distance to this alternative.
pub fn pivot(instance: &Instance, agent: usize, committee: &Committee) -> usize {
    kth_favorite(instance, agent, committee.members(), instance.q())
}

/// Pivot alternative of every agent, in agent order.
pub fn pivots(instance: &Instance, committee: &Committee) -> Vec<usize> {
    (0..instance.n())
        .map(|i| pivot(instance, i, committee))
        .collect()
}

/// `c_{i,q}(C|d)`: the largest distance from `agent` to one of her `q`
/// favorite members of `committee`. Validates the committee and the metric
/// on every call; use [`CostModel`] in loops.
pub fn q_cost(
    instance: &Instance,
    metric: &Metric,
    agent: usize,
    committee: &Committee,
) -> Result<Rational> {
    instance.check_committee(committee)?;
    check_consistency(instance, metric)?;
    if agent >= instance.n() {
        return Err(Error::Parameter(format!("no agent {agent}")));
    }
    let top = top_q(instance, agent, committee.members(), instance.q())?;
    Ok(top
        .iter()
        .map(|&x| metric.get(agent, x))
        .max()
        .cloned()
        .unwrap_or_else(Rational::zero))
}

/// `SC_q(C|d)`, the sum of all agents' q-costs.
pub fn social_cost(
    instance: &Instance,
    metric: &Metric,
    committee: &Committee,
) -> Result<Rational> {
    instance.check_committee(committee)?;
    Ok(CostModel::new(instance, metric)?.social_cost(committee))
}

/// A profile paired with a metric already checked for consistency, so cost
/// queries skip re-validation.
#[derive(Clone, Copy, Debug)]
pub struct CostModel<'a> {
    instance: &'a Instance,
    metric: &'a Metric,
}

impl<'a> CostModel<'a> {
    pub fn new(instance: &'a Instance, metric: &'a Metric) -> Result<Self> {
        check_consistency(instance, metric)?;
        Ok(CostModel { instance, metric })
    }

    pub fn instance(&self) -> &'a Instance {
        self.instance
    }

    pub fn metric(&self) -> &'a Metric {
        self.metric
    }

    /// q-cost of `agent` for any set with at least `q` members.
    pub fn q_cost(&self, agent: usize, committee: &Committee) -> Rational {
        self.metric
            .get(agent, pivot(self.instance, agent, committee))
            .clone()
    }

    pub fn set_cost(&self, agent: usize, set: &[usize]) -> Rational {
        let x = kth_favorite(self.instance, agent, set, self.instance.q());
        self.metric.get(agent, x).clone()
    }

    pub fn social_cost(&self, committee: &Committee) -> Rational {
        let mask = committee.indicator(self.instance.m());
        let q = self.instance.q();
        let mut total = Rational::zero();
        for agent in 0..self.instance.n() {
            let mut seen = 0;
            for &x in self.instance.ranking(agent) {
                if mask[x] {
                    seen += 1;
                    if seen == q {
                        total += self.metric.get(agent, x);
                        break;
                    }
                }
            }
        }
        total
    }

    /// Expected social cost of a distribution over committees.
    pub fn expected_cost(&self, distribution: &[(Committee, Rational)]) -> Rational {
        distribution
            .iter()
            .map(|(c, p)| self.social_cost(c) * p)
            .fold(Rational::zero(), |acc, v| acc + v)
    }
}

/// Orders committees for `agent` by the rank of her q-th favorite member,
/// breaking ties by the canonical committee order. `Less` means `x` comes
/// first (weakly better for the agent under every consistent metric).
pub fn compare_committees(
    instance: &Instance,
    agent: usize,
    x: &Committee,
    y: &Committee,
) -> Ordering {
    let rank = |c: &Committee| instance.position(agent, pivot(instance, agent, c));
    rank(x).cmp(&rank(y)).then_with(|| x.cmp(y))
}

/// A minimum-social-cost committee by exhaustive search; ties go to the
/// lexicographically smallest member list.
pub fn brute_force_optimum(
    instance: &Instance,
    metric: &Metric,
    cap: u128,
) -> Result<(Committee, Rational)> {
    let model = CostModel::new(instance, metric)?;
    let mut best: Option<(Committee, Rational)> = None;
    for committee in all_committees(instance.m(), instance.k(), cap)? {
        let cost = model.social_cost(&committee);
        if best.as_ref().is_none_or(|(_, b)| cost < *b) {
            best = Some((committee, cost));
        }
    }
    best.ok_or_else(|| Error::Internal("no committees to enumerate".into()))
}
