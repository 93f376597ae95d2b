use crate::error::{Error, Result};
use crate::model::{
    check_consistency, kth_favorite, top_q, Committee, CostModel, Instance, Metric,
};
use crate::rules::{RuleId, RuleOutcome, RuleTrace, Selection};

/// `T_i`: the `q` alternatives agent `i` likes most, ascending by id.
pub fn top_set(instance: &Instance, agent: usize) -> Vec<usize> {
    let mut top = instance.ranking(agent)[..instance.q()].to_vec();
    top.sort_unstable();
    top
}

/// Fixes agent 0, pairs it with the agent whose top set is ordinally
/// farthest from agent 0, and fills the rest from agent 0's ranking.
pub fn polar_opposites(instance: &Instance) -> Result<RuleOutcome> {
    let (k, q) = (instance.k(), instance.q());
    if 2 * q > k {
        return Err(Error::Regime(format!(
            "polar-opposites needs q <= k/2, got k={k}, q={q}"
        )));
    }
    let i = 0;
    // Position in i's ranking of i's q-th favorite within T_l.
    let farness =
        |l: usize| instance.position(i, kth_favorite(instance, i, &top_set(instance, l), q));
    let mut j = i;
    let mut best = None;
    for l in (0..instance.n()).filter(|&l| l != i) {
        let f = farness(l);
        if best.is_none_or(|b| f > b) {
            best = Some(f);
            j = l;
        }
    }
    let mut union = top_set(instance, i);
    union.extend(top_set(instance, j));
    union.sort_unstable();
    union.dedup();
    let mut members = union.clone();
    for &x in instance.ranking(i) {
        if members.len() == k {
            break;
        }
        if !union.contains(&x) {
            members.push(x);
        }
    }
    Ok(RuleOutcome {
        rule: RuleId::PolarOpposites,
        selection: Selection::Committee(Committee::new(members)?),
        trace: RuleTrace::PolarOpposites { i, j, union },
    })
}

/// Greedy agent set covering every agent's top-q part of `optimum`: agents
/// are scanned by non-decreasing `c_i(O)` (ties by id) and kept when their
/// top-q set within `O` is disjoint from those already kept.
pub fn construct_s(
    instance: &Instance,
    metric: &Metric,
    optimum: &Committee,
) -> Result<Vec<usize>> {
    instance.check_committee(optimum)?;
    check_consistency(instance, metric)?;
    let model = CostModel::new(instance, metric)?;
    let mut order: Vec<usize> = (0..instance.n()).collect();
    order.sort_by(|&a, &b| {
        model
            .q_cost(a, optimum)
            .cmp(&model.q_cost(b, optimum))
            .then(a.cmp(&b))
    });
    let mut taken = vec![false; instance.m()];
    let mut s = Vec::new();
    for agent in order {
        let top = top_q(instance, agent, optimum.members(), instance.q())?;
        if top.iter().all(|&x| !taken[x]) {
            for &x in &top {
                taken[x] = true;
            }
            s.push(agent);
        }
    }
    Ok(s)
}

/// First `k` entries of the agent's ranking.
pub fn top_k_committee(instance: &Instance, agent: usize) -> Committee {
    Committee::new(instance.ranking(agent)[..instance.k()].iter().copied())
        .expect("a ranking prefix has distinct members")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn hand_traced_three_agents() {
        let (a, b, c) = (0, 1, 2);
        let inst = Instance::new(2, 1, vec![vec![a, b, c], vec![c, b, a], vec![b, a, c]]).unwrap();
        let out = polar_opposites(&inst).unwrap();
        assert_eq!(out.selection.committee().unwrap().members(), &[a, c]);
        assert_eq!(
            out.trace,
            RuleTrace::PolarOpposites {
                i: 0,
                j: 1,
                union: vec![a, c]
            }
        );
    }

    #[test]
    fn identical_rankings_give_top_k() {
        let inst = Instance::new(4, 2, vec![vec![3, 1, 4, 0, 5, 2]; 3]).unwrap();
        let out = polar_opposites(&inst).unwrap();
        assert_eq!(
            out.selection.committee().unwrap(),
            &top_k_committee(&inst, 0)
        );
    }

    #[test]
    fn regime_is_enforced() {
        let inst = Instance::new(3, 2, vec![vec![0, 1, 2, 3]]).unwrap();
        assert!(matches!(polar_opposites(&inst), Err(Error::Regime(_))));
    }

    #[test]
    fn s_for_single_agent_and_shared_favorite() {
        let inst = Instance::new(2, 1, vec![vec![0, 1, 2]]).unwrap();
        let metric = Metric::new(vec![vec![int(0), int(1), int(2)]]).unwrap();
        let o = Committee::new([0, 1]).unwrap();
        assert_eq!(construct_s(&inst, &metric, &o).unwrap(), vec![0]);

        let inst = Instance::new(2, 1, vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        let metric = Metric::new(vec![
            vec![int(1), int(2), int(3)],
            vec![int(0), int(2), int(2)],
        ])
        .unwrap();
        assert_eq!(construct_s(&inst, &metric, &o).unwrap(), vec![1]);
    }

    #[test]
    fn top_k_examples() {
        let inst = Instance::new(2, 1, vec![vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(top_k_committee(&inst, 0).members(), &[0, 1]);
        let inst = Instance::new(3, 1, vec![vec![2, 0, 3, 1]]).unwrap();
        assert_eq!(top_k_committee(&inst, 0).members(), &[0, 2, 3]);
    }
}
