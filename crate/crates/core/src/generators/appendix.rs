//! Random profiles on which small committee lists lose a factor near 3/2.
//!
//! With `m` agents and alternatives and `q = k = m/2`, agents `2p` and
//! `2p + 1` rank alternatives `2p` and `2p + 1` at the bottom in opposite
//! orders. A fair coin per pair decides which of the two agents is at
//! distance 3 from her last alternative; every other distance is 1. The
//! reference committee takes, from each pair, the alternative that is at
//! distance 1 from both agents.

use rand::Rng;

use crate::error::{Error, Result};
use crate::generators::family::{named, Coin, FamilyMeta, GeneratedFamily};
use crate::model::{Committee, Instance, Metric};
use crate::oracle::rng_from_seed;
use crate::rational::int;

pub fn gen_appendix_family(m: usize, seed: u64) -> Result<GeneratedFamily> {
    let mut rng = rng_from_seed(seed);
    let coins = (0..m / 2)
        .map(|_| {
            if rng.random_bool(0.5) {
                Coin::Heads
            } else {
                Coin::Tails
            }
        })
        .collect();
    gen_appendix_family_with_coins(m, coins)
}

pub fn gen_appendix_family_with_coins(m: usize, coins: Vec<Coin>) -> Result<GeneratedFamily> {
    if m < 2 || m % 2 == 1 {
        return Err(Error::Parameter(format!(
            "the appendix family needs an even m >= 2, got {m}"
        )));
    }
    if coins.len() != m / 2 {
        return Err(Error::Parameter(format!(
            "{} coins for {} pairs",
            coins.len(),
            m / 2
        )));
    }
    let rankings = (0..m)
        .map(|agent| {
            let pair = agent / 2 * 2;
            let mut r: Vec<usize> = (0..m).filter(|&a| a / 2 * 2 != pair).collect();
            // Own-index alternative last.
            r.push(agent ^ 1);
            r.push(agent);
            r
        })
        .collect();
    let instance = Instance::new(m / 2, m / 2, rankings)?;
    let far = |agent: usize, a: usize| {
        let coin = coins[agent / 2];
        a == agent && agent.is_multiple_of(2) == (coin == Coin::Heads)
    };
    let metric = Metric::from_fn(m, m, |i, a| if far(i, a) { int(3) } else { int(1) })?;
    let optimum = coins.iter().enumerate().map(|(p, c)| match c {
        Coin::Heads => 2 * p + 1,
        Coin::Tails => 2 * p,
    });
    Ok(GeneratedFamily {
        instance,
        metrics: vec![named("d", metric)],
        optimum: Some(Committee::new(optimum)?),
        designated: Some("d".into()),
        meta: FamilyMeta::Appendix { coins },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CostModel;

    #[test]
    fn smallest_case() {
        let fam = gen_appendix_family(2, 0).unwrap();
        fam.validate().unwrap();
        let model = CostModel::new(&fam.instance, fam.metric("d").unwrap()).unwrap();
        assert_eq!(model.social_cost(fam.optimum.as_ref().unwrap()), int(2));
    }

    #[test]
    fn heads_then_tails() {
        let fam = gen_appendix_family_with_coins(4, vec![Coin::Heads, Coin::Tails]).unwrap();
        fam.validate().unwrap();
        assert_eq!(fam.optimum.as_ref().unwrap().members(), &[1, 2]);
        assert_eq!(fam.instance.ranking(0), &[2, 3, 1, 0]);
        assert_eq!(fam.instance.ranking(3), &[0, 1, 2, 3]);
        let model = CostModel::new(&fam.instance, fam.metric("d").unwrap()).unwrap();
        assert_eq!(model.social_cost(fam.optimum.as_ref().unwrap()), int(4));
        // {0, 1}: pair 0 holds both (X = 4); pair 1 holds neither (X = 2).
        assert_eq!(model.social_cost(&Committee::new([0, 1]).unwrap()), int(6));
        // {0, 3}: heads puts alternative 0 at 3 for agent 0, tails puts
        // alternative 3 at 3 for agent 3, so both pairs give 4.
        assert_eq!(model.social_cost(&Committee::new([0, 3]).unwrap()), int(8));
        // {1, 2}: one near alternative from each pair gives 2 + 2.
        assert_eq!(model.social_cost(&Committee::new([1, 2]).unwrap()), int(4));
        // {1, 2}: both near.
        assert_eq!(model.q_cost(0, &Committee::new([1, 2]).unwrap()), int(1));
    }

    #[test]
    fn optimum_costs_m_for_any_seed() {
        for seed in 0..20 {
            let fam = gen_appendix_family(10, seed).unwrap();
            let model = CostModel::new(&fam.instance, fam.metric("d").unwrap()).unwrap();
            assert_eq!(model.social_cost(fam.optimum.as_ref().unwrap()), int(10));
        }
    }

    #[test]
    fn odd_m_is_rejected() {
        assert!(gen_appendix_family(5, 0).is_err());
    }
}
