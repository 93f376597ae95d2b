//! Profiles built from maximum K-cover inputs.
//!
//! Agents are elements, and alternatives are `q - 1` special ones followed by
//! one per set. Every agent is at distance 1 from the specials and from the
//! sets containing her, and at distance 3 from the rest, so a committee
//! holding all specials costs `n` plus 2 per element its sets miss.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::family::{named, FamilyMeta, GeneratedFamily};
use crate::model::{Committee, Instance, Metric};
use crate::rational::int;

/// Elements are `0..universe`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KCoverInput {
    pub universe: usize,
    pub sets: Vec<Vec<usize>>,
    #[serde(rename = "K")]
    pub k_sets: usize,
    pub q: usize,
    /// Indices of `K` sets covering the universe, when one is known.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub planted: Option<Vec<usize>>,
}

impl KCoverInput {
    pub fn validate(&self) -> Result<()> {
        if self.universe == 0 {
            return Err(Error::Parameter("universe must be nonempty".into()));
        }
        if self.q == 0 || self.k_sets == 0 {
            return Err(Error::Parameter("q and K must be positive".into()));
        }
        for (s, set) in self.sets.iter().enumerate() {
            if set.is_empty() || set.iter().any(|&e| e >= self.universe) {
                return Err(Error::Parameter(format!(
                    "set {s} is empty or leaves the universe"
                )));
            }
        }
        if self.k_sets >= self.sets.len() {
            return Err(Error::Parameter(format!(
                "committee size q-1+K must be below q-1+|sets|: K={} with {} sets",
                self.k_sets,
                self.sets.len()
            )));
        }
        if let Some(planted) = &self.planted {
            let mut ids = planted.clone();
            ids.sort_unstable();
            ids.dedup();
            if ids.len() != self.k_sets || ids.iter().any(|&s| s >= self.sets.len()) {
                return Err(Error::Parameter(
                    "planted cover must name K distinct sets".into(),
                ));
            }
            let mut covered = vec![false; self.universe];
            for &s in &ids {
                for &e in &self.sets[s] {
                    covered[e] = true;
                }
            }
            if covered.contains(&false) {
                return Err(Error::Parameter(
                    "planted collection does not cover the universe".into(),
                ));
            }
        }
        Ok(())
    }
}

pub fn gen_kcover_family(input: &KCoverInput) -> Result<GeneratedFamily> {
    input.validate()?;
    let specials = input.q - 1;
    let member = |e: usize, s: usize| input.sets[s].contains(&e);
    let rankings = (0..input.universe)
        .map(|e| {
            let mut r: Vec<usize> = (0..specials).collect();
            r.extend(
                (0..input.sets.len())
                    .filter(|&s| member(e, s))
                    .map(|s| specials + s),
            );
            r.extend(
                (0..input.sets.len())
                    .filter(|&s| !member(e, s))
                    .map(|s| specials + s),
            );
            r
        })
        .collect();
    let instance = Instance::new(specials + input.k_sets, input.q, rankings)?;
    let metric = Metric::from_fn(input.universe, instance.m(), |e, a| {
        if a < specials || member(e, a - specials) {
            int(1)
        } else {
            int(3)
        }
    })?;
    let optimum = match &input.planted {
        Some(cover) => Some(Committee::new(
            (0..specials).chain(cover.iter().map(|&s| specials + s)),
        )?),
        None => None,
    };
    Ok(GeneratedFamily {
        instance,
        metrics: vec![named("d", metric)],
        designated: optimum.as_ref().map(|_| "d".to_string()),
        optimum,
        meta: FamilyMeta::Kcover {
            k_sets: input.k_sets,
            universe: input.universe,
            sets: input.sets.clone(),
            specials,
            planted: input.planted.clone(),
        },
    })
}

/// Adds missing specials and drops the highest-id set-alternatives to make
/// room.
pub fn canonicalize(family: &GeneratedFamily, committee: &Committee) -> Result<Committee> {
    let FamilyMeta::Kcover { specials, .. } = family.meta else {
        return Err(Error::Parameter(
            "canonicalize needs a K-cover family".into(),
        ));
    };
    family.instance.check_committee(committee)?;
    let missing = (0..specials).filter(|&s| !committee.contains(s)).count();
    let mut sets: Vec<usize> = committee.iter().filter(|&a| a >= specials).collect();
    sets.truncate(sets.len() - missing);
    Committee::new((0..specials).chain(sets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{all_committees, brute_force_optimum, CostModel};

    pub(crate) fn example() -> KCoverInput {
        KCoverInput {
            universe: 3,
            sets: vec![vec![0, 1], vec![2], vec![1, 2]],
            k_sets: 2,
            q: 2,
            planted: Some(vec![0, 1]),
        }
    }

    #[test]
    fn small_example() {
        let fam = gen_kcover_family(&example()).unwrap();
        fam.validate().unwrap();
        let inst = &fam.instance;
        assert_eq!((inst.n(), inst.m(), inst.k()), (3, 4, 3));
        assert_eq!(inst.ranking(1), &[0, 1, 3, 2]);
        let (_, best) = brute_force_optimum(inst, fam.metric("d").unwrap(), 10).unwrap();
        assert_eq!(best, int(3));
        let model = CostModel::new(inst, fam.metric("d").unwrap()).unwrap();
        assert_eq!(model.social_cost(fam.optimum.as_ref().unwrap()), int(3));
    }

    #[test]
    fn canonicalize_example() {
        let fam = gen_kcover_family(&example()).unwrap();
        let model = CostModel::new(&fam.instance, fam.metric("d").unwrap()).unwrap();
        let c = Committee::new([1, 2, 3]).unwrap();
        let canon = canonicalize(&fam, &c).unwrap();
        assert_eq!(canon.members(), &[0, 1, 2]);
        for c in all_committees(4, 3, 10).unwrap() {
            let canon = canonicalize(&fam, &c).unwrap();
            assert!(canon.contains(0));
            assert!(model.social_cost(&canon) <= model.social_cost(&c));
            if c.contains(0) {
                assert_eq!(canon, c);
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let mut bad = example();
        bad.k_sets = 3;
        assert!(gen_kcover_family(&bad).is_err());
        let mut bad = example();
        bad.planted = Some(vec![1, 2]);
        assert!(gen_kcover_family(&bad).is_err());
        let mut bad = example();
        bad.sets[1] = vec![];
        assert!(gen_kcover_family(&bad).is_err());
    }

    #[test]
    fn needs_kcover_tag() {
        let fam = crate::generators::gen_linear_family(4, 2, 1).unwrap();
        assert!(canonicalize(&fam, &Committee::new([0, 1, 2, 3]).unwrap()).is_err());
    }
}
