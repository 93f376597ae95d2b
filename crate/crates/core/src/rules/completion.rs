//! `(k,q)`-completions: committees in which a prescribed alternative `l_i`
//! is exactly agent `i`'s q-th favorite member, for every agent.
//!
//! Alternatives are grouped by their type relative to `l` (above, equal to,
//! or below `l_i` for each agent). Swapping two alternatives of the same type
//! preserves every agent's q-th favorite, so a completion is determined by
//! how many alternatives of each type it takes. The counts are found by a
//! pruned enumeration.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Committee, Instance};
use crate::rules::reduction::{require_constant_regime, select_among};
use crate::rules::{CompletionStats, RuleId, RuleOutcome};

/// Per-agent position of an alternative relative to `l_i`.
pub type AlternativeType = Vec<i8>;

pub fn classify_type(instance: &Instance, ell: &[usize], a: usize) -> AlternativeType {
    ell.iter()
        .enumerate()
        .map(|(i, &li)| {
            if a == li {
                0
            } else if instance.prefers(i, a, li) {
                1
            } else {
                -1
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCount {
    #[serde(rename = "type")]
    pub ty: AlternativeType,
    /// Alternatives of this type, ascending.
    pub members: Vec<usize>,
    pub count: usize,
    pub low: usize,
    pub high: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionVector {
    pub entries: Vec<usize>,
    /// Nonempty types only, ordered by their smallest alternative.
    pub types: Vec<TypeCount>,
}

impl CompletionVector {
    /// Takes the `count` lowest ids of every type.
    pub fn committee(&self) -> Committee {
        self.realize(|members, count| &members[..count])
    }

    /// Takes the `count` highest ids of every type.
    pub fn committee_highest(&self) -> Committee {
        self.realize(|members, count| &members[members.len() - count..])
    }

    fn realize(&self, pick: impl Fn(&[usize], usize) -> &[usize]) -> Committee {
        Committee::new(
            self.types
                .iter()
                .flat_map(|t| pick(&t.members, t.count).iter().copied()),
        )
        .expect("types partition the alternatives")
    }
}

/// Solves the completion program for `ell`; `Ok(None)` means no completion
/// exists.
pub fn complete_vector(instance: &Instance, ell: &[usize]) -> Result<Option<CompletionVector>> {
    if ell.len() != instance.n() {
        return Err(Error::Parameter(format!(
            "vector has {} entries for {} agents",
            ell.len(),
            instance.n()
        )));
    }
    if let Some(&bad) = ell.iter().find(|&&x| x >= instance.m()) {
        return Err(Error::Parameter(format!("no alternative {bad}")));
    }
    let mut types: Vec<TypeCount> = Vec::new();
    for a in 0..instance.m() {
        let ty = classify_type(instance, ell, a);
        match types.iter_mut().find(|t| t.ty == ty) {
            Some(t) => t.members.push(a),
            None => types.push(TypeCount {
                ty,
                members: vec![a],
                count: 0,
                low: 0,
                high: 0,
            }),
        }
    }
    for t in &mut types {
        t.high = t.members.len();
        t.low = usize::from(t.ty.contains(&0));
    }
    let search = Search::new(instance, &types);
    let mut counts = vec![0; types.len()];
    if !search.run(0, 0, &mut vec![0; instance.n()], &mut counts) {
        return Ok(None);
    }
    for (t, c) in types.iter_mut().zip(counts) {
        t.count = c;
    }
    Ok(Some(CompletionVector {
        entries: ell.to_vec(),
        types,
    }))
}

struct Search<'a> {
    types: &'a [TypeCount],
    k: usize,
    q: usize,
    /// Suffix sums of lower and upper bounds, overall and per agent
    /// (counting only types with `t_i >= 0`).
    low_total: Vec<usize>,
    high_total: Vec<usize>,
    low_agent: Vec<Vec<usize>>,
    high_agent: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(instance: &Instance, types: &'a [TypeCount]) -> Self {
        let (g, n) = (types.len(), instance.n());
        let mut low_total = vec![0; g + 1];
        let mut high_total = vec![0; g + 1];
        let mut low_agent = vec![vec![0; n]; g + 1];
        let mut high_agent = vec![vec![0; n]; g + 1];
        for t in (0..g).rev() {
            low_total[t] = low_total[t + 1] + types[t].low;
            high_total[t] = high_total[t + 1] + types[t].high;
            for i in 0..n {
                let counts = types[t].ty[i] >= 0;
                low_agent[t][i] = low_agent[t + 1][i] + if counts { types[t].low } else { 0 };
                high_agent[t][i] = high_agent[t + 1][i] + if counts { types[t].high } else { 0 };
            }
        }
        Search {
            types,
            k: instance.k(),
            q: instance.q(),
            low_total,
            high_total,
            low_agent,
            high_agent,
        }
    }

    fn viable(&self, t: usize, total: usize, per_agent: &[usize]) -> bool {
        total + self.low_total[t] <= self.k
            && total + self.high_total[t] >= self.k
            && per_agent.iter().enumerate().all(|(i, &c)| {
                c + self.low_agent[t][i] <= self.q && c + self.high_agent[t][i] >= self.q
            })
    }

    fn run(
        &self,
        t: usize,
        total: usize,
        per_agent: &mut Vec<usize>,
        counts: &mut [usize],
    ) -> bool {
        if !self.viable(t, total, per_agent) {
            return false;
        }
        if t == self.types.len() {
            return true;
        }
        let ty = &self.types[t];
        for h in (ty.low..=ty.high).rev() {
            for (i, c) in per_agent.iter_mut().enumerate() {
                if ty.ty[i] >= 0 {
                    *c += h;
                }
            }
            counts[t] = h;
            let found = self.run(t + 1, total + h, per_agent, counts);
            for (i, c) in per_agent.iter_mut().enumerate() {
                if ty.ty[i] >= 0 {
                    *c -= h;
                }
            }
            if found {
                return true;
            }
        }
        counts[t] = 0;
        false
    }
}

/// One completion per feasible vector in `A^n`, deduplicated and sorted.
pub fn completion_candidates(
    instance: &Instance,
    cap: u128,
) -> Result<(Vec<Committee>, CompletionStats)> {
    let (n, m) = (instance.n(), instance.m());
    let vectors = u32::try_from(n)
        .ok()
        .and_then(|n| (m as u128).checked_pow(n))
        .unwrap_or(u128::MAX);
    if vectors > cap {
        return Err(Error::Cap {
            what: format!("{m}^{n} completion vectors"),
            needed: vectors,
            cap,
        });
    }
    let mut found = BTreeSet::new();
    let mut feasible = 0;
    let mut ell = vec![0; n];
    loop {
        if let Some(v) = complete_vector(instance, &ell)? {
            feasible += 1;
            found.insert(v.committee());
        }
        // Odometer over A^n, last agent fastest.
        let Some(i) = (0..n).rev().find(|&i| ell[i] + 1 < m) else {
            break;
        };
        ell[i] += 1;
        ell[i + 1..].iter_mut().for_each(|x| *x = 0);
    }
    Ok((
        found.into_iter().collect(),
        CompletionStats { vectors, feasible },
    ))
}

/// Matching rule over one completion per feasible vector.
pub fn constant_n_rule(instance: &Instance, cap: u128) -> Result<RuleOutcome> {
    require_constant_regime(instance, RuleId::ConstantN)?;
    let (candidates, stats) = completion_candidates(instance, cap)?;
    select_among(instance, RuleId::ConstantN, candidates, Some(stats))
}
