use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Committee;

/// The ordinal input every rule sees: `n` agents, each with a strict ranking
/// over `m` alternatives (best first), plus the committee size `k` and the
/// cost index `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceRepr", into = "InstanceRepr")]
pub struct Instance {
    k: usize,
    q: usize,
    rankings: Vec<Vec<usize>>,
    /// `positions[i][x]` is the 0-based rank of alternative `x` for agent `i`.
    positions: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct InstanceRepr {
    n: usize,
    m: usize,
    k: usize,
    q: usize,
    rankings: Vec<Vec<usize>>,
}

impl TryFrom<InstanceRepr> for Instance {
    type Error = Error;

    fn try_from(repr: InstanceRepr) -> Result<Self> {
        let instance = Instance::new(repr.k, repr.q, repr.rankings)?;
        if instance.n() != repr.n || instance.m() != repr.m {
            return Err(Error::Validation(format!(
                "declared n={}, m={} but rankings give n={}, m={}",
                repr.n,
                repr.m,
                instance.n(),
                instance.m()
            )));
        }
        Ok(instance)
    }
}

impl From<Instance> for InstanceRepr {
    fn from(instance: Instance) -> Self {
        InstanceRepr {
            n: instance.n(),
            m: instance.m(),
            k: instance.k,
            q: instance.q,
            rankings: instance.rankings,
        }
    }
}

impl Instance {
    /// Validates `1 <= q <= k < m`, `m >= 2`, at least one agent, and that
    /// every ranking is a permutation of `0..m`.
    pub fn new(k: usize, q: usize, rankings: Vec<Vec<usize>>) -> Result<Self> {
        let n = rankings.len();
        if n == 0 {
            return Err(Error::Validation(
                "an instance needs at least one agent".into(),
            ));
        }
        let m = rankings[0].len();
        if m < 2 {
            return Err(Error::Validation(format!(
                "need m >= 2 alternatives, got {m}"
            )));
        }
        if !(1 <= q && q <= k && k < m) {
            return Err(Error::Validation(format!(
                "need 1 <= q <= k < m, got q={q}, k={k}, m={m}"
            )));
        }
        let mut positions = Vec::with_capacity(n);
        for (agent, ranking) in rankings.iter().enumerate() {
            if ranking.len() != m {
                return Err(Error::Validation(format!(
                    "agent {agent} ranks {} alternatives, expected {m}",
                    ranking.len()
                )));
            }
            let mut pos = vec![usize::MAX; m];
            for (rank, &x) in ranking.iter().enumerate() {
                if x >= m || pos[x] != usize::MAX {
                    return Err(Error::Validation(format!(
                        "ranking of agent {agent} is not a permutation of 0..{m}"
                    )));
                }
                pos[x] = rank;
            }
            positions.push(pos);
        }
        Ok(Instance {
            k,
            q,
            rankings,
            positions,
        })
    }

    pub fn n(&self) -> usize {
        self.rankings.len()
    }

    pub fn m(&self) -> usize {
        self.positions[0].len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn rankings(&self) -> &[Vec<usize>] {
        &self.rankings
    }

    pub fn ranking(&self, agent: usize) -> &[usize] {
        &self.rankings[agent]
    }

    /// 0-based rank of `alternative` in the ranking of `agent`.
    pub fn position(&self, agent: usize, alternative: usize) -> usize {
        self.positions[agent][alternative]
    }

    /// `x` strictly before `y` in the ranking of `agent`.
    pub fn prefers(&self, agent: usize, x: usize, y: usize) -> bool {
        self.positions[agent][x] < self.positions[agent][y]
    }

    /// Same profile with different committee parameters.
    pub fn with_parameters(&self, k: usize, q: usize) -> Result<Self> {
        Instance::new(k, q, self.rankings.clone())
    }

    /// Checks that `committee` has exactly `k` members drawn from `0..m`.
    pub fn check_committee(&self, committee: &Committee) -> Result<()> {
        if committee.len() != self.k {
            return Err(Error::Validation(format!(
                "committee {committee} has {} members, expected k={}",
                committee.len(),
                self.k
            )));
        }
        if let Some(x) = committee.iter().find(|&x| x >= self.m()) {
            return Err(Error::Validation(format!(
                "committee {committee} names alternative {x}, but m={}",
                self.m()
            )));
        }
        Ok(())
    }

    /// Regime of the `(k, q)` pair in the distortion trichotomy.
    pub fn regime(&self) -> Regime {
        Regime::of(self.k, self.q)
    }
}

/// The three `(k, q)` regimes: unbounded for `q <= k/3`, linear in `n` for
/// `k/3 < q <= k/2`, constant for `q > k/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Unbounded,
    Linear,
    Constant,
}

impl Regime {
    pub fn of(k: usize, q: usize) -> Regime {
        if 3 * q <= k {
            Regime::Unbounded
        } else if 2 * q <= k {
            Regime::Linear
        } else {
            Regime::Constant
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Regime::Unbounded => "q<=k/3",
            Regime::Linear => "k/3<q<=k/2",
            Regime::Constant => "q>k/2",
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Regime::Unbounded => "unbounded",
            Regime::Linear => "linear",
            Regime::Constant => "constant",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        let r = vec![vec![0, 1, 2]];
        assert!(Instance::new(2, 1, r.clone()).is_ok());
        assert!(Instance::new(3, 1, r.clone()).is_err(), "k must be < m");
        assert!(Instance::new(2, 0, r.clone()).is_err());
        assert!(Instance::new(1, 2, r.clone()).is_err(), "q must be <= k");
        assert!(Instance::new(1, 1, vec![vec![0, 0, 1]]).is_err());
        assert!(Instance::new(1, 1, vec![vec![0, 1, 2], vec![0, 1]]).is_err());
        assert!(Instance::new(1, 1, vec![]).is_err());
    }

    #[test]
    fn positions_invert_rankings() {
        let inst = Instance::new(1, 1, vec![vec![2, 0, 1]]).unwrap();
        assert_eq!(inst.position(0, 2), 0);
        assert_eq!(inst.position(0, 1), 2);
        assert!(inst.prefers(0, 2, 1));
    }

    #[test]
    fn regimes() {
        assert_eq!(Regime::of(8, 2), Regime::Unbounded);
        assert_eq!(Regime::of(3, 1), Regime::Unbounded);
        assert_eq!(Regime::of(4, 2), Regime::Linear);
        assert_eq!(Regime::of(2, 1), Regime::Linear);
        assert_eq!(Regime::of(5, 2), Regime::Linear);
        assert_eq!(Regime::of(3, 2), Regime::Constant);
    }

    #[test]
    fn json_round_trip_checks_declared_sizes() {
        let inst = Instance::new(2, 1, vec![vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
        let text = serde_json::to_string(&inst).unwrap();
        assert_eq!(
            text,
            r#"{"n":2,"m":3,"k":2,"q":1,"rankings":[[0,1,2],[2,1,0]]}"#
        );
        assert_eq!(serde_json::from_str::<Instance>(&text).unwrap(), inst);
        let wrong = r#"{"n":3,"m":3,"k":2,"q":1,"rankings":[[0,1,2],[2,1,0]]}"#;
        assert!(serde_json::from_str::<Instance>(wrong).is_err());
    }
}
