use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of alternatives, stored sorted ascending so that equality and
/// ordering are syntactic. The derived `Ord` is the canonical committee order
/// (lexicographic on the member list) used for every tie-break.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Committee(Vec<usize>);

impl Committee {
    /// Builds a committee from any member order; duplicates are rejected.
    pub fn new(members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Validation(format!(
                "alternative {} listed twice in committee",
                w[0]
            )));
        }
        Ok(Committee(members))
    }

    /// For callers that already hold a strictly increasing member list.
    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Committee(members)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, alternative: usize) -> bool {
        self.0.binary_search(&alternative).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Membership bitmap over `m` alternatives.
    pub fn indicator(&self, m: usize) -> Vec<bool> {
        let mut mask = vec![false; m];
        for &x in &self.0 {
            if x < m {
                mask[x] = true;
            }
        }
        mask
    }
}

impl TryFrom<Vec<usize>> for Committee {
    type Error = Error;

    fn try_from(members: Vec<usize>) -> Result<Self> {
        Committee::new(members)
    }
}

impl From<Committee> for Vec<usize> {
    fn from(committee: Committee) -> Self {
        committee.0
    }
}

impl fmt::Display for Committee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, x) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// `C(m, k)`, saturating at `u128::MAX`.
pub fn binomial(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for step in 0..k {
        acc = match acc.checked_mul((m - step) as u128) {
            Some(v) => v / (step as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Every `k`-subset of `0..m` in canonical (lexicographic) order, refusing to
/// start when there are more than `cap` of them.
pub fn all_committees(m: usize, k: usize, cap: u128) -> Result<Vec<Committee>> {
    let needed = binomial(m, k);
    if needed > cap {
        return Err(Error::Cap {
            what: format!("committees C({m},{k})"),
            needed,
            cap,
        });
    }
    use itertools::Itertools;
    Ok((0..m).combinations(k).map(Committee::from_sorted).collect())
}
