//! Single-winner selection by perfect-matching admissibility.
//!
//! Candidate `a` is admissible when the bipartite graph on agents with an
//! edge `(i, j)` whenever agent `j` ranks `a` no lower than agent `i`'s top
//! candidate has a perfect matching. Such a candidate always exists; the
//! lowest-indexed one wins.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingWinner {
    pub winner: usize,
    /// `matching[i] = j` for the edge `(i, j)` used by the certificate.
    pub matching: Vec<usize>,
    /// Number of candidates rejected before the winner.
    pub rejected: usize,
}

/// Rankings over candidates `0..c`, best first, with inverse positions.
#[derive(Clone, Debug)]
pub struct CandidateProfile {
    positions: Vec<Vec<usize>>,
    tops: Vec<usize>,
    candidates: usize,
}

impl CandidateProfile {
    pub fn new(rankings: &[Vec<usize>]) -> Result<Self> {
        let candidates = rankings.first().map_or(0, Vec::len);
        if rankings.is_empty() || candidates == 0 {
            return Err(Error::Parameter(
                "profile needs at least one agent and one candidate".into(),
            ));
        }
        let mut positions = Vec::with_capacity(rankings.len());
        for (i, r) in rankings.iter().enumerate() {
            let mut pos = vec![usize::MAX; candidates];
            if r.len() != candidates {
                return Err(Error::Validation(format!(
                    "agent {i} ranks {} candidates, expected {candidates}",
                    r.len()
                )));
            }
            for (p, &c) in r.iter().enumerate() {
                if c >= candidates || pos[c] != usize::MAX {
                    return Err(Error::Validation(format!(
                        "agent {i} does not rank a permutation"
                    )));
                }
                pos[c] = p;
            }
            positions.push(pos);
        }
        Ok(CandidateProfile {
            tops: rankings.iter().map(|r| r[0]).collect(),
            positions,
            candidates,
        })
    }

    /// Builds the profile directly from per-agent positions.
    pub fn from_positions(positions: Vec<Vec<usize>>) -> Result<Self> {
        let rankings: Vec<Vec<usize>> = positions
            .iter()
            .map(|pos| {
                let mut r: Vec<usize> = (0..pos.len()).collect();
                r.sort_by_key(|&c| pos[c]);
                r
            })
            .collect();
        let profile = CandidateProfile::new(&rankings)?;
        if profile.positions != positions {
            return Err(Error::Validation("positions are not a permutation".into()));
        }
        Ok(profile)
    }

    pub fn agents(&self) -> usize {
        self.positions.len()
    }

    pub fn candidates(&self) -> usize {
        self.candidates
    }

    /// 0-based position of `candidate` in the ranking of `agent`.
    pub fn position(&self, agent: usize, candidate: usize) -> usize {
        self.positions[agent][candidate]
    }

    fn edge(&self, candidate: usize, i: usize, j: usize) -> bool {
        self.positions[j][candidate] <= self.positions[j][self.tops[i]]
    }

    /// A perfect matching of the domination graph of `candidate`, if any.
    pub fn perfect_matching(&self, candidate: usize) -> Option<Vec<usize>> {
        let n = self.agents();
        let mut right_owner: Vec<Option<usize>> = vec![None; n];
        for i in 0..n {
            let mut visited = vec![false; n];
            if !self.augment(candidate, i, &mut visited, &mut right_owner) {
                return None;
            }
        }
        let mut matching = vec![0; n];
        for (j, owner) in right_owner.iter().enumerate() {
            matching[owner.expect("perfect matching covers every right vertex")] = j;
        }
        Some(matching)
    }

    fn augment(
        &self,
        candidate: usize,
        i: usize,
        visited: &mut [bool],
        right_owner: &mut [Option<usize>],
    ) -> bool {
        for j in 0..self.agents() {
            if visited[j] || !self.edge(candidate, i, j) {
                continue;
            }
            visited[j] = true;
            let free = match right_owner[j] {
                None => true,
                Some(other) => self.augment(candidate, other, visited, right_owner),
            };
            if free {
                right_owner[j] = Some(i);
                return true;
            }
        }
        false
    }

    pub fn winner(&self) -> Result<MatchingWinner> {
        for candidate in 0..self.candidates {
            if let Some(matching) = self.perfect_matching(candidate) {
                return Ok(MatchingWinner {
                    winner: candidate,
                    matching,
                    rejected: candidate,
                });
            }
        }
        Err(Error::Internal(format!(
            "no candidate admits a perfect matching; positions = {:?}",
            self.positions
        )))
    }
}

/// The lowest-indexed admissible candidate of a profile given as rankings.
pub fn matching_single_winner(rankings: &[Vec<usize>]) -> Result<MatchingWinner> {
    CandidateProfile::new(rankings)?.winner()
}
