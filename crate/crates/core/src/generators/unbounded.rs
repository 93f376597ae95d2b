//! Profiles on which every rule has unbounded distortion when `q <= k/3`.
//!
//! With `L = floor(k/q) + 1` blocks of `q` alternatives, agents `v_l` favor
//! the X blocks and agents `u_l` the Y blocks, each ordering blocks by index
//! distance from its own. Two line metrics make either every Y alternative or
//! every X alternative indispensable for a zero-cost committee, and no
//! committee of size `k` can hold both.

use crate::error::{Error, Result};
use crate::generators::family::{named, FamilyMeta, GeneratedFamily};
use crate::model::{Committee, Instance, Metric};
use crate::rational::{int, Rational};

/// Block layout: X blocks `0..lx`, then Y blocks, `q` consecutive ids each.
struct Layout {
    q: usize,
    lx: usize,
    ly: usize,
}

impl Layout {
    fn block(&self, b: usize) -> impl Iterator<Item = usize> {
        b * self.q..(b + 1) * self.q
    }

    fn x(&self, l: usize) -> impl Iterator<Item = usize> {
        self.block(l)
    }

    fn y(&self, l: usize) -> impl Iterator<Item = usize> {
        self.block(self.lx + l)
    }

    /// Blocks `0..count` ordered by distance from `home`, nearer first and
    /// lower index on ties.
    fn by_distance(count: usize, home: usize) -> Vec<usize> {
        let mut order: Vec<usize> = (0..count).collect();
        order.sort_by_key(|&b| (b.abs_diff(home), b));
        order
    }

    fn v_ranking(&self, l: usize) -> Vec<usize> {
        let mut r: Vec<usize> = Self::by_distance(self.lx, l)
            .into_iter()
            .flat_map(|b| self.x(b))
            .collect();
        r.extend((0..self.ly).flat_map(|b| self.y(b)));
        r
    }

    fn u_ranking(&self, l: usize) -> Vec<usize> {
        let mut r: Vec<usize> = Self::by_distance(self.ly, l)
            .into_iter()
            .flat_map(|b| self.y(b))
            .collect();
        r.extend((0..self.lx).rev().flat_map(|b| self.x(b)));
        r
    }
}

/// Builds the family for `(k, q)` with every agent copied `replication`
/// times (copies are consecutive).
pub fn gen_unbounded_family_replicated(
    k: usize,
    q: usize,
    replication: usize,
) -> Result<GeneratedFamily> {
    if q == 0 || 3 * q > k {
        return Err(Error::Regime(format!(
            "the unbounded family needs 1 <= q <= k/3, got k={k}, q={q}"
        )));
    }
    if replication == 0 {
        return Err(Error::Parameter("replication must be at least 1".into()));
    }
    let l = k / q + 1;
    let layout = Layout {
        q,
        lx: l / 2,
        ly: l.div_ceil(2),
    };
    let m = l * q;

    // Per base agent: ranking, case-1 position, case-2 position.
    let mut base: Vec<(Vec<usize>, i64, i64)> = Vec::new();
    let (li, lyi) = (l as i64, layout.ly as i64);
    for v in 0..layout.lx {
        base.push((layout.v_ranking(v), 0, -li + v as i64 + 1));
    }
    for u in 0..layout.ly {
        base.push((layout.u_ranking(u), lyi + u as i64 + 1, 0));
    }
    let mut case1_alt = vec![int(0); m];
    let mut case2_alt = vec![int(0); m];
    for v in 0..layout.lx {
        for x in layout.x(v) {
            case2_alt[x] = int(-li + v as i64 + 1);
        }
    }
    for u in 0..layout.ly {
        for y in layout.y(u) {
            case1_alt[y] = int(lyi + u as i64 + 1);
        }
    }
    let agents: Vec<&(Vec<usize>, i64, i64)> = base
        .iter()
        .flat_map(|a| std::iter::repeat_n(a, replication))
        .collect();
    let instance = Instance::new(k, q, agents.iter().map(|a| a.0.clone()).collect())?;
    let case1: Vec<Rational> = agents.iter().map(|a| int(a.1)).collect();
    let case2: Vec<Rational> = agents.iter().map(|a| int(a.2)).collect();

    // All of Y plus the lowest X ids.
    let mut optimum: Vec<usize> = (0..layout.ly).flat_map(|b| layout.y(b)).collect();
    optimum.extend(0..k - optimum.len());
    Ok(GeneratedFamily {
        instance,
        metrics: vec![
            named("case1", Metric::from_line(&case1, &case1_alt)?),
            named("case2", Metric::from_line(&case2, &case2_alt)?),
        ],
        optimum: Some(Committee::new(optimum)?),
        designated: Some("case1".into()),
        meta: FamilyMeta::Unbounded { l, replication },
    })
}

pub fn gen_unbounded_family(k: usize, q: usize) -> Result<GeneratedFamily> {
    gen_unbounded_family_replicated(k, q, 1)
}

/// Alternatives of the X blocks and of the Y blocks of an unbounded family.
pub fn unbounded_blocks(family: &GeneratedFamily) -> Result<(Vec<usize>, Vec<usize>)> {
    match family.meta {
        FamilyMeta::Unbounded { l, .. } => {
            let q = family.instance.q();
            let split = (l / 2) * q;
            Ok(((0..split).collect(), (split..l * q).collect()))
        }
        _ => Err(Error::Parameter("not an unbounded family".into())),
    }
}
