//! Profiles forcing distortion at least `x` (with `n = 2x + 1`) when
//! `k/3 < q <= k/2`.
//!
//! `x` agents rank X ≻ Y ≻ Z, `x` agents rank Y ≻ X ≻ Z, and one agent ranks
//! Z ≻ Y ≻ X, over three blocks of `q` alternatives. Leaving out part of Z is
//! unbounded under one metric; keeping all of Z leaves room for at most one
//! of X and Y, which costs `x` under the other while X ∪ Y costs 1.

use crate::error::{Error, Result};
use crate::generators::family::{named, FamilyMeta, GeneratedFamily};
use crate::model::{Committee, Instance, Metric};
use crate::rational::int;

pub fn gen_linear_family(k: usize, q: usize, x: usize) -> Result<GeneratedFamily> {
    if 3 * q <= k || 2 * q > k {
        return Err(Error::Regime(format!(
            "the linear family needs k/3 < q <= k/2, got k={k}, q={q}"
        )));
    }
    if x == 0 {
        return Err(Error::Parameter("x must be at least 1".into()));
    }
    let (xs, ys, zs): (Vec<usize>, Vec<usize>, Vec<usize>) = (
        (0..q).collect(),
        (q..2 * q).collect(),
        (2 * q..3 * q).collect(),
    );
    let concat =
        |parts: [&Vec<usize>; 3]| -> Vec<usize> { parts.into_iter().flatten().copied().collect() };
    let mut rankings = Vec::with_capacity(2 * x + 1);
    rankings.extend(std::iter::repeat_n(concat([&xs, &ys, &zs]), x));
    rankings.extend(std::iter::repeat_n(concat([&ys, &xs, &zs]), x));
    rankings.push(concat([&zs, &ys, &xs]));
    let instance = Instance::new(k, q, rankings)?;

    let n = 2 * x + 1;
    let w = n - 1;
    let case1_agents: Vec<_> = (0..n).map(|i| int(i64::from(i == w))).collect();
    let case1_alts: Vec<_> = (0..3 * q).map(|a| int(i64::from(a >= 2 * q))).collect();
    let case2_agents: Vec<_> = (0..n)
        .map(|i| {
            int(if i < x {
                0
            } else if i < w {
                1
            } else {
                2
            })
        })
        .collect();
    let case2_alts: Vec<_> = (0..3 * q).map(|a| int((a / q) as i64)).collect();

    let mut optimum = concat([&xs, &ys, &vec![]]);
    optimum.extend(zs.iter().take(k - 2 * q));
    Ok(GeneratedFamily {
        instance,
        metrics: vec![
            named("case1", Metric::from_line(&case1_agents, &case1_alts)?),
            named("case2", Metric::from_line(&case2_agents, &case2_alts)?),
        ],
        optimum: Some(Committee::new(optimum)?),
        designated: Some("case2".into()),
        meta: FamilyMeta::Linear { x },
    })
}

/// The X, Y and Z blocks of a linear family.
pub fn linear_blocks(family: &GeneratedFamily) -> Result<[Vec<usize>; 3]> {
    match family.meta {
        FamilyMeta::Linear { .. } => {
            let q = family.instance.q();
            Ok([
                (0..q).collect(),
                (q..2 * q).collect(),
                (2 * q..3 * q).collect(),
            ])
        }
        _ => Err(Error::Parameter("not a linear family".into())),
    }
}
