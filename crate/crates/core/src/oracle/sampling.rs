//! Seeded random instances and consistent metrics.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{check_consistency, Instance, Metric};
use crate::oracle::closure::{threshold_metric, zero_closure};
use crate::rational::{int, ratio, Rational};

/// Attempts per metric before the line sampler gives up.
pub const LINE_RETRY_CAP: usize = 1000;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniformly random rankings.
pub fn random_instance<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    k: usize,
    q: usize,
) -> Result<Instance> {
    let rankings = (0..n)
        .map(|_| {
            let mut r: Vec<usize> = (0..m).collect();
            r.shuffle(rng);
            r
        })
        .collect();
    Instance::new(k, q, rankings)
}

/// How [`sample_metrics`] produces metrics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// 1-D embeddings only; fails when the retry cap is exhausted.
    Line,
    /// Nonnegative combinations of 0/1 threshold metrics and a bounded
    /// rank-increasing metric; never fails.
    Conic,
    /// A few line attempts, falling back to the conic sampler.
    Mixed,
}

/// `count` metrics consistent with `instance` drawn from random 1-D
/// embeddings.
pub fn sample_consistent_metrics(
    instance: &Instance,
    count: usize,
    seed: u64,
) -> Result<Vec<Metric>> {
    sample_metrics(instance, count, seed, Strategy::Line)
}

pub fn sample_metrics(
    instance: &Instance,
    count: usize,
    seed: u64,
    strategy: Strategy,
) -> Result<Vec<Metric>> {
    if count == 0 {
        return Err(Error::Parameter("metric count must be positive".into()));
    }
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|_| match strategy {
            Strategy::Line => line_metric(instance, &mut rng, LINE_RETRY_CAP),
            Strategy::Conic => Ok(conic_metric(instance, &mut rng)),
            Strategy::Mixed => match line_metric(instance, &mut rng, 8) {
                Ok(metric) => Ok(metric),
                Err(_) => Ok(conic_metric(instance, &mut rng)),
            },
        })
        .collect()
}

/// Places agent 0 at the origin and the alternatives at distinct distances
/// in her ranking order (random sides), then puts every other agent at a
/// random point of the interval where her ranking is induced. Draws with an
/// empty interval are rejected.
pub fn line_metric<R: Rng + ?Sized>(
    instance: &Instance,
    rng: &mut R,
    attempts: usize,
) -> Result<Metric> {
    let (n, m) = (instance.n(), instance.m());
    const SCALE: i64 = 64;
    'attempt: for _ in 0..attempts {
        let mut radii: Vec<i64> = (1..=(4 * m as i64)).collect();
        radii.shuffle(rng);
        let mut radii: Vec<i64> = radii[..m].to_vec();
        radii.sort_unstable();
        let mut alt = vec![int(0); m];
        for (p, &x) in instance.ranking(0).iter().enumerate() {
            let r = if p == 0 && rng.random_bool(0.3) {
                0
            } else {
                radii[p] * SCALE
            };
            alt[x] = int(if rng.random_bool(0.5) { r } else { -r });
        }
        let mut agents = vec![int(0); n];
        for (j, slot) in agents.iter_mut().enumerate().skip(1) {
            let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
            for pair in instance.ranking(j).windows(2) {
                let (a, b) = (&alt[pair[0]], &alt[pair[1]]);
                let mid = (a + b) / int(2);
                // Closer to a than to b: the side of the midpoint facing a.
                if a < b {
                    hi = Some(hi.map_or(mid.clone(), |h| h.min(mid)));
                } else if a > b {
                    lo = Some(lo.map_or(mid.clone(), |l| l.max(mid)));
                }
            }
            let spread = int(SCALE * 4 * m as i64);
            let (lo, hi) = match (lo, hi) {
                (Some(l), Some(h)) => (l, h),
                (Some(l), None) => (l.clone(), l + spread),
                (None, Some(h)) => (h.clone() - spread, h),
                (None, None) => (-spread.clone(), spread),
            };
            if lo > hi {
                continue 'attempt;
            }
            let u = ratio(rng.random_range(0..=16), 16);
            *slot = &lo + (hi - &lo) * u;
        }
        let metric = Metric::from_fn(n, m, |i, x| {
            let d = &agents[i] - &alt[x];
            if d < int(0) {
                -d
            } else {
                d
            }
        })?;
        if check_consistency(instance, &metric).is_ok() {
            return Ok(metric);
        }
    }
    Err(Error::Sampling(format!(
        "no consistent line embedding found in {attempts} attempts"
    )))
}

/// A random member of the cone of consistent metrics: threshold metrics
/// from random zero sets plus, usually, a rank-increasing metric with values
/// in `[1, 3]` (any such table satisfies the triangle inequality).
pub fn conic_metric<R: Rng + ?Sized>(instance: &Instance, rng: &mut R) -> Metric {
    let (n, m) = (instance.n(), instance.m());
    let mut total = vec![vec![int(0); m]; n];
    let mut add = |metric: &Metric, weight: &Rational| {
        for (i, row) in total.iter_mut().enumerate() {
            for (x, v) in row.iter_mut().enumerate() {
                *v += metric.get(i, x) * weight;
            }
        }
    };
    if rng.random_bool(0.8) {
        let mut base = Metric::from_fn(n, m, |_, _| int(0)).expect("shape is valid");
        for i in 0..n {
            let mut values: Vec<i64> = (0..m).map(|_| rng.random_range(10..=30)).collect();
            values.sort_unstable();
            for (p, &x) in instance.ranking(i).iter().enumerate() {
                base.set(i, x, ratio(values[p], 10)).expect("in range");
            }
        }
        add(&base, &int(rng.random_range(1..=4)));
    }
    for _ in 0..rng.random_range(1..=3) {
        let mut seeds = Vec::new();
        for i in 0..n {
            if rng.random_bool(0.6) {
                let depth = rng.random_range(0..m.min(3));
                seeds.push((i, instance.ranking(i)[depth]));
            }
        }
        let zero = zero_closure(instance, &seeds);
        add(&threshold_metric(&zero), &int(rng.random_range(0..=6)));
    }
    Metric::new(total).expect("nonnegative combination")
}
