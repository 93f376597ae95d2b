use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Instance;
use crate::rational::{self, Exact, Rational};

/// Agent-to-alternative distances `d(i, x)`, exact and nonnegative. Distances
/// between two agents or two alternatives are never needed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Exact>>", into = "Vec<Vec<Exact>>")]
pub struct Metric {
    n: usize,
    m: usize,
    dist: Vec<Rational>,
}

impl Metric {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if n == 0 || m == 0 {
            return Err(Error::Validation("metric table is empty".into()));
        }
        let mut dist = Vec::with_capacity(n * m);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != m {
                return Err(Error::Validation(format!(
                    "metric row {i} has {} entries, expected {m}",
                    row.len()
                )));
            }
            for (x, value) in row.into_iter().enumerate() {
                if !rational::is_nonnegative(&value) {
                    return Err(Error::Validation(format!(
                        "negative distance d({i},{x}) = {}",
                        rational::format(&value)
                    )));
                }
                dist.push(value);
            }
        }
        Ok(Metric { n, m, dist })
    }

    pub fn from_fn(
        n: usize,
        m: usize,
        mut f: impl FnMut(usize, usize) -> Rational,
    ) -> Result<Self> {
        Metric::new((0..n).map(|i| (0..m).map(|x| f(i, x)).collect()).collect())
    }

    /// Euclidean distances of a 1-D embedding.
    pub fn from_line(agents: &[Rational], alternatives: &[Rational]) -> Result<Self> {
        Metric::from_fn(agents.len(), alternatives.len(), |i, x| {
            let diff = &agents[i] - &alternatives[x];
            if diff < Rational::zero() {
                -diff
            } else {
                diff
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, agent: usize, alternative: usize) -> &Rational {
        &self.dist[agent * self.m + alternative]
    }

    pub fn set(&mut self, agent: usize, alternative: usize, value: Rational) -> Result<()> {
        if !rational::is_nonnegative(&value) {
            return Err(Error::Validation("distances must be nonnegative".into()));
        }
        self.dist[agent * self.m + alternative] = value;
        Ok(())
    }

    pub fn row(&self, agent: usize) -> &[Rational] {
        &self.dist[agent * self.m..(agent + 1) * self.m]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.dist.chunks(self.m).map(<[Rational]>::to_vec).collect()
    }

    /// Nonnegative combination `self * a + other * b`.
    pub fn combine(&self, a: &Rational, other: &Metric, b: &Rational) -> Result<Metric> {
        if self.n != other.n || self.m != other.m {
            return Err(Error::Validation("metric shapes differ".into()));
        }
        let dist = self
            .dist
            .iter()
            .zip(&other.dist)
            .map(|(x, y)| x * a + y * b)
            .collect();
        let out = Metric {
            n: self.n,
            m: self.m,
            dist,
        };
        if out.dist.iter().any(|v| !rational::is_nonnegative(v)) {
            return Err(Error::Validation(
                "combination produced a negative distance".into(),
            ));
        }
        Ok(out)
    }

    /// Rankings induced by the distances; equal distances are broken by
    /// ascending alternative id.
    pub fn induced_rankings(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| {
                let row = self.row(i);
                let mut order: Vec<usize> = (0..self.m).collect();
                order.sort_by(|&x, &y| row[x].cmp(&row[y]).then(x.cmp(&y)));
                order
            })
            .collect()
    }
}

impl TryFrom<Vec<Vec<Exact>>> for Metric {
    type Error = Error;

    fn try_from(rows: Vec<Vec<Exact>>) -> Result<Self> {
        Metric::new(
            rows.into_iter()
                .map(|r| r.into_iter().map(|e| e.0).collect())
                .collect(),
        )
    }
}

impl From<Metric> for Vec<Vec<Exact>> {
    fn from(metric: Metric) -> Self {
        metric
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(Exact).collect())
            .collect()
    }
}

/// First reason a metric is not a valid, consistent pseudometric for an
/// instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    Shape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// Agent ranks `better` above `worse` but is strictly closer to `worse`.
    Order {
        agent: usize,
        better: usize,
        worse: usize,
    },
    /// `d(i,x) > d(i,y) + d(j,y) + d(j,x)`.
    Triangle {
        i: usize,
        j: usize,
        x: usize,
        y: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { expected, found } => write!(
                f,
                "metric is {}x{}, instance needs {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            Violation::Order {
                agent,
                better,
                worse,
            } => write!(
                f,
                "agent {agent} ranks {better} above {worse} but is strictly closer to {worse}"
            ),
            Violation::Triangle { i, j, x, y } => {
                write!(f, "d({i},{x}) > d({i},{y}) + d({j},{y}) + d({j},{x})")
            }
        }
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Validation(v.to_string())
    }
}

/// Checks that `metric` induces every ranking of `instance` (ties allowed)
/// and satisfies `d(i,x) <= d(i,y) + d(j,y) + d(j,x)` for all agents `i, j`
/// and alternatives `x, y`.
///
/// The quadrilateral check runs in `O(n^2 m)`: for a fixed pair of agents it
/// suffices to compare `max_x d(i,x) - d(j,x)` against `min_y d(i,y) + d(j,y)`.
pub fn check_consistency(instance: &Instance, metric: &Metric) -> Result<(), Violation> {
    let (n, m) = (instance.n(), instance.m());
    if metric.n() != n || metric.m() != m {
        return Err(Violation::Shape {
            expected: (n, m),
            found: (metric.n(), metric.m()),
        });
    }
    for agent in 0..n {
        let ranking = instance.ranking(agent);
        for pair in ranking.windows(2) {
            if metric.get(agent, pair[0]) > metric.get(agent, pair[1]) {
                return Err(Violation::Order {
                    agent,
                    better: pair[0],
                    worse: pair[1],
                });
            }
        }
    }
    match scaled_rows(metric) {
        Some(rows) => quadrilateral(n, m, |i| rows[i].as_slice()),
        None => quadrilateral(n, m, |i| metric.row(i)),
    }
    .map_or(Ok(()), |(i, j, x, y)| {
        Err(Violation::Triangle { i, j, x, y })
    })
}

/// First `(i, j, x, y)` with `d(i,x) - d(j,x) > d(i,y) + d(j,y)`.
fn quadrilateral<'a, T>(
    n: usize,
    m: usize,
    row: impl Fn(usize) -> &'a [T],
) -> Option<(usize, usize, usize, usize)>
where
    T: 'a + Ord,
    for<'b> &'b T: std::ops::Add<&'b T, Output = T> + std::ops::Sub<&'b T, Output = T>,
{
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (ri, rj) = (row(i), row(j));
            let mut x_best = 0;
            let mut gap = &ri[0] - &rj[0];
            let mut y_best = 0;
            let mut via = &ri[0] + &rj[0];
            for z in 1..m {
                let g = &ri[z] - &rj[z];
                if g > gap {
                    gap = g;
                    x_best = z;
                }
                let v = &ri[z] + &rj[z];
                if v < via {
                    via = v;
                    y_best = z;
                }
            }
            if gap > via {
                return Some((i, j, x_best, y_best));
            }
        }
    }
    None
}

/// All distances times their common denominator, when every product fits
/// comfortably in an `i64`.
fn scaled_rows(metric: &Metric) -> Option<Vec<Vec<i64>>> {
    const LIMIT: i64 = 1 << 60;
    let mut lcm = BigInt::one();
    for v in &metric.dist {
        lcm = lcm.lcm(v.denom());
    }
    let scale = lcm.to_i64().filter(|&l| l < LIMIT)?;
    metric
        .dist
        .chunks(metric.m)
        .map(|row| {
            row.iter()
                .map(|v| {
                    let scaled = (v.numer() * (scale / v.denom().to_i64()?)).to_i64()?;
                    (scaled.abs() < LIMIT / 4).then_some(scaled)
                })
                .collect()
        })
        .collect()
}
