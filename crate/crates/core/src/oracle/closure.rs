//! Combinatorial test for unbounded distortion.
//!
//! A consistent metric's zero set is closed under two rules: if `d(i,x) = 0`
//! then `d(i,y) = 0` for every `y` that `i` ranks above `x`, and if
//! `d(i,y) = d(j,y) = d(j,x) = 0` then `d(i,x) = 0`. Conversely, every closed
//! set is the zero set of a consistent 0/1 metric. So distortion for a pair
//! `(W, O)` is unbounded exactly when closing `{(i, pivot_i(O))}` leaves some
//! `(i, pivot_i(W))` outside.

use crate::model::{pivots, Committee, Instance, Metric};
use crate::rational::int;

/// Smallest closed set containing `seeds`, as an `n x m` table.
pub fn zero_closure(instance: &Instance, seeds: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let (n, m) = (instance.n(), instance.m());
    let mut zero = vec![vec![false; m]; n];
    for &(i, x) in seeds {
        zero[i][x] = true;
    }
    loop {
        let mut changed = false;
        for (i, row) in zero.iter_mut().enumerate() {
            let ranking = instance.ranking(i);
            if let Some(last) = ranking.iter().rposition(|&x| row[x]) {
                for &x in &ranking[..last] {
                    changed |= !row[x];
                    row[x] = true;
                }
            }
        }
        // Agents 0..n and alternatives n..n+m; every component with both
        // kinds of vertex becomes complete bipartite.
        let mut parent: Vec<usize> = (0..n + m).collect();
        fn find(parent: &mut [usize], v: usize) -> usize {
            let mut root = v;
            while parent[root] != root {
                root = parent[root];
            }
            let mut v = v;
            while parent[v] != root {
                let next = parent[v];
                parent[v] = root;
                v = next;
            }
            root
        }
        for i in 0..n {
            for x in 0..m {
                if zero[i][x] {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, n + x));
                    parent[a] = b;
                }
            }
        }
        for i in 0..n {
            for x in 0..m {
                if !zero[i][x] && find(&mut parent, i) == find(&mut parent, n + x) {
                    zero[i][x] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return zero;
        }
    }
}

/// The 0/1 metric that is zero exactly on `zero`.
pub fn threshold_metric(zero: &[Vec<bool>]) -> Metric {
    let m = zero.first().map_or(0, Vec::len);
    Metric::from_fn(
        zero.len(),
        m,
        |i, x| if zero[i][x] { int(0) } else { int(1) },
    )
    .expect("0/1 tables are valid metrics")
}

/// A consistent metric with `SC(O) = 0` and positive cost for some committee
/// of `support`, if one exists.
pub fn unbounded_witness(
    instance: &Instance,
    support: &[Committee],
    optimum: &Committee,
) -> Option<Metric> {
    let seeds: Vec<(usize, usize)> = pivots(instance, optimum).into_iter().enumerate().collect();
    let zero = zero_closure(instance, &seeds);
    let escapes = support.iter().any(|w| {
        pivots(instance, w)
            .into_iter()
            .enumerate()
            .any(|(i, x)| !zero[i][x])
    });
    escapes.then(|| threshold_metric(&zero))
}
