//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use committee_distortion::generators::{
    canonicalize, gen_appendix_family, gen_kcover_family, gen_linear_family, gen_unbounded_family,
    linear_blocks, KCoverInput,
};
use committee_distortion::harness::all_profiles;
use committee_distortion::model::{
    all_committees, brute_force_optimum, pivots, top_q, Committee, CostModel, Instance, Metric,
    ENUMERATION_CAP,
};
use committee_distortion::oracle::{
    instance_distortion, random_instance, rng_from_seed, sample_metrics, verify_report,
    OracleOptions, Ratio, Strategy,
};
use committee_distortion::rational::{int, ratio, Rational};
use committee_distortion::rules::{
    complete_vector, completion_candidates, constant_n_rule, construct_s,
    exhaustive_committee_rule, polar_opposites, randomized_dictatorship, top_k_committee,
    top_k_reduced_rule, RuleOutcome, Selection,
};
use itertools::Itertools;
use num_traits::{ToPrimitive, Zero};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// q-th smallest distance from `agent` to a member of `c`. Sorting distances
/// rather than ranks keeps this independent of the library's pivot route.
fn cost(inst: &Instance, d: &Metric, agent: usize, c: &Committee) -> Rational {
    let mut ds: Vec<&Rational> = c.iter().map(|x| d.get(agent, x)).collect();
    ds.sort();
    ds[inst.q() - 1].clone()
}

fn sc(inst: &Instance, d: &Metric, c: &Committee) -> Rational {
    (0..inst.n())
        .map(|i| cost(inst, d, i, c))
        .fold(Rational::zero(), |a, b| a + b)
}

fn optimum_cost(inst: &Instance, d: &Metric) -> Rational {
    all_committees(inst.m(), inst.k(), ENUMERATION_CAP)
        .unwrap()
        .iter()
        .map(|c| sc(inst, d, c))
        .min()
        .unwrap()
}

fn metrics(inst: &Instance, count: usize, seed: u64) -> Result<Vec<Metric>, String> {
    sample_metrics(inst, count, seed, Strategy::Mixed).map_err(err)
}

fn distortion(inst: &Instance, outcome: &RuleOutcome) -> Result<Ratio, String> {
    let report =
        instance_distortion(inst, &outcome.selection, &OracleOptions::default()).map_err(err)?;
    verify_report(inst, &outcome.selection, &report, ENUMERATION_CAP).map_err(err)?;
    Ok(report.ratio)
}

/// The criterion 6 profile sets: all n=2, m=3, k=2, q=2 profiles and 100
/// random n=3, m=4, k=3, q=2 ones.
fn desk_profiles() -> (Vec<Instance>, Vec<Instance>) {
    let small = all_profiles(2, 3, 2, 2, ENUMERATION_CAP).unwrap();
    let mut rng = rng_from_seed(606);
    let random = (0..100)
        .map(|_| random_instance(&mut rng, 3, 4, 3, 2).unwrap())
        .collect();
    (small, random)
}

fn ac1() -> Check {
    let fam = gen_unbounded_family(8, 2).map_err(err)?;
    let inst = &fam.instance;
    let all = all_committees(inst.m(), inst.k(), ENUMERATION_CAP).map_err(err)?;
    ensure!(all.len() == 45, "expected 45 committees, got {}", all.len());
    for c in &all {
        let sel = Selection::Committee(c.clone());
        let report = instance_distortion(inst, &sel, &OracleOptions::default()).map_err(err)?;
        ensure!(
            report.ratio.is_unbounded(),
            "{c} has distortion {}",
            report.ratio
        );
        verify_report(inst, &sel, &report, ENUMERATION_CAP).map_err(err)?;
    }
    Ok("all 45 committees of the k=8, q=2 fixture are unbounded".into())
}

fn ac2() -> Check {
    for x in 1..=3usize {
        let fam = gen_linear_family(4, 2, x).map_err(err)?;
        let inst = &fam.instance;
        let [_, _, zs] = linear_blocks(&fam).map_err(err)?;
        let (case1, case2) = (fam.metric("case1").unwrap(), fam.metric("case2").unwrap());
        let (_, best2) = brute_force_optimum(inst, case2, ENUMERATION_CAP).map_err(err)?;
        ensure!(
            best2 == int(1) && optimum_cost(inst, case2) == int(1),
            "x={x}: case2 optimum is {best2}"
        );
        ensure!(
            optimum_cost(inst, case1).is_zero(),
            "x={x}: case1 optimum is not 0"
        );
        for c in all_committees(inst.m(), inst.k(), ENUMERATION_CAP).map_err(err)? {
            if zs.iter().all(|&z| c.contains(z)) {
                let cost = sc(inst, case2, &c);
                ensure!(cost >= int(x as i64), "x={x}: {c} costs {cost} under case2");
            } else {
                ensure!(
                    sc(inst, case1, &c) > Rational::zero(),
                    "x={x}: {c} is free under case1"
                );
                let sel = Selection::Committee(c.clone());
                let r = instance_distortion(inst, &sel, &OracleOptions::default()).map_err(err)?;
                ensure!(
                    r.ratio.is_unbounded(),
                    "x={x}: oracle gives {} for {c}",
                    r.ratio
                );
            }
        }
    }
    Ok("x=1,2,3: Z-keeping committees cost >= x against 1, others unbounded".into())
}

fn linear_pairs(m: usize) -> Vec<(usize, usize)> {
    (1..m)
        .flat_map(|k| (1..=k).map(move |q| (k, q)))
        .filter(|&(k, q)| 3 * q > k && 2 * q <= k)
        .collect()
}

fn ac3() -> Check {
    let mut rng = rng_from_seed(303);
    let mut worst = int(0);
    for t in 0..200u64 {
        let n = rng.random_range(1..=5);
        let m = rng.random_range(3..=7);
        let &(k, q) = linear_pairs(m).choose(&mut rng).unwrap();
        let inst = random_instance(&mut rng, n, m, k, q).map_err(err)?;
        let outcome = polar_opposites(&inst).map_err(err)?;
        let bound = int(4 * n as i64 + 1);
        let r = distortion(&inst, &outcome)?;
        ensure!(
            r.at_most(&bound),
            "instance {t}: distortion {r} exceeds 4n+1 = {bound}"
        );
        worst = worst.max(r.finite().unwrap() / &bound);
        let w = outcome.selection.committee().unwrap();
        for d in metrics(&inst, 50, t)? {
            let (o, opt) = brute_force_optimum(&inst, &d, ENUMERATION_CAP).map_err(err)?;
            ensure!(
                sc(&inst, &d, &o) == opt,
                "instance {t}: brute force disagrees with direct cost"
            );
            for l in 0..n {
                let (cw, co) = (cost(&inst, &d, l, w), cost(&inst, &d, l, &o));
                ensure!(
                    cw <= co.clone() + int(4) * &opt,
                    "instance {t}, agent {l}: {cw} > {co} + 4*{opt}"
                );
            }
        }
    }
    Ok(format!(
        "200 instances, largest ratio to 4n+1 is {worst}; per-agent bound on 10000 metrics"
    ))
}

fn ac4() -> Check {
    let mut rng = rng_from_seed(404);
    for t in 0..500u64 {
        let n = rng.random_range(1..=6);
        let m = rng.random_range(2..=6);
        let k = rng.random_range(1..m);
        let q = rng.random_range(1..=k);
        let inst = random_instance(&mut rng, n, m, k, q).map_err(err)?;
        let d = metrics(&inst, 1, t)?.remove(0);
        let (o, _) = brute_force_optimum(&inst, &d, ENUMERATION_CAP).map_err(err)?;
        let s = construct_s(&inst, &d, &o).map_err(err)?;
        ensure!(s.len() <= k / q, "pair {t}: |S| = {} > floor(k/q)", s.len());
        let top_o: Vec<Vec<usize>> = (0..n)
            .map(|i| top_q(&inst, i, o.members(), q).unwrap())
            .collect();
        for (a, b) in s.iter().tuple_combinations() {
            ensure!(
                top_o[*a].iter().all(|x| !top_o[*b].contains(x)),
                "pair {t}: S members {a}, {b} overlap in O"
            );
        }
        for i in 0..n {
            let covered = s.iter().any(|&j| {
                top_o[i].iter().any(|x| top_o[j].contains(x))
                    && cost(&inst, &d, j, &o) <= cost(&inst, &d, i, &o)
            });
            ensure!(covered, "pair {t}: agent {i} has no representative in S");
        }
        let all: Vec<usize> = (0..m).collect();
        let union: Vec<usize> = s
            .iter()
            .flat_map(|&j| top_q(&inst, j, &all, q).unwrap())
            .sorted()
            .dedup()
            .collect();
        for c in all_committees(m, k, ENUMERATION_CAP).map_err(err)? {
            if !union.iter().all(|&x| c.contains(x)) {
                continue;
            }
            for i in 0..n {
                let (ci, oi) = (cost(&inst, &d, i, &c), cost(&inst, &d, i, &o));
                ensure!(
                    ci <= int(3) * &oi,
                    "pair {t}: agent {i} pays {ci} > 3*{oi} for {c}"
                );
            }
        }
    }
    Ok("500 pairs: all S clauses and the factor-3 bound hold".into())
}

/// Profiles over `m` alternatives up to relabeling alternatives and
/// permuting agents: agent 0 ranks `0..m` in order and later rankings are
/// non-decreasing in permutation order.
fn canonical_profiles(n: usize, m: usize) -> Vec<Vec<Vec<usize>>> {
    let perms: Vec<Vec<usize>> = (0..m).permutations(m).collect();
    (0..perms.len())
        .combinations_with_replacement(n - 1)
        .map(|idx| {
            std::iter::once((0..m).collect())
                .chain(idx.into_iter().map(|p| perms[p].clone()))
                .collect()
        })
        .collect()
}

fn ac5() -> Check {
    let mut instances = 0usize;
    let mut seed = 0u64;
    for m in 2..=5usize {
        let pairs: Vec<(usize, usize)> = (1..m)
            .flat_map(|k| (1..=k).map(move |q| (k, q)))
            .filter(|&(k, q)| 2 * q > k)
            .collect();
        let committees: Vec<Vec<Committee>> = (0..m)
            .map(|k| all_committees(m, k.max(1), ENUMERATION_CAP).unwrap())
            .collect();
        for n in 1..=3usize {
            for rankings in canonical_profiles(n, m) {
                let base = Instance::new(1, 1, rankings).map_err(err)?;
                seed += 1;
                let ds = metrics(&base, 20, seed)?;
                for &(k, q) in &pairs {
                    let inst = base.with_parameters(k, q).map_err(err)?;
                    instances += 1;
                    for d in &ds {
                        let table: Vec<Vec<Rational>> = (0..n)
                            .map(|i| committees[k].iter().map(|c| cost(&inst, d, i, c)).collect())
                            .collect();
                        // For all X, Y: c_i(X) - c_j(X) <= c_i(Y) + c_j(Y), checked as
                        // max over X against min over Y.
                        for (i, j) in (0..n).cartesian_product(0..n).filter(|(i, j)| i != j) {
                            let lhs = (0..committees[k].len())
                                .map(|x| &table[i][x] - &table[j][x])
                                .max()
                                .unwrap();
                            let rhs = (0..committees[k].len())
                                .map(|y| &table[i][y] + &table[j][y])
                                .min()
                                .unwrap();
                            ensure!(
                                lhs <= rhs,
                                "triangle fails for agents {i}, {j} on {:?} (k={k}, q={q})",
                                inst.rankings()
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{instances} instances (up to symmetry) x 20 metrics, every agent and committee pair"
    ))
}

fn ac6() -> Check {
    let (small, random) = desk_profiles();
    let mut worst = int(0);
    for inst in small.iter().chain(&random) {
        let outcome = exhaustive_committee_rule(inst, ENUMERATION_CAP).map_err(err)?;
        let r = distortion(inst, &outcome)?;
        ensure!(
            r.at_most(&int(3)),
            "distortion {r} on {:?}",
            inst.rankings()
        );
        worst = worst.max(r.finite().unwrap().clone());
    }
    Ok(format!(
        "{} profiles, worst distortion {worst}",
        small.len() + random.len()
    ))
}

fn ac7() -> Check {
    let (small, random) = desk_profiles();
    let mut worst = [int(0), int(0)];
    for (set, inst) in small
        .iter()
        .map(|i| (0, i))
        .chain(random.iter().map(|i| (1, i)))
    {
        let bound = int(3) - ratio(2, inst.n() as i64);
        let r = distortion(inst, &randomized_dictatorship(inst))?;
        ensure!(
            r.at_most(&bound),
            "distortion {r} > {bound} on {:?}",
            inst.rankings()
        );
        worst[set] = worst[set].clone().max(r.finite().unwrap().clone());
    }
    Ok(format!(
        "worst {} (n=2, bound 2) and {} (n=3, bound 7/3)",
        worst[0], worst[1]
    ))
}

fn ac8() -> Check {
    let mut rng = rng_from_seed(808);
    for t in 0..500u64 {
        let n = rng.random_range(1..=6);
        let m = rng.random_range(2..=7);
        let k = rng.random_range(1..m);
        let q = rng.random_range(k / 2 + 1..=k);
        let inst = random_instance(&mut rng, n, m, k, q).map_err(err)?;
        let d = metrics(&inst, 1, t)?.remove(0);
        let best_top = (0..n)
            .map(|i| sc(&inst, &d, &top_k_committee(&inst, i)))
            .min()
            .unwrap();
        let opt = optimum_cost(&inst, &d);
        ensure!(
            best_top <= int(3) * &opt,
            "pair {t}: best top-k committee costs {best_top} > 3*{opt}"
        );
    }
    let (small, random) = desk_profiles();
    let mut worst = int(0);
    for inst in small.iter().chain(&random) {
        let r = distortion(inst, &top_k_reduced_rule(inst).map_err(err)?)?;
        ensure!(
            r.at_most(&int(9)),
            "distortion {r} on {:?}",
            inst.rankings()
        );
        worst = worst.max(r.finite().unwrap().clone());
    }
    Ok(format!(
        "500 pairs within 3x; reduced rule worst distortion {worst} <= 9"
    ))
}

fn is_completion(inst: &Instance, ell: &[usize], c: &Committee) -> bool {
    c.len() == inst.k()
        && ell.iter().enumerate().all(|(i, &l)| {
            c.contains(l)
                && c.iter()
                    .filter(|&x| inst.position(i, x) <= inst.position(i, l))
                    .count()
                    == inst.q()
        })
}

fn ac9() -> Check {
    let mut rng = rng_from_seed(909);
    for t in 0..10u64 {
        let inst = random_instance(&mut rng, 2, 4, 3, 2).map_err(err)?;
        let (p, _) = completion_candidates(&inst, ENUMERATION_CAP).map_err(err)?;
        for (s, d) in metrics(&inst, 10, 900 + t)?.into_iter().enumerate() {
            let (_, opt) = brute_force_optimum(&inst, &d, ENUMERATION_CAP).map_err(err)?;
            let best = p.iter().map(|c| sc(&inst, &d, c)).min().unwrap();
            ensure!(
                best == opt,
                "instance {t}, metric {s}: best of P costs {best}, optimum {opt}"
            );
        }
    }
    let (small, _) = desk_profiles();
    for inst in &small {
        let r = distortion(inst, &constant_n_rule(inst, ENUMERATION_CAP).map_err(err)?)?;
        ensure!(
            r.at_most(&int(3)),
            "distortion {r} on {:?}",
            inst.rankings()
        );
    }
    let mut pairs = 0;
    let mut attempts = 0;
    while pairs < 100 {
        attempts += 1;
        ensure!(
            attempts <= 10_000,
            "only {pairs} distinct completion pairs found"
        );
        let inst = random_instance(&mut rng, 3, 6, 3, 2).map_err(err)?;
        let all = all_committees(6, 3, ENUMERATION_CAP).map_err(err)?;
        let ell = pivots(&inst, all.choose(&mut rng).unwrap());
        let Some(v) = complete_vector(&inst, &ell).map_err(err)? else {
            return Err(format!("no completion for realizable vector {ell:?}"));
        };
        let (a, b) = (v.committee(), v.committee_highest());
        if a == b {
            continue;
        }
        ensure!(
            is_completion(&inst, &ell, &a) && is_completion(&inst, &ell, &b),
            "{a} or {b} does not complete {ell:?}"
        );
        let d = metrics(&inst, 1, attempts)?.remove(0);
        ensure!(
            sc(&inst, &d, &a) == sc(&inst, &d, &b),
            "{a} and {b} complete {ell:?} at different costs"
        );
        pairs += 1;
    }
    Ok("P holds an optimum for 100 metrics; distortion <= 3 on 36 profiles; 100 equal-cost completion pairs".into())
}

fn random_kcover(rng: &mut ChaCha8Rng) -> KCoverInput {
    let universe = rng.random_range(3..=8);
    let q = rng.random_range(1..=3);
    let k_sets = rng.random_range(1..=universe.min(3));
    let mut elements: Vec<usize> = (0..universe).collect();
    elements.shuffle(rng);
    let mut cuts: Vec<usize> = (1..universe)
        .collect::<Vec<_>>()
        .choose_multiple(rng, k_sets - 1)
        .copied()
        .collect();
    cuts.sort_unstable();
    let bounds: Vec<usize> = std::iter::once(0)
        .chain(cuts)
        .chain(std::iter::once(universe))
        .collect();
    let mut sets: Vec<(bool, Vec<usize>)> = bounds
        .windows(2)
        .map(|w| {
            (
                true,
                elements[w[0]..w[1]].iter().copied().sorted().collect(),
            )
        })
        .collect();
    let extra = rng.random_range(1..=8 - q - k_sets);
    for _ in 0..extra {
        let size = rng.random_range(1..=universe);
        let set = (0..universe)
            .collect::<Vec<_>>()
            .choose_multiple(rng, size)
            .copied()
            .sorted()
            .collect();
        sets.push((false, set));
    }
    sets.shuffle(rng);
    KCoverInput {
        universe,
        planted: Some(sets.iter().positions(|(p, _)| *p).collect()),
        sets: sets.into_iter().map(|(_, s)| s).collect(),
        k_sets,
        q,
    }
}

fn ac10() -> Check {
    let mut rng = rng_from_seed(1010);
    for t in 0..50 {
        let input = random_kcover(&mut rng);
        let fam = gen_kcover_family(&input).map_err(err)?;
        let inst = &fam.instance;
        ensure!(inst.m() <= 7, "input {t} has m = {}", inst.m());
        let d = fam.metric("d").unwrap();
        let n = int(inst.n() as i64);
        let (_, opt) = brute_force_optimum(inst, d, ENUMERATION_CAP).map_err(err)?;
        ensure!(
            opt == n && optimum_cost(inst, d) == n,
            "input {t}: optimum {opt}, n = {n}"
        );
        for c in all_committees(inst.m(), inst.k(), ENUMERATION_CAP).map_err(err)? {
            let canon = canonicalize(&fam, &c).map_err(err)?;
            ensure!(
                sc(inst, d, &canon) <= sc(inst, d, &c),
                "input {t}: canonicalizing {c} to {canon} raised SC"
            );
        }
    }
    Ok("50 planted inputs: optimum SC = n; canonicalize never raised SC".into())
}

fn ac11() -> Check {
    for m in [4usize, 20, 200] {
        for seed in 0..100 {
            let fam = gen_appendix_family(m, seed).map_err(err)?;
            let (o, d) = (
                fam.optimum.as_ref().unwrap(),
                fam.designated_metric().unwrap(),
            );
            let direct = sc(&fam.instance, d, o);
            let model = CostModel::new(&fam.instance, d)
                .map_err(err)?
                .social_cost(o);
            ensure!(
                direct == int(m as i64) && model == direct,
                "m={m}, seed {seed}: SC(O) = {direct} / {model}"
            );
        }
    }
    let m = 200;
    let mut rng = rng_from_seed(1111);
    let list: Vec<Committee> = (0..10)
        .map(|_| {
            Committee::new((0..m / 2).map(|p| 2 * p + usize::from(rng.random_bool(0.5)))).unwrap()
        })
        .collect();
    let mut total = Rational::zero();
    for seed in 0..1000 {
        let fam = gen_appendix_family(m, seed).map_err(err)?;
        let model = CostModel::new(&fam.instance, fam.designated_metric().unwrap()).map_err(err)?;
        total += list.iter().map(|c| model.social_cost(c)).min().unwrap() / int(m as i64);
    }
    let mean = (total / int(1000)).to_f64().unwrap();
    ensure!(
        (1.40..=1.50).contains(&mean),
        "mean min-ratio {mean:.4} outside [1.40, 1.50]"
    );
    Ok(format!(
        "SC(O) = m on 300 bundles; mean best-of-10 ratio {mean:.4} over 1000 seeds"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Check); 11] = [
        ("1 trichotomy: unbounded regime fixture", 300, ac1),
        ("2 linear lower-bound fixtures", 300, ac2),
        ("3 polar opposites within 4n+1", 1800, ac3),
        ("4 agent-cover set and factor 3", 600, ac4),
        ("5 q-cost pseudometric", 600, ac5),
        ("6 exhaustive committee reduction within 3", 1800, ac6),
        ("7 random dictatorship within 3-2/n", 1800, ac7),
        ("8 top-k committees within 3 and 9", 1800, ac8),
        ("9 completion candidates", 1800, ac9),
        ("10 K-cover reduction", 600, ac10),
        ("11 appendix family", 1200, ac11),
    ];
    let only: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let id = name.split(' ').next().unwrap();
        if !only.is_empty() && !only.iter().any(|o| o == id) {
            continue;
        }
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > Duration::from_secs(limit) => {
                Err(format!("{detail}; exceeded {limit}s"))
            }
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS {name}: {detail} ({:.1}s)", elapsed.as_secs_f64()),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} ({:.1}s)", elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
