//! Worst-case distortion of a fixed outcome over all metrics consistent with
//! a profile.
//!
//! Under a consistent metric every q-cost is a single distance variable
//! `d(i, pivot_i(C))`, so for a pinned optimum `O` the worst case is a linear
//! program over the `n * m` distances. Two programs are solved per `O`:
//!
//! * unboundedness: maximize `SC(W)` subject to `SC(O) <= 0`, `SC(W) <= 1`
//!   and the metric rows. Value 1 means `SC(W)` can be positive while the
//!   optimum costs nothing.
//! * ratio: maximize `SC(W)` subject to `SC(O) <= 1`, `SC(O) <= SC(C)` for
//!   every committee `C`, and the metric rows. The all-ones metric makes
//!   every committee optimal, so the value is at least 1 and the bound on
//!   `SC(O)` is tight at the optimum.
//!
//! Only committees whose pivot vector is minimal under rank-wise dominance
//! matter, both as optimality rows and as candidate optima: a dominating
//! committee is never worse under any consistent metric.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{
    all_committees, binomial, brute_force_optimum, check_consistency, pivots, Committee, CostModel,
    Instance, Metric,
};
use crate::oracle::lp::{audit, lp_solve, Constraint, Family, LpOutcome, LpProblem, Relation};
use crate::rational::{self, int, Rational};
use crate::rules::Selection;

/// Default cap on `C(m, k)` for the committee enumeration behind the
/// optimality rows.
pub const ORACLE_CAP: u128 = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    pub cap: u128,
    /// Solve the unboundedness program before the ratio program. When off,
    /// unboundedness is read from an improving ray of the ratio program.
    pub phase_one: bool,
    /// When the cap is exceeded in [`worst_case_ratio`], drop the optimality
    /// rows and report an upper bound instead of failing.
    pub relax_on_cap: bool,
    /// Re-check every LP certificate.
    pub audit: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            cap: ORACLE_CAP,
            phase_one: true,
            relax_on_cap: false,
            audit: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ratio {
    Finite(Rational),
    Unbounded,
}

impl Ratio {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Ratio::Finite(r) => Some(r),
            Ratio::Unbounded => None,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, Ratio::Unbounded)
    }

    /// Whether the ratio is at most `bound`.
    pub fn at_most(&self, bound: &Rational) -> bool {
        self.finite().is_some_and(|r| r <= bound)
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Ratio::Finite(a), Ratio::Finite(b)) => a.cmp(b),
            (Ratio::Finite(_), Ratio::Unbounded) => Ordering::Less,
            (Ratio::Unbounded, Ratio::Finite(_)) => Ordering::Greater,
            (Ratio::Unbounded, Ratio::Unbounded) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ratio::Finite(r) => f.write_str(&rational::format(r)),
            Ratio::Unbounded => f.write_str("unbounded"),
        }
    }
}

impl std::str::FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "unbounded" {
            Ok(Ratio::Unbounded)
        } else {
            rational::parse(s).map(Ratio::Finite)
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistortionReport {
    pub ratio: Ratio,
    /// A consistent metric realizing `ratio` with `optimum` optimal, or one
    /// under which `optimum` costs 0 and the outcome costs more.
    pub witness: Metric,
    pub optimum: Committee,
    /// Rows with a nonzero multiplier in the final certificate, by family.
    pub active: BTreeMap<Family, usize>,
    /// Optimality rows were dropped; `ratio` is only an upper bound.
    #[serde(default)]
    pub relaxed: bool,
    pub notes: Vec<String>,
}

impl DistortionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// The LP pieces shared by every `(W, O)` pair of one instance.
struct Formulation<'a> {
    instance: &'a Instance,
    metric_rows: Vec<Constraint>,
    /// Committees with minimal pivot vectors (first per vector), canonical
    /// order, with their pivots. `None` when enumeration was skipped.
    candidates: Option<Vec<(Committee, Vec<usize>)>>,
}

fn var(instance: &Instance, agent: usize, alternative: usize) -> usize {
    agent * instance.m() + alternative
}

impl<'a> Formulation<'a> {
    fn new(instance: &'a Instance, cap: u128, enumerate: bool) -> Result<Self> {
        let candidates = if enumerate {
            Some(minimal_committees(instance, cap)?)
        } else {
            None
        };
        Ok(Formulation {
            instance,
            metric_rows: metric_rows(instance),
            candidates,
        })
    }

    fn cost_terms(
        &self,
        pivot_alternatives: &[usize],
        weight: &Rational,
    ) -> Vec<(usize, Rational)> {
        pivot_alternatives
            .iter()
            .enumerate()
            .map(|(i, &x)| (var(self.instance, i, x), weight.clone()))
            .collect()
    }

    fn objective(&self, support: &[(Committee, Vec<usize>, Rational)]) -> Vec<(usize, Rational)> {
        let mut merged: BTreeMap<usize, Rational> = BTreeMap::new();
        for (_, piv, p) in support {
            for (v, c) in self.cost_terms(piv, p) {
                *merged.entry(v).or_insert_with(Rational::zero) += c;
            }
        }
        merged.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn problem(&self) -> LpProblem {
        let mut lp = LpProblem::new(self.instance.n() * self.instance.m());
        lp.constraints = self.metric_rows.clone();
        lp
    }

    fn unboundedness_program(
        &self,
        objective: &[(usize, Rational)],
        optimum: &[usize],
    ) -> LpProblem {
        let mut lp = self.problem();
        lp.add(
            self.cost_terms(optimum, &int(1)),
            Relation::Le,
            int(0),
            Family::Normalization,
        );
        lp.add(objective.to_vec(), Relation::Le, int(1), Family::Target);
        lp.maximize(objective.to_vec());
        lp
    }

    fn ratio_program(&self, objective: &[(usize, Rational)], optimum: &[usize]) -> LpProblem {
        let mut lp = self.problem();
        let o_terms = self.cost_terms(optimum, &int(1));
        for (_, other) in self.candidates.iter().flatten() {
            if other == optimum {
                continue;
            }
            let mut row: BTreeMap<usize, Rational> = o_terms.iter().cloned().collect();
            for (v, c) in self.cost_terms(other, &int(1)) {
                *row.entry(v).or_insert_with(Rational::zero) -= c;
            }
            let row: Vec<(usize, Rational)> =
                row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            lp.add(row, Relation::Le, int(0), Family::Optimality);
        }
        lp.add(o_terms, Relation::Le, int(1), Family::Normalization);
        lp.maximize(objective.to_vec());
        lp
    }
}

/// Consistency rows along every ranking plus the triangle rows
/// `d(i,x) <= d(i,y) + d(j,y) + d(j,x)` that are not implied by others: only
/// `y` ranked above `x` by `i` matter, and among those only the ones not
/// beaten by another such `y` in both `i`'s and `j`'s rankings.
fn metric_rows(instance: &Instance) -> Vec<Constraint> {
    let (n, m) = (instance.n(), instance.m());
    let mut rows = Vec::new();
    for i in 0..n {
        for pair in instance.ranking(i).windows(2) {
            rows.push(Constraint {
                coeffs: vec![
                    (var(instance, i, pair[0]), int(1)),
                    (var(instance, i, pair[1]), int(-1)),
                ],
                relation: Relation::Le,
                rhs: int(0),
                family: Family::Consistency,
            });
        }
    }
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let mut records: Vec<usize> = Vec::new();
            let mut best_for_j = usize::MAX;
            for &x in instance.ranking(i) {
                for &y in &records {
                    rows.push(Constraint {
                        coeffs: vec![
                            (var(instance, i, x), int(1)),
                            (var(instance, i, y), int(-1)),
                            (var(instance, j, y), int(-1)),
                            (var(instance, j, x), int(-1)),
                        ],
                        relation: Relation::Le,
                        rhs: int(0),
                        family: Family::Triangle,
                    });
                }
                if instance.position(j, x) < best_for_j {
                    best_for_j = instance.position(j, x);
                    records.push(x);
                }
            }
        }
    }
    debug_assert!(rows
        .iter()
        .all(|r| r.coeffs.iter().all(|(v, _)| *v < n * m)));
    rows
}

/// Committees whose pivot-rank vector is not weakly dominated by a different
/// vector, one committee (the first in canonical order) per vector.
pub fn minimal_committees(instance: &Instance, cap: u128) -> Result<Vec<(Committee, Vec<usize>)>> {
    let mut by_vector: BTreeMap<Vec<usize>, Committee> = BTreeMap::new();
    for c in all_committees(instance.m(), instance.k(), cap)? {
        let ranks: Vec<usize> = pivots(instance, &c)
            .into_iter()
            .enumerate()
            .map(|(i, x)| instance.position(i, x))
            .collect();
        by_vector.entry(ranks).or_insert(c);
    }
    let mut vectors: Vec<(Vec<usize>, Committee)> = by_vector.into_iter().collect();
    vectors.sort_by_key(|(v, _)| v.iter().sum::<usize>());
    let mut kept: Vec<(Vec<usize>, Committee)> = Vec::new();
    for (v, c) in vectors {
        let dominated = kept
            .iter()
            .any(|(u, _)| u.iter().zip(&v).all(|(a, b)| a <= b));
        if !dominated {
            kept.push((v, c));
        }
    }
    let mut out: Vec<(Committee, Vec<usize>)> = kept
        .into_iter()
        .map(|(_, c)| {
            let piv = pivots(instance, &c);
            (c, piv)
        })
        .collect();
    out.sort();
    Ok(out)
}

fn solve(problem: &LpProblem, options: &OracleOptions) -> Result<LpOutcome> {
    let outcome = lp_solve(problem);
    if options.audit {
        audit(problem, &outcome)
            .map_err(|e| Error::Internal(format!("LP certificate rejected: {e}")))?;
    }
    Ok(outcome)
}

fn active_families(problem: &LpProblem, multipliers: &[Rational]) -> BTreeMap<Family, usize> {
    let mut active = BTreeMap::new();
    for (c, y) in problem.constraints.iter().zip(multipliers) {
        if !y.is_zero() {
            *active.entry(c.family).or_insert(0) += 1;
        }
    }
    active
}

fn support_of(
    instance: &Instance,
    selection: &Selection,
) -> Result<Vec<(Committee, Vec<usize>, Rational)>> {
    selection.validate(instance)?;
    Ok(selection
        .support()
        .into_iter()
        .map(|(c, p)| {
            let piv = pivots(instance, &c);
            (c, piv, p)
        })
        .collect())
}

/// Realized ratio of `selection` against `optimum` under `metric`.
pub fn realized_ratio(
    instance: &Instance,
    metric: &Metric,
    selection: &Selection,
    optimum: &Committee,
) -> Result<Ratio> {
    let model = CostModel::new(instance, metric)?;
    let outcome_cost = model.expected_cost(&selection.support());
    let optimum_cost = model.social_cost(optimum);
    Ok(if optimum_cost.is_zero() {
        if outcome_cost.is_zero() {
            Ratio::Finite(Rational::one())
        } else {
            Ratio::Unbounded
        }
    } else {
        Ratio::Finite(outcome_cost / optimum_cost)
    })
}

fn witness_metric(instance: &Instance, values: &[Rational]) -> Result<Metric> {
    Metric::from_fn(instance.n(), instance.m(), |i, x| {
        values[var(instance, i, x)].clone()
    })
}

struct PairContext<'f, 'a> {
    formulation: &'f Formulation<'a>,
    selection: &'f Selection,
    objective: Vec<(usize, Rational)>,
    options: &'f OracleOptions,
}

impl PairContext<'_, '_> {
    fn instance(&self) -> &Instance {
        self.formulation.instance
    }

    fn report(
        &self,
        ratio: Ratio,
        values: &[Rational],
        optimum: &Committee,
        active: BTreeMap<Family, usize>,
        notes: Vec<String>,
    ) -> Result<DistortionReport> {
        let witness = witness_metric(self.instance(), values)?;
        let realized = realized_ratio(self.instance(), &witness, self.selection, optimum)?;
        if realized != ratio {
            return Err(Error::Internal(format!(
                "witness realizes {realized}, program reported {ratio}"
            )));
        }
        Ok(DistortionReport {
            ratio,
            witness,
            optimum: optimum.clone(),
            active,
            relaxed: self.formulation.candidates.is_none(),
            notes,
        })
    }

    /// Unboundedness program for one optimum; `Some` when unbounded.
    fn unbounded(
        &self,
        optimum: &Committee,
        optimum_pivots: &[usize],
    ) -> Result<Option<DistortionReport>> {
        let lp = self
            .formulation
            .unboundedness_program(&self.objective, optimum_pivots);
        match solve(&lp, self.options)? {
            LpOutcome::Optimal(opt) if opt.value.is_one() => {
                let active = active_families(&lp, &opt.dual);
                let notes = vec!["optimum cost forced to 0 while the outcome costs 1".to_string()];
                self.report(Ratio::Unbounded, &opt.primal, optimum, active, notes)
                    .map(Some)
            }
            LpOutcome::Optimal(opt) if opt.value.is_zero() => Ok(None),
            other => Err(Error::Internal(format!(
                "unboundedness program returned {other:?}"
            ))),
        }
    }

    fn ratio(&self, optimum: &Committee, optimum_pivots: &[usize]) -> Result<DistortionReport> {
        let lp = self
            .formulation
            .ratio_program(&self.objective, optimum_pivots);
        match solve(&lp, self.options)? {
            LpOutcome::Optimal(opt) => {
                let mut notes = vec!["optimum cost normalized to 1".to_string()];
                if self.formulation.candidates.is_none() {
                    notes.push(
                        "optimality rows dropped after the committee cap; ratio is an upper bound"
                            .into(),
                    );
                }
                let active = active_families(&lp, &opt.dual);
                self.report(
                    Ratio::Finite(opt.value),
                    &opt.primal,
                    optimum,
                    active,
                    notes,
                )
            }
            LpOutcome::Unbounded { direction, .. } => {
                let notes =
                    vec!["ratio program unbounded; witness is the improving ray".to_string()];
                self.report(
                    Ratio::Unbounded,
                    &direction,
                    optimum,
                    BTreeMap::new(),
                    notes,
                )
            }
            LpOutcome::Infeasible { .. } => Err(Error::Internal(
                "ratio program infeasible at the origin".into(),
            )),
        }
    }

    fn evaluate(&self, optimum: &Committee, optimum_pivots: &[usize]) -> Result<DistortionReport> {
        if self.options.phase_one {
            if let Some(report) = self.unbounded(optimum, optimum_pivots)? {
                return Ok(report);
            }
        }
        self.ratio(optimum, optimum_pivots)
    }
}

/// Worst ratio `SC(W) / SC(O)` over consistent metrics under which `O` is
/// optimal.
pub fn worst_case_ratio(
    instance: &Instance,
    outcome: &Committee,
    optimum: &Committee,
    options: &OracleOptions,
) -> Result<DistortionReport> {
    selection_ratio(
        instance,
        &Selection::Committee(outcome.clone()),
        optimum,
        options,
    )
}

/// [`worst_case_ratio`] for a committee or a distribution.
pub fn selection_ratio(
    instance: &Instance,
    selection: &Selection,
    optimum: &Committee,
    options: &OracleOptions,
) -> Result<DistortionReport> {
    instance.check_committee(optimum)?;
    let support = support_of(instance, selection)?;
    let within_cap = binomial(instance.m(), instance.k()) <= options.cap;
    if !within_cap && !options.relax_on_cap {
        return Err(Error::Cap {
            what: format!(
                "C({}, {}) committees for optimality rows",
                instance.m(),
                instance.k()
            ),
            needed: binomial(instance.m(), instance.k()),
            cap: options.cap,
        });
    }
    let formulation = Formulation::new(instance, options.cap, within_cap)?;
    let context = PairContext {
        objective: formulation.objective(&support),
        formulation: &formulation,
        selection,
        options,
    };
    context.evaluate(optimum, &pivots(instance, optimum))
}

/// Worst-case distortion of `selection` over every consistent metric: the
/// maximum over candidate optima of the pinned ratio, with unboundedness
/// absorbing. The first optimum in canonical order wins ties.
pub fn instance_distortion(
    instance: &Instance,
    selection: &Selection,
    options: &OracleOptions,
) -> Result<DistortionReport> {
    let support = support_of(instance, selection)?;
    let formulation = Formulation::new(instance, options.cap, true)?;
    let context = PairContext {
        objective: formulation.objective(&support),
        formulation: &formulation,
        selection,
        options,
    };
    let candidates = formulation.candidates.as_deref().unwrap_or_default();
    if options.phase_one {
        for (optimum, piv) in candidates {
            if let Some(report) = context.unbounded(optimum, piv)? {
                return Ok(report);
            }
        }
    }
    let mut best: Option<DistortionReport> = None;
    for (optimum, piv) in candidates {
        let report = context.ratio(optimum, piv)?;
        if report.ratio.is_unbounded() {
            return Ok(report);
        }
        if best.as_ref().is_none_or(|b| report.ratio > b.ratio) {
            best = Some(report);
        }
    }
    best.ok_or_else(|| Error::Internal("no candidate optimum".into()))
}

/// Checks a report's invariants: the witness is consistent, the pinned
/// optimum is optimal under it (unless relaxed), and it realizes the ratio.
pub fn verify_report(
    instance: &Instance,
    selection: &Selection,
    report: &DistortionReport,
    cap: u128,
) -> Result<()> {
    check_consistency(instance, &report.witness)?;
    if !report.relaxed {
        let model = CostModel::new(instance, &report.witness)?;
        let (_, best) = brute_force_optimum(instance, &report.witness, cap)?;
        if model.social_cost(&report.optimum) != best {
            return Err(Error::Validation(format!(
                "pinned optimum {} costs {} but the minimum is {}",
                report.optimum,
                model.social_cost(&report.optimum),
                best
            )));
        }
    }
    let realized = realized_ratio(instance, &report.witness, selection, &report.optimum)?;
    if realized != report.ratio {
        return Err(Error::Validation(format!(
            "witness realizes {realized}, report says {}",
            report.ratio
        )));
    }
    Ok(())
}
