use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{canonicalize, linear_blocks, FamilyMeta, GeneratedFamily};
use crate::model::{
    all_committees, brute_force_optimum, check_consistency, CostModel, Metric, ENUMERATION_CAP,
};
use crate::rational::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
    /// The violating tuple or committee when the check failed.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub family: String,
    pub checks: Vec<Check>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("audit reports always serialize")
    }
}

impl std::fmt::Display for AuditReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skip => "SKIP",
            };
            write!(f, "{tag} {}: {}", c.name, c.detail)?;
            if let Some(w) = &c.witness {
                write!(f, " [{w}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn pass(name: &str, detail: String) -> Check {
    Check {
        name: name.into(),
        status: CheckStatus::Pass,
        detail,
        witness: None,
    }
}

fn fail(name: &str, detail: String, witness: Option<String>) -> Check {
    Check {
        name: name.into(),
        status: CheckStatus::Fail,
        detail,
        witness,
    }
}

fn skip(name: &str, detail: String) -> Check {
    Check {
        name: name.into(),
        status: CheckStatus::Skip,
        detail,
        witness: None,
    }
}

/// Parses a bundle and audits it.
pub fn verify_bundle(text: &str) -> Result<AuditReport> {
    verify_fixture(&GeneratedFamily::from_json(text)?)
}

/// Re-checks a generated family: metric consistency, the recorded optimum
/// against brute force, and the claim its construction is built for.
pub fn verify_fixture(family: &GeneratedFamily) -> Result<AuditReport> {
    let inst = &family.instance;
    let mut checks = Vec::new();
    let mut consistent = true;
    for named in &family.metrics {
        let name = format!("consistency:{}", named.name);
        match check_consistency(inst, &named.metric) {
            Ok(()) => checks.push(pass(&name, "metric agrees with every ranking".into())),
            Err(v) => {
                consistent = false;
                checks.push(fail(
                    &name,
                    "metric contradicts a ranking".into(),
                    Some(v.to_string()),
                ));
            }
        }
    }

    match (&family.optimum, family.designated_metric()) {
        (Some(o), Some(metric)) if consistent => {
            inst.check_committee(o)?;
            checks.push(known_optimum(family, o, metric));
        }
        (Some(_), Some(_)) => checks.push(skip("known-optimum", "metrics are inconsistent".into())),
        (Some(_), None) => {
            return Err(Error::Validation(
                "bundle records an optimum without its metric".into(),
            ));
        }
        (None, _) => checks.push(skip("known-optimum", "no optimum recorded".into())),
    }

    if !consistent {
        checks.push(skip(
            &format!("{}-claim", family.meta.name()),
            "metrics are inconsistent".into(),
        ));
    } else {
        checks.push(match &family.meta {
            FamilyMeta::Unbounded { .. } => unbounded_claim(family),
            FamilyMeta::Linear { x } => linear_claim(family, *x),
            FamilyMeta::Kcover { .. } => kcover_claim(family),
            FamilyMeta::Appendix { .. } => appendix_claim(family),
        });
    }
    Ok(AuditReport {
        family: family.meta.name().into(),
        checks,
    })
}

fn known_optimum(
    family: &GeneratedFamily,
    optimum: &crate::model::Committee,
    metric: &Metric,
) -> Check {
    let name = "known-optimum";
    let model = CostModel::new(&family.instance, metric).expect("consistency checked above");
    let cost = model.social_cost(optimum);
    match brute_force_optimum(&family.instance, metric, ENUMERATION_CAP) {
        Ok((_, best_cost)) if best_cost == cost => {
            pass(name, format!("SC({optimum}) = {cost} is minimal"))
        }
        Ok((best, best_cost)) => fail(
            name,
            format!("SC({optimum}) = {cost} but a cheaper committee exists"),
            Some(format!("{best} costs {best_cost}")),
        ),
        Err(err) => skip(name, err.to_string()),
    }
}

fn models(family: &GeneratedFamily) -> Vec<(&str, CostModel<'_>, Rational)> {
    family
        .metrics
        .iter()
        .filter_map(|nm| {
            let model = CostModel::new(&family.instance, &nm.metric).ok()?;
            let (_, best) =
                brute_force_optimum(&family.instance, &nm.metric, ENUMERATION_CAP).ok()?;
            Some((nm.name.as_str(), model, best))
        })
        .collect()
}

/// Every committee costs something under a metric where the optimum is free.
fn unbounded_claim(family: &GeneratedFamily) -> Check {
    let name = "unbounded-claim";
    let inst = &family.instance;
    let Ok(all) = all_committees(inst.m(), inst.k(), ENUMERATION_CAP) else {
        return skip(name, "too many committees".into());
    };
    let models = models(family);
    let zero = Rational::zero();
    for c in &all {
        let caught = models
            .iter()
            .any(|(_, model, best)| *best == zero && model.social_cost(c) > zero);
        if !caught {
            return fail(
                name,
                "committee keeps a finite ratio under every fixture metric".into(),
                Some(c.to_string()),
            );
        }
    }
    pass(
        name,
        format!(
            "all {} committees cost > 0 under a metric with a free optimum",
            all.len()
        ),
    )
}

/// Keeping all of Z costs at least `x` under case2 (optimum 1); missing part
/// of Z costs something under case1 (optimum 0).
fn linear_claim(family: &GeneratedFamily, x: usize) -> Check {
    let name = "linear-claim";
    let inst = &family.instance;
    let (Some(case1), Some(case2)) = (family.metric("case1"), family.metric("case2")) else {
        return fail(name, "case1 and case2 metrics are required".into(), None);
    };
    let Ok([_, _, zs]) = linear_blocks(family) else {
        return fail(name, "not a linear family".into(), None);
    };
    let (m1, m2) = match (CostModel::new(inst, case1), CostModel::new(inst, case2)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return fail(name, "inconsistent metrics".into(), None),
    };
    let best = |metric| brute_force_optimum(inst, metric, ENUMERATION_CAP).map(|(_, v)| v);
    match (best(case1), best(case2)) {
        (Ok(b1), Ok(b2)) if b1.is_zero() && b2 == int(1) => {}
        (Ok(b1), Ok(b2)) => {
            return fail(
                name,
                format!("optima are {b1} (case1) and {b2} (case2), expected 0 and 1"),
                None,
            )
        }
        (Err(e), _) | (_, Err(e)) => return skip(name, e.to_string()),
    }
    let Ok(all) = all_committees(inst.m(), inst.k(), ENUMERATION_CAP) else {
        return skip(name, "too many committees".into());
    };
    let bound = int(x as i64);
    for c in &all {
        let keeps_z = zs.iter().all(|&z| c.contains(z));
        let ok = if keeps_z {
            m2.social_cost(c) >= bound
        } else {
            m1.social_cost(c) > Rational::zero()
        };
        if !ok {
            return fail(
                name,
                "committee escapes both cases".into(),
                Some(c.to_string()),
            );
        }
    }
    pass(
        name,
        format!("every committee has ratio >= {x} or is unbounded"),
    )
}

/// With a planted cover the optimum costs `n`, and canonicalizing never
/// raises the cost.
fn kcover_claim(family: &GeneratedFamily) -> Check {
    let name = "kcover-claim";
    let inst = &family.instance;
    let Some(metric) = family.metric("d") else {
        return fail(name, "metric d is missing".into(), None);
    };
    let Ok(model) = CostModel::new(inst, metric) else {
        return fail(name, "inconsistent metric".into(), None);
    };
    let Ok(all) = all_committees(inst.m(), inst.k(), ENUMERATION_CAP) else {
        return skip(name, "too many committees".into());
    };
    for c in &all {
        let canon = match canonicalize(family, c) {
            Ok(canon) => canon,
            Err(e) => return fail(name, e.to_string(), Some(c.to_string())),
        };
        if model.social_cost(&canon) > model.social_cost(c) {
            return fail(
                name,
                "canonicalizing raised the cost".into(),
                Some(format!("{c} -> {canon}")),
            );
        }
    }
    let best = all
        .iter()
        .map(|c| model.social_cost(c))
        .min()
        .unwrap_or_else(Rational::zero);
    let n = int(inst.n() as i64);
    match &family.meta {
        FamilyMeta::Kcover {
            planted: Some(_), ..
        } if best != n => fail(
            name,
            format!("planted cover exists but the optimum costs {best}, not {n}"),
            None,
        ),
        FamilyMeta::Kcover {
            planted: Some(_), ..
        } => pass(
            name,
            format!("optimum SC = {best} = n; canonicalize never raises SC"),
        ),
        _ => pass(
            name,
            format!("optimum SC = {best}; canonicalize never raises SC"),
        ),
    }
}

fn appendix_claim(family: &GeneratedFamily) -> Check {
    let name = "appendix-claim";
    let (Some(o), Some(metric)) = (&family.optimum, family.designated_metric()) else {
        return fail(name, "optimum and metric are required".into(), None);
    };
    let Ok(model) = CostModel::new(&family.instance, metric) else {
        return fail(name, "inconsistent metric".into(), None);
    };
    let cost = model.social_cost(o);
    let m = int(family.instance.m() as i64);
    if cost == m {
        pass(name, format!("SC({o}) = m = {m}"))
    } else {
        fail(
            name,
            format!("SC(O) = {cost}, expected m = {m}"),
            Some(o.to_string()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{
        gen_appendix_family, gen_kcover_family, gen_linear_family, gen_unbounded_family,
        KCoverInput,
    };

    #[test]
    fn unbounded_fixture_passes() {
        let report = verify_fixture(&gen_unbounded_family(8, 2).unwrap()).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(
            report.check("unbounded-claim").unwrap().status,
            CheckStatus::Pass
        );
        assert_eq!(
            report.check("known-optimum").unwrap().status,
            CheckStatus::Pass
        );
    }

    #[test]
    fn linear_and_appendix_fixtures_pass() {
        for x in 1..=3 {
            let report = verify_fixture(&gen_linear_family(4, 2, x).unwrap()).unwrap();
            assert!(report.passed(), "{report}");
        }
        let report = verify_fixture(&gen_appendix_family(6, 3).unwrap()).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(
            report.check("appendix-claim").unwrap().status,
            CheckStatus::Pass
        );
    }

    #[test]
    fn kcover_example_optimum_is_three() {
        let input = KCoverInput {
            universe: 3,
            sets: vec![vec![0, 1], vec![2], vec![1, 2]],
            k_sets: 2,
            q: 2,
            planted: Some(vec![0, 1]),
        };
        let report = verify_fixture(&gen_kcover_family(&input).unwrap()).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report
            .check("known-optimum")
            .unwrap()
            .detail
            .contains("= 3 "));
    }

    #[test]
    fn corrupted_distance_is_reported() {
        let mut fam = gen_linear_family(4, 2, 1).unwrap();
        // Agent 0 ranks 0 first; make it the farthest alternative.
        fam.metrics[1].metric.set(0, 0, int(100)).unwrap();
        let report = verify_fixture(&fam).unwrap();
        assert!(!report.passed());
        let check = report.check("consistency:case2").unwrap();
        assert_eq!(check.status, CheckStatus::Fail);
        assert!(check.witness.is_some(), "{report}");
    }

    #[test]
    fn malformed_bundle_is_a_parse_error() {
        assert!(matches!(
            verify_bundle("{\"instance\": 3}"),
            Err(Error::Parse(_))
        ));
    }
}
