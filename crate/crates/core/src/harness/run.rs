use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{
    gen_appendix_family, gen_kcover_family, gen_linear_family, gen_unbounded_family_replicated,
    GeneratedFamily,
};
use crate::harness::config::{ExperimentConfig, FamilySpec, Grid};
use crate::model::{all_committees, Instance, Regime};
use crate::oracle::{
    instance_distortion, random_instance, rng_from_seed, DistortionReport, OracleOptions, Ratio,
};
use crate::rules::{run_rule, RuleId, Selection};

/// One (instance, outcome) evaluation. Wall times live in [`TimingRow`] so
/// that result files are byte-reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRow {
    pub instance_id: String,
    pub family: String,
    pub regime: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub q: usize,
    /// Family parameter, such as `x=3`.
    pub param: String,
    /// A rule id, or `committee` for a fixed committee.
    pub rule: String,
    pub outcome: String,
    /// `p/q`, `unbounded`, or empty when the row failed.
    pub ratio: String,
    /// `ok`, `cap`, `regime`, or `error`.
    pub status: String,
    pub detail: String,
    pub overridden: bool,
    /// Key into the witness file.
    pub witness: String,
    pub config_hash: String,
}

impl ResultRow {
    pub fn parsed_ratio(&self) -> Option<Ratio> {
        self.ratio.parse().ok()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub id: String,
    pub instance_id: String,
    pub instance: Instance,
    pub selection: Selection,
    pub report: DistortionReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimingRow {
    pub instance_id: String,
    pub rule: String,
    pub wall_ms: f64,
}

/// Verdicts of one regime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub regime: String,
    pub label: String,
    pub rows: usize,
    pub unbounded: usize,
    pub finite: usize,
    pub min_ratio: String,
    pub max_ratio: String,
    pub failed: usize,
    pub overridden: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultSet {
    pub name: String,
    pub config_hash: String,
    pub rows: Vec<ResultRow>,
    pub summary: Vec<SummaryRow>,
    pub witnesses: Vec<Witness>,
    #[serde(skip)]
    pub timings: Vec<TimingRow>,
}

struct Cell {
    id: String,
    family: &'static str,
    param: String,
    instance: Instance,
    rules: Vec<RuleId>,
    committees: bool,
}

fn cells_of(config: &ExperimentConfig) -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    for (e, spec) in config.families.iter().enumerate() {
        let FamilySpec {
            grid,
            rules,
            committees,
        } = spec;
        let mut push = |id: String, param: String, instance: Instance| {
            cells.push(Cell {
                id,
                family: grid.name(),
                param,
                instance,
                rules: rules.clone(),
                committees: *committees,
            })
        };
        let from_family = |f: GeneratedFamily| f.instance;
        match grid {
            Grid::Unbounded { k, q, replication } => {
                for (&k, &q) in k.iter().cartesian_product(q) {
                    let fam = gen_unbounded_family_replicated(k, q, *replication)?;
                    push(
                        format!("unbounded-k{k}-q{q}-t{replication}"),
                        format!("t={replication}"),
                        from_family(fam),
                    );
                }
            }
            Grid::Linear { k, q, x } => {
                for ((&k, &q), &x) in k.iter().cartesian_product(q).cartesian_product(x) {
                    let fam = gen_linear_family(k, q, x)?;
                    push(
                        format!("linear-k{k}-q{q}-x{x}"),
                        format!("x={x}"),
                        from_family(fam),
                    );
                }
            }
            Grid::Kcover { inputs } => {
                for (idx, input) in inputs.iter().enumerate() {
                    let fam = gen_kcover_family(input)?;
                    push(
                        format!("kcover-{e}-{idx}"),
                        format!("K={}", input.k_sets),
                        from_family(fam),
                    );
                }
            }
            Grid::Appendix { m, seeds } => {
                for (&m, &seed) in m.iter().cartesian_product(seeds) {
                    let fam = gen_appendix_family(m, seed)?;
                    push(
                        format!("appendix-m{m}-s{seed}"),
                        format!("seed={seed}"),
                        from_family(fam),
                    );
                }
            }
            Grid::Random { n, m, k, q, count } => {
                let mut rng = rng_from_seed(config.seed.wrapping_add(e as u64));
                for (((&n, &m), &k), &q) in n
                    .iter()
                    .cartesian_product(m)
                    .cartesian_product(k)
                    .cartesian_product(q)
                {
                    for idx in 0..*count {
                        let instance = random_instance(&mut rng, n, m, k, q)?;
                        push(
                            format!("random-{e}-n{n}-m{m}-k{k}-q{q}-{idx}"),
                            String::new(),
                            instance,
                        );
                    }
                }
            }
            Grid::Profiles { n, m, k, q } => {
                for (idx, instance) in all_profiles(*n, *m, *k, *q, config.rule_cap)?
                    .into_iter()
                    .enumerate()
                {
                    push(
                        format!("profiles-n{n}-m{m}-k{k}-q{q}-{idx}"),
                        String::new(),
                        instance,
                    );
                }
            }
        }
    }
    Ok(cells)
}

/// Every profile of `n` agents over `m` alternatives, in lexicographic order
/// of the ranking lists.
pub fn all_profiles(n: usize, m: usize, k: usize, q: usize, cap: u128) -> Result<Vec<Instance>> {
    let orders: u128 = (1..=m as u128).product();
    let needed = orders.checked_pow(n as u32).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::Cap {
            what: format!("profiles with n={n}, m={m}"),
            needed,
            cap,
        });
    }
    let rankings: Vec<Vec<usize>> = (0..m).permutations(m).collect();
    std::iter::repeat_n(rankings, n)
        .multi_cartesian_product()
        .map(|profile| Instance::new(k, q, profile))
        .collect()
}

fn status_of(err: &Error) -> &'static str {
    match err {
        Error::Cap { .. } => "cap",
        Error::Regime(_) => "regime",
        _ => "error",
    }
}

fn format_selection(selection: &Selection) -> String {
    match selection {
        Selection::Committee(c) => c.to_string(),
        Selection::Distribution(d) => d
            .iter()
            .map(|o| {
                format!(
                    "{}:{}",
                    o.committee,
                    crate::rational::format(&o.probability)
                )
            })
            .join(" "),
    }
}

struct Evaluated {
    row: ResultRow,
    witness: Option<(Selection, DistortionReport)>,
    wall_ms: f64,
}

fn evaluate_cell(cell: &Cell, config: &ExperimentConfig, hash: &str) -> Vec<Evaluated> {
    let options = OracleOptions {
        cap: config.oracle_cap,
        ..Default::default()
    };
    let inst = &cell.instance;
    let regime = inst.regime();
    let blank = |rule: &str| ResultRow {
        instance_id: cell.id.clone(),
        family: cell.family.to_string(),
        regime: regime.id().to_string(),
        n: inst.n(),
        m: inst.m(),
        k: inst.k(),
        q: inst.q(),
        param: cell.param.clone(),
        rule: rule.to_string(),
        outcome: String::new(),
        ratio: String::new(),
        status: String::new(),
        detail: String::new(),
        overridden: false,
        witness: String::new(),
        config_hash: hash.to_string(),
    };
    let finish = |mut row: ResultRow, selection: Result<Selection>, start: Instant| {
        let result = selection.and_then(|s| {
            row.outcome = format_selection(&s);
            instance_distortion(inst, &s, &options).map(|r| (s, r))
        });
        let witness = match result {
            Ok((s, report)) => {
                row.ratio = report.ratio.to_string();
                row.status = "ok".into();
                Some((s, report))
            }
            Err(err) => {
                row.status = status_of(&err).into();
                row.detail = err.to_string();
                None
            }
        };
        Evaluated {
            row,
            witness,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    };

    let mut out = Vec::new();
    for &rule in &cell.rules {
        let start = Instant::now();
        let mut row = blank(rule.as_str());
        row.overridden = !rule.supports(regime);
        let selection =
            run_rule(rule, inst, config.rule_cap, config.override_regime).map(|o| o.selection);
        out.push(finish(row, selection, start));
    }
    if cell.committees {
        match all_committees(inst.m(), inst.k(), config.oracle_cap) {
            Ok(all) => {
                for c in all {
                    out.push(finish(
                        blank("committee"),
                        Ok(Selection::Committee(c)),
                        Instant::now(),
                    ));
                }
            }
            Err(err) => {
                let mut row = blank("committee");
                row.status = status_of(&err).into();
                row.detail = err.to_string();
                out.push(Evaluated {
                    row,
                    witness: None,
                    wall_ms: 0.0,
                });
            }
        }
    }
    out
}

/// Runs every grid cell and collates rows in cell order, so the output does
/// not depend on how many worker threads ran.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ResultSet> {
    config.validate()?;
    let hash = config.hash();
    let cells = cells_of(config)?;
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(cells.len())
        .max(1);
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Vec<Evaluated>>>> =
        Mutex::new((0..cells.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                let Some(cell) = cells.get(idx) else { break };
                let evaluated = evaluate_cell(cell, config, &hash);
                slots.lock().expect("collator lock")[idx] = Some(evaluated);
            });
        }
    });

    let mut set = ResultSet {
        name: config.name.clone(),
        config_hash: hash,
        rows: Vec::new(),
        summary: Vec::new(),
        witnesses: Vec::new(),
        timings: Vec::new(),
    };
    let slots = slots.into_inner().expect("collator lock");
    for (cell, evaluated) in cells.iter().zip(slots) {
        for mut e in
            evaluated.ok_or_else(|| Error::Internal("grid cell was not evaluated".into()))?
        {
            if let Some((selection, report)) = e.witness {
                let id = format!("w{:05}", set.witnesses.len());
                e.row.witness = id.clone();
                set.witnesses.push(Witness {
                    id,
                    instance_id: cell.id.clone(),
                    instance: cell.instance.clone(),
                    selection,
                    report,
                });
            }
            set.timings.push(TimingRow {
                instance_id: e.row.instance_id.clone(),
                rule: e.row.rule.clone(),
                wall_ms: e.wall_ms,
            });
            set.rows.push(e.row);
        }
    }
    set.summary = summarize(&set.rows);
    Ok(set)
}

/// One summary row per regime, in trichotomy order, including regimes
/// without rows.
pub fn summarize(rows: &[ResultRow]) -> Vec<SummaryRow> {
    let mut by_regime: BTreeMap<Regime, Vec<&ResultRow>> = BTreeMap::new();
    for r in [Regime::Unbounded, Regime::Linear, Regime::Constant] {
        by_regime.insert(r, Vec::new());
    }
    for row in rows {
        let regime = Regime::of(row.k, row.q);
        by_regime.entry(regime).or_default().push(row);
    }
    by_regime
        .into_iter()
        .map(|(regime, rows)| {
            let ratios: Vec<Ratio> = rows
                .iter()
                .filter(|r| r.status == "ok")
                .filter_map(|r| r.parsed_ratio())
                .collect();
            let finite: Vec<&Ratio> = ratios.iter().filter(|r| !r.is_unbounded()).collect();
            let show = |r: Option<&&Ratio>| r.map(|r| r.to_string()).unwrap_or_default();
            SummaryRow {
                regime: regime.id().into(),
                label: regime.label().into(),
                rows: rows.len(),
                unbounded: ratios.len() - finite.len(),
                finite: finite.len(),
                min_ratio: show(finite.iter().min()),
                max_ratio: show(finite.iter().max()),
                failed: rows.iter().filter(|r| r.status != "ok").count(),
                overridden: rows.iter().filter(|r| r.overridden).count(),
            }
        })
        .collect()
}

pub(crate) fn csv_string<T: Serialize>(rows: &[T], header: &[&str]) -> Result<String> {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    writer.write_record(header)?;
    for row in rows {
        writer.serialize(row)?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

pub(crate) const ROW_HEADER: [&str; 16] = [
    "instance_id",
    "family",
    "regime",
    "n",
    "m",
    "k",
    "q",
    "param",
    "rule",
    "outcome",
    "ratio",
    "status",
    "detail",
    "overridden",
    "witness",
    "config_hash",
];

const SUMMARY_HEADER: [&str; 9] = [
    "regime",
    "label",
    "rows",
    "unbounded",
    "finite",
    "min_ratio",
    "max_ratio",
    "failed",
    "overridden",
];

/// Writes `contents` to a sibling temporary file and renames it into place.
pub(crate) fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

impl ResultSet {
    pub fn rows_csv(&self) -> Result<String> {
        csv_string(&self.rows, &ROW_HEADER)
    }

    pub fn summary_csv(&self) -> Result<String> {
        csv_string(&self.summary, &SUMMARY_HEADER)
    }

    pub fn timings_csv(&self) -> Result<String> {
        csv_string(&self.timings, &["instance_id", "rule", "wall_ms"])
    }

    /// Rows and summary; witnesses go to their own file.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Results<'a> {
            name: &'a str,
            config_hash: &'a str,
            rows: &'a [ResultRow],
            summary: &'a [SummaryRow],
        }
        serde_json::to_string_pretty(&Results {
            name: &self.name,
            config_hash: &self.config_hash,
            rows: &self.rows,
            summary: &self.summary,
        })
        .expect("results always serialize")
    }

    pub fn witnesses_json(&self) -> String {
        serde_json::to_string_pretty(&self.witnesses).expect("witnesses always serialize")
    }

    /// Writes `results.csv`, `results.json`, `summary.csv`, `witnesses.json`
    /// and `timings.csv` into `dir`. Only `timings.csv` varies between runs.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        write_atomic(&dir.join("results.csv"), &self.rows_csv()?)?;
        write_atomic(&dir.join("results.json"), &self.to_json())?;
        write_atomic(&dir.join("summary.csv"), &self.summary_csv()?)?;
        write_atomic(&dir.join("witnesses.json"), &self.witnesses_json())?;
        write_atomic(&dir.join("timings.csv"), &self.timings_csv()?)?;
        Ok(())
    }

    /// Plain-text table of the summary.
    pub fn summary_table(&self) -> String {
        let mut out = format!(
            "{:<12} {:>6} {:>10} {:>8} {:>10} {:>10} {:>7}\n",
            "regime", "rows", "unbounded", "finite", "min", "max", "failed"
        );
        for s in &self.summary {
            out += &format!(
                "{:<12} {:>6} {:>10} {:>8} {:>10} {:>10} {:>7}\n",
                s.label, s.rows, s.unbounded, s.finite, s.min_ratio, s.max_ratio, s.failed
            );
        }
        out
    }
}
