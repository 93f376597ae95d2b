use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use committee_distortion::generators::{
    gen_appendix_family, gen_kcover_family, gen_linear_family, gen_unbounded_family_replicated,
    GeneratedFamily, KCoverInput,
};
use committee_distortion::harness::{
    emit_plot_data, run_experiment, verify_bundle, ExperimentConfig,
};
use committee_distortion::model::{Committee, Instance, ENUMERATION_CAP};
use committee_distortion::oracle::{
    instance_distortion, random_instance, rng_from_seed, selection_ratio, OracleOptions, ORACLE_CAP,
};
use committee_distortion::rules::{run_rule, RuleId, Selection};

#[derive(Parser)]
#[command(
    name = "cdist",
    version,
    about = "Exact metric distortion of committee voting rules"
)]
struct Cli {
    /// Seed for randomized generators and sweeps.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Enumeration cap for committees, profiles and completion vectors.
    #[arg(long, global = true)]
    cap: Option<u128>,
    /// Run rules outside the (k, q) regime they are defined for.
    #[arg(long, global = true)]
    override_regime: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a fixture bundle or a random instance as JSON.
    Gen {
        #[command(subcommand)]
        family: GenCommand,
        /// Write to this file instead of stdout.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Run voting rules.
    Rule {
        #[command(subcommand)]
        command: RuleCommand,
    },
    /// Query the worst-case distortion oracle.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Run a sweep from a config and write results, summary and series files.
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Audit a fixture bundle; exits with status 1 if a check fails.
    Verify {
        #[arg(long)]
        bundle: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    Unbounded {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        replication: usize,
    },
    Linear {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        x: usize,
    },
    /// From a K-cover input file (universe, sets, K, q, optional planted).
    Kcover {
        #[arg(long)]
        input: PathBuf,
    },
    Appendix {
        #[arg(long)]
        m: usize,
    },
    /// A bare instance with uniformly random rankings.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: usize,
    },
}

#[derive(Subcommand)]
enum RuleCommand {
    Run {
        #[arg(long)]
        rule: RuleId,
        /// Instance JSON or fixture bundle.
        #[arg(long)]
        instance: PathBuf,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    Distortion(DistortionArgs),
}

#[derive(Args)]
struct DistortionArgs {
    /// Instance JSON or fixture bundle.
    #[arg(long)]
    instance: PathBuf,
    /// Comma-separated alternative ids.
    #[arg(long, conflicts_with = "rule", required_unless_present = "rule")]
    committee: Option<String>,
    #[arg(long)]
    rule: Option<RuleId>,
    /// Pin this optimum instead of maximizing over all of them.
    #[arg(long)]
    optimum: Option<String>,
    /// Read unboundedness from the ratio program's ray instead of solving the
    /// unboundedness program first.
    #[arg(long)]
    no_phase_one: bool,
    /// Drop optimality rows past the cap and report an upper bound (pinned
    /// optimum only).
    #[arg(long, requires = "optimum")]
    relax: bool,
    /// Re-check every LP certificate.
    #[arg(long)]
    audit: bool,
}

fn parse_committee(text: &str) -> Result<Committee> {
    let ids = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .with_context(|| format!("bad alternative id {s:?}"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Committee::new(ids)?)
}

/// Accepts a bare instance or a generated bundle.
fn load_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if let Ok(instance) = serde_json::from_str::<Instance>(&text) {
        return Ok(instance);
    }
    let family =
        GeneratedFamily::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(family.instance)
}

/// Writes to stdout; a closed pipe (as with `| head`) ends output quietly.
fn print_out(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(err) if err.kind() == ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .with_context(|| format!("writing {}", path.display())),
        None => print_out(&format!("{text}\n")),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let seed = cli.seed.unwrap_or(0);
    let rule_cap = cli.cap.unwrap_or(ENUMERATION_CAP);
    let oracle_cap = cli.cap.unwrap_or(ORACLE_CAP);
    match cli.command {
        Command::Gen { family, out } => {
            let text = match family {
                GenCommand::Unbounded { k, q, replication } => {
                    gen_unbounded_family_replicated(k, q, replication)?.to_json()
                }
                GenCommand::Linear { k, q, x } => gen_linear_family(k, q, x)?.to_json(),
                GenCommand::Kcover { input } => {
                    let text = fs::read_to_string(&input)
                        .with_context(|| format!("reading {}", input.display()))?;
                    let input: KCoverInput =
                        serde_json::from_str(&text).context("parsing K-cover input")?;
                    gen_kcover_family(&input)?.to_json()
                }
                GenCommand::Appendix { m } => gen_appendix_family(m, seed)?.to_json(),
                GenCommand::Random { n, m, k, q } => {
                    let instance = random_instance(&mut rng_from_seed(seed), n, m, k, q)?;
                    serde_json::to_string_pretty(&instance)?
                }
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Rule {
            command: RuleCommand::Run { rule, instance },
        } => {
            let instance = load_instance(&instance)?;
            let outcome = run_rule(rule, &instance, rule_cap, cli.override_regime)?;
            emit(None, &outcome.to_json())?;
        }
        Command::Oracle {
            command: OracleCommand::Distortion(args),
        } => {
            let instance = load_instance(&args.instance)?;
            let selection = match (&args.committee, args.rule) {
                (Some(text), _) => Selection::Committee(parse_committee(text)?),
                (None, Some(rule)) => {
                    run_rule(rule, &instance, rule_cap, cli.override_regime)?.selection
                }
                (None, None) => bail!("pass --committee or --rule"),
            };
            selection.validate(&instance)?;
            let options = OracleOptions {
                cap: oracle_cap,
                phase_one: !args.no_phase_one,
                relax_on_cap: args.relax,
                audit: args.audit,
            };
            let report = match &args.optimum {
                Some(text) => {
                    selection_ratio(&instance, &selection, &parse_committee(text)?, &options)?
                }
                None => instance_distortion(&instance, &selection, &options)?,
            };
            emit(None, &report.to_json())?;
        }
        Command::Bench { config, out } => {
            let text = fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let mut config = ExperimentConfig::from_json(&text)?;
            if let Some(seed) = cli.seed {
                config.seed = seed;
            }
            if let Some(cap) = cli.cap {
                config.oracle_cap = cap;
                config.rule_cap = cap;
            }
            config.override_regime |= cli.override_regime;
            let set = run_experiment(&config)?;
            set.write(&out)?;
            emit_plot_data(&set, &out.join("plot"))?;
            print_out(&set.summary_table())?;
            emit(
                None,
                &format!("{} rows, config {}", set.rows.len(), set.config_hash),
            )?;
        }
        Command::Verify { bundle } => {
            let text = fs::read_to_string(&bundle)
                .with_context(|| format!("reading {}", bundle.display()))?;
            let report = verify_bundle(&text)?;
            print_out(&report.to_string())?;
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
