//! `bfuse`: combine mass functions, inspect conflict, compute pignistic
//! probabilities and run the identification scenario.
//!
//! Exit codes: 0 success, 1 I/O failure while writing, 2 unreadable or
//! invalid input (including infeasible scenario configs), 3 frame mismatch,
//! 4 the rule cannot combine the inputs (total conflict, degenerate case).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use belief_fusion::scenario::{self, ScenarioConfig};
use belief_fusion::{betp, conflict, decide, io, Error, MassFunction, RuleId};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bfuse", version, about = "Belief-function fusion toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Combine two mass functions with a rule and write the result.
    Combine {
        #[arg(long)]
        rule: RuleId,
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Print k12 and the conflicting focal pairs `X,Y,product`.
    Conflict { first: PathBuf, second: PathBuf },
    /// Print the pignistic probability of each hypothesis and the decision.
    Betp { input: PathBuf },
    /// Run the identification scenario, one CSV and JSON sidecar per rule.
    Scenario {
        /// JSON config; omitted fields take the full-scale defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated rule names; defaults to the config's rule.
        #[arg(long, value_delimiter = ',')]
        rules: Vec<RuleId>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List the available rules.
    Rules,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(path: &Path, err: Error) -> Self {
        let code = match err {
            Error::FrameMismatch => 3,
            _ => 2,
        };
        Self {
            code,
            message: format!("{}: {err}", path.display()),
        }
    }

    fn write(path: &Path, err: impl std::fmt::Display) -> Self {
        Self {
            code: 1,
            message: format!("cannot write {}: {err}", path.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::FrameMismatch => 3,
            Error::TotalConflict { .. } | Error::Degenerate(_) => 4,
            Error::Io(_) => 1,
            _ => 2,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<MassFunction, Failure> {
    io::read_mass_function(path).map_err(|e| Failure::input(path, e))
}

fn read_pair(first: &Path, second: &Path) -> Result<(MassFunction, MassFunction), Failure> {
    let m1 = read(first)?;
    let m2 = read(second)?;
    if !m1.frame().same_as(m2.frame()) {
        return Err(Failure {
            code: 3,
            message: format!(
                "{} and {} are defined on different frames",
                first.display(),
                second.display()
            ),
        });
    }
    Ok((m1, m2))
}

fn run_combine(rule: RuleId, first: &Path, second: &Path, out: &Path) -> Result<(), Failure> {
    let (m1, m2) = read_pair(first, second)?;
    let fused = rule.combine(&m1, &m2).map_err(|e| Failure {
        message: format!("{rule}: {e}"),
        ..Failure::from(e)
    })?;
    io::write_mass_function(out, &fused).map_err(|e| Failure::write(out, e))
}

fn run_conflict(first: &Path, second: &Path) -> Result<(), Failure> {
    let (m1, m2) = read_pair(first, second)?;
    let k = conflict(&m1, &m2)?;
    let frame = m1.frame();
    println!("{}", k.total);
    for pair in &k.pairs {
        println!(
            "{},{},{}",
            frame.display_set(&pair.first),
            frame.display_set(&pair.second),
            pair.product
        );
    }
    Ok(())
}

fn run_betp(input: &Path) -> Result<(), Failure> {
    let m = read(input)?;
    let p = betp(&m)?;
    for (label, prob) in p.frame().labels().iter().zip(p.probs()) {
        println!("{label},{prob}");
    }
    let d = decide(&p);
    println!("decided,{},{}", p.frame().labels()[d.index], d.tie);
    Ok(())
}

fn run_scenario_cmd(
    config: Option<&Path>,
    out: &Path,
    rules: &[RuleId],
    seed: Option<u64>,
) -> Result<(), Failure> {
    let mut base = match config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::input(path, e.into()))?;
            ScenarioConfig::from_json(&text).map_err(|e| Failure::input(path, e))?
        }
        None => ScenarioConfig::default(),
    };
    if let Some(seed) = seed {
        base.seed = seed;
    }
    let rules = if rules.is_empty() {
        vec![base.rule]
    } else {
        rules.to_vec()
    };
    let configs: Vec<ScenarioConfig> = rules
        .iter()
        .map(|&rule| ScenarioConfig {
            rule,
            ..base.clone()
        })
        .collect();
    for c in &configs {
        c.check()?;
    }

    let runs = std::thread::scope(|s| {
        let jobs: Vec<_> = configs
            .iter()
            .map(|c| s.spawn(move || scenario::run_scenario(c)))
            .collect();
        jobs.into_iter()
            .map(|j| j.join().expect("scenario job panicked"))
            .collect::<Vec<_>>()
    });

    for run in runs {
        let run = run?;
        let (csv, _) = scenario::write_run(out, &run).map_err(|e| Failure::write(out, e))?;
        match &run.failure {
            None => println!(
                "{}: {} steps -> {}",
                run.config.rule,
                run.records.len(),
                csv.display()
            ),
            Some(f) => {
                eprintln!(
                    "warning: {} stopped at step {}: {}",
                    run.config.rule, f.step, f.reason
                );
                println!(
                    "{}: failed at step {} -> {}",
                    run.config.rule,
                    f.step,
                    csv.display()
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Combine {
            rule,
            first,
            second,
            out,
        } => run_combine(*rule, first, second, out),
        Command::Conflict { first, second } => run_conflict(first, second),
        Command::Betp { input } => run_betp(input),
        Command::Scenario {
            config,
            out,
            rules,
            seed,
        } => run_scenario_cmd(config.as_deref(), out, rules, *seed),
        Command::Rules => {
            for rule in RuleId::ALL {
                println!("{:<13} {}", rule.name(), rule.description());
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
