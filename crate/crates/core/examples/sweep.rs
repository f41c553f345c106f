//! Runs the identification scenario (desk scale, or 135 targets with `full`) over many seeds and prints
//! how often each rule identifies the truth and how much belief it leaves on
//! the near-duplicate target.
//!
//!     cargo run --release -p belief-fusion --example sweep -- [seeds] [full]

use belief_fusion::rules::RuleId;
use belief_fusion::scenario::{run_scenario, ScenarioConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let seeds: u64 = args.next().map_or(100, |s| s.parse().expect("seed count"));
    let base = match args.next() {
        Some(n) if n == "full" => ScenarioConfig::full_scale(),
        _ => ScenarioConfig::desk(),
    };
    let rules = [
        RuleId::Dempster,
        RuleId::DuboisPrade,
        RuleId::Sacr,
        RuleId::Pcr,
    ];
    let start = std::time::Instant::now();

    let mut finals = vec![Vec::new(); rules.len()];
    for seed in 0..seeds {
        for (i, rule) in rules.iter().enumerate() {
            let run = run_scenario(&ScenarioConfig {
                rule: *rule,
                seed,
                ..base.clone()
            })
            .expect("feasible config");
            finals[i].push(run.last().cloned().filter(|_| run.completed()));
        }
    }

    println!(
        "{} seeds, {} targets, {:.2?}",
        seeds,
        base.n_targets,
        start.elapsed()
    );
    println!("rule          truth-wins  median-betp-truth  median-betp-similar  similar<truth  similar>DS");
    for (i, rule) in rules.iter().enumerate() {
        let done: Vec<_> = finals[i].iter().flatten().collect();
        let wins = done
            .iter()
            .filter(|r| r.decided_index == base.truth_index)
            .count();
        let mut truth: Vec<f64> = done.iter().map(|r| r.betp_truth).collect();
        let mut similar: Vec<f64> = done.iter().filter_map(|r| r.betp_similar).collect();
        truth.sort_by(f64::total_cmp);
        similar.sort_by(f64::total_cmp);
        let below = done
            .iter()
            .filter(|r| r.betp_similar.is_some_and(|s| s < r.betp_truth))
            .count();
        let above_ds = finals[i]
            .iter()
            .zip(&finals[0])
            .filter(|(r, ds)| match (r, ds) {
                (Some(r), Some(ds)) => r.betp_similar > ds.betp_similar,
                _ => false,
            })
            .count();
        println!(
            "{:<13} {:>5}/{:<5} {:>17.4} {:>20.4} {:>14} {:>11}",
            rule.name(),
            wins,
            done.len(),
            truth.get(truth.len() / 2).copied().unwrap_or(f64::NAN),
            similar.get(similar.len() / 2).copied().unwrap_or(f64::NAN),
            below,
            above_ds
        );
    }
}
