//! Sequential target identification from noisy emitter reports.
//!
//! A synthetic platform database assigns emitters to targets. An ESM sensor
//! observes the ground-truth target and reports one emitter per step; with
//! probability `pfa` the report is a false alarm drawn from emitters of
//! similar platforms instead. Each report becomes the assignment
//! `{owners(emitter): report_mass, Θ: 1 − report_mass}` and is fused into
//! the running state with the chosen rule, after which the pignistic
//! probabilities and the max-BetP decision are recorded.
//!
//! All randomness comes from one [`ChaCha8Rng`] seeded with `seed`, and it is
//! consumed only to build the database and draw the reports. The report
//! stream is therefore identical for every rule under the same seed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combine::conflict;
use crate::decision::{betp, decide};
use crate::error::{Error, Result};
use crate::frame::{FocalSet, Frame};
use crate::mass::MassFunction;
use crate::rules::RuleId;

/// Recorded in run metadata so trajectories can be regenerated elsewhere.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.3, SeedableRng::seed_from_u64)";

pub type EmitterId = u32;

const MAX_REDRAWS: usize = 1000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub n_targets: usize,
    /// Size of the emitter pool.
    pub n_emitters: usize,
    /// Inclusive `[min, max]` number of emitters per target.
    pub emitters_per_target: (usize, usize),
    /// Frame index of the observed target.
    pub truth_index: usize,
    /// Target that shares all but one emitter with the truth.
    pub similar_target: Option<usize>,
    /// Probability that a report is a false alarm.
    pub pfa: f64,
    pub n_reports: usize,
    /// Mass given to the reported set; the rest goes to the whole frame.
    pub report_mass: f64,
    pub rule: RuleId,
    pub seed: u64,
}

impl ScenarioConfig {
    /// The full-size identification experiment: 135 targets, truth `t48`,
    /// near-duplicate `t49`, 25 reports.
    pub fn full_scale() -> Self {
        Self {
            n_targets: 135,
            n_emitters: 60,
            emitters_per_target: (2, 6),
            truth_index: 47,
            similar_target: Some(48),
            pfa: 0.3,
            n_reports: 25,
            report_mass: 0.8,
            rule: RuleId::Pcr,
            seed: 0,
        }
    }

    /// A 20-target version of [`full_scale`](Self::full_scale) for quick sweeps.
    pub fn desk() -> Self {
        Self {
            n_targets: 20,
            n_emitters: 16,
            emitters_per_target: (2, 4),
            truth_index: 7,
            similar_target: Some(8),
            ..Self::full_scale()
        }
    }

    pub fn check(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.n_targets == 0 {
            return fail("n_targets must be positive".into());
        }
        if self.truth_index >= self.n_targets {
            return fail(format!(
                "truth_index {} is out of range for {} targets",
                self.truth_index, self.n_targets
            ));
        }
        if let Some(similar) = self.similar_target {
            if similar >= self.n_targets {
                return fail(format!("similar_target {similar} is out of range"));
            }
            if similar == self.truth_index {
                return fail("similar_target must differ from truth_index".into());
            }
            if self.emitters_per_target.0 < 2 {
                return fail(
                    "similar_target needs every target to carry at least 2 emitters".into(),
                );
            }
        }
        let (min, max) = self.emitters_per_target;
        if min == 0 || min > max {
            return fail(format!(
                "emitters_per_target [{min}, {max}] is not a valid range"
            ));
        }
        if self.n_emitters < max {
            return fail(format!(
                "emitter pool of {} cannot supply {max} distinct emitters per target",
                self.n_emitters
            ));
        }
        if !(0.0..=1.0).contains(&self.pfa) {
            return fail(format!("pfa {} is not a probability", self.pfa));
        }
        if !(self.report_mass > 0.0 && self.report_mass <= 1.0) {
            return fail(format!("report_mass {} is not in (0, 1]", self.report_mass));
        }
        if !self.rule.is_closed_world() {
            return fail(format!(
                "rule `{}` yields open-world states that cannot be fused sequentially",
                self.rule
            ));
        }
        Ok(())
    }

    /// Reads a JSON object with the field names of this struct as keys.
    /// Missing fields take their [`Default`] values; the result is checked.
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        config.check()?;
        Ok(config)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self::full_scale()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Platform {
    pub label: String,
    pub emitters: BTreeSet<EmitterId>,
}

/// Targets with their on-board emitters.
#[derive(Clone, Debug)]
pub struct PlatformDatabase {
    pub frame: Frame,
    pub targets: Vec<Platform>,
    /// Owners of each emitter, the exact inverse of `targets`.
    pub emitter_index: BTreeMap<EmitterId, FocalSet>,
    /// Emitters of the ground truth (the set X).
    pub truth_emitters: Vec<EmitterId>,
    /// Emitters of platforms similar to the truth, excluding X (the set Y).
    pub decoy_emitters: Vec<EmitterId>,
}

impl PlatformDatabase {
    pub fn owners(&self, emitter: EmitterId) -> Option<&FocalSet> {
        self.emitter_index.get(&emitter)
    }
}

fn decoys(targets: &[Platform], truth: usize) -> Vec<EmitterId> {
    let x = &targets[truth].emitters;
    let mut y = BTreeSet::new();
    for (i, t) in targets.iter().enumerate() {
        if i != truth && !t.emitters.is_disjoint(x) {
            y.extend(t.emitters.difference(x).copied());
        }
    }
    y.into_iter().collect()
}

/// A uniform count in `emitters_per_target`, then that many distinct
/// emitters drawn uniformly from the pool.
fn draw_emitters(config: &ScenarioConfig, rng: &mut impl Rng) -> BTreeSet<EmitterId> {
    let (min, max) = config.emitters_per_target;
    let count = rng.gen_range(min..=max);
    index::sample(rng, config.n_emitters, count)
        .into_iter()
        .map(|e| e as EmitterId)
        .collect()
}

/// Generates the platform database for `config`.
///
/// Every platform draws a uniform number of distinct emitters in
/// `emitters_per_target`. Platforms whose emitters include all of the
/// truth's are redrawn. When a similar target is configured, its emitters
/// become the truth's minus one. If no platform shares an emitter with the
/// truth while also carrying others, one randomly chosen bystander is given
/// one of the truth's emitters (and a foreign one if needed) so that Y is
/// non-empty.
pub fn build_pdb(config: &ScenarioConfig, rng: &mut impl Rng) -> Result<PlatformDatabase> {
    config.check()?;
    let mut targets: Vec<Platform> = (0..config.n_targets)
        .map(|i| Platform {
            label: format!("t{}", i + 1),
            emitters: draw_emitters(config, rng),
        })
        .collect();

    // Another platform carrying every emitter of the truth could never be
    // told apart from it; redraw those.
    let truth = config.truth_index;
    for i in 0..config.n_targets {
        let mut attempts = 0;
        while i != truth && targets[truth].emitters.is_subset(&targets[i].emitters) {
            attempts += 1;
            if attempts > MAX_REDRAWS {
                return Err(Error::Config(format!(
                    "could not make {} distinguishable from the truth",
                    targets[i].label
                )));
            }
            targets[i].emitters = draw_emitters(config, rng);
        }
    }

    if let Some(similar) = config.similar_target {
        let x: Vec<EmitterId> = targets[truth].emitters.iter().copied().collect();
        let dropped = *x.choose(rng).expect("truth has at least two emitters");
        targets[similar].emitters = x.into_iter().filter(|e| *e != dropped).collect();
    }

    if decoys(&targets, truth).is_empty() {
        let bystanders: Vec<usize> = (0..config.n_targets)
            .filter(|i| *i != truth && Some(*i) != config.similar_target)
            .collect();
        let x: Vec<EmitterId> = targets[truth].emitters.iter().copied().collect();
        let foreign: Vec<EmitterId> = (0..config.n_emitters as EmitterId)
            .filter(|e| !targets[truth].emitters.contains(e))
            .collect();
        let (Some(&j), false) = (bystanders.choose(rng), foreign.is_empty()) else {
            return Err(Error::Config(
                "no emitter can be reported as a false alarm (Y is empty)".into(),
            ));
        };
        let candidates: Vec<EmitterId> = x
            .iter()
            .copied()
            .filter(|e| {
                let mut owned = targets[j].emitters.clone();
                owned.insert(*e);
                !targets[truth].emitters.is_subset(&owned)
            })
            .collect();
        let Some(&shared) = candidates.choose(rng) else {
            return Err(Error::Config(
                "the truth has too few emitters to share one with a decoy platform".into(),
            ));
        };
        targets[j].emitters.insert(shared);
        if targets[j]
            .emitters
            .iter()
            .all(|e| targets[truth].emitters.contains(e))
        {
            targets[j]
                .emitters
                .insert(*foreign.choose(rng).expect("non-empty"));
        }
    }

    let frame = Frame::new(targets.iter().map(|t| t.label.clone()))?;
    let mut owners: BTreeMap<EmitterId, Vec<usize>> = BTreeMap::new();
    for (i, t) in targets.iter().enumerate() {
        for e in &t.emitters {
            owners.entry(*e).or_default().push(i);
        }
    }
    let emitter_index = owners
        .into_iter()
        .map(|(e, idx)| Ok((e, FocalSet::from_indices(frame.len(), idx)?)))
        .collect::<Result<_>>()?;
    let decoy_emitters = decoys(&targets, truth);
    Ok(PlatformDatabase {
        truth_emitters: targets[truth].emitters.iter().copied().collect(),
        decoy_emitters,
        frame,
        targets,
        emitter_index,
    })
}

/// One ESM report.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub emitter: EmitterId,
    /// Every target owning the emitter.
    pub set: FocalSet,
    pub false_alarm: bool,
}

/// Draws a report: a uniform emitter from Y with probability `pfa`, from X
/// otherwise.
pub fn gen_report(pdb: &PlatformDatabase, config: &ScenarioConfig, rng: &mut impl Rng) -> Report {
    let false_alarm = rng.gen_bool(config.pfa);
    let pool = if false_alarm {
        &pdb.decoy_emitters
    } else {
        &pdb.truth_emitters
    };
    let emitter = *pool.choose(rng).expect("X and Y are non-empty");
    Report {
        emitter,
        set: pdb.emitter_index[&emitter].clone(),
        false_alarm,
    }
}

/// `{set: report_mass, Θ: 1 − report_mass}`.
pub fn report_bba(set: &FocalSet, frame: &Frame, report_mass: f64) -> Result<MassFunction> {
    if set.is_empty() {
        return Err(Error::EmptyReport);
    }
    MassFunction::new(
        frame,
        [
            (set.clone(), report_mass),
            (frame.full_set(), 1.0 - report_mass),
        ],
    )
}

/// The state of the fusion after one report.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryRecord {
    /// 1-based step number.
    pub step: usize,
    pub reported_emitter: EmitterId,
    pub report_set_size: usize,
    /// Conflict between the state and the report, before fusing them.
    pub conflict_k12: f64,
    pub betp_truth: f64,
    pub betp_similar: Option<f64>,
    pub decided_index: usize,
    pub tie: bool,
}

/// Where a run stopped because the rule could not combine the next report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepFailure {
    pub step: usize,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct ScenarioRun {
    pub config: ScenarioConfig,
    pub pdb: PlatformDatabase,
    pub reports: Vec<Report>,
    pub records: Vec<TrajectoryRecord>,
    pub final_state: MassFunction,
    pub failure: Option<StepFailure>,
}

impl ScenarioRun {
    pub fn completed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn last(&self) -> Option<&TrajectoryRecord> {
        self.records.last()
    }
}

/// Runs the sequential fusion for `config`.
///
/// The state starts vacuous, so the first step returns the first report.
/// If the rule fails part-way (Dempster's rule under total conflict), the
/// run stops there and reports the failing step in
/// [`ScenarioRun::failure`]; records up to that point are kept.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioRun> {
    let mut rng = config.rng();
    let pdb = build_pdb(config, &mut rng)?;
    let reports: Vec<Report> = (0..config.n_reports)
        .map(|_| gen_report(&pdb, config, &mut rng))
        .collect();

    let mut state = MassFunction::vacuous(&pdb.frame);
    let mut records = Vec::with_capacity(reports.len());
    let mut failure = None;
    for (i, report) in reports.iter().enumerate() {
        let step = i + 1;
        let evidence = report_bba(&report.set, &pdb.frame, config.report_mass)?;
        let k12 = conflict(&state, &evidence)?.total;
        match config.rule.combine(&state, &evidence) {
            Ok(next) => state = next,
            Err(e) => {
                failure = Some(StepFailure {
                    step,
                    reason: e.to_string(),
                });
                break;
            }
        }
        let p = betp(&state)?;
        let d = decide(&p);
        records.push(TrajectoryRecord {
            step,
            reported_emitter: report.emitter,
            report_set_size: report.set.len(),
            conflict_k12: k12,
            betp_truth: p.prob(config.truth_index),
            betp_similar: config.similar_target.map(|s| p.prob(s)),
            decided_index: d.index,
            tie: d.tie,
        });
    }
    Ok(ScenarioRun {
        config: config.clone(),
        pdb,
        reports,
        records,
        final_state: state,
        failure,
    })
}

pub const CSV_HEADER: &str = "step,rule,emitter,set_size,k12,betp_truth,betp_similar,decided,tie";

/// The trajectory as CSV, one row per completed step.
///
/// Numbers use Rust's shortest round-trip formatting, so output is
/// byte-identical for identical runs.
pub fn trajectory_csv(run: &ScenarioRun) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &run.records {
        let similar = r.betp_similar.map(|v| v.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.step,
            run.config.rule,
            r.reported_emitter,
            r.report_set_size,
            r.conflict_k12,
            r.betp_truth,
            similar,
            r.decided_index,
            r.tie
        )
        .expect("writing to a String");
    }
    out
}

#[derive(Serialize)]
struct RunMetadata<'a> {
    config: &'a ScenarioConfig,
    rng_algorithm: &'a str,
    truth_label: &'a str,
    similar_label: Option<&'a str>,
    truth_emitters: &'a [EmitterId],
    decoy_emitters: &'a [EmitterId],
    steps_completed: usize,
    failed_at: Option<&'a StepFailure>,
    final_betp: Vec<f64>,
}

/// Sidecar JSON: the full config, RNG algorithm, failure point if any, and
/// the final pignistic distribution over all targets.
pub fn metadata_json(run: &ScenarioRun) -> String {
    let frame = &run.pdb.frame;
    let final_betp = betp(&run.final_state)
        .map(|p| p.probs().to_vec())
        .unwrap_or_default();
    let meta = RunMetadata {
        config: &run.config,
        rng_algorithm: RNG_ALGORITHM,
        truth_label: frame.label(run.config.truth_index).unwrap_or_default(),
        similar_label: run.config.similar_target.and_then(|s| frame.label(s)),
        truth_emitters: &run.pdb.truth_emitters,
        decoy_emitters: &run.pdb.decoy_emitters,
        steps_completed: run.records.len(),
        failed_at: run.failure.as_ref(),
        final_betp,
    };
    let mut text = serde_json::to_string_pretty(&meta).expect("metadata serializes");
    text.push('\n');
    text
}

/// Writes `<rule>-seed<seed>.csv` and its `.json` sidecar into `dir`.
pub fn write_run(dir: impl AsRef<Path>, run: &ScenarioRun) -> Result<(PathBuf, PathBuf)> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    let stem = format!("{}-seed{}", run.config.rule, run.config.seed);
    let csv = dir.join(format!("{stem}.csv"));
    let meta = dir.join(format!("{stem}.json"));
    std::fs::write(&csv, trajectory_csv(run))?;
    std::fs::write(&meta, metadata_json(run))?;
    Ok((csv, meta))
}
