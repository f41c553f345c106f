//! Two-source combination rules.
//!
//! Each rule takes two valid closed-world assignments on a shared frame and
//! decides what happens to the conflicting mass `k12`, the conjunctive mass
//! that lands on `∅`:
//!
//! | rule | where the conflict goes |
//! |------|-------------------------|
//! | [`dempster`] | spread over every focal set by normalization |
//! | [`smets`] | kept on `∅` (open world) |
//! | [`yager`] | moved to the whole frame |
//! | [`dubois_prade`] / [`dsmh`] | each partial conflict goes to `X ∪ Y` |
//! | [`inagaki_generic`] | split by an explicit weight assignment |
//! | [`inagaki_extreme`] | onto non-frame focal sets, keeping their ratios |
//! | [`acr_generic`] / [`sacr`] | mix of disjunctive and conjunctive results |
//! | [`pcr`] | each partial conflict goes back to the two sets involved, proportionally |

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::combine::{check_pair, conflict_unchecked, conjunctive_sums};
use crate::error::{Error, Result};
use crate::frame::{FocalSet, Frame};
use crate::mass::{MassFunction, MASS_TOLERANCE};

/// `1 − k12` at or below this is treated as total conflict by Dempster's rule.
pub const TOTAL_CONFLICT_TOLERANCE: f64 = 1e-12;

/// Tolerance on the endpoint conditions `β(0) = 1`, `β(1) = 0`.
pub const BETA_ENDPOINT_TOLERANCE: f64 = 1e-12;

/// The named, parameter-free rules.
///
/// The parameterized families are plain functions: [`inagaki_generic`]
/// takes a [`WeightAssignment`] and [`acr_generic`] takes a `β` function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum RuleId {
    Dempster,
    Smets,
    Yager,
    DuboisPrade,
    /// Hybrid DSm rule. On Shafer's model with static fusion it is the
    /// Dubois & Prade rule.
    DSmH,
    InagakiExtreme,
    Sacr,
    Pcr,
}

impl RuleId {
    pub const ALL: [RuleId; 8] = [
        RuleId::Dempster,
        RuleId::Smets,
        RuleId::Yager,
        RuleId::DuboisPrade,
        RuleId::DSmH,
        RuleId::InagakiExtreme,
        RuleId::Sacr,
        RuleId::Pcr,
    ];

    /// Stable lowercase identifier used on the command line and in files.
    pub fn name(self) -> &'static str {
        match self {
            RuleId::Dempster => "dempster",
            RuleId::Smets => "smets",
            RuleId::Yager => "yager",
            RuleId::DuboisPrade => "dubois-prade",
            RuleId::DSmH => "dsmh",
            RuleId::InagakiExtreme => "inagaki",
            RuleId::Sacr => "sacr",
            RuleId::Pcr => "pcr",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            RuleId::Dempster => "normalized conjunctive rule",
            RuleId::Smets => "unnormalized conjunctive rule, conflict kept on the empty set",
            RuleId::Yager => "conflict transferred to total ignorance",
            RuleId::DuboisPrade => {
                "partial conflicts transferred to the union of the sets involved"
            }
            RuleId::DSmH => "hybrid DSm rule (same as dubois-prade on Shafer's model)",
            RuleId::InagakiExtreme => "Inagaki's extreme rule, ratio-preserving redistribution",
            RuleId::Sacr => "symmetric adaptive combination of disjunctive and conjunctive rules",
            RuleId::Pcr => "proportional conflict redistribution",
        }
    }

    /// Whether the output is a closed-world assignment that can be fused again.
    pub fn is_closed_world(self) -> bool {
        self != RuleId::Smets
    }

    pub fn combine(self, m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
        match self {
            RuleId::Dempster => dempster(m1, m2),
            RuleId::Smets => smets(m1, m2),
            RuleId::Yager => yager(m1, m2),
            RuleId::DuboisPrade => dubois_prade(m1, m2),
            RuleId::DSmH => dsmh(m1, m2),
            RuleId::InagakiExtreme => inagaki_extreme(m1, m2),
            RuleId::Sacr => sacr(m1, m2),
            RuleId::Pcr => pcr(m1, m2),
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::UnknownRule(s.to_owned()))
    }
}

impl TryFrom<String> for RuleId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<RuleId> for String {
    fn from(r: RuleId) -> String {
        r.name().to_owned()
    }
}

/// Dempster's rule: the conjunctive result renormalized over non-empty sets.
///
/// Fails with [`Error::TotalConflict`] when `1 − k12` is within
/// [`TOTAL_CONFLICT_TOLERANCE`] of zero.
pub fn dempster(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    let frame = check_pair(m1, m2)?;
    let mut acc = conjunctive_sums(m1, m2);
    let conflict = acc.remove(&frame.empty_set()).unwrap_or(0.0);
    if 1.0 - conflict <= TOTAL_CONFLICT_TOLERANCE {
        return Err(Error::TotalConflict { conflict });
    }
    // The non-empty total equals 1 − k12 but does not lose digits to
    // cancellation when k12 is close to 1.
    let norm: f64 = acc.values().sum();
    for mass in acc.values_mut() {
        *mass /= norm;
    }
    Ok(MassFunction::from_accumulated(frame, acc, false))
}

/// Smets' rule: the unnormalized conjunctive result, conflict left on `∅`.
pub fn smets(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    crate::combine::conjunctive(m1, m2)
}

/// Yager's rule: the conflict is added to the mass of the whole frame.
pub fn yager(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    let frame = check_pair(m1, m2)?;
    let mut acc = conjunctive_sums(m1, m2);
    let conflict = acc.remove(&frame.empty_set()).unwrap_or(0.0);
    *acc.entry(frame.full_set()).or_insert(0.0) += conflict;
    Ok(MassFunction::from_accumulated(frame, acc, false))
}

/// Dubois & Prade's rule: agreeing pairs go to `X ∩ Y`, conflicting pairs
/// to `X ∪ Y`.
pub fn dubois_prade(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    let frame = check_pair(m1, m2)?;
    let mut acc = BTreeMap::new();
    for (x, a) in m1.iter() {
        for (y, b) in m2.iter() {
            let meet = x.intersection(y);
            let target = if meet.is_empty() { x.union(y) } else { meet };
            *acc.entry(target).or_insert(0.0) += a * b;
        }
    }
    Ok(MassFunction::from_accumulated(frame, acc, false))
}

/// Hybrid DSm rule restricted to Shafer's model, where it coincides with
/// [`dubois_prade`] for static fusion.
pub fn dsmh(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    dubois_prade(m1, m2)
}

/// Non-negative weights over non-empty sets summing to one, used by
/// [`inagaki_generic`] to split the conflict.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightAssignment {
    frame: Frame,
    weights: BTreeMap<FocalSet, f64>,
}

impl WeightAssignment {
    pub fn new(frame: &Frame, weights: impl IntoIterator<Item = (FocalSet, f64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (set, w) in weights {
            if set.width() != frame.len() {
                return Err(Error::WidthMismatch {
                    expected: frame.len(),
                    found: set.width(),
                });
            }
            if set.is_empty() {
                return Err(Error::InvalidWeights("weight on the empty set".into()));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidWeights(format!(
                    "weight {w} on {} is not in [0, 1]",
                    frame.display_set(&set)
                )));
            }
            *map.entry(set).or_insert(0.0) += w;
        }
        map.retain(|_, w| *w != 0.0);
        let sum: f64 = map.values().sum();
        if (sum - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {sum}, expected 1"
            )));
        }
        Ok(Self {
            frame: frame.clone(),
            weights: map,
        })
    }

    /// All weight on the whole frame; reproduces Yager's rule.
    pub fn yager(frame: &Frame) -> Self {
        Self {
            frame: frame.clone(),
            weights: BTreeMap::from([(frame.full_set(), 1.0)]),
        }
    }

    /// Normalized conjunctive masses; reproduces Dempster's rule.
    pub fn dempster(m1: &MassFunction, m2: &MassFunction) -> Result<Self> {
        let frame = check_pair(m1, m2)?;
        let mut acc = conjunctive_sums(m1, m2);
        let conflict = acc.remove(&frame.empty_set()).unwrap_or(0.0);
        if 1.0 - conflict <= TOTAL_CONFLICT_TOLERANCE {
            return Err(Error::TotalConflict { conflict });
        }
        Self::new(
            frame,
            acc.into_iter().map(|(s, m)| (s, m / (1.0 - conflict))),
        )
    }

    /// Each partial conflict's share of `k12`, placed on `X ∪ Y`;
    /// reproduces the Dubois & Prade rule. Requires `k12 > 0`.
    pub fn dubois_prade(m1: &MassFunction, m2: &MassFunction) -> Result<Self> {
        let frame = check_pair(m1, m2)?;
        let decomposition = conflict_unchecked(m1, m2);
        if decomposition.total == 0.0 {
            return Err(Error::Degenerate(
                "Dubois-Prade weights are undefined without conflict".into(),
            ));
        }
        Self::new(
            frame,
            decomposition
                .pairs
                .into_iter()
                .map(|p| (p.first.union(&p.second), p.product / decomposition.total)),
        )
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn weight(&self, set: &FocalSet) -> f64 {
        self.weights.get(set).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FocalSet, f64)> + '_ {
        self.weights.iter().map(|(s, w)| (s, *w))
    }
}

/// Inagaki's general rule: `m(A) = m∧(A) + w(A)·k12` for non-empty `A`.
pub fn inagaki_generic(
    m1: &MassFunction,
    m2: &MassFunction,
    weights: &WeightAssignment,
) -> Result<MassFunction> {
    let frame = check_pair(m1, m2)?;
    if !weights.frame.same_as(frame) {
        return Err(Error::FrameMismatch);
    }
    let mut acc = conjunctive_sums(m1, m2);
    let conflict = acc.remove(&frame.empty_set()).unwrap_or(0.0);
    for (set, w) in weights.iter() {
        *acc.entry(set.clone()).or_insert(0.0) += w * conflict;
    }
    Ok(MassFunction::from_accumulated(frame, acc, false))
}

/// Inagaki's extreme rule.
///
/// The conflict is given to the focal sets other than the whole frame, in
/// proportion to their conjunctive masses, so the ratio between any two of
/// them is unchanged and the frame keeps exactly its conjunctive mass.
/// Without conflict the conjunctive result is returned as is; with conflict
/// but no non-frame focal set to receive it the result is
/// [`Error::Degenerate`].
pub fn inagaki_extreme(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    let frame = check_pair(m1, m2)?;
    let mut acc = conjunctive_sums(m1, m2);
    let conflict = acc.remove(&frame.empty_set()).unwrap_or(0.0);
    if conflict == 0.0 {
        return Ok(MassFunction::from_accumulated(frame, acc, false));
    }
    let full = frame.full_set();
    let receivers: f64 = acc
        .iter()
        .filter(|(set, _)| **set != full)
        .map(|(_, m)| *m)
        .sum();
    if receivers == 0.0 {
        return Err(Error::Degenerate(
            "no focal set other than the frame can receive the conflict".into(),
        ));
    }
    let scale = 1.0 + conflict / receivers;
    for (set, mass) in acc.iter_mut() {
        if *set != full {
            *mass *= scale;
        }
    }
    Ok(MassFunction::from_accumulated(frame, acc, false))
}

/// Weights `α(k12)` on the disjunctive result and `β(k12)` on the
/// conjunctive one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AcrCoefficients {
    pub alpha: f64,
    pub beta: f64,
    /// The `k12` these coefficients were evaluated at.
    pub conflict: f64,
}

impl AcrCoefficients {
    /// Coefficients for an arbitrary `β`, with `α = 1 − (1 − k)·β(k)` so
    /// that the mixture is normalized.
    ///
    /// `β` must satisfy `β(0) = 1`, `β(1) = 0` and `β(k) ∈ [0, 1]`. Its
    /// monotonicity is not checked. A conflict that rounding pushed just
    /// outside `[0, 1]` is clamped first.
    pub fn from_beta(conflict: f64, beta: impl Fn(f64) -> f64) -> Result<Self> {
        let conflict = conflict.clamp(0.0, 1.0);
        let at_zero = beta(0.0);
        if at_zero.is_nan() || (at_zero - 1.0).abs() > BETA_ENDPOINT_TOLERANCE {
            return Err(Error::InvalidBeta(format!(
                "beta(0) = {at_zero}, expected 1"
            )));
        }
        let at_one = beta(1.0);
        if at_one.is_nan() || at_one.abs() > BETA_ENDPOINT_TOLERANCE {
            return Err(Error::InvalidBeta(format!(
                "beta(1) = {at_one}, expected 0"
            )));
        }
        let b = beta(conflict);
        if !(0.0..=1.0).contains(&b) {
            return Err(Error::InvalidBeta(format!(
                "beta({conflict}) = {b} is outside [0, 1]"
            )));
        }
        Ok(Self {
            alpha: 1.0 - (1.0 - conflict) * b,
            beta: b,
            conflict,
        })
    }

    /// The symmetric coefficients `α0(k) = k / (1 − k + k²)` and
    /// `β0(k) = (1 − k) / (1 − k + k²)`.
    pub fn symmetric(conflict: f64) -> Self {
        let conflict = conflict.clamp(0.0, 1.0);
        let k = conflict;
        let denom = 1.0 - k + k * k;
        Self {
            alpha: k / denom,
            beta: (1.0 - k) / denom,
            conflict,
        }
    }
}

/// `β0` of the symmetric adaptive rule, as a free function for
/// [`acr_generic`].
pub fn symmetric_beta(k: f64) -> f64 {
    AcrCoefficients::symmetric(k).beta
}

fn mix(
    frame: &Frame,
    m1: &MassFunction,
    m2: &MassFunction,
    coefficients: AcrCoefficients,
) -> MassFunction {
    let mut acc = conjunctive_sums(m1, m2);
    acc.remove(&frame.empty_set());
    for mass in acc.values_mut() {
        *mass *= coefficients.beta;
    }
    for (x, a) in m1.iter() {
        for (y, b) in m2.iter() {
            *acc.entry(x.union(y)).or_insert(0.0) += coefficients.alpha * a * b;
        }
    }
    MassFunction::from_accumulated(frame, acc, false)
}

/// Generic adaptive combination: `α(k12)·m∨(A) + β(k12)·m∧(A)`.
pub fn acr_generic(
    m1: &MassFunction,
    m2: &MassFunction,
    beta: impl Fn(f64) -> f64,
) -> Result<MassFunction> {
    let frame = check_pair(m1, m2)?;
    let conflict = conflict_unchecked(m1, m2).total;
    let coefficients = AcrCoefficients::from_beta(conflict, beta)?;
    Ok(mix(frame, m1, m2, coefficients))
}

/// The symmetric adaptive combination rule (SACR).
pub fn sacr(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    let frame = check_pair(m1, m2)?;
    let conflict = conflict_unchecked(m1, m2).total;
    Ok(mix(frame, m1, m2, AcrCoefficients::symmetric(conflict)))
}

/// Inagaki weights equivalent to the adaptive rule with the given `β`:
/// `w(A) = (1 − β)/k12 · (m∨(A) − m∧(A)) + β·m∨(A)`.
///
/// This is a diagnostic; entries can be negative, which is what places the
/// adaptive rules outside Inagaki's family. Requires `k12 > 0`.
pub fn acr_inagaki_weights(
    m1: &MassFunction,
    m2: &MassFunction,
    beta: impl Fn(f64) -> f64,
) -> Result<BTreeMap<FocalSet, f64>> {
    let frame = check_pair(m1, m2)?;
    let mut conj = conjunctive_sums(m1, m2);
    let conflict = conj.remove(&frame.empty_set()).unwrap_or(0.0);
    if conflict == 0.0 {
        return Err(Error::Degenerate(
            "Inagaki weights of an adaptive rule are undefined without conflict".into(),
        ));
    }
    let b = AcrCoefficients::from_beta(conflict, beta)?.beta;
    let mut disj = BTreeMap::new();
    for (x, a) in m1.iter() {
        for (y, c) in m2.iter() {
            *disj.entry(x.union(y)).or_insert(0.0) += a * c;
        }
    }
    let mut weights = BTreeMap::new();
    for set in conj.keys().chain(disj.keys()) {
        let or = disj.get(set).copied().unwrap_or(0.0);
        let and = conj.get(set).copied().unwrap_or(0.0);
        weights.insert(set.clone(), (1.0 - b) / conflict * (or - and) + b * or);
    }
    Ok(weights)
}

/// How one partial conflict `m1(first)·m2(second)` is handed back by PCR.
#[derive(Clone, Debug, PartialEq)]
pub struct PcrShare {
    /// Focal set of the first source.
    pub first: FocalSet,
    /// Focal set of the second source, disjoint from `first`.
    pub second: FocalSet,
    /// The partial conflict `m1(first)·m2(second)`.
    pub conflict: f64,
    /// Part returned to `first`, proportional to `m1(first)`.
    pub to_first: f64,
    /// Part returned to `second`, proportional to `m2(second)`.
    pub to_second: f64,
}

/// The proportional redistribution of every partial conflict, one share per
/// conflicting pair of focal sets.
pub fn pcr_redistribution(m1: &MassFunction, m2: &MassFunction) -> Result<Vec<PcrShare>> {
    check_pair(m1, m2)?;
    Ok(pcr_shares(m1, m2))
}

fn pcr_shares(m1: &MassFunction, m2: &MassFunction) -> Vec<PcrShare> {
    conflict_unchecked(m1, m2)
        .pairs
        .into_iter()
        .filter_map(|pair| {
            let a = m1.mass(&pair.first);
            let b = m2.mass(&pair.second);
            let denom = a + b;
            // Exact test: with non-negative masses the denominator only
            // vanishes together with the product.
            if denom == 0.0 {
                return None;
            }
            Some(PcrShare {
                to_first: a * a * b / denom,
                to_second: a * b * b / denom,
                conflict: pair.product,
                first: pair.first,
                second: pair.second,
            })
        })
        .collect()
}

/// Proportional conflict redistribution (PCR) for two sources.
///
/// Conjunctive masses on non-empty sets are kept. Each partial conflict
/// `m1(X)·m2(Y)` with `X ∩ Y = ∅` is split between `X` and `Y` in the ratio
/// `m1(X) : m2(Y)`.
pub fn pcr(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    let frame = check_pair(m1, m2)?;
    let mut acc = conjunctive_sums(m1, m2);
    acc.remove(&frame.empty_set());
    for share in pcr_shares(m1, m2) {
        *acc.entry(share.first).or_insert(0.0) += share.to_first;
        *acc.entry(share.second).or_insert(0.0) += share.to_second;
    }
    Ok(MassFunction::from_accumulated(frame, acc, false))
}
