//! Pignistic probabilities and the maximum-BetP decision.

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::mass::MassFunction;

/// Entries within this distance of the maximum count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Probability over the singletons of a frame.
#[derive(Clone, Debug, PartialEq)]
pub struct PignisticDistribution {
    frame: Frame,
    probs: Vec<f64>,
}

impl PignisticDistribution {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, index: usize) -> f64 {
        self.probs[index]
    }
}

/// BetP(θ) = Σ_{A ∋ θ} m(A) / |A|.
///
/// Open-world assignments are refused: mass on `∅` has no singleton to go to.
pub fn betp(m: &MassFunction) -> Result<PignisticDistribution> {
    if m.is_open_world() {
        return Err(Error::OpenWorldInput);
    }
    m.validate().map_err(Error::Invalid)?;
    let mut probs = vec![0.0; m.frame().len()];
    for (set, mass) in m.iter() {
        let share = mass / set.len() as f64;
        for i in set.iter() {
            probs[i] += share;
        }
    }
    Ok(PignisticDistribution {
        frame: m.frame().clone(),
        probs,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Decision {
    pub index: usize,
    pub probability: f64,
    /// Another singleton is within [`TIE_TOLERANCE`] of the maximum; `index`
    /// is then the lowest tied index.
    pub tie: bool,
}

pub fn decide(p: &PignisticDistribution) -> Decision {
    let max = p.probs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut tied = p
        .probs
        .iter()
        .enumerate()
        .filter(|(_, v)| max - **v <= TIE_TOLERANCE)
        .map(|(i, _)| i);
    let index = tied.next().expect("distribution has at least one entry");
    Decision {
        index,
        probability: p.probs[index],
        tie: tied.next().is_some(),
    }
}
