//! The conjunctive and disjunctive operators and the degree of conflict.
//!
//! Every rule in [`crate::rules`] is built from these three. Inputs must be
//! valid closed-world assignments on the same frame.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::frame::{FocalSet, Frame};
use crate::mass::MassFunction;

/// Checks the shared preconditions of every two-source operator and
/// returns the common frame.
pub(crate) fn check_pair<'a>(m1: &'a MassFunction, m2: &MassFunction) -> Result<&'a Frame> {
    if !m1.frame().same_as(m2.frame()) {
        return Err(Error::FrameMismatch);
    }
    m1.ensure_closed_valid()?;
    m2.ensure_closed_valid()?;
    Ok(m1.frame())
}

/// Sums `m1(X)·m2(Y)` onto `X ∩ Y` for every focal pair, including the
/// conflicting pairs landing on `∅`.
///
/// The result is flagged open-world; its mass on `∅` is the degree of
/// conflict `k12`.
pub fn conjunctive(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    let frame = check_pair(m1, m2)?;
    Ok(MassFunction::from_accumulated(
        frame,
        conjunctive_sums(m1, m2),
        true,
    ))
}

/// Sums `m1(X)·m2(Y)` onto `X ∪ Y` for every focal pair.
pub fn disjunctive(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    let frame = check_pair(m1, m2)?;
    let mut acc = BTreeMap::new();
    for (x, a) in m1.iter() {
        for (y, b) in m2.iter() {
            *acc.entry(x.union(y)).or_insert(0.0) += a * b;
        }
    }
    Ok(MassFunction::from_accumulated(frame, acc, false))
}

// Iteration order (m1 outer, m2 inner) is shared with `conflict`, so the
// empty-set total is summed along the identical path in both.
pub(crate) fn conjunctive_sums(m1: &MassFunction, m2: &MassFunction) -> BTreeMap<FocalSet, f64> {
    let mut acc = BTreeMap::new();
    for (x, a) in m1.iter() {
        for (y, b) in m2.iter() {
            *acc.entry(x.intersection(y)).or_insert(0.0) += a * b;
        }
    }
    acc
}

/// One conflicting pair: `first` is focal for the first source, `second`
/// for the second, and the two sets are disjoint.
#[derive(Clone, Debug, PartialEq)]
pub struct ConflictPair {
    pub first: FocalSet,
    pub second: FocalSet,
    pub product: f64,
}

/// The degree of conflict `k12` and the disjoint focal pairs it comes from.
#[derive(Clone, Debug, PartialEq)]
pub struct ConflictDecomposition {
    pub total: f64,
    pub pairs: Vec<ConflictPair>,
}

pub fn conflict(m1: &MassFunction, m2: &MassFunction) -> Result<ConflictDecomposition> {
    check_pair(m1, m2)?;
    Ok(conflict_unchecked(m1, m2))
}

pub(crate) fn conflict_unchecked(m1: &MassFunction, m2: &MassFunction) -> ConflictDecomposition {
    let mut total = 0.0;
    let mut pairs = Vec::new();
    for (x, a) in m1.iter() {
        for (y, b) in m2.iter() {
            if x.is_disjoint(y) {
                let product = a * b;
                total += product;
                if product > 0.0 {
                    pairs.push(ConflictPair {
                        first: x.clone(),
                        second: y.clone(),
                        product,
                    });
                }
            }
        }
    }
    ConflictDecomposition { total, pairs }
}
