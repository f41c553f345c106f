#![allow(dead_code)]

use belief_fusion::{FocalSet, Frame, MassFunction};
use proptest::prelude::*;

pub fn frame(n: usize) -> Frame {
    Frame::new((0..n).map(|i| format!("h{i}"))).unwrap()
}

pub fn set_of(frame: &Frame, mask: u32) -> FocalSet {
    FocalSet::from_indices(frame.len(), (0..frame.len()).filter(|i| mask >> i & 1 == 1)).unwrap()
}

pub fn mask_of(set: &FocalSet) -> u32 {
    set.iter().fold(0, |m, i| m | 1 << i)
}

/// Normalises positive weights over non-empty masks into a bba.
pub fn bba(frame: &Frame, focal: &[(u32, f64)]) -> MassFunction {
    let total: f64 = focal.iter().map(|(_, w)| w).sum();
    MassFunction::new(
        frame,
        focal.iter().map(|&(m, w)| (set_of(frame, m), w / total)),
    )
    .unwrap()
}

/// Raw (mask, weight) lists for a frame of `n` hypotheses.
pub fn focal_weights(n: usize, max_focal: usize) -> impl Strategy<Value = Vec<(u32, f64)>> {
    let top = (1u32 << n) - 1;
    prop::collection::vec((1..=top, 0.01f64..1.0), 1..=max_focal)
}

pub fn bba_on(n: usize) -> impl Strategy<Value = MassFunction> {
    focal_weights(n, 6).prop_map(move |w| bba(&frame(n), &w))
}

/// Two bbas on a shared frame of 1 to 5 hypotheses.
pub fn bba_pair() -> impl Strategy<Value = (MassFunction, MassFunction)> {
    (1usize..=5).prop_flat_map(|n| (bba_on(n), bba_on(n)))
}

pub fn bba_triple() -> impl Strategy<Value = (MassFunction, MassFunction, MassFunction)> {
    (1usize..=5).prop_flat_map(|n| (bba_on(n), bba_on(n), bba_on(n)))
}

/// Every subset's mass, indexed by bitmask.
pub fn dense(m: &MassFunction) -> Vec<f64> {
    let mut out = vec![0.0; 1 << m.frame().len()];
    for (set, mass) in m.iter() {
        out[mask_of(set) as usize] += mass;
    }
    out
}

pub fn max_dense_diff(m: &MassFunction, oracle: &[f64]) -> f64 {
    dense(m)
        .iter()
        .zip(oracle)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}
