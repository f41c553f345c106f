mod common;

use belief_fusion::{betp, decide, MassFunction};
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn betp_sums_to_one(m in (1usize..=5).prop_flat_map(bba_on)) {
        let p = betp(&m).unwrap();
        prop_assert!((p.probs().iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        prop_assert!(p.probs().iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn betp_is_linear(
        (w1, w2) in (1usize..=5).prop_flat_map(|n| (focal_weights(n, 6), focal_weights(n, 6))),
        lambda in 0.0f64..=1.0,
    ) {
        let n = w1.iter().chain(&w2).map(|(m, _)| 32 - m.leading_zeros()).max().unwrap() as usize;
        let f = frame(n);
        let (m1, m2) = (bba(&f, &w1), bba(&f, &w2));
        let mix = MassFunction::new(
            &f,
            m1.iter()
                .map(|(s, m)| (s.clone(), lambda * m))
                .chain(m2.iter().map(|(s, m)| (s.clone(), (1.0 - lambda) * m))),
        )
        .unwrap();
        let (p1, p2, pm) = (betp(&m1).unwrap(), betp(&m2).unwrap(), betp(&mix).unwrap());
        for i in 0..n {
            let expected = lambda * p1.prob(i) + (1.0 - lambda) * p2.prob(i);
            prop_assert!((pm.prob(i) - expected).abs() <= 1e-12);
        }
    }

    #[test]
    fn small_noise_keeps_the_decision(
        raw in prop::collection::vec(0.01f64..1.0, 2..=5),
        noise in prop::collection::vec(-1.0f64..1.0, 5),
    ) {
        let n = raw.len();
        let f = frame(n);
        let singletons: Vec<(u32, f64)> = raw.iter().enumerate().map(|(i, &w)| (1 << i, w)).collect();
        let p = betp(&bba(&f, &singletons)).unwrap();
        let d = decide(&p);
        let mut sorted = p.probs().to_vec();
        sorted.sort_by(|a, b| b.total_cmp(a));
        let gap = sorted[0] - sorted[1];
        prop_assume!(gap > 1e-6);
        prop_assert!(!d.tie);
        let noisy: Vec<(u32, f64)> = (0..n)
            .map(|i| (1 << i, p.prob(i) + 1.0 + noise[i] * gap / 4.0))
            .collect();
        prop_assert_eq!(decide(&betp(&bba(&f, &noisy)).unwrap()).index, d.index);
    }
}

#[test]
fn exact_tie_picks_lowest_index() {
    let f = frame(3);
    let p = betp(&bba(&f, &[(0b110, 1.0)])).unwrap();
    let d = decide(&p);
    assert_eq!((d.index, d.tie), (1, true));
    assert_eq!(d.probability, 0.5);
}

#[test]
fn open_world_states_are_refused() {
    let f = frame(2);
    let m1 = bba(&f, &[(0b01, 1.0)]);
    let m2 = bba(&f, &[(0b10, 0.5), (0b11, 0.5)]);
    let smets = belief_fusion::rules::smets(&m1, &m2).unwrap();
    assert!(betp(&smets).is_err());
}
