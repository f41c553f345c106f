//! Algebraic properties of the combination rules on random bbas.

mod common;

use belief_fusion::rules::{self, AcrCoefficients, WeightAssignment};
use belief_fusion::{combine, Error, MassFunction, RuleId};
use common::*;
use proptest::prelude::*;

fn rule_outputs(m1: &MassFunction, m2: &MassFunction) -> Vec<(RuleId, MassFunction)> {
    RuleId::ALL
        .iter()
        .filter_map(|&r| match r.combine(m1, m2) {
            Ok(m) => Some((r, m)),
            Err(Error::TotalConflict { .. } | Error::Degenerate(_)) => None,
            Err(e) => panic!("{r}: {e}"),
        })
        .collect()
}

/// Decreasing β with the required endpoints, different from SACR's.
fn linear_beta(k: f64) -> f64 {
    1.0 - k
}

fn quadratic_beta(k: f64) -> f64 {
    (1.0 - k) * (1.0 - k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn outputs_are_valid((m1, m2) in bba_pair()) {
        for (rule, m) in rule_outputs(&m1, &m2) {
            prop_assert!(m.validate().is_ok(), "{rule}: {:?}", m.validate());
            prop_assert_eq!(m.is_open_world(), !rule.is_closed_world());
            prop_assert!((m.total() - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn commutative((m1, m2) in bba_pair()) {
        let forward = rule_outputs(&m1, &m2);
        let backward = rule_outputs(&m2, &m1);
        prop_assert_eq!(forward.len(), backward.len());
        for ((rule, a), (_, b)) in forward.iter().zip(&backward) {
            prop_assert!(a.max_abs_diff(b) <= 1e-12, "{}", rule);
        }
        let d1 = combine::disjunctive(&m1, &m2).unwrap();
        let d2 = combine::disjunctive(&m2, &m1).unwrap();
        prop_assert!(d1.max_abs_diff(&d2) <= 1e-12);
    }

    #[test]
    fn associative((m1, m2, m3) in bba_triple()) {
        let c = |a: &MassFunction, b: &MassFunction| combine::conjunctive(a, b).unwrap();
        // The conjunctive result is open-world; its continuation is
        // computed densely to keep the empty-set mass.
        let left = dense_conj(&dense(&c(&m1, &m2)), &dense(&m3));
        let right = dense_conj(&dense(&m1), &dense(&c(&m2, &m3)));
        prop_assert!(left.iter().zip(&right).all(|(a, b)| (a - b).abs() <= 1e-9));

        let d = |a: &MassFunction, b: &MassFunction| combine::disjunctive(a, b).unwrap();
        prop_assert!(d(&d(&m1, &m2), &m3).max_abs_diff(&d(&m1, &d(&m2, &m3))) <= 1e-9);

        let ds = |a: &MassFunction, b: &MassFunction| rules::dempster(a, b);
        if let (Ok(l1), Ok(r1)) = (ds(&m1, &m2), ds(&m2, &m3)) {
            if let (Ok(l), Ok(r)) = (ds(&l1, &m3), ds(&m1, &r1)) {
                prop_assert!(l.max_abs_diff(&r) <= 1e-9);
            }
        }
    }

    #[test]
    fn vacuous_is_neutral(m in (1usize..=5).prop_flat_map(bba_on)) {
        let v = MassFunction::vacuous(m.frame());
        for rule in RuleId::ALL {
            let fused = rule.combine(&m, &v).unwrap();
            prop_assert!(fused.max_abs_diff(&m) <= 1e-12, "{}", rule);
        }
        prop_assert!(rules::pcr(&v, &m).unwrap().max_abs_diff(&m) <= 1e-12);
        prop_assert!(combine::disjunctive(&m, &v).unwrap().max_abs_diff(&v) <= 1e-12);
    }

    #[test]
    fn inagaki_subsumes_classical_rules((m1, m2) in bba_pair()) {
        let frame = m1.frame().clone();
        let yager = rules::inagaki_generic(&m1, &m2, &WeightAssignment::yager(&frame)).unwrap();
        prop_assert!(yager.max_abs_diff(&rules::yager(&m1, &m2).unwrap()) <= 1e-9);

        if let Ok(w) = WeightAssignment::dempster(&m1, &m2) {
            let ds = rules::inagaki_generic(&m1, &m2, &w).unwrap();
            prop_assert!(ds.max_abs_diff(&rules::dempster(&m1, &m2).unwrap()) <= 1e-9);
        }
        if let Ok(w) = WeightAssignment::dubois_prade(&m1, &m2) {
            let dp = rules::inagaki_generic(&m1, &m2, &w).unwrap();
            prop_assert!(dp.max_abs_diff(&rules::dubois_prade(&m1, &m2).unwrap()) <= 1e-9);
        }
    }

    #[test]
    fn dsmh_is_dubois_prade((m1, m2) in bba_pair()) {
        prop_assert_eq!(rules::dsmh(&m1, &m2).unwrap(), rules::dubois_prade(&m1, &m2).unwrap());
    }

    #[test]
    fn adaptive_rules_have_inagaki_weights((m1, m2) in bba_pair()) {
        let k = combine::conflict(&m1, &m2).unwrap().total;
        prop_assume!(k > 0.0);
        let conj = combine::conjunctive(&m1, &m2).unwrap();
        for beta in [rules::symmetric_beta as fn(f64) -> f64, linear_beta, quadratic_beta] {
            let acr = rules::acr_generic(&m1, &m2, beta).unwrap();
            let w = rules::acr_inagaki_weights(&m1, &m2, beta).unwrap();
            prop_assert!((w.values().sum::<f64>() - 1.0).abs() <= 1e-9);
            for (set, weight) in &w {
                let rebuilt = conj.mass(set) + weight * k;
                prop_assert!((rebuilt - acr.mass(set)).abs() <= 1e-9);
            }
            for (set, mass) in acr.iter() {
                prop_assert!(w.contains_key(set) || mass.abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn sacr_is_the_symmetric_adaptive_rule((m1, m2) in bba_pair()) {
        let generic = rules::acr_generic(&m1, &m2, rules::symmetric_beta).unwrap();
        prop_assert!(generic.max_abs_diff(&rules::sacr(&m1, &m2).unwrap()) <= 1e-12);
    }

    #[test]
    fn symmetric_coefficients(k in 0.0f64..=1.0) {
        let c = AcrCoefficients::symmetric(k);
        let mirrored = AcrCoefficients::symmetric(1.0 - k);
        prop_assert!((c.alpha - mirrored.beta).abs() <= 1e-12);
        prop_assert!((c.alpha - (1.0 - (1.0 - k) * c.beta)).abs() <= 1e-12);
        prop_assert!((0.0..=1.0).contains(&c.alpha) && (0.0..=1.0).contains(&c.beta));
    }

    #[test]
    fn pcr_conserves_each_partial_conflict((m1, m2) in bba_pair()) {
        let decomposition = combine::conflict(&m1, &m2).unwrap();
        let shares = rules::pcr_redistribution(&m1, &m2).unwrap();
        let returned: f64 = shares.iter().map(|s| s.to_first + s.to_second).sum();
        prop_assert!((returned - decomposition.total).abs() <= 1e-12);
        for s in &shares {
            prop_assert!((s.to_first + s.to_second - s.conflict).abs() <= 1e-12);
            prop_assert!(s.first.is_disjoint(&s.second));
            // Proportional to the masses that produced the conflict.
            let ratio = m1.mass(&s.first) * s.to_second - m2.mass(&s.second) * s.to_first;
            prop_assert!(ratio.abs() <= 1e-12);
        }
    }

    #[test]
    fn sacr_limits(m in (1usize..=5).prop_flat_map(bba_on)) {
        // No conflict: SACR is the conjunctive rule.
        let fused = rules::sacr(&m, &MassFunction::vacuous(m.frame())).unwrap();
        prop_assert!(fused.max_abs_diff(&m) <= 1e-12);
    }
}

fn dense_conj(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len()];
    for x in 0..a.len() {
        for y in 0..b.len() {
            out[x & y] += a[x] * b[y];
        }
    }
    out
}

#[test]
fn sacr_is_disjunctive_under_total_conflict() {
    let f = frame(3);
    let m1 = bba(&f, &[(0b001, 0.5), (0b010, 0.5)]);
    let m2 = bba(&f, &[(0b100, 1.0)]);
    let fused = rules::sacr(&m1, &m2).unwrap();
    let disj = combine::disjunctive(&m1, &m2).unwrap();
    assert!(fused.max_abs_diff(&disj) <= 1e-12);
    assert!(matches!(
        rules::dempster(&m1, &m2),
        Err(Error::TotalConflict { .. })
    ));
}

#[test]
fn pcr_is_continuous() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let eps = 1e-6;
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let f = frame(n);
        let focal = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<(u32, f64)> {
            (0..rng.gen_range(1..=6))
                .map(|_| (rng.gen_range(1..1u32 << n), rng.gen_range(0.01..1.0)))
                .collect()
        };
        let (w1, w2) = (focal(&mut rng), focal(&mut rng));
        let (m1, m2) = (bba(&f, &w1), bba(&f, &w2));
        let nudged: Vec<(u32, f64)> = w1
            .iter()
            .map(|&(m, w)| (m, w + eps * rng.gen_range(-1.0..1.0)))
            .collect();
        let m1b = bba(&f, &nudged);
        assert!(m1.max_abs_diff(&m1b) <= 10.0 * eps);
        let a = rules::pcr(&m1, &m2).unwrap();
        let b = rules::pcr(&m1b, &m2).unwrap();
        assert!(a.max_abs_diff(&b) <= 1e-3, "{a:?} vs {b:?}");
    }
}

#[test]
fn rounded_total_conflict_is_clamped() {
    let k = 1.0 + f64::EPSILON;
    let c = AcrCoefficients::from_beta(k, |k| 1.0 - k).unwrap();
    assert_eq!((c.alpha, c.beta, c.conflict), (1.0, 0.0, 1.0));
    let s = AcrCoefficients::symmetric(k);
    assert_eq!((s.alpha, s.beta), (1.0, 0.0));
}
