use anascore::assignment::{km_assign, ScoreMatrix};
use anascore::metrics::{evaluate, DeltaTerm, LeaConfig, Metric};
use anascore::model::{flatten, DocumentSet};
use anascore::oracle::{brute_force_assignment, generate_instance, RandomInstanceSpec};
use proptest::prelude::*;

fn instance(seed: u64) -> (DocumentSet, DocumentSet) {
    let (k, r) = generate_instance(&RandomInstanceSpec {
        seed,
        set_probability: 0.5,
        ..RandomInstanceSpec::default()
    });
    (flatten(&k).unwrap(), flatten(&r).unwrap())
}

fn in_unit(x: f64) -> bool {
    (0.0..=1.0 + 1e-12).contains(&x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn flatten_is_idempotent(seed in any::<u64>()) {
        let (k, r) = generate_instance(&RandomInstanceSpec { seed, set_probability: 0.6, ..RandomInstanceSpec::default() });
        for d in [k, r] {
            let once = flatten(&d).unwrap();
            prop_assert_eq!(flatten(&once).unwrap(), once);
        }
    }

    #[test]
    fn scores_are_ratios(seed in any::<u64>()) {
        let (k, r) = instance(seed);
        for m in Metric::ALL {
            let s = evaluate(m, &k, &r, LeaConfig::default()).score;
            prop_assert!(in_unit(s.recall()) && in_unit(s.precision()) && in_unit(s.f1()), "{} {:?}", m, s);
        }
    }

    #[test]
    fn swapping_sides_swaps_recall_and_precision(seed in any::<u64>()) {
        let (k, r) = instance(seed);
        for m in Metric::ALL {
            let a = evaluate(m, &k, &r, LeaConfig::default()).score;
            let b = evaluate(m, &r, &k, LeaConfig::default()).score;
            prop_assert!((a.recall() - b.precision()).abs() < 1e-9, "{} recall {} vs {}", m, a.recall(), b.precision());
            prop_assert!((a.precision() - b.recall()).abs() < 1e-9, "{} precision", m);
        }
    }

    #[test]
    fn credit_terms_lie_in_unit_interval(seed in any::<u64>()) {
        let (k, r) = instance(seed);
        for m in Metric::ALL {
            let e = evaluate(m, &k, &r, LeaConfig::default());
            let all: Vec<&DeltaTerm> = e.deltas.recall.iter().chain(&e.deltas.precision).collect();
            for t in all {
                prop_assert!(in_unit(t.value) && t.value >= 0.0, "{} {:?}", m, t);
            }
        }
    }

    #[test]
    fn identity_scores_one(seed in any::<u64>()) {
        let (k, _) = instance(seed);
        for m in Metric::ALL {
            let s = evaluate(m, &k, &k, LeaConfig::with_beta(3.0)).score;
            prop_assert_eq!((s.recall(), s.precision(), s.f1()), (1.0, 1.0, 1.0), "{}", m);
        }
    }

    #[test]
    fn alignment_is_one_to_one(seed in any::<u64>()) {
        let (k, r) = instance(seed);
        for m in Metric::ALL {
            let a = evaluate(m, &k, &r, LeaConfig::default()).alignment;
            let mut keys: Vec<&str> = a.pairs.iter().map(|p| p.0.as_str()).collect();
            let mut resps: Vec<&str> = a.pairs.iter().map(|p| p.1.as_str()).collect();
            keys.sort_unstable();
            keys.dedup();
            resps.sort_unstable();
            resps.dedup();
            prop_assert_eq!(keys.len(), a.len());
            prop_assert_eq!(resps.len(), a.len());
            prop_assert!(a.pairs.iter().all(|p| p.2 > 0.0));
        }
    }

    #[test]
    fn km_matches_brute_force(rows in 1usize..=6, cols in 1usize..=6, cells in prop::collection::vec(0u32..=32, 36)) {
        let mut m = ScoreMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, cells[i * 6 + j] as f64 / 32.0).unwrap();
            }
        }
        let pairs = km_assign(&m);
        let got: f64 = pairs.iter().map(|&(i, j)| m.get(i, j)).sum();
        prop_assert_eq!(got, brute_force_assignment(&m).unwrap());
    }
}

#[test]
fn km_ties_pick_smallest_pairing() {
    let m = ScoreMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
    assert_eq!(km_assign(&m), vec![(0, 0), (1, 1)]);
}
