use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sensor_assist::experiments::{
    run_qec_montecarlo, sample_error_mask, DjConfig, DjEngine, QecMonteCarloConfig,
};
use sensor_assist::noise_algebra::{sweep_cell, ErrorProbabilities};

fn dj_config(gate_error: f64, detectable: f64, veto: bool, seed: u64) -> DjConfig {
    DjConfig {
        shots: 1,
        trials: 1,
        gate_error_prob: gate_error,
        detectable_fraction: detectable,
        veto_enabled: veto,
        seed,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qec_montecarlo_is_reproducible(seed in any::<u64>(), o in 0.0..0.5f64, p in 0.0..0.5f64) {
        let config = QecMonteCarloConfig::new(2_000, o, p, seed);
        let a = run_qec_montecarlo(&config).unwrap();
        let b = run_qec_montecarlo(&config).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn dj_is_reproducible(seed in any::<u64>(), q in 0.0..0.3f64) {
        let engine = DjEngine::canonical();
        let config = DjConfig { shots: 500, trials: 2, ..dj_config(q, 0.4, true, seed) };
        prop_assert_eq!(engine.run(&config).unwrap(), engine.run(&config).unwrap());
    }

    /// Enabling the veto only removes shots: every shot it keeps has the same
    /// error realization and the same measured outcome as without it.
    #[test]
    fn veto_never_adds_faults(seed in any::<u64>(), q in 0.0..0.5f64, d in 0.0..=1.0f64) {
        let engine = DjEngine::canonical();
        let correct = engine.correct_states();
        let labels = engine.outcome_labels();
        let is_fault = |m: &Option<String>| {
            m.as_ref().is_some_and(|s| !correct[labels.iter().position(|l| l == s).unwrap()])
        };
        let (mut faults_on, mut faults_off) = (0, 0);
        for shot in 0..200 {
            let on = engine.simulate_shot(&dj_config(q, d, true, seed), 0, shot);
            let off = engine.simulate_shot(&dj_config(q, d, false, seed), 0, shot);
            prop_assert_eq!(&on.error_sites_hit, &off.error_sites_hit);
            prop_assert_eq!(on.sensor_fired, off.sensor_fired);
            prop_assert!(!off.vetoed);
            if !on.vetoed {
                prop_assert_eq!(&on.measured, &off.measured);
            }
            faults_on += usize::from(is_fault(&on.measured));
            faults_off += usize::from(is_fault(&off.measured));
        }
        prop_assert!(faults_on <= faults_off);
    }

    /// With perfect sensors every realized flip is seen.
    #[test]
    fn perfect_sensors_are_complete(seed in any::<u64>(), q in 0.0..=1.0f64) {
        let engine = DjEngine::canonical();
        for shot in 0..100 {
            let rec = engine.simulate_shot(&dj_config(q, 1.0, true, seed), 0, shot);
            prop_assert_eq!(rec.sensor_fired, !rec.error_sites_hit.is_empty());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let (mask, sensor) = sample_error_mask(&mut rng, q, 0.3, 1.0);
            prop_assert_eq!(sensor, mask.env());
        }
    }

    /// Imperfect sensors never fire without an environmental flip.
    #[test]
    fn sensors_have_no_false_positives(seed in any::<u64>(), q in 0.0..=1.0f64, eff in 0.0..=1.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let (mask, sensor) = sample_error_mask(&mut rng, q, 0.3, eff);
            prop_assert_eq!(sensor & !mask.env(), 0);
        }
    }

    /// The assisted code can only lose to the standard one once entangling
    /// flips are more likely than not.
    #[test]
    fn sweep_cells_are_consistent(phat in 0.0..0.99f64, frac in 0.0..=1.0f64) {
        let cell = sweep_cell(phat, frac);
        let (s, a) = (cell.eff_fault_standard.unwrap(), cell.eff_fault_assisted.unwrap());
        prop_assert!((0.0..=1.0).contains(&s));
        if frac * phat <= 0.5 {
            prop_assert!(a <= s + 1e-15);
        }
        let probs = ErrorProbabilities::from_total(phat, frac * phat).unwrap();
        prop_assert!((probs.phat() - phat).abs() < 1e-15);
    }
}
