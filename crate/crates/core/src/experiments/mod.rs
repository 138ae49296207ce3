//! Monte Carlo engines.
//!
//! Every shot draws from its own RNG seeded by mixing `(seed, trial, shot)`,
//! and aggregation only sums integer counts, so results are bit-identical for
//! any thread count or scheduling order.

pub mod dj;
pub mod qec_mc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use dj::{
    build_dj_circuit, run_dj_experiment, run_trials, DjCircuit, DjConfig, DjEngine, DjOp,
    ExperimentReport, ShotRecord, TrialResult, TrialSummary,
};
pub use qec_mc::{
    run_qec_montecarlo, sample_error_mask, OutcomeCounts, QecMonteCarloConfig, QecMonteCarloReport,
};

use crate::noise_algebra::AlgebraError;
use crate::sensor_qec::QecError;
use crate::statevector::SimError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("circuit file line {line}: {message}")]
    CircuitParse { line: usize, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Qec(#[from] QecError),
    #[error(transparent)]
    Sim(#[from] SimError),
}

pub(crate) fn check_probability(name: &str, value: f64) -> Result<(), ExperimentError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(ExperimentError::InvalidConfig(format!(
            "{name} = {value} is outside [0, 1]"
        )))
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for the substream of one shot.
pub fn substream_seed(master: u64, trial: u64, shot: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ trial) ^ shot)
}

pub fn shot_rng(master: u64, trial: u64, shot: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(substream_seed(master, trial, shot))
}

/// Binomial standard error `sqrt(p(1-p)/n)`.
pub fn binomial_sigma(p: f64, n: u64) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Sample mean and (n-1)-normalized standard deviation.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substreams_are_distinct_and_stable() {
        let a = substream_seed(1, 0, 0);
        assert_eq!(a, substream_seed(1, 0, 0));
        assert_ne!(a, substream_seed(1, 0, 1));
        assert_ne!(a, substream_seed(1, 1, 0));
        assert_ne!(a, substream_seed(2, 0, 0));
        // trial and shot are not interchangeable
        assert_ne!(substream_seed(9, 1, 2), substream_seed(9, 2, 1));
    }

    #[test]
    fn mean_std_matches_hand_computation() {
        let (m, s) = mean_std(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(mean_std(&[2.0]), (2.0, 0.0));
    }
}
