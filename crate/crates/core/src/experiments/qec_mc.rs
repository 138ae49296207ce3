//! Sampled-error validation of the sensor-assisted code.

use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{binomial_sigma, check_probability, shot_rng, ExperimentError};
use crate::noise_algebra::{outcome_fractions, ErrorProbabilities, OutcomeFractions};
use crate::sensor_qec::{
    assisted_outcome, classify_case, run_case_on_statevector, standard_outcome, syndrome_of,
    AssistedOutcome, ErrorMask, QecError, StandardOutcome, Variant,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QecMonteCarloConfig {
    pub shots: u64,
    pub o: f64,
    pub p: f64,
    pub seed: u64,
    /// Probability that a sensor registers an environmental flip on its qubit.
    pub sensor_efficiency: f64,
    /// Fraction of shots additionally executed on the statevector simulator.
    pub audit_fraction: f64,
}

impl QecMonteCarloConfig {
    pub fn new(shots: u64, o: f64, p: f64, seed: u64) -> Self {
        Self {
            shots,
            o,
            p,
            seed,
            sensor_efficiency: 1.0,
            audit_fraction: 0.01,
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.shots == 0 {
            return Err(ExperimentError::InvalidConfig(
                "shots must be at least 1".into(),
            ));
        }
        check_probability("o", self.o)?;
        check_probability("p", self.p)?;
        check_probability("sensor_efficiency", self.sensor_efficiency)?;
        check_probability("audit_fraction", self.audit_fraction)
    }
}

/// Draws one error pattern and the resulting sensor register.
pub fn sample_error_mask<R: Rng + ?Sized>(
    rng: &mut R,
    o: f64,
    p: f64,
    sensor_efficiency: f64,
) -> (ErrorMask, u8) {
    let (mut env, mut ent, mut sensor) = (0u8, 0u8, 0u8);
    for q in 0..3 {
        if rng.random::<f64>() < o {
            env |= 1 << q;
            if rng.random::<f64>() < sensor_efficiency {
                sensor |= 1 << q;
            }
        }
        if rng.random::<f64>() < p {
            ent |= 1 << q;
        }
    }
    (ErrorMask::new(env, ent).expect("3-bit masks"), sensor)
}

/// Tallies of the seven joint standard/assisted outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OutcomeCounts {
    pub c_c: u64,
    pub cc_cc: u64,
    pub f_f: u64,
    pub cc_rpt: u64,
    pub f_rpt: u64,
    pub cc_rs: u64,
    pub f_rs: u64,
}

impl OutcomeCounts {
    pub fn record(&mut self, standard: StandardOutcome, assisted: AssistedOutcome) {
        use AssistedOutcome as A;
        use StandardOutcome as S;
        let slot = match (standard, assisted) {
            (S::C, A::AcceptC) => &mut self.c_c,
            (S::CC, A::AcceptCC) => &mut self.cc_cc,
            (S::F, A::AcceptF) => &mut self.f_f,
            (S::CC, A::RejectPT) => &mut self.cc_rpt,
            (S::F, A::RejectPT) => &mut self.f_rpt,
            (S::CC, A::RejectS) => &mut self.cc_rs,
            (S::F, A::RejectS) => &mut self.f_rs,
            // sensors only ever report environmental flips, and a correct
            // uncancelled result has at most one of them with a matching syndrome
            (s, a) => unreachable!("impossible outcome pair {s:?} / {a:?}"),
        };
        *slot += 1;
    }

    pub fn to_array(&self) -> [u64; 7] {
        [
            self.c_c,
            self.cc_cc,
            self.f_f,
            self.cc_rpt,
            self.f_rpt,
            self.cc_rs,
            self.f_rs,
        ]
    }

    pub fn total(&self) -> u64 {
        self.to_array().iter().sum()
    }

    pub fn merge(mut self, other: Self) -> Self {
        self.c_c += other.c_c;
        self.cc_cc += other.cc_cc;
        self.f_f += other.f_f;
        self.cc_rpt += other.cc_rpt;
        self.f_rpt += other.f_rpt;
        self.cc_rs += other.cc_rs;
        self.f_rs += other.f_rs;
        self
    }

    pub fn fractions(&self) -> OutcomeFractions {
        let n = self.total().max(1) as f64;
        OutcomeFractions::from_array(self.to_array().map(|c| c as f64 / n))
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    counts: OutcomeCounts,
    audited: u64,
    audit_mismatches: u64,
}

impl Tally {
    fn merge(self, other: Self) -> Self {
        Self {
            counts: self.counts.merge(other.counts),
            audited: self.audited + other.audited,
            audit_mismatches: self.audit_mismatches + other.audit_mismatches,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QecMonteCarloReport {
    pub shots: u64,
    pub o: f64,
    pub p: f64,
    pub phat: f64,
    pub seed: u64,
    pub sensor_efficiency: f64,
    pub counts: OutcomeCounts,
    pub empirical: OutcomeFractions,
    /// Closed-form fractions (assumes every environmental flip is sensed).
    pub analytic: OutcomeFractions,
    /// `(empirical - analytic) / sigma_binomial`; `None` where the analytic
    /// fraction is exactly 0 or 1.
    pub z_scores: [Option<f64>; 7],
    pub audited: u64,
    pub audit_mismatches: u64,
}

impl QecMonteCarloReport {
    pub fn max_abs_z(&self) -> f64 {
        self.z_scores
            .iter()
            .flatten()
            .fold(0.0, |m: f64, z| m.max(z.abs()))
    }
}

/// Random single-qubit input that a logical flip changes observably.
fn audit_input<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    loop {
        let theta = rng.random::<f64>() * PI;
        let phi = rng.random::<f64>() * 2.0 * PI;
        // |<psi|X|psi>|^2 = sin^2(theta) cos^2(phi)
        let overlap = (theta.sin() * phi.cos()).powi(2);
        if overlap < 0.99 {
            return (theta, phi);
        }
    }
}

fn audit_shot<R: Rng + ?Sized>(rng: &mut R, mask: ErrorMask) -> Result<bool, QecError> {
    let psi = audit_input(rng);
    let sim = run_case_on_statevector(psi, mask, Variant::BitFlip, rng)?;
    let expected = classify_case(mask);
    Ok(sim.standard_outcome == expected.standard_outcome
        && sim.assisted_outcome == expected.assisted_outcome
        && sim.syndrome == expected.syndrome)
}

pub fn run_qec_montecarlo(
    config: &QecMonteCarloConfig,
) -> Result<QecMonteCarloReport, ExperimentError> {
    config.validate()?;
    let probs = ErrorProbabilities::new(config.o, config.p)?;

    let tally = (0..config.shots)
        .into_par_iter()
        .map(|shot| -> Result<Tally, ExperimentError> {
            let mut rng = shot_rng(config.seed, 0, shot);
            let (mask, sensor) =
                sample_error_mask(&mut rng, config.o, config.p, config.sensor_efficiency);
            let standard = standard_outcome(mask);
            let syndrome = syndrome_of(mask.resultant());
            let mut tally = Tally::default();
            tally
                .counts
                .record(standard, assisted_outcome(sensor, syndrome, standard));
            if config.audit_fraction > 0.0 && rng.random::<f64>() < config.audit_fraction {
                tally.audited = 1;
                tally.audit_mismatches = u64::from(!audit_shot(&mut rng, mask)?);
            }
            Ok(tally)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;

    let analytic = outcome_fractions(&probs);
    let empirical = tally.counts.fractions();
    let z_scores = {
        let (emp, ana) = (empirical.to_array(), analytic.to_array());
        std::array::from_fn(|k| {
            let sigma = binomial_sigma(ana[k], config.shots);
            (sigma > 0.0).then(|| (emp[k] - ana[k]) / sigma)
        })
    };

    Ok(QecMonteCarloReport {
        shots: config.shots,
        o: config.o,
        p: config.p,
        phat: probs.phat(),
        seed: config.seed,
        sensor_efficiency: config.sensor_efficiency,
        counts: tally.counts,
        empirical,
        analytic,
        z_scores,
        audited: tally.audited,
        audit_mismatches: tally.audit_mismatches,
    })
}
