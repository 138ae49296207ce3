//! Noisy balanced Deutsch-Jozsa benchmark with a per-shot sensor veto.
//!
//! The circuit carries labelled error sites. In each shot every site
//! independently applies an `X` with the gate error probability, and each
//! realized flip is independently visible to the co-located sensor. With the
//! veto enabled, any shot in which a sensor fired is discarded.

use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_probability, mean_std, shot_rng, ExperimentError};
use crate::statevector::{sample_index, Bitstring, ClassicalRegister, Gate, PureState};

/// Patterns are cached per error combination up to this many sites.
const MAX_CACHED_SITES: usize = 12;
const SUPPORT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DjOp {
    Gate(Gate),
    /// Possible bit flip on the given qubit line.
    Site(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DjCircuit {
    num_qubits: usize,
    ops: Vec<DjOp>,
    measured: Vec<usize>,
}

/// Four qubits, three measured plus an oracle ancilla. The oracle is a
/// single CNOT from the first input onto the ancilla, so the ideal output
/// is uniform over the states whose qubit 0 reads 1. Each gate is followed by
/// an error site on every line it touches, and each measured line has one
/// more site just before readout: 11 sites in total.
pub fn build_dj_circuit() -> DjCircuit {
    use DjOp::{Gate as G, Site};
    let ops = vec![
        G(Gate::X(3)),
        Site(3),
        G(Gate::H(3)),
        Site(3),
        G(Gate::H(0)),
        Site(0),
        G(Gate::H(1)),
        Site(1),
        G(Gate::H(2)),
        Site(2),
        G(Gate::Cnot {
            control: 0,
            target: 3,
        }),
        Site(0),
        Site(3),
        G(Gate::H(0)),
        Site(0),
        Site(0),
        Site(1),
        Site(2),
    ];
    DjCircuit {
        num_qubits: 4,
        ops,
        measured: vec![0, 1, 2],
    }
}

impl DjCircuit {
    pub fn new(
        num_qubits: usize,
        ops: Vec<DjOp>,
        measured: Vec<usize>,
    ) -> Result<Self, ExperimentError> {
        let circuit = Self {
            num_qubits,
            ops,
            measured,
        };
        circuit.validate()?;
        Ok(circuit)
    }

    fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: String| Err(ExperimentError::InvalidConfig(m));
        if !(1..=crate::statevector::MAX_QUBITS).contains(&self.num_qubits) {
            return bad(format!(
                "circuit needs 1..=8 qubits, got {}",
                self.num_qubits
            ));
        }
        if self.measured.is_empty() {
            return bad("circuit measures no qubits".into());
        }
        let mut lines: Vec<usize> = self.measured.clone();
        for op in &self.ops {
            match op {
                DjOp::Gate(Gate::ClassicalX { .. }) => {
                    return bad("classically controlled gates are not supported here".into())
                }
                DjOp::Gate(g) => {
                    let qs = g.qubits();
                    if qs.iter().enumerate().any(|(k, q)| qs[..k].contains(q)) {
                        return bad(format!("gate `{g}` repeats a qubit"));
                    }
                    lines.extend(qs);
                }
                DjOp::Site(q) => lines.push(*q),
            }
        }
        if let Some(q) = lines.iter().find(|&&q| q >= self.num_qubits) {
            return bad(format!(
                "qubit {q} out of range for {} qubits",
                self.num_qubits
            ));
        }
        if self.site_count() > 63 {
            return bad("at most 63 error sites are supported".into());
        }
        Ok(())
    }

    /// Parses the flat text format, one instruction per line:
    /// `QUBITS n`, `MEASURE q,q,...`, `X q`, `Z q`, `H q`, `CNOT c,t`,
    /// `TOFFOLI c1,c2,t` and `SITE q`. `#` starts a comment. Without
    /// `QUBITS` the register is sized to the largest index used; without
    /// `MEASURE` every qubit is measured.
    pub fn parse(text: &str) -> Result<Self, ExperimentError> {
        let mut num_qubits = None;
        let mut measured = None;
        let mut ops = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| ExperimentError::CircuitParse {
                line: line_no,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, args) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let args: Vec<usize> = args
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| err(format!("bad qubit index `{s}`")))
                })
                .collect::<Result<_, _>>()?;
            let arity = |n: usize| {
                if args.len() == n {
                    Ok(())
                } else {
                    Err(err(format!(
                        "{name} takes {n} operand(s), got {}",
                        args.len()
                    )))
                }
            };
            match name.to_ascii_uppercase().as_str() {
                "QUBITS" => {
                    arity(1)?;
                    num_qubits = Some(args[0]);
                }
                "MEASURE" => {
                    if args.is_empty() {
                        return Err(err("MEASURE needs at least one qubit".into()));
                    }
                    measured = Some(args);
                }
                "X" => {
                    arity(1)?;
                    ops.push(DjOp::Gate(Gate::X(args[0])));
                }
                "Z" => {
                    arity(1)?;
                    ops.push(DjOp::Gate(Gate::Z(args[0])));
                }
                "H" => {
                    arity(1)?;
                    ops.push(DjOp::Gate(Gate::H(args[0])));
                }
                "CNOT" => {
                    arity(2)?;
                    ops.push(DjOp::Gate(Gate::Cnot {
                        control: args[0],
                        target: args[1],
                    }));
                }
                "TOFFOLI" => {
                    arity(3)?;
                    ops.push(DjOp::Gate(Gate::Toffoli {
                        controls: [args[0], args[1]],
                        target: args[2],
                    }));
                }
                "SITE" => {
                    arity(1)?;
                    ops.push(DjOp::Site(args[0]));
                }
                other => return Err(err(format!("unknown instruction `{other}`"))),
            }
        }

        let max_used = ops
            .iter()
            .flat_map(|op| match op {
                DjOp::Gate(g) => g.qubits(),
                DjOp::Site(q) => vec![*q],
            })
            .chain(measured.iter().flatten().copied())
            .max();
        let num_qubits = match (num_qubits, max_used) {
            (Some(n), _) => n,
            (None, Some(m)) => m + 1,
            (None, None) => {
                return Err(ExperimentError::CircuitParse {
                    line: 0,
                    message: "empty circuit".into(),
                })
            }
        };
        let measured = measured.unwrap_or_else(|| (0..num_qubits).collect());
        Self::new(num_qubits, ops, measured)
    }

    pub fn to_text(&self) -> String {
        let join = |qs: &[usize]| {
            qs.iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut out = format!(
            "QUBITS {}\nMEASURE {}\n",
            self.num_qubits,
            join(&self.measured)
        );
        for op in &self.ops {
            let _ = match op {
                DjOp::Gate(g) => writeln!(out, "{} {}", g.name(), join(&g.qubits())),
                DjOp::Site(q) => writeln!(out, "SITE {q}"),
            };
        }
        out
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn ops(&self) -> &[DjOp] {
        &self.ops
    }

    pub fn measured(&self) -> &[usize] {
        &self.measured
    }

    pub fn site_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, DjOp::Site(_)))
            .count()
    }

    pub fn site_qubits(&self) -> Vec<usize> {
        self.ops
            .iter()
            .filter_map(|op| match op {
                DjOp::Site(q) => Some(*q),
                _ => None,
            })
            .collect()
    }

    /// Final state with an `X` inserted at every site whose bit is set in `errors`.
    pub fn run(&self, errors: u64) -> Result<PureState, ExperimentError> {
        let mut state = PureState::new(self.num_qubits)?;
        let none = ClassicalRegister::default();
        let mut site = 0;
        for op in &self.ops {
            match *op {
                DjOp::Gate(ref g) => state.apply(g, &none)?,
                DjOp::Site(q) => {
                    if errors >> site & 1 == 1 {
                        state.apply(&Gate::X(q), &none)?;
                    }
                    site += 1;
                }
            }
        }
        Ok(state)
    }

    /// Distribution over measured bitstrings (bit `j` = `measured[j]`).
    pub fn distribution(&self, errors: u64) -> Result<Vec<f64>, ExperimentError> {
        Ok(self.run(errors)?.marginal(&self.measured)?)
    }

    pub fn noiseless_distribution(&self) -> Result<Vec<f64>, ExperimentError> {
        self.distribution(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DjConfig {
    pub shots: u64,
    pub trials: u32,
    pub gate_error_prob: f64,
    pub detectable_fraction: f64,
    pub veto_enabled: bool,
    pub seed: u64,
}

impl Default for DjConfig {
    fn default() -> Self {
        Self {
            shots: 81_920,
            trials: 1,
            gate_error_prob: 0.07,
            detectable_fraction: 0.40,
            veto_enabled: true,
            seed: 0,
        }
    }
}

impl DjConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.shots == 0 {
            return Err(ExperimentError::InvalidConfig(
                "shots must be at least 1".into(),
            ));
        }
        if self.trials == 0 {
            return Err(ExperimentError::InvalidConfig(
                "trials must be at least 1".into(),
            ));
        }
        check_probability("gate_error_prob", self.gate_error_prob)?;
        check_probability("detectable_fraction", self.detectable_fraction)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotRecord {
    /// `None` when the shot was vetoed and never executed.
    pub measured: Option<String>,
    pub sensor_fired: bool,
    pub vetoed: bool,
    /// Ground-truth indices of the sites that flipped.
    pub error_sites_hit: Vec<usize>,
}

/// A circuit together with its cached per-pattern outcome distributions.
#[derive(Debug, Clone)]
pub struct DjEngine {
    circuit: DjCircuit,
    correct: Vec<bool>,
    cache: Option<Vec<Vec<f64>>>,
}

impl DjEngine {
    pub fn new(circuit: DjCircuit) -> Result<Self, ExperimentError> {
        let correct = circuit
            .noiseless_distribution()?
            .iter()
            .map(|&w| w > SUPPORT_EPS)
            .collect();
        let sites = circuit.site_count();
        let cache = if sites <= MAX_CACHED_SITES {
            Some(
                (0..1u64 << sites)
                    .map(|e| circuit.distribution(e))
                    .collect::<Result<Vec<_>, _>>()?,
            )
        } else {
            None
        };
        Ok(Self {
            circuit,
            correct,
            cache,
        })
    }

    pub fn canonical() -> Self {
        Self::new(build_dj_circuit()).expect("canonical circuit is valid")
    }

    pub fn circuit(&self) -> &DjCircuit {
        &self.circuit
    }

    /// Outcomes with weight in the noiseless distribution.
    pub fn correct_states(&self) -> &[bool] {
        &self.correct
    }

    pub fn outcome_labels(&self) -> Vec<String> {
        let width = self.circuit.measured.len();
        (0..1u64 << width)
            .map(|value| Bitstring { value, width }.to_string())
            .collect()
    }

    fn sample_outcome<R: Rng + ?Sized>(&self, errors: u64, rng: &mut R) -> usize {
        match &self.cache {
            Some(table) => sample_index(table[errors as usize].iter().copied(), rng),
            None => {
                let dist = self
                    .circuit
                    .distribution(errors)
                    .expect("validated circuit");
                sample_index(dist, rng)
            }
        }
    }

    /// Draws the error realization of one shot and, unless vetoed, its outcome.
    fn shot(&self, config: &DjConfig, trial: u64, shot: u64) -> (u64, bool, Option<usize>) {
        let mut rng = shot_rng(config.seed, trial, shot);
        let mut errors = 0u64;
        let mut sensor_fired = false;
        for site in 0..self.circuit.site_count() {
            if rng.random::<f64>() < config.gate_error_prob {
                errors |= 1 << site;
                if rng.random::<f64>() < config.detectable_fraction {
                    sensor_fired = true;
                }
            }
        }
        let outcome = if sensor_fired && config.veto_enabled {
            None
        } else {
            Some(self.sample_outcome(errors, &mut rng))
        };
        (errors, sensor_fired, outcome)
    }

    pub fn simulate_shot(&self, config: &DjConfig, trial: u64, shot: u64) -> ShotRecord {
        let (errors, sensor_fired, outcome) = self.shot(config, trial, shot);
        let width = self.circuit.measured.len();
        ShotRecord {
            measured: outcome.map(|v| {
                Bitstring {
                    value: v as u64,
                    width,
                }
                .to_string()
            }),
            sensor_fired,
            vetoed: outcome.is_none(),
            error_sites_hit: (0..self.circuit.site_count())
                .filter(|s| errors >> s & 1 == 1)
                .collect(),
        }
    }

    fn run_trial(&self, config: &DjConfig, trial: u64) -> TrialResult {
        let states = 1usize << self.circuit.measured.len();
        let (counts, rejected) = (0..config.shots)
            .into_par_iter()
            .fold(
                || (vec![0u64; states], 0u64),
                |(mut counts, mut rejected), shot| {
                    match self.shot(config, trial, shot).2 {
                        Some(k) => counts[k] += 1,
                        None => rejected += 1,
                    }
                    (counts, rejected)
                },
            )
            .reduce(
                || (vec![0u64; states], 0u64),
                |(mut a, ra), (b, rb)| {
                    a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                    (a, ra + rb)
                },
            );
        TrialResult::new(trial, counts, rejected, &self.correct)
    }

    pub fn run(&self, config: &DjConfig) -> Result<ExperimentReport, ExperimentError> {
        config.validate()?;
        let trials: Vec<TrialResult> = (0..u64::from(config.trials))
            .map(|t| self.run_trial(config, t))
            .collect();
        Ok(ExperimentReport::from_trials(
            *config,
            self.outcome_labels(),
            trials,
            &self.correct,
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub trial: u64,
    pub counts: Vec<u64>,
    pub accepted: u64,
    pub rejected: u64,
    /// Per-state fraction of accepted shots.
    pub fractions: Vec<f64>,
    pub correct_fraction: Option<f64>,
    pub rejected_fraction: f64,
}

impl TrialResult {
    fn new(trial: u64, counts: Vec<u64>, rejected: u64, correct: &[bool]) -> Self {
        let accepted: u64 = counts.iter().sum();
        let denom = accepted.max(1) as f64;
        let good: u64 = counts
            .iter()
            .zip(correct)
            .filter(|(_, &c)| c)
            .map(|(n, _)| n)
            .sum();
        Self {
            trial,
            fractions: counts.iter().map(|&c| c as f64 / denom).collect(),
            correct_fraction: (accepted > 0).then(|| good as f64 / accepted as f64),
            rejected_fraction: rejected as f64 / (accepted + rejected) as f64,
            counts,
            accepted,
            rejected,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub trials: u32,
    pub mean_fractions: Vec<f64>,
    pub std_fractions: Vec<f64>,
    pub mean_correct_fraction: f64,
    pub std_correct_fraction: f64,
    pub mean_rejected_fraction: f64,
    pub std_rejected_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: DjConfig,
    /// Outcome labels, qubit `measured[0]` rightmost.
    pub states: Vec<String>,
    /// Accepted-shot counts per state, summed over all trials.
    pub counts: Vec<u64>,
    pub total_shots: u64,
    pub accepted: u64,
    pub rejected: u64,
    pub correct_states: Vec<String>,
    pub correct_fraction: Option<f64>,
    pub rejected_fraction: f64,
    pub trials: Vec<TrialResult>,
    pub summary: Option<TrialSummary>,
}

impl ExperimentReport {
    fn from_trials(
        config: DjConfig,
        states: Vec<String>,
        trials: Vec<TrialResult>,
        correct: &[bool],
    ) -> Self {
        let mut counts = vec![0u64; states.len()];
        let mut rejected = 0;
        for t in &trials {
            counts.iter_mut().zip(&t.counts).for_each(|(a, b)| *a += b);
            rejected += t.rejected;
        }
        let combined = TrialResult::new(0, counts, rejected, correct);

        let summary = (trials.len() > 1).then(|| {
            let column = |f: &dyn Fn(&TrialResult) -> f64| {
                mean_std(&trials.iter().map(f).collect::<Vec<_>>())
            };
            let per_state: Vec<(f64, f64)> = (0..states.len())
                .map(|k| column(&|t| t.fractions[k]))
                .collect();
            let correct = column(&|t| t.correct_fraction.unwrap_or(f64::NAN));
            let rejected = column(&|t| t.rejected_fraction);
            TrialSummary {
                trials: trials.len() as u32,
                mean_fractions: per_state.iter().map(|m| m.0).collect(),
                std_fractions: per_state.iter().map(|m| m.1).collect(),
                mean_correct_fraction: correct.0,
                std_correct_fraction: correct.1,
                mean_rejected_fraction: rejected.0,
                std_rejected_fraction: rejected.1,
            }
        });

        Self {
            correct_states: states
                .iter()
                .zip(correct)
                .filter(|(_, &c)| c)
                .map(|(s, _)| s.clone())
                .collect(),
            config,
            states,
            total_shots: combined.accepted + combined.rejected,
            accepted: combined.accepted,
            rejected: combined.rejected,
            correct_fraction: combined.correct_fraction,
            rejected_fraction: combined.rejected_fraction,
            counts: combined.counts,
            trials,
            summary,
        }
    }

    pub fn count_of(&self, state: &str) -> Option<u64> {
        self.states
            .iter()
            .position(|s| s == state)
            .map(|k| self.counts[k])
    }
}

/// Runs the canonical benchmark.
pub fn run_dj_experiment(config: &DjConfig) -> Result<ExperimentReport, ExperimentError> {
    DjEngine::canonical().run(config)
}

/// Runs `config.trials >= 2` independent experiments on the canonical circuit.
pub fn run_trials(config: &DjConfig) -> Result<ExperimentReport, ExperimentError> {
    if config.trials < 2 {
        return Err(ExperimentError::InvalidConfig(format!(
            "trial statistics need at least 2 trials, got {}",
            config.trials
        )));
    }
    run_dj_experiment(config)
}
