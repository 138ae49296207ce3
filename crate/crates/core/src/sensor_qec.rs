//! Sensor-assisted 3-qubit bit-flip code.
//!
//! Data qubits are 0..=2, syndrome ancillas are 3 and 4. Every data qubit has
//! a co-located sensor that fires when an environmental flip hits it. The
//! assisted decoder vetoes a shot when two or more sensors fire (`REJECT_S`),
//! or when a single sensor fired but the syndrome is inconsistent with a lone
//! flip on that qubit (`REJECT_PT`).

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::statevector::{ClassicalRegister, Condition, Gate, PureState, SimError};

pub const DATA_QUBITS: [usize; 3] = [0, 1, 2];
pub const ANCILLA_QUBITS: [usize; 2] = [3, 4];
pub const CIRCUIT_QUBITS: usize = 5;
pub const SENSOR_WIDTH: usize = 3;
pub const ANCILLA_WIDTH: usize = 2;

const FIDELITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QecError {
    #[error("mask value {0} does not fit in 3 bits")]
    MaskRange(u8),
    #[error("input state is invariant under a logical flip (|<psi|X|psi>|^2 = {0}); outcome is unobservable")]
    IndistinguishableInput(f64),
    #[error("decoded data qubit has fidelity {fidelity} with the input, matching neither outcome")]
    UnexpectedFinalState { fidelity: f64 },
    #[error(transparent)]
    Sim(#[from] SimError),
}

fn weight(bits: u8) -> u32 {
    bits.count_ones()
}

/// Environmental and entangling flip patterns for one pass of the error
/// channel; bit `k` refers to data qubit `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ErrorMask {
    env: u8,
    ent: u8,
}

impl ErrorMask {
    pub fn new(env: u8, ent: u8) -> Result<Self, QecError> {
        for v in [env, ent] {
            if v > 7 {
                return Err(QecError::MaskRange(v));
            }
        }
        Ok(Self { env, ent })
    }

    /// All 64 masks in lexicographic `(env, ent)` order.
    pub fn all() -> impl Iterator<Item = ErrorMask> {
        (0..8u8).flat_map(|env| (0..8u8).map(move |ent| ErrorMask { env, ent }))
    }

    pub fn env(&self) -> u8 {
        self.env
    }

    pub fn ent(&self) -> u8 {
        self.ent
    }

    /// Net flip on each qubit after both error columns.
    pub fn resultant(&self) -> u8 {
        self.env ^ self.ent
    }

    pub fn env_weight(&self) -> u32 {
        weight(self.env)
    }

    pub fn ent_weight(&self) -> u32 {
        weight(self.ent)
    }

    /// Index into the 64-entry table.
    pub fn index(&self) -> usize {
        (self.env as usize) << 3 | self.ent as usize
    }
}

impl fmt::Display for ErrorMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:03b}]({:03b})", self.env, self.ent)
    }
}

/// Two parity bits: bit 0 is `q0 ⊕ q1`, bit 1 is `q0 ⊕ q2`.
pub fn syndrome_of(resultant: u8) -> u8 {
    let q = |k: u8| resultant >> k & 1;
    (q(0) ^ q(1)) | (q(0) ^ q(2)) << 1
}

pub fn syndrome_hex(syndrome: u8) -> String {
    format!("0x{syndrome:X}")
}

/// Data qubit the decoder flips for a given syndrome.
pub fn correction_for(syndrome: u8) -> Option<usize> {
    match syndrome & 3 {
        0x3 => Some(0),
        0x1 => Some(1),
        0x2 => Some(2),
        _ => None,
    }
}

/// Set when two or more sensors fired.
pub fn sensor_reject(sensor_register: u8) -> bool {
    weight(sensor_register & 7) >= 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StandardOutcome {
    C,
    CC,
    F,
}

impl StandardOutcome {
    pub fn is_correct(self) -> bool {
        self != StandardOutcome::F
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StandardOutcome::C => "C",
            StandardOutcome::CC => "CC",
            StandardOutcome::F => "F",
        }
    }
}

impl fmt::Display for StandardOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AssistedOutcome {
    #[serde(rename = "ACCEPT_C")]
    AcceptC,
    #[serde(rename = "ACCEPT_CC")]
    AcceptCC,
    #[serde(rename = "ACCEPT_F")]
    AcceptF,
    #[serde(rename = "REJECT_PT")]
    RejectPT,
    #[serde(rename = "REJECT_S")]
    RejectS,
}

impl AssistedOutcome {
    pub fn accept(standard: StandardOutcome) -> Self {
        match standard {
            StandardOutcome::C => AssistedOutcome::AcceptC,
            StandardOutcome::CC => AssistedOutcome::AcceptCC,
            StandardOutcome::F => AssistedOutcome::AcceptF,
        }
    }

    pub fn is_rejected(self) -> bool {
        matches!(self, AssistedOutcome::RejectPT | AssistedOutcome::RejectS)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AssistedOutcome::AcceptC => "ACCEPT_C",
            AssistedOutcome::AcceptCC => "ACCEPT_CC",
            AssistedOutcome::AcceptF => "ACCEPT_F",
            AssistedOutcome::RejectPT => "REJECT_PT",
            AssistedOutcome::RejectS => "REJECT_S",
        }
    }
}

impl fmt::Display for AssistedOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of the unassisted code. A correct result is `CC` when it relied on
/// an environmental and an entangling flip cancelling on the same qubit.
pub fn standard_outcome(mask: ErrorMask) -> StandardOutcome {
    if weight(mask.resultant()) > 1 {
        StandardOutcome::F
    } else if mask.env & mask.ent != 0 {
        StandardOutcome::CC
    } else {
        StandardOutcome::C
    }
}

/// Veto logic given the sensor register and the measured syndrome.
pub fn assisted_outcome(
    sensor_register: u8,
    syndrome: u8,
    standard: StandardOutcome,
) -> AssistedOutcome {
    let sensor_register = sensor_register & 7;
    if sensor_reject(sensor_register) {
        return AssistedOutcome::RejectS;
    }
    if sensor_register != 0 && syndrome != 0 && syndrome != syndrome_of(sensor_register) {
        return AssistedOutcome::RejectPT;
    }
    AssistedOutcome::accept(standard)
}

/// One truth-table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub mask: ErrorMask,
    pub resultant: u8,
    pub syndrome: u8,
    pub standard_outcome: StandardOutcome,
    pub assisted_outcome: AssistedOutcome,
    /// Powers of `o` and `p` in the case probability.
    pub exponents: (u32, u32),
}

impl CaseRecord {
    pub fn obar_exponent(&self) -> u32 {
        3 - self.exponents.0
    }

    pub fn pbar_exponent(&self) -> u32 {
        3 - self.exponents.1
    }
}

/// Classifies a mask assuming every environmental flip is seen by its sensor.
pub fn classify_case(mask: ErrorMask) -> CaseRecord {
    let resultant = mask.resultant();
    let syndrome = syndrome_of(resultant);
    let standard = standard_outcome(mask);
    CaseRecord {
        mask,
        resultant,
        syndrome,
        standard_outcome: standard,
        assisted_outcome: assisted_outcome(mask.env, syndrome, standard),
        exponents: (mask.env_weight(), mask.ent_weight()),
    }
}

pub fn enumerate_truth_table() -> Vec<CaseRecord> {
    ErrorMask::all().map(classify_case).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    BitFlip,
    PhaseFlip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Prepare,
    Encode,
    ErrorChannel,
    SensorReadout,
    Syndrome,
    Correction,
    Decode,
    Measure,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Step {
    /// Loads `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩` onto data qubit 0.
    Prepare { theta: f64, phi: f64 },
    /// Quantum gate. Classically controlled gates read the ancilla register.
    Gate(Gate),
    /// Records the sensor co-located with a data qubit.
    SensorReadout { qubit: usize, fired: bool },
    /// Projective measurement of an ancilla into the ancilla register.
    MeasureAncilla { qubit: usize, bit: usize },
    /// Final measurement of the data qubits.
    MeasureData,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircuitSpec {
    pub variant: Variant,
    pub steps: Vec<(Stage, Step)>,
}

impl CircuitSpec {
    pub fn stage(&self, stage: Stage) -> impl Iterator<Item = &Step> {
        self.steps
            .iter()
            .filter(move |(s, _)| *s == stage)
            .map(|(_, step)| step)
    }

    /// Error gates injected by the error channel.
    pub fn error_gates(&self) -> Vec<Gate> {
        self.stage(Stage::ErrorChannel)
            .filter_map(|s| match s {
                Step::Gate(g) => Some(*g),
                _ => None,
            })
            .collect()
    }
}

/// Assembles the full circuit for one error pattern.
pub fn build_circuit(psi: (f64, f64), mask: ErrorMask, variant: Variant) -> CircuitSpec {
    let mut steps = Vec::new();
    let mut push = |stage, step| steps.push((stage, step));
    let conjugate = variant == Variant::PhaseFlip;

    push(
        Stage::Prepare,
        Step::Prepare {
            theta: psi.0,
            phi: psi.1,
        },
    );
    push(
        Stage::Encode,
        Step::Gate(Gate::Cnot {
            control: 0,
            target: 1,
        }),
    );
    push(
        Stage::Encode,
        Step::Gate(Gate::Cnot {
            control: 0,
            target: 2,
        }),
    );
    if conjugate {
        for q in DATA_QUBITS {
            push(Stage::Encode, Step::Gate(Gate::H(q)));
        }
    }

    let flip = |q| if conjugate { Gate::Z(q) } else { Gate::X(q) };
    for layer in [mask.env, mask.ent] {
        for q in DATA_QUBITS {
            if layer >> q & 1 == 1 {
                push(Stage::ErrorChannel, Step::Gate(flip(q)));
            }
        }
    }

    for q in DATA_QUBITS {
        push(
            Stage::SensorReadout,
            Step::SensorReadout {
                qubit: q,
                fired: mask.env >> q & 1 == 1,
            },
        );
    }

    if conjugate {
        for q in DATA_QUBITS {
            push(Stage::Syndrome, Step::Gate(Gate::H(q)));
        }
    }
    let [a0, a1] = ANCILLA_QUBITS;
    for (control, target) in [(0, a0), (1, a0), (0, a1), (2, a1)] {
        push(Stage::Syndrome, Step::Gate(Gate::Cnot { control, target }));
    }
    push(Stage::Syndrome, Step::MeasureAncilla { qubit: a0, bit: 0 });
    push(Stage::Syndrome, Step::MeasureAncilla { qubit: a1, bit: 1 });

    for syndrome in [0x3u8, 0x1, 0x2] {
        let target = correction_for(syndrome).expect("nonzero syndrome");
        push(
            Stage::Correction,
            Step::Gate(Gate::ClassicalX {
                target,
                condition: Condition::Value(u64::from(syndrome)),
            }),
        );
    }

    push(
        Stage::Decode,
        Step::Gate(Gate::Cnot {
            control: 0,
            target: 2,
        }),
    );
    push(
        Stage::Decode,
        Step::Gate(Gate::Cnot {
            control: 0,
            target: 1,
        }),
    );
    push(Stage::Measure, Step::MeasureData);

    CircuitSpec { variant, steps }
}

/// Result of running a [`CircuitSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct Execution {
    /// State just before the final data measurement.
    pub state: PureState,
    pub sensor: ClassicalRegister,
    pub ancilla: ClassicalRegister,
    /// Data qubits, qubit 0 least significant.
    pub measured: Option<u64>,
}

impl Execution {
    pub fn syndrome(&self) -> u8 {
        self.ancilla.value() as u8
    }

    pub fn sensor_value(&self) -> u8 {
        self.sensor.value() as u8
    }

    pub fn sensor_reject(&self) -> bool {
        sensor_reject(self.sensor_value())
    }
}

pub fn execute<R: Rng + ?Sized>(circuit: &CircuitSpec, rng: &mut R) -> Result<Execution, QecError> {
    let mut state = PureState::new(CIRCUIT_QUBITS)?;
    let mut sensor = ClassicalRegister::new(SENSOR_WIDTH);
    let mut ancilla = ClassicalRegister::new(ANCILLA_WIDTH);
    let mut measured = None;
    let mut before_measure = None;

    for (_, step) in &circuit.steps {
        match *step {
            Step::Prepare { theta, phi } => {
                state = PureState::bloch(theta, phi).extend(CIRCUIT_QUBITS - 1)?;
            }
            Step::Gate(ref gate) => state.apply(gate, &ancilla)?,
            Step::SensorReadout { qubit, fired } => sensor.set(qubit, fired)?,
            Step::MeasureAncilla { qubit, bit } => {
                let outcome = state.measure_qubit(qubit, rng)?;
                ancilla.set(bit, outcome)?;
            }
            Step::MeasureData => {
                before_measure = Some(state.clone());
                let probs = state.marginal(&DATA_QUBITS)?;
                measured = Some(crate::statevector::sample_index(probs, rng) as u64);
            }
        }
    }

    Ok(Execution {
        state: before_measure.unwrap_or(state),
        sensor,
        ancilla,
        measured,
    })
}

/// Outcome of one mask observed on the simulator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulatedCase {
    pub standard_outcome: StandardOutcome,
    pub assisted_outcome: AssistedOutcome,
    pub syndrome: u8,
    /// Fidelity of the decoded data qubit with the input state.
    pub fidelity: f64,
}

/// `|⟨ψ|X|ψ⟩|²` for a single-qubit state.
pub fn flip_overlap(psi: &PureState) -> f64 {
    let a = psi.amplitudes();
    (a[0].conj() * a[1] + a[1].conj() * a[0]).norm_sqr()
}

/// Executes the circuit and reads the outcome from the simulator alone: the
/// decoded qubit either matches `|Ψ⟩` (correct) or `X|Ψ⟩` (faulty).
pub fn run_case_on_statevector<R: Rng + ?Sized>(
    psi: (f64, f64),
    mask: ErrorMask,
    variant: Variant,
    rng: &mut R,
) -> Result<SimulatedCase, QecError> {
    let input = PureState::bloch(psi.0, psi.1);
    let flipped_overlap = flip_overlap(&input);
    if flipped_overlap > 1.0 - FIDELITY_TOLERANCE {
        return Err(QecError::IndistinguishableInput(flipped_overlap));
    }

    let circuit = build_circuit(psi, mask, variant);
    let run = execute(&circuit, rng)?;

    // Ancillas and the two redundant data qubits must be disentangled from
    // qubit 0, with the redundant qubits back in |00⟩.
    let rest = run.state.marginal(&[1, 2])?;
    let fidelity = run.state.qubit_fidelity(0, &input)?;
    if (rest[0] - 1.0).abs() > FIDELITY_TOLERANCE {
        return Err(QecError::UnexpectedFinalState { fidelity });
    }

    let correct = if (fidelity - 1.0).abs() <= FIDELITY_TOLERANCE {
        true
    } else if (fidelity - flipped_overlap).abs() <= FIDELITY_TOLERANCE {
        false
    } else {
        return Err(QecError::UnexpectedFinalState { fidelity });
    };

    let standard = match (correct, mask.env & mask.ent != 0) {
        (false, _) => StandardOutcome::F,
        (true, true) => StandardOutcome::CC,
        (true, false) => StandardOutcome::C,
    };
    let syndrome = run.syndrome();
    Ok(SimulatedCase {
        standard_outcome: standard,
        assisted_outcome: assisted_outcome(run.sensor_value(), syndrome, standard),
        syndrome,
        fidelity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn mask(env: u8, ent: u8) -> ErrorMask {
        ErrorMask::new(env, ent).unwrap()
    }

    #[test]
    fn mask_validation_and_display() {
        assert_eq!(ErrorMask::new(8, 0), Err(QecError::MaskRange(8)));
        assert_eq!(mask(0b001, 0b011).to_string(), "[001](011)");
        assert_eq!(ErrorMask::all().count(), 64);
        assert_eq!(ErrorMask::all().nth(9), Some(mask(1, 1)));
    }

    #[test]
    fn syndrome_examples() {
        assert_eq!(syndrome_of(0b001), 0x3);
        assert_eq!(syndrome_of(0b110), 0x3);
        assert_eq!(syndrome_of(0b000), 0x0);
        assert_eq!(syndrome_of(0b010), 0x1);
        assert_eq!(syndrome_of(0b100), 0x2);
        assert_eq!(syndrome_hex(3), "0x3");
    }

    #[test]
    fn sensor_reject_values() {
        let rejecting: Vec<u8> = (0..8).filter(|&v| sensor_reject(v)).collect();
        assert_eq!(rejecting, vec![0x3, 0x5, 0x6, 0x7]);
        assert!(!sensor_reject(0x1));
        assert!(!sensor_reject(0x0));
    }

    #[test]
    fn classify_examples() {
        let r = classify_case(mask(0b001, 0b010));
        assert_eq!(r.resultant, 0b011);
        assert_eq!(r.syndrome, 0x2);
        assert_eq!(r.standard_outcome, StandardOutcome::F);
        assert_eq!(r.assisted_outcome, AssistedOutcome::RejectPT);

        let r = classify_case(mask(0b011, 0b000));
        assert_eq!(r.syndrome, 0x2);
        assert_eq!(r.standard_outcome, StandardOutcome::F);
        assert_eq!(r.assisted_outcome, AssistedOutcome::RejectS);

        let r = classify_case(mask(0, 0));
        assert_eq!(
            (r.syndrome, r.standard_outcome, r.assisted_outcome),
            (0, StandardOutcome::C, AssistedOutcome::AcceptC)
        );

        let r = classify_case(mask(0b111, 0b111));
        assert_eq!(r.resultant, 0);
        assert_eq!(r.syndrome, 0);
        assert_eq!(r.standard_outcome, StandardOutcome::CC);
        assert_eq!(r.assisted_outcome, AssistedOutcome::RejectS);

        // accepted although faulty: the syndrome reads clean
        let r = classify_case(mask(0b001, 0b110));
        assert_eq!(
            (r.syndrome, r.assisted_outcome),
            (0, AssistedOutcome::AcceptF)
        );
    }

    #[test]
    fn truth_table_counts() {
        let table = enumerate_truth_table();
        assert_eq!(table.len(), 64);
        let rs = table
            .iter()
            .filter(|r| r.assisted_outcome == AssistedOutcome::RejectS)
            .count();
        assert_eq!(rs, 32);
        let f_rpt = table
            .iter()
            .filter(|r| {
                r.standard_outcome == StandardOutcome::F
                    && r.assisted_outcome == AssistedOutcome::RejectPT
            })
            .count();
        assert_eq!(f_rpt, 6);
    }

    #[test]
    fn truth_table_invariants() {
        for r in enumerate_truth_table() {
            assert_eq!(r.resultant, r.mask.env() ^ r.mask.ent());
            assert_eq!(
                r.assisted_outcome == AssistedOutcome::RejectS,
                r.mask.env_weight() >= 2
            );
            assert_eq!(r.standard_outcome.is_correct(), weight(r.resultant) <= 1);
            if !r.assisted_outcome.is_rejected() {
                assert_eq!(
                    r.assisted_outcome,
                    AssistedOutcome::accept(r.standard_outcome)
                );
            }
        }
    }

    #[test]
    fn accepted_faults_are_exactly_ten_masks() {
        let got: Vec<(u8, u8)> = enumerate_truth_table()
            .into_iter()
            .filter(|r| r.assisted_outcome == AssistedOutcome::AcceptF)
            .map(|r| (r.mask.env(), r.mask.ent()))
            .collect();
        let expected = vec![
            (0b000, 0b011),
            (0b000, 0b101),
            (0b000, 0b110),
            (0b000, 0b111),
            (0b001, 0b110),
            (0b001, 0b111),
            (0b010, 0b101),
            (0b010, 0b111),
            (0b100, 0b011),
            (0b100, 0b111),
        ];
        assert_eq!(got, expected);
    }

    #[test]
    fn circuit_stage_order() {
        for variant in [Variant::BitFlip, Variant::PhaseFlip] {
            let c = build_circuit((0.3, 0.2), mask(0b101, 0b010), variant);
            assert!(c.steps.windows(2).all(|w| w[0].0 <= w[1].0));
            assert_eq!(c.error_gates().len(), 3);
        }
        let c = build_circuit((0.3, 0.2), mask(0b001, 0b001), Variant::PhaseFlip);
        assert_eq!(c.error_gates(), vec![Gate::Z(0), Gate::Z(0)]);
    }

    #[test]
    fn statevector_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let run =
            run_case_on_statevector((0.4, 1.1), mask(0, 0), Variant::BitFlip, &mut rng).unwrap();
        assert_abs_diff_eq!(run.fidelity, 1.0, epsilon = 1e-9);

        let run = run_case_on_statevector(
            (PI / 3.0, 0.7),
            mask(0b001, 0b011),
            Variant::BitFlip,
            &mut rng,
        )
        .unwrap();
        assert_eq!(run.standard_outcome, StandardOutcome::CC);
        assert_eq!(run.syndrome, 0x1);
        assert_eq!(run.assisted_outcome, AssistedOutcome::RejectPT);

        let run = run_case_on_statevector((0.0, 0.0), mask(0, 0b111), Variant::BitFlip, &mut rng)
            .unwrap();
        assert_eq!(run.standard_outcome, StandardOutcome::F);
        assert_eq!(run.syndrome, 0);
        assert_abs_diff_eq!(run.fidelity, 0.0, epsilon = 1e-12);

        let run = run_case_on_statevector((PI / 2.0, 0.0), mask(0, 0), Variant::BitFlip, &mut rng);
        assert!(matches!(run, Err(QecError::IndistinguishableInput(_))));
    }

    #[test]
    fn faulty_case_leaves_flipped_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let psi = (1.0, 0.3);
        let input = PureState::bloch(psi.0, psi.1);
        let run = run_case_on_statevector(psi, mask(0, 0b011), Variant::BitFlip, &mut rng).unwrap();
        assert_eq!(run.standard_outcome, StandardOutcome::F);
        assert_abs_diff_eq!(run.fidelity, flip_overlap(&input), epsilon = 1e-12);
    }

    #[test]
    fn error_free_round_trip_both_variants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for i in 0..100 {
            let theta = rng.random::<f64>() * PI;
            let phi = rng.random::<f64>() * 2.0 * PI;
            for variant in [Variant::BitFlip, Variant::PhaseFlip] {
                let c = build_circuit((theta, phi), mask(0, 0), variant);
                let run = execute(&c, &mut rng).unwrap();
                let f = run
                    .state
                    .qubit_fidelity(0, &PureState::bloch(theta, phi))
                    .unwrap();
                assert!((f - 1.0).abs() < 1e-9, "iteration {i}: {f}");
                assert_eq!(run.syndrome(), 0);
            }
        }
    }
}
