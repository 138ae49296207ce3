//! Minimal pure-state simulator.
//!
//! Basis index bit `k` is qubit `k`, so qubit 0 is the least significant bit.
//! Bitstrings render qubit 0 as the rightmost character.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

pub const MAX_QUBITS: usize = 8;

/// Tolerance used when checking that a state is normalized.
pub const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("qubit count {0} outside 1..={MAX_QUBITS}")]
    QubitCount(usize),
    #[error("qubit index {index} out of range for a {num_qubits}-qubit state")]
    QubitIndex { index: usize, num_qubits: usize },
    #[error("gate operands must be distinct qubits")]
    DuplicateQubit,
    #[error("classical bit {index} out of range for a {width}-bit register")]
    ClassicalBit { index: usize, width: usize },
    #[error("dimension mismatch: {0} vs {1} qubits")]
    DimensionMismatch(usize, usize),
    #[error("amplitude vector of length {0} is not a power of two")]
    AmplitudeLength(usize),
    #[error("state is not normalized (norm squared {0})")]
    NotNormalized(f64),
}

/// Classical control for [`Gate::ClassicalX`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// Fire when the given register bit is set.
    Bit(usize),
    /// Fire when the whole register reads this little-endian value.
    Value(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    X(usize),
    Z(usize),
    H(usize),
    Cnot { control: usize, target: usize },
    Toffoli { controls: [usize; 2], target: usize },
    ClassicalX { target: usize, condition: Condition },
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::X(q) | Gate::Z(q) | Gate::H(q) => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Toffoli { controls, target } => vec![controls[0], controls[1], target],
            Gate::ClassicalX { target, .. } => vec![target],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::X(_) => "X",
            Gate::Z(_) => "Z",
            Gate::H(_) => "H",
            Gate::Cnot { .. } => "CNOT",
            Gate::Toffoli { .. } => "TOFFOLI",
            Gate::ClassicalX { .. } => "CLASSICAL_X",
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qubits = self
            .qubits()
            .iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "{} {}", self.name(), qubits)
    }
}

/// Ordered classical bits, read little-endian by [`ClassicalRegister::value`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassicalRegister {
    bits: Vec<bool>,
}

impl ClassicalRegister {
    pub fn new(width: usize) -> Self {
        Self {
            bits: vec![false; width],
        }
    }

    pub fn from_value(width: usize, value: u64) -> Self {
        Self {
            bits: (0..width).map(|k| value >> k & 1 == 1).collect(),
        }
    }

    pub fn width(&self) -> usize {
        self.bits.len()
    }

    pub fn bit(&self, index: usize) -> Result<bool, SimError> {
        self.bits.get(index).copied().ok_or(SimError::ClassicalBit {
            index,
            width: self.width(),
        })
    }

    pub fn set(&mut self, index: usize, value: bool) -> Result<(), SimError> {
        let width = self.width();
        let slot = self
            .bits
            .get_mut(index)
            .ok_or(SimError::ClassicalBit { index, width })?;
        *slot = value;
        Ok(())
    }

    pub fn value(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .fold(0, |acc, (k, &b)| acc | (u64::from(b) << k))
    }
}

/// A measured basis state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bitstring {
    pub value: u64,
    pub width: usize,
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.value, width = self.width)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// The all-zero state on `num_qubits` qubits.
    pub fn new(num_qubits: usize) -> Result<Self, SimError> {
        if !(1..=MAX_QUBITS).contains(&num_qubits) {
            return Err(SimError::QubitCount(num_qubits));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self, SimError> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(SimError::AmplitudeLength(len));
        }
        let num_qubits = len.trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS {
            return Err(SimError::QubitCount(num_qubits));
        }
        let state = Self {
            num_qubits,
            amplitudes,
        };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(SimError::NotNormalized(norm));
        }
        Ok(state)
    }

    /// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`
    pub fn bloch(theta: f64, phi: f64) -> Self {
        Self {
            num_qubits: 1,
            amplitudes: vec![
                Complex64::new((theta / 2.0).cos(), 0.0),
                Complex64::from_polar((theta / 2.0).sin(), phi),
            ],
        }
    }

    /// Embeds this state as the low qubits of a larger register whose
    /// additional qubits start in `|0⟩`.
    pub fn extend(&self, extra_qubits: usize) -> Result<Self, SimError> {
        let num_qubits = self.num_qubits + extra_qubits;
        if num_qubits > MAX_QUBITS {
            return Err(SimError::QubitCount(num_qubits));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amplitudes[..self.amplitudes.len()].copy_from_slice(&self.amplitudes);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    fn check_qubit(&self, index: usize) -> Result<usize, SimError> {
        if index >= self.num_qubits {
            return Err(SimError::QubitIndex {
                index,
                num_qubits: self.num_qubits,
            });
        }
        Ok(1 << index)
    }

    fn check_gate(&self, gate: &Gate) -> Result<(), SimError> {
        let qubits = gate.qubits();
        for (k, &q) in qubits.iter().enumerate() {
            self.check_qubit(q)?;
            if qubits[..k].contains(&q) {
                return Err(SimError::DuplicateQubit);
            }
        }
        Ok(())
    }

    /// Applies `gate` in place. `classical` is only consulted by
    /// [`Gate::ClassicalX`].
    pub fn apply(&mut self, gate: &Gate, classical: &ClassicalRegister) -> Result<(), SimError> {
        self.check_gate(gate)?;
        match *gate {
            Gate::X(q) => self.flip_where(1 << q, 0),
            Gate::Z(q) => {
                let m = 1 << q;
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    if i & m != 0 {
                        *a = -*a;
                    }
                }
            }
            Gate::H(q) => {
                let m = 1 << q;
                for i in 0..self.amplitudes.len() {
                    if i & m == 0 {
                        let a = self.amplitudes[i];
                        let b = self.amplitudes[i | m];
                        self.amplitudes[i] = (a + b) * FRAC_1_SQRT_2;
                        self.amplitudes[i | m] = (a - b) * FRAC_1_SQRT_2;
                    }
                }
            }
            Gate::Cnot { control, target } => self.flip_where(1 << target, 1 << control),
            Gate::Toffoli { controls, target } => {
                self.flip_where(1 << target, (1 << controls[0]) | (1 << controls[1]))
            }
            Gate::ClassicalX { target, condition } => {
                let fire = match condition {
                    Condition::Bit(index) => classical.bit(index)?,
                    Condition::Value(value) => classical.value() == value,
                };
                if fire {
                    self.flip_where(1 << target, 0);
                }
            }
        }
        Ok(())
    }

    /// Swaps amplitude pairs differing in `target` wherever all `controls` bits are set.
    fn flip_where(&mut self, target: usize, controls: usize) {
        for i in 0..self.amplitudes.len() {
            if i & target == 0 && i & controls == controls {
                self.amplitudes.swap(i, i | target);
            }
        }
    }

    pub fn apply_all<'a>(
        &mut self,
        gates: impl IntoIterator<Item = &'a Gate>,
        classical: &ClassicalRegister,
    ) -> Result<(), SimError> {
        gates.into_iter().try_for_each(|g| self.apply(g, classical))
    }

    /// Samples a basis state from `|amplitude|²` without collapsing.
    pub fn measure_all<R: Rng + ?Sized>(&self, rng: &mut R) -> Bitstring {
        let value = sample_index(self.amplitudes.iter().map(|a| a.norm_sqr()), rng) as u64;
        Bitstring {
            value,
            width: self.num_qubits,
        }
    }

    /// Projective measurement of one qubit; the state collapses and is renormalized.
    pub fn measure_qubit<R: Rng + ?Sized>(
        &mut self,
        qubit: usize,
        rng: &mut R,
    ) -> Result<bool, SimError> {
        let m = self.check_qubit(qubit)?;
        let p_one: f64 = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| i & m != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        let outcome = if p_one <= 0.0 {
            false
        } else if p_one >= 1.0 {
            true
        } else {
            rng.random::<f64>() < p_one
        };
        let keep = if outcome { p_one } else { 1.0 - p_one };
        let scale = 1.0 / keep.sqrt();
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            if (i & m != 0) == outcome {
                *a *= scale;
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        Ok(outcome)
    }

    /// Marginal distribution over `qubits`; entry `k` has bit `j` equal to the
    /// value of `qubits[j]`.
    pub fn marginal(&self, qubits: &[usize]) -> Result<Vec<f64>, SimError> {
        for &q in qubits {
            self.check_qubit(q)?;
        }
        let mut out = vec![0.0; 1 << qubits.len()];
        for (i, a) in self.amplitudes.iter().enumerate() {
            let k = qubits
                .iter()
                .enumerate()
                .fold(0, |acc, (j, &q)| acc | ((i >> q & 1) << j));
            out[k] += a.norm_sqr();
        }
        Ok(out)
    }

    /// `⟨target|ρ|target⟩` where `ρ` is the reduced state of `qubit` and
    /// `target` is a single-qubit state.
    pub fn qubit_fidelity(&self, qubit: usize, target: &PureState) -> Result<f64, SimError> {
        let m = self.check_qubit(qubit)?;
        if target.num_qubits != 1 {
            return Err(SimError::DimensionMismatch(target.num_qubits, 1));
        }
        let (t0, t1) = (target.amplitudes[0].conj(), target.amplitudes[1].conj());
        Ok((0..self.amplitudes.len())
            .filter(|i| i & m == 0)
            .map(|i| (t0 * self.amplitudes[i] + t1 * self.amplitudes[i | m]).norm_sqr())
            .sum())
    }
}

/// Returns `gate` applied to a copy of `state`.
pub fn apply_gate(
    state: &PureState,
    gate: &Gate,
    classical: &ClassicalRegister,
) -> Result<PureState, SimError> {
    let mut next = state.clone();
    next.apply(gate, classical)?;
    Ok(next)
}

/// `|⟨a|b⟩|²`
pub fn fidelity(a: &PureState, b: &PureState) -> Result<f64, SimError> {
    if a.num_qubits != b.num_qubits {
        return Err(SimError::DimensionMismatch(a.num_qubits, b.num_qubits));
    }
    let overlap: Complex64 = a
        .amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum();
    Ok(overlap.norm_sqr().min(1.0))
}

/// Inverse-CDF sampling over unnormalized weights that sum to ~1.
pub(crate) fn sample_index<R: Rng + ?Sized>(
    weights: impl IntoIterator<Item = f64>,
    rng: &mut R,
) -> usize {
    let u = rng.random::<f64>();
    let mut acc = 0.0;
    let mut last_nonzero = 0;
    for (i, w) in weights.into_iter().enumerate() {
        if w > 0.0 {
            last_nonzero = i;
            acc += w;
            if u < acc {
                return i;
            }
        }
    }
    last_nonzero
}
