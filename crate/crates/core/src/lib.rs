//! Simulation and analysis toolkit for sensor-assisted fault mitigation in
//! small quantum circuits.
//!
//! The crate covers a pure-state simulator ([`statevector`]), closed-form
//! outcome fractions for the three-qubit repetition code ([`noise_algebra`]),
//! the enumerated truth table and circuit construction for that code
//! ([`sensor_qec`]), and Monte Carlo experiments ([`experiments`]).

pub mod cli;
pub mod experiments;
pub mod noise_algebra;
pub mod report;
pub mod sensor_qec;
pub mod statevector;

pub use noise_algebra::{
    effective_correct, effective_fault, effective_fault_standard, outcome_fractions,
    solve_environmental, AlgebraError, ErrorProbabilities, Mode, OutcomeFractions,
};
pub use sensor_qec::{
    classify_case, enumerate_truth_table, AssistedOutcome, CaseRecord, ErrorMask, StandardOutcome,
};
pub use statevector::{Bitstring, ClassicalRegister, Gate, PureState, SimError};
