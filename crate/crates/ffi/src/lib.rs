//! C ABI for the sensor-assist engine.
//!
//! Every fallible function returns an [`SaStatus`]; on anything but
//! `SA_STATUS_OK` a description is available from [`sa_last_error_message`]
//! on the same thread. Results are written through caller-provided out
//! pointers. Handles and strings returned by this library must be released
//! with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sensor_assist::experiments::{
    run_qec_montecarlo, DjConfig, DjEngine, ExperimentReport, QecMonteCarloConfig,
};
use sensor_assist::noise_algebra::{
    effective_correct, effective_fault, outcome_fractions, solve_environmental, ErrorProbabilities,
    Mode, OutcomeFractions,
};
use sensor_assist::report::{self, Format};
use sensor_assist::sensor_qec::{
    classify_case, enumerate_truth_table, AssistedOutcome, CaseRecord, ErrorMask, StandardOutcome,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DomainError = 3,
    Panic = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaStandardOutcome {
    C = 0,
    Cc = 1,
    F = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaAssistedOutcome {
    AcceptC = 0,
    AcceptCc = 1,
    AcceptF = 2,
    RejectPt = 3,
    RejectS = 4,
}

impl From<StandardOutcome> for SaStandardOutcome {
    fn from(o: StandardOutcome) -> Self {
        match o {
            StandardOutcome::C => Self::C,
            StandardOutcome::CC => Self::Cc,
            StandardOutcome::F => Self::F,
        }
    }
}

impl From<AssistedOutcome> for SaAssistedOutcome {
    fn from(o: AssistedOutcome) -> Self {
        match o {
            AssistedOutcome::AcceptC => Self::AcceptC,
            AssistedOutcome::AcceptCC => Self::AcceptCc,
            AssistedOutcome::AcceptF => Self::AcceptF,
            AssistedOutcome::RejectPT => Self::RejectPt,
            AssistedOutcome::RejectS => Self::RejectS,
        }
    }
}

/// The seven disjoint (standard, assisted) outcome fractions.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SaFractions {
    pub f_c_c: f64,
    pub f_cc_cc: f64,
    pub f_f_f: f64,
    pub f_cc_rpt: f64,
    pub f_f_rpt: f64,
    pub f_cc_rs: f64,
    pub f_f_rs: f64,
}

impl From<OutcomeFractions> for SaFractions {
    fn from(f: OutcomeFractions) -> Self {
        Self {
            f_c_c: f.f_c_c,
            f_cc_cc: f.f_cc_cc,
            f_f_f: f.f_f_f,
            f_cc_rpt: f.f_cc_rpt,
            f_f_rpt: f.f_f_rpt,
            f_cc_rs: f.f_cc_rs,
            f_f_rs: f.f_f_rs,
        }
    }
}

/// Headline metrics at one error point. Metrics that are undefined because
/// every calculation was rejected are NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SaMetrics {
    pub effective_correct_standard: f64,
    pub effective_correct_assisted: f64,
    pub effective_fault_standard: f64,
    pub effective_fault_assisted: f64,
    pub rejected: f64,
}

/// One truth-table row. Masks use bit `i` for data qubit `i`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SaCaseRecord {
    pub env_mask: u8,
    pub ent_mask: u8,
    pub resultant: u8,
    pub syndrome: u8,
    pub o_exponent: u32,
    pub p_exponent: u32,
    pub standard: SaStandardOutcome,
    pub assisted: SaAssistedOutcome,
}

impl From<&CaseRecord> for SaCaseRecord {
    fn from(r: &CaseRecord) -> Self {
        Self {
            env_mask: r.mask.env(),
            ent_mask: r.mask.ent(),
            resultant: r.resultant,
            syndrome: r.syndrome,
            o_exponent: r.exponents.0,
            p_exponent: r.exponents.1,
            standard: r.standard_outcome.into(),
            assisted: r.assisted_outcome.into(),
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SaQecMcResult {
    pub shots: u64,
    /// Counts in the field order of [`SaFractions`].
    pub counts: [u64; 7],
    pub empirical: SaFractions,
    pub analytic: SaFractions,
    pub max_abs_z: f64,
    pub audited: u64,
    pub audit_mismatches: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaDjConfig {
    pub shots: u64,
    pub trials: u32,
    pub gate_error_prob: f64,
    pub detectable_fraction: f64,
    pub veto_enabled: bool,
    pub seed: u64,
}

impl From<SaDjConfig> for DjConfig {
    fn from(c: SaDjConfig) -> Self {
        Self {
            shots: c.shots,
            trials: c.trials,
            gate_error_prob: c.gate_error_prob,
            detectable_fraction: c.detectable_fraction,
            veto_enabled: c.veto_enabled,
            seed: c.seed,
        }
    }
}

/// Totals over all trials of a benchmark run. `correct_fraction` is NaN when
/// every shot was vetoed.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SaDjSummary {
    pub total_shots: u64,
    pub accepted: u64,
    pub rejected: u64,
    pub correct_fraction: f64,
    pub rejected_fraction: f64,
    pub num_states: usize,
    pub num_trials: usize,
}

/// Opaque truth-table handle.
pub struct SaTruthTable {
    records: Vec<CaseRecord>,
}

/// Opaque benchmark-report handle.
pub struct SaDjReport {
    report: ExperimentReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SaStatus, String);

impl Failure {
    fn domain(e: impl ToString) -> Self {
        Failure(SaStatus::DomainError, e.to_string())
    }

    fn invalid(e: impl ToString) -> Self {
        Failure(SaStatus::InvalidArgument, e.to_string())
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SaStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("panic: {msg}"));
            SaStatus::Panic
        }
    }
}

fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    // SAFETY: the caller promises `p` is either null or valid for writes.
    unsafe { p.as_mut() }.ok_or_else(|| Failure(SaStatus::NullPointer, format!("{name} is null")))
}

fn input<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    // SAFETY: the caller promises `p` is either null or a live object.
    unsafe { p.as_ref() }.ok_or_else(|| Failure(SaStatus::NullPointer, format!("{name} is null")))
}

fn probabilities(o: f64, p: f64) -> Result<ErrorProbabilities, Failure> {
    ErrorProbabilities::new(o, p).map_err(Failure::domain)
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sa_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Environmental probability `o` from the total `phat` and entangling `p`.
///
/// # Safety
/// `out_o` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sa_solve_environmental(phat: f64, p: f64, out_o: *mut f64) -> SaStatus {
    guard(|| {
        let slot = out(out_o, "out_o")?;
        *slot = solve_environmental(phat, p).map_err(Failure::domain)?;
        Ok(())
    })
}

/// Closed-form outcome fractions for per-qubit probabilities `o` and `p`.
///
/// # Safety
/// `out_fractions` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sa_outcome_fractions(
    o: f64,
    p: f64,
    out_fractions: *mut SaFractions,
) -> SaStatus {
    guard(|| {
        let slot = out(out_fractions, "out_fractions")?;
        *slot = outcome_fractions(&probabilities(o, p)?).into();
        Ok(())
    })
}

/// Effective correct and fault rates for both codes.
///
/// # Safety
/// `out_metrics` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sa_metrics(o: f64, p: f64, out_metrics: *mut SaMetrics) -> SaStatus {
    guard(|| {
        let slot = out(out_metrics, "out_metrics")?;
        let fr = outcome_fractions(&probabilities(o, p)?);
        let s = fr.standard();
        *slot = SaMetrics {
            effective_correct_standard: effective_correct(&fr, Mode::Standard).unwrap_or(f64::NAN),
            effective_correct_assisted: effective_correct(&fr, Mode::Assisted).unwrap_or(f64::NAN),
            effective_fault_standard: s.f,
            effective_fault_assisted: effective_fault(&fr).unwrap_or(f64::NAN),
            rejected: fr.assisted().rejected(),
        };
        Ok(())
    })
}

/// Classifies one error combination (each mask in `0..8`).
///
/// # Safety
/// `out_record` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sa_classify_case(
    env_mask: u8,
    ent_mask: u8,
    out_record: *mut SaCaseRecord,
) -> SaStatus {
    guard(|| {
        let slot = out(out_record, "out_record")?;
        let mask = ErrorMask::new(env_mask, ent_mask).map_err(Failure::invalid)?;
        *slot = (&classify_case(mask)).into();
        Ok(())
    })
}

/// Builds the 64-row truth table. Free with [`sa_truth_table_free`].
///
/// # Safety
/// `out_table` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sa_truth_table_new(out_table: *mut *mut SaTruthTable) -> SaStatus {
    guard(|| {
        let slot = out(out_table, "out_table")?;
        *slot = Box::into_raw(Box::new(SaTruthTable {
            records: enumerate_truth_table(),
        }));
        Ok(())
    })
}

/// Number of rows, or 0 for a null handle.
///
/// # Safety
/// `table` must be null or a handle from [`sa_truth_table_new`].
#[no_mangle]
pub unsafe extern "C" fn sa_truth_table_len(table: *const SaTruthTable) -> usize {
    unsafe { table.as_ref() }.map_or(0, |t| t.records.len())
}

/// # Safety
/// `table` must be null or a live handle; `out_record` null or writable.
#[no_mangle]
pub unsafe extern "C" fn sa_truth_table_get(
    table: *const SaTruthTable,
    index: usize,
    out_record: *mut SaCaseRecord,
) -> SaStatus {
    guard(|| {
        let table = input(table, "table")?;
        let slot = out(out_record, "out_record")?;
        let rec = table.records.get(index).ok_or_else(|| {
            Failure::invalid(format!(
                "row {index} out of range 0..{}",
                table.records.len()
            ))
        })?;
        *slot = rec.into();
        Ok(())
    })
}

/// # Safety
/// `table` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sa_truth_table_free(table: *mut SaTruthTable) {
    if !table.is_null() {
        drop(unsafe { Box::from_raw(table) });
    }
}

/// Seeded Monte Carlo over the error channel with the given sensor efficiency.
///
/// # Safety
/// `out_result` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sa_qec_mc_run(
    shots: u64,
    o: f64,
    p: f64,
    seed: u64,
    sensor_efficiency: f64,
    out_result: *mut SaQecMcResult,
) -> SaStatus {
    guard(|| {
        let slot = out(out_result, "out_result")?;
        let mut config = QecMonteCarloConfig::new(shots, o, p, seed);
        config.sensor_efficiency = sensor_efficiency;
        let r = run_qec_montecarlo(&config).map_err(Failure::domain)?;
        *slot = SaQecMcResult {
            shots: r.shots,
            counts: r.counts.to_array(),
            empirical: r.empirical.into(),
            analytic: r.analytic.into(),
            max_abs_z: r.max_abs_z(),
            audited: r.audited,
            audit_mismatches: r.audit_mismatches,
        };
        Ok(())
    })
}

/// Default benchmark configuration.
#[no_mangle]
pub extern "C" fn sa_dj_config_default() -> SaDjConfig {
    let d = DjConfig::default();
    SaDjConfig {
        shots: d.shots,
        trials: d.trials,
        gate_error_prob: d.gate_error_prob,
        detectable_fraction: d.detectable_fraction,
        veto_enabled: d.veto_enabled,
        seed: d.seed,
    }
}

/// Runs the noisy Deutsch-Jozsa benchmark. Free with [`sa_dj_report_free`].
///
/// # Safety
/// `config` must be null or readable; `out_report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn sa_dj_run(
    config: *const SaDjConfig,
    out_report: *mut *mut SaDjReport,
) -> SaStatus {
    guard(|| {
        let config = *input(config, "config")?;
        let slot = out(out_report, "out_report")?;
        let report = DjEngine::canonical()
            .run(&config.into())
            .map_err(Failure::invalid)?;
        *slot = Box::into_raw(Box::new(SaDjReport { report }));
        Ok(())
    })
}

/// # Safety
/// `report` must be null or a live handle; `out_summary` null or writable.
#[no_mangle]
pub unsafe extern "C" fn sa_dj_report_summary(
    report: *const SaDjReport,
    out_summary: *mut SaDjSummary,
) -> SaStatus {
    guard(|| {
        let r = &input(report, "report")?.report;
        let slot = out(out_summary, "out_summary")?;
        *slot = SaDjSummary {
            total_shots: r.total_shots,
            accepted: r.accepted,
            rejected: r.rejected,
            correct_fraction: r.correct_fraction.unwrap_or(f64::NAN),
            rejected_fraction: r.rejected_fraction,
            num_states: r.states.len(),
            num_trials: r.trials.len(),
        };
        Ok(())
    })
}

/// Accepted-shot count for measured basis state `state` (qubit 0 is bit 0).
///
/// # Safety
/// `report` must be null or a live handle; `out_count` null or writable.
#[no_mangle]
pub unsafe extern "C" fn sa_dj_report_count(
    report: *const SaDjReport,
    state: usize,
    out_count: *mut u64,
) -> SaStatus {
    guard(|| {
        let r = &input(report, "report")?.report;
        let slot = out(out_count, "out_count")?;
        *slot = *r.counts.get(state).ok_or_else(|| {
            Failure::invalid(format!("state {state} out of range 0..{}", r.counts.len()))
        })?;
        Ok(())
    })
}

/// Full report as JSON. Free the string with [`sa_string_free`].
///
/// # Safety
/// `report` must be null or a live handle; `out_json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn sa_dj_report_to_json(
    report: *const SaDjReport,
    out_json: *mut *mut c_char,
) -> SaStatus {
    guard(|| {
        let r = &input(report, "report")?.report;
        let slot = out(out_json, "out_json")?;
        let json = report::dj_experiment(r, Format::Json);
        *slot = CString::new(json).map_err(Failure::domain)?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sa_dj_report_free(report: *mut SaDjReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
