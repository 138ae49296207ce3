//! Closed-form outcome algebra for two independent per-qubit error processes.
//!
//! Each of the three data qubits independently suffers an environmental
//! (sensor-detectable) bit flip with probability `o` and an entangling bit
//! flip with probability `p`. Two flips on the same qubit cancel, which is
//! tracked by the weight `cbar = o·p`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sensor_qec::ErrorMask;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("{name} = {value} is outside [0, 1]")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("p = {p} exceeds phat = {phat}; the environmental probability would be negative")]
    NegativeEnvironmental { phat: f64, p: f64 },
    #[error("p = 1 leaves the environmental probability undetermined")]
    DegenerateEntangling,
    #[error("no calculations survive rejection; the effective rate is undefined")]
    AllRejected,
    #[error("invalid range: {0}")]
    InvalidRange(String),
}

fn check_unit(name: &'static str, value: f64) -> Result<f64, AlgebraError> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(AlgebraError::OutOfRange { name, value })
    }
}

/// Per-qubit probabilities of an environmental (`o`) and entangling (`p`) flip.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorProbabilities {
    o: f64,
    p: f64,
}

impl ErrorProbabilities {
    pub fn new(o: f64, p: f64) -> Result<Self, AlgebraError> {
        Ok(Self {
            o: check_unit("o", o)?,
            p: check_unit("p", p)?,
        })
    }

    /// Builds the pair from the total per-qubit error probability and `p`.
    pub fn from_total(phat: f64, p: f64) -> Result<Self, AlgebraError> {
        let o = solve_environmental(phat, p)?;
        Self::new(o, p)
    }

    pub fn o(&self) -> f64 {
        self.o
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn obar(&self) -> f64 {
        1.0 - self.o
    }

    pub fn pbar(&self) -> f64 {
        1.0 - self.p
    }

    /// Weight of a same-qubit cancellation.
    pub fn cbar(&self) -> f64 {
        self.o * self.p
    }

    /// Probability that at least one flip hits a given qubit.
    pub fn phat(&self) -> f64 {
        self.o + self.p - self.o * self.p
    }

    /// Whether both probabilities sit in the "small" regime (< 0.5) the
    /// correction code is meant for. Larger values are still computed.
    pub fn is_small(&self) -> bool {
        self.o < 0.5 && self.p < 0.5
    }
}

/// Inverts `phat = o + p − o·p` for `o`.
pub fn solve_environmental(phat: f64, p: f64) -> Result<f64, AlgebraError> {
    check_unit("phat", phat)?;
    check_unit("p", p)?;
    if p > phat {
        return Err(AlgebraError::NegativeEnvironmental { phat, p });
    }
    if p >= 1.0 {
        return Err(AlgebraError::DegenerateEntangling);
    }
    Ok((phat - p) / (1.0 - p))
}

/// Probability of one specific (environmental, entangling) flip pattern.
pub fn case_probability(mask: ErrorMask, probs: &ErrorProbabilities) -> f64 {
    let a = mask.env_weight() as i32;
    let b = mask.ent_weight() as i32;
    probs.o.powi(a) * probs.p.powi(b) * probs.obar().powi(3 - a) * probs.pbar().powi(3 - b)
}

/// Joint standard-vs-assisted outcome weights. Field names read
/// `f_<standard>_<assisted>`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct OutcomeFractions {
    pub f_c_c: f64,
    pub f_cc_cc: f64,
    pub f_f_f: f64,
    pub f_cc_rpt: f64,
    pub f_f_rpt: f64,
    pub f_cc_rs: f64,
    pub f_f_rs: f64,
}

impl OutcomeFractions {
    pub const FIELD_NAMES: [&'static str; 7] = [
        "f_c_c", "f_cc_cc", "f_f_f", "f_cc_rpt", "f_f_rpt", "f_cc_rs", "f_f_rs",
    ];

    pub fn to_array(&self) -> [f64; 7] {
        [
            self.f_c_c,
            self.f_cc_cc,
            self.f_f_f,
            self.f_cc_rpt,
            self.f_f_rpt,
            self.f_cc_rs,
            self.f_f_rs,
        ]
    }

    pub fn from_array(v: [f64; 7]) -> Self {
        Self {
            f_c_c: v[0],
            f_cc_cc: v[1],
            f_f_f: v[2],
            f_cc_rpt: v[3],
            f_f_rpt: v[4],
            f_cc_rs: v[5],
            f_f_rs: v[6],
        }
    }

    pub fn total(&self) -> f64 {
        self.to_array().iter().sum()
    }

    pub fn standard(&self) -> StandardAggregate {
        StandardAggregate {
            c: self.f_c_c,
            cc: self.f_cc_cc + self.f_cc_rpt + self.f_cc_rs,
            f: self.f_f_f + self.f_f_rpt + self.f_f_rs,
        }
    }

    pub fn assisted(&self) -> AssistedAggregate {
        AssistedAggregate {
            c: self.f_c_c,
            cc: self.f_cc_cc,
            f: self.f_f_f,
            r_pt: self.f_cc_rpt + self.f_f_rpt,
            r_s: self.f_cc_rs + self.f_f_rs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardAggregate {
    pub c: f64,
    pub cc: f64,
    pub f: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AssistedAggregate {
    pub c: f64,
    pub cc: f64,
    pub f: f64,
    pub r_pt: f64,
    pub r_s: f64,
}

impl AssistedAggregate {
    pub fn rejected(&self) -> f64 {
        self.r_pt + self.r_s
    }
}

/// Evaluates the grouped outcome polynomials.
pub fn outcome_fractions(probs: &ErrorProbabilities) -> OutcomeFractions {
    let (o, p) = (probs.o, probs.p);
    let (ob, pb, c) = (probs.obar(), probs.pbar(), probs.cbar());
    let (ob2, ob3) = (ob * ob, ob * ob * ob);
    let (pb2, pb3) = (pb * pb, pb * pb * pb);

    OutcomeFractions {
        f_c_c: ob3 * (3.0 * p * pb2 + pb3) + ob2 * (3.0 * o * pb3),
        f_cc_cc: ob2 * (3.0 * c * pb2),
        f_f_f: ob3 * (p * p * p + 3.0 * p * p * pb)
            + ob2 * (3.0 * p * p * c + 3.0 * o * p * p * pb),
        f_cc_rpt: ob2 * (6.0 * p * c * pb),
        f_f_rpt: ob2 * (6.0 * o * p * pb2),
        f_cc_rs: ob * (3.0 * p * c * c + 3.0 * c * c * pb + 6.0 * o * c * pb2)
            + c * c * c
            + 3.0 * o * c * c * pb,
        f_f_rs: ob * (6.0 * o * p * c * pb + 3.0 * o * o * p * pb2 + 3.0 * o * o * pb3)
            + 3.0 * o * o * c * pb2
            + o * o * o * pb3,
    }
}

pub fn standard_aggregate(fr: &OutcomeFractions) -> StandardAggregate {
    fr.standard()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Standard,
    Assisted,
}

/// `(C + CC) / (C + CC + F)` over the calculations that are not rejected.
pub fn effective_correct(fr: &OutcomeFractions, mode: Mode) -> Result<f64, AlgebraError> {
    let (good, bad) = match mode {
        Mode::Standard => {
            let s = fr.standard();
            (s.c + s.cc, s.f)
        }
        Mode::Assisted => (fr.f_c_c + fr.f_cc_cc, fr.f_f_f),
    };
    let denom = good + bad;
    if denom <= 0.0 {
        return Err(AlgebraError::AllRejected);
    }
    Ok(good / denom)
}

/// Fraction of unrejected assisted calculations that are faulty.
pub fn effective_fault(fr: &OutcomeFractions) -> Result<f64, AlgebraError> {
    let denom = fr.f_f_f + fr.f_c_c + fr.f_cc_cc;
    if denom <= 0.0 {
        return Err(AlgebraError::AllRejected);
    }
    Ok(fr.f_f_f / denom)
}

/// Fraction of standard-code calculations that are faulty (nothing is rejected).
pub fn effective_fault_standard(fr: &OutcomeFractions) -> Result<f64, AlgebraError> {
    let s = fr.standard();
    let denom = s.c + s.cc + s.f;
    if denom <= 0.0 {
        return Err(AlgebraError::AllRejected);
    }
    Ok(s.f / denom)
}

/// One grid point of the effective-fault surface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub phat: f64,
    pub entangling_fraction: f64,
    pub eff_fault_standard: Option<f64>,
    pub eff_fault_assisted: Option<f64>,
    pub error: Option<String>,
}

/// Effective fault rates at a given total rate and entangling share `p / phat`.
pub fn sweep_cell(phat: f64, entangling_fraction: f64) -> SweepCell {
    let eval = || -> Result<(f64, f64), AlgebraError> {
        check_unit("entangling_fraction", entangling_fraction)?;
        let p = entangling_fraction * phat;
        let probs = ErrorProbabilities::from_total(phat, p)?;
        let fr = outcome_fractions(&probs);
        Ok((effective_fault_standard(&fr)?, effective_fault(&fr)?))
    };
    let (std, asst, error) = match eval() {
        Ok((s, a)) => (Some(s), Some(a), None),
        Err(e) => (None, None, Some(e.to_string())),
    };
    SweepCell {
        phat,
        entangling_fraction,
        eff_fault_standard: std,
        eff_fault_assisted: asst,
        error,
    }
}

fn linspace(lo: f64, hi: f64, steps: usize) -> impl Iterator<Item = f64> {
    (0..steps).map(move |i| {
        if i + 1 == steps {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (steps - 1) as f64
        }
    })
}

/// Row-major grid (outer axis `phat`, inner axis entangling fraction), with
/// `steps` points per axis including both endpoints. Cells whose parameters
/// are out of domain are flagged rather than failing the sweep.
pub fn sweep_grid(
    phat_range: (f64, f64),
    fraction_range: (f64, f64),
    steps: usize,
) -> Result<Vec<SweepCell>, AlgebraError> {
    if steps < 2 {
        return Err(AlgebraError::InvalidRange(format!(
            "steps must be at least 2, got {steps}"
        )));
    }
    let (plo, phi) = phat_range;
    if !(0.0 <= plo && plo <= phi && phi < 1.0) {
        return Err(AlgebraError::InvalidRange(format!(
            "phat range [{plo}, {phi}] must satisfy 0 <= min <= max < 1"
        )));
    }
    let (flo, fhi) = fraction_range;
    if !(0.0 <= flo && flo <= fhi && fhi <= 1.0) {
        return Err(AlgebraError::InvalidRange(format!(
            "fraction range [{flo}, {fhi}] must satisfy 0 <= min <= max <= 1"
        )));
    }
    Ok(linspace(plo, phi, steps)
        .flat_map(|phat| linspace(flo, fhi, steps).map(move |frac| sweep_cell(phat, frac)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sensor_qec::{classify_case, AssistedOutcome, StandardOutcome};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    /// Brute-force oracle: sum per-case probabilities over the 64 masks,
    /// grouped by the truth-table classification.
    fn enumerated_fractions(probs: &ErrorProbabilities) -> OutcomeFractions {
        let mut v = [0.0; 7];
        for mask in ErrorMask::all() {
            let rec = classify_case(mask);
            use AssistedOutcome as A;
            use StandardOutcome as S;
            let slot = match (rec.standard_outcome, rec.assisted_outcome) {
                (S::C, A::AcceptC) => 0,
                (S::CC, A::AcceptCC) => 1,
                (S::F, A::AcceptF) => 2,
                (S::CC, A::RejectPT) => 3,
                (S::F, A::RejectPT) => 4,
                (S::CC, A::RejectS) => 5,
                (S::F, A::RejectS) => 6,
                other => panic!("unexpected outcome pair {other:?}"),
            };
            v[slot] += case_probability(mask, probs);
        }
        OutcomeFractions::from_array(v)
    }

    #[test]
    fn solve_environmental_examples() {
        assert_eq!(solve_environmental(0.20, 0.20).unwrap(), 0.0);
        for (phat, p) in [(0.20, 0.12), (0.05, 0.03)] {
            let o = solve_environmental(phat, p).unwrap();
            assert_abs_diff_eq!(o + p - o * p, phat, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(
            solve_environmental(0.20, 0.12).unwrap(),
            0.0909090909,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            solve_environmental(0.05, 0.03).unwrap(),
            0.0206185567,
            epsilon = 1e-10
        );
        assert!(matches!(
            solve_environmental(0.10, 0.12),
            Err(AlgebraError::NegativeEnvironmental { .. })
        ));
        assert_eq!(
            solve_environmental(1.0, 1.0),
            Err(AlgebraError::DegenerateEntangling)
        );
        assert!(matches!(
            solve_environmental(1.5, 0.1),
            Err(AlgebraError::OutOfRange { name: "phat", .. })
        ));
    }

    #[test]
    fn probabilities_reject_out_of_range() {
        assert!(ErrorProbabilities::new(-0.1, 0.2).is_err());
        assert!(ErrorProbabilities::new(0.1, 1.2).is_err());
        let pr = ErrorProbabilities::new(0.1, 0.2).unwrap();
        assert_eq!(pr.phat(), 0.1 + 0.2 - 0.1 * 0.2);
        assert_eq!(pr.obar() + pr.o(), 1.0);
        assert!(pr.is_small());
        assert!(!ErrorProbabilities::new(0.6, 0.0).unwrap().is_small());
    }

    #[test]
    fn case_probability_examples() {
        let pr = ErrorProbabilities::new(0.1, 0.2).unwrap();
        // 0.1 · 0.9² · 0.8³
        let expected = 0.1 * 0.81 * 0.512;
        assert_abs_diff_eq!(
            case_probability(ErrorMask::new(0b001, 0b000).unwrap(), &pr),
            expected,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(expected, 0.041472, epsilon = 1e-12);
        // 0.1 · 0.2² · 0.9² · 0.8
        let expected = 0.1 * 0.04 * 0.81 * 0.8;
        assert_abs_diff_eq!(
            case_probability(ErrorMask::new(0b001, 0b011).unwrap(), &pr),
            expected,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(expected, 0.002592, epsilon = 1e-12);

        let none = ErrorProbabilities::new(0.0, 0.0).unwrap();
        assert_eq!(case_probability(ErrorMask::new(0, 0).unwrap(), &none), 1.0);
    }

    #[test]
    fn fractions_without_environmental_errors() {
        let fr = outcome_fractions(&ErrorProbabilities::new(0.0, 0.20).unwrap());
        assert_abs_diff_eq!(fr.f_c_c, 0.8960, epsilon = 5e-4);
        assert_abs_diff_eq!(fr.f_f_f, 0.1040, epsilon = 5e-4);
        for v in [fr.f_cc_cc, fr.f_cc_rpt, fr.f_f_rpt, fr.f_cc_rs, fr.f_f_rs] {
            assert_eq!(v, 0.0);
        }
        let s = standard_aggregate(&fr);
        assert_abs_diff_eq!(s.c, 0.8960, epsilon = 5e-4);
        assert_eq!(s.cc, 0.0);
        assert_abs_diff_eq!(s.f, 0.1040, epsilon = 5e-4);
        for mode in [Mode::Standard, Mode::Assisted] {
            assert_abs_diff_eq!(
                effective_correct(&fr, mode).unwrap(),
                0.8960,
                epsilon = 5e-4
            );
        }
        assert_abs_diff_eq!(effective_fault(&fr).unwrap(), 0.1040, epsilon = 5e-4);
    }

    #[test]
    fn fractions_error_free() {
        let fr = outcome_fractions(&ErrorProbabilities::new(0.0, 0.0).unwrap());
        assert_eq!(fr.f_c_c, 1.0);
        assert_eq!(fr.total(), 1.0);
        let s = fr.standard();
        assert_eq!((s.c, s.cc, s.f), (1.0, 0.0, 0.0));
        assert_eq!(effective_fault(&fr).unwrap(), 0.0);
    }

    #[test]
    fn fractions_mixed_errors() {
        let fr = outcome_fractions(&ErrorProbabilities::new(0.0909091, 0.12).unwrap());
        let a = fr.assisted();
        assert_abs_diff_eq!(a.c, 0.8751, epsilon = 5e-4);
        assert_abs_diff_eq!(a.cc, 0.0209, epsilon = 5e-4);
        assert_abs_diff_eq!(a.f, 0.0331, epsilon = 5e-4);
        assert_abs_diff_eq!(a.r_pt, 0.0476, epsilon = 5e-4);
        assert_abs_diff_eq!(a.r_s, 0.0233, epsilon = 5e-4);
        let s = fr.standard();
        assert_abs_diff_eq!(s.cc, 0.0312, epsilon = 5e-4);
        assert_abs_diff_eq!(s.f, 0.0937, epsilon = 5e-4);
        assert_abs_diff_eq!(
            effective_correct(&fr, Mode::Assisted).unwrap(),
            0.9644,
            epsilon = 5e-4
        );
        assert_abs_diff_eq!(
            effective_correct(&fr, Mode::Standard).unwrap(),
            0.9063,
            epsilon = 5e-4
        );
        assert_abs_diff_eq!(effective_fault(&fr).unwrap(), 0.0356, epsilon = 5e-4);
    }

    #[test]
    fn all_rejected_is_a_domain_error() {
        let fr = outcome_fractions(&ErrorProbabilities::new(1.0, 0.0).unwrap());
        assert_eq!(
            effective_correct(&fr, Mode::Assisted),
            Err(AlgebraError::AllRejected)
        );
        assert_eq!(effective_fault(&fr), Err(AlgebraError::AllRejected));
    }

    #[test]
    fn sweep_examples() {
        let cell = sweep_cell(0.20, 0.60);
        assert_abs_diff_eq!(cell.eff_fault_assisted.unwrap(), 0.0356, epsilon = 5e-4);
        let cell = sweep_cell(0.3, 1.0);
        assert_eq!(cell.eff_fault_assisted, cell.eff_fault_standard);
        let cell = sweep_cell(0.0, 0.4);
        assert_eq!(cell.eff_fault_assisted, Some(0.0));
        assert_eq!(cell.eff_fault_standard, Some(0.0));

        let grid = sweep_grid((0.0, 0.2), (0.6, 1.0), 2).unwrap();
        assert_eq!(grid.len(), 4);
        assert_eq!((grid[1].phat, grid[1].entangling_fraction), (0.0, 1.0));
        assert_eq!((grid[2].phat, grid[2].entangling_fraction), (0.2, 0.6));
        assert_eq!(sweep_grid((0.0, 0.5), (0.0, 1.0), 50).unwrap().len(), 2500);
        assert!(sweep_grid((0.0, 0.5), (0.0, 1.0), 1).is_err());
        assert!(sweep_grid((0.0, 1.0), (0.0, 1.0), 3).is_err());
        assert!(sweep_grid((0.3, 0.1), (0.0, 1.0), 3).is_err());
        assert!(sweep_grid((0.0, 0.5), (0.0, 1.5), 3).is_err());
    }

    #[test]
    fn sweep_flags_bad_cells() {
        let cell = sweep_cell(0.2, 1.5);
        assert!(cell.error.is_some());
        assert!(cell.eff_fault_assisted.is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn partition_of_unity(o in 0.0..=0.5f64, p in 0.0..=0.5f64) {
            let fr = outcome_fractions(&ErrorProbabilities::new(o, p).unwrap());
            prop_assert!((fr.total() - 1.0).abs() <= 1e-12);
            prop_assert!(fr.to_array().iter().all(|v| (0.0..=1.0).contains(v)));
            let s = fr.standard();
            prop_assert!((s.c + s.cc + s.f - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn algebra_matches_enumeration(o in 0.0..=0.5f64, p in 0.0..=0.5f64) {
            let probs = ErrorProbabilities::new(o, p).unwrap();
            let closed = outcome_fractions(&probs).to_array();
            let brute = enumerated_fractions(&probs).to_array();
            for (c, b) in closed.iter().zip(brute) {
                prop_assert!((c - b).abs() <= 1e-12, "{c} vs {b}");
            }
        }

        #[test]
        fn solve_round_trip(phat in 0.0..0.999f64, share in 0.0..=1.0f64) {
            let p = phat * share;
            let o = solve_environmental(phat, p).unwrap();
            prop_assert!((o + p - o * p - phat).abs() <= 1e-15);
        }
    }
}
