//! CSV and JSON renderings of every result type.
//!
//! Raw CSV values carry 17 significant digits; `_r4` columns are rounded to
//! four decimals. JSON is pretty-printed with a trailing newline, and parsing
//! then re-emitting a report reproduces it byte for byte.

use serde::{Deserialize, Serialize};

use crate::experiments::{ExperimentReport, QecMonteCarloReport};
use crate::noise_algebra::{
    effective_correct, effective_fault, effective_fault_standard, outcome_fractions,
    AssistedAggregate, ErrorProbabilities, Mode, OutcomeFractions, StandardAggregate, SweepCell,
};
use crate::sensor_qec::{syndrome_hex, CaseRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Formats with 17 significant digits in plain decimal notation.
pub fn sig17(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (16 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

fn r4(x: f64) -> String {
    format!("{x:.4}")
}

fn opt(x: Option<f64>, f: fn(f64) -> String) -> String {
    x.map(f).unwrap_or_default()
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_string(rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

fn strings<const N: usize>(cells: [&str; N]) -> Vec<String> {
    cells.iter().map(|s| s.to_string()).collect()
}

/// Flat truth-table row as exported.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthTableRow {
    pub env_mask: String,
    pub ent_mask: String,
    pub resultant: String,
    pub syndrome_hex: String,
    pub o_exp: u32,
    pub p_exp: u32,
    pub obar_exp: u32,
    pub pbar_exp: u32,
    pub standard: String,
    pub assisted: String,
}

impl From<&CaseRecord> for TruthTableRow {
    fn from(r: &CaseRecord) -> Self {
        Self {
            env_mask: format!("{:03b}", r.mask.env()),
            ent_mask: format!("{:03b}", r.mask.ent()),
            resultant: format!("{:03b}", r.resultant),
            syndrome_hex: syndrome_hex(r.syndrome),
            o_exp: r.exponents.0,
            p_exp: r.exponents.1,
            obar_exp: r.obar_exponent(),
            pbar_exp: r.pbar_exponent(),
            standard: r.standard_outcome.to_string(),
            assisted: r.assisted_outcome.to_string(),
        }
    }
}

pub fn truth_table(records: &[CaseRecord], format: Format) -> String {
    let rows: Vec<TruthTableRow> = records.iter().map(TruthTableRow::from).collect();
    match format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut out = vec![strings([
                "env_mask",
                "ent_mask",
                "resultant",
                "syndrome_hex",
                "o_exp",
                "p_exp",
                "obar_exp",
                "pbar_exp",
                "standard",
                "assisted",
            ])];
            out.extend(rows.into_iter().map(|r| {
                vec![
                    r.env_mask,
                    r.ent_mask,
                    r.resultant,
                    r.syndrome_hex,
                    r.o_exp.to_string(),
                    r.p_exp.to_string(),
                    r.obar_exp.to_string(),
                    r.pbar_exp.to_string(),
                    r.standard,
                    r.assisted,
                ]
            }));
            csv_string(out)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundedSummary {
    pub standard: StandardAggregate,
    pub assisted: AssistedAggregate,
    pub effective_correct_standard: f64,
    pub effective_correct_assisted: Option<f64>,
    pub effective_fault_assisted: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractionsReport {
    pub o: f64,
    pub p: f64,
    pub phat: f64,
    /// Both probabilities below 0.5.
    pub small: bool,
    pub fractions: OutcomeFractions,
    pub standard: StandardAggregate,
    pub assisted: AssistedAggregate,
    pub effective_correct_standard: f64,
    /// `None` when every calculation is rejected.
    pub effective_correct_assisted: Option<f64>,
    pub effective_fault_standard: f64,
    pub effective_fault_assisted: Option<f64>,
    pub rounded: RoundedSummary,
}

impl FractionsReport {
    pub fn new(probs: &ErrorProbabilities) -> Self {
        let fractions = outcome_fractions(probs);
        let standard = fractions.standard();
        let assisted = fractions.assisted();
        let ec_std =
            effective_correct(&fractions, Mode::Standard).expect("standard code rejects nothing");
        let ec_asst = effective_correct(&fractions, Mode::Assisted).ok();
        let ef_asst = effective_fault(&fractions).ok();
        Self {
            o: probs.o(),
            p: probs.p(),
            phat: probs.phat(),
            small: probs.is_small(),
            fractions,
            standard,
            assisted,
            effective_correct_standard: ec_std,
            effective_correct_assisted: ec_asst,
            effective_fault_standard: effective_fault_standard(&fractions)
                .expect("standard code rejects nothing"),
            effective_fault_assisted: ef_asst,
            rounded: RoundedSummary {
                standard: StandardAggregate {
                    c: round4(standard.c),
                    cc: round4(standard.cc),
                    f: round4(standard.f),
                },
                assisted: AssistedAggregate {
                    c: round4(assisted.c),
                    cc: round4(assisted.cc),
                    f: round4(assisted.f),
                    r_pt: round4(assisted.r_pt),
                    r_s: round4(assisted.r_s),
                },
                effective_correct_standard: round4(ec_std),
                effective_correct_assisted: ec_asst.map(round4),
                effective_fault_assisted: ef_asst.map(round4),
            },
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                let mut rows = vec![strings(["quantity", "value", "rounded"])];
                let mut push = |name: &str, v: Option<f64>| {
                    rows.push(vec![name.to_string(), opt(v, sig17), opt(v, r4)]);
                };
                push("o", Some(self.o));
                push("p", Some(self.p));
                push("phat", Some(self.phat));
                for (name, v) in OutcomeFractions::FIELD_NAMES
                    .iter()
                    .zip(self.fractions.to_array())
                {
                    push(name, Some(v));
                }
                push("standard_c", Some(self.standard.c));
                push("standard_cc", Some(self.standard.cc));
                push("standard_f", Some(self.standard.f));
                push("assisted_c", Some(self.assisted.c));
                push("assisted_cc", Some(self.assisted.cc));
                push("assisted_f", Some(self.assisted.f));
                push("assisted_r_pt", Some(self.assisted.r_pt));
                push("assisted_r_s", Some(self.assisted.r_s));
                push(
                    "effective_correct_standard",
                    Some(self.effective_correct_standard),
                );
                push(
                    "effective_correct_assisted",
                    self.effective_correct_assisted,
                );
                push(
                    "effective_fault_standard",
                    Some(self.effective_fault_standard),
                );
                push("effective_fault_assisted", self.effective_fault_assisted);
                csv_string(rows)
            }
        }
    }
}

pub fn sweep(cells: &[SweepCell], format: Format) -> String {
    match format {
        Format::Json => to_json(&cells),
        Format::Csv => {
            let mut rows = vec![strings([
                "phat",
                "entangling_fraction",
                "eff_fault_standard",
                "eff_fault_assisted",
                "eff_fault_standard_r4",
                "eff_fault_assisted_r4",
                "status",
            ])];
            rows.extend(cells.iter().map(|c| {
                vec![
                    sig17(c.phat),
                    sig17(c.entangling_fraction),
                    opt(c.eff_fault_standard, sig17),
                    opt(c.eff_fault_assisted, sig17),
                    opt(c.eff_fault_standard, r4),
                    opt(c.eff_fault_assisted, r4),
                    c.error.clone().unwrap_or_else(|| "ok".into()),
                ]
            }));
            csv_string(rows)
        }
    }
}

pub fn qec_montecarlo(report: &QecMonteCarloReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            let mut rows = vec![strings([
                "field",
                "count",
                "empirical",
                "analytic",
                "z_score",
            ])];
            let counts = report.counts.to_array();
            let emp = report.empirical.to_array();
            let ana = report.analytic.to_array();
            for k in 0..7 {
                rows.push(vec![
                    OutcomeFractions::FIELD_NAMES[k].to_string(),
                    counts[k].to_string(),
                    sig17(emp[k]),
                    sig17(ana[k]),
                    opt(report.z_scores[k], sig17),
                ]);
            }
            csv_string(rows)
        }
    }
}

pub fn dj_experiment(report: &ExperimentReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            let mut header = strings([
                "row",
                "accepted",
                "rejected",
                "correct_fraction",
                "rejected_fraction",
            ]);
            header.extend(report.states.iter().map(|s| format!("count_{s}")));
            header.extend(report.states.iter().map(|s| format!("fraction_{s}")));
            let mut rows = vec![header];

            let blanks = || vec![String::new(); report.states.len()];
            let counted = |label: String,
                           counts: &[u64],
                           accepted: u64,
                           rejected: u64,
                           correct: Option<f64>,
                           rej: f64| {
                let denom = accepted.max(1) as f64;
                let mut row = vec![
                    label,
                    accepted.to_string(),
                    rejected.to_string(),
                    opt(correct, sig17),
                    sig17(rej),
                ];
                row.extend(counts.iter().map(|c| c.to_string()));
                row.extend(counts.iter().map(|&c| sig17(c as f64 / denom)));
                row
            };
            if report.trials.len() > 1 {
                for t in &report.trials {
                    rows.push(counted(
                        format!("trial_{}", t.trial),
                        &t.counts,
                        t.accepted,
                        t.rejected,
                        t.correct_fraction,
                        t.rejected_fraction,
                    ));
                }
            }
            rows.push(counted(
                "total".into(),
                &report.counts,
                report.accepted,
                report.rejected,
                report.correct_fraction,
                report.rejected_fraction,
            ));
            if let Some(s) = &report.summary {
                for (label, correct, rej, fr) in [
                    (
                        "mean",
                        s.mean_correct_fraction,
                        s.mean_rejected_fraction,
                        &s.mean_fractions,
                    ),
                    (
                        "std",
                        s.std_correct_fraction,
                        s.std_rejected_fraction,
                        &s.std_fractions,
                    ),
                ] {
                    let mut row = vec![
                        label.to_string(),
                        String::new(),
                        String::new(),
                        sig17(correct),
                        sig17(rej),
                    ];
                    row.extend(blanks());
                    row.extend(fr.iter().map(|&v| sig17(v)));
                    rows.push(row);
                }
            }
            csv_string(rows)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sensor_qec::enumerate_truth_table;

    #[test]
    fn sig17_digits() {
        assert_eq!(sig17(0.0), "0");
        assert_eq!(sig17(0.896), "0.89600000000000002");
        assert_eq!(sig17(1.0), "1.0000000000000000");
        assert_eq!(sig17(12.5), "12.500000000000000");
        assert_eq!(sig17(1e20), "100000000000000000000");
        for x in [0.1, 0.0909090909, 3.3e-7, 0.9643679648078666] {
            assert_eq!(sig17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn round4_matches_table_precision() {
        assert_eq!(round4(0.96436796), 0.9644);
        assert_eq!(round4(0.0), 0.0);
    }

    #[test]
    fn truth_table_csv_shape() {
        let csv = truth_table(&enumerate_truth_table(), Format::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 65);
        assert_eq!(
            lines[0],
            "env_mask,ent_mask,resultant,syndrome_hex,o_exp,p_exp,obar_exp,pbar_exp,standard,assisted"
        );
        assert!(lines.contains(&"001,010,011,0x2,1,1,2,2,F,REJECT_PT"));
    }

    #[test]
    fn fractions_report_json_round_trip() {
        let probs = ErrorProbabilities::from_total(0.20, 0.12).unwrap();
        let json = FractionsReport::new(&probs).render(Format::Json);
        let parsed: FractionsReport = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.render(Format::Json), json);
        assert_eq!(parsed.rounded.effective_correct_assisted, Some(0.9644));
    }
}
