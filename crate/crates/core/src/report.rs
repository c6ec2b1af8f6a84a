//! Tabular renderings shared by the CLI and the test suites.

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::codec::DecodePlan;
use crate::error::Result;
use crate::snc::{broadcast_rate, code_length, format_rational, AnalysisReport, Rational, SncInstance};

/// One decimal, rounded toward zero: 806/3 prints as `268.6`.
pub fn truncate_one_decimal(r: &Rational) -> String {
    let tenths = r.numer() * 10 / r.denom();
    format!("{}.{}", tenths / 10, tenths % 10)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "D")]
    pub d: usize,
    #[serde(rename = "U")]
    pub u: usize,
    #[serde(rename = "beta")]
    pub beta_display: String,
    pub gamma: usize,
}

impl TableRow {
    pub fn for_instance(inst: &SncInstance) -> Self {
        Self {
            k: inst.k(),
            d: inst.d(),
            u: inst.u(),
            beta_display: truncate_one_decimal(&broadcast_rate(inst)),
            gamma: code_length(inst),
        }
    }
}

/// Rows for fixed `K`, `D` and each `U` in the range.
pub fn sweep(k: usize, d: usize, us: RangeInclusive<usize>) -> Result<Vec<TableRow>> {
    us.map(|u| SncInstance::new(k, d, u).map(|i| TableRow::for_instance(&i)))
        .collect()
}

/// `K = 827`, `D = 23`, `U = 1..=10`.
pub fn preset_table() -> Vec<TableRow> {
    sweep(827, 23, 1..=10).expect("preset instances are valid")
}

pub fn render_sweep_tsv(rows: &[TableRow]) -> String {
    let mut out = String::from("K\tD\tU\tbeta\tgamma\n");
    for r in rows {
        out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", r.k, r.d, r.u, r.beta_display, r.gamma));
    }
    out
}

pub const ANALYSIS_COLUMNS: [&str; 12] = [
    "K",
    "D",
    "U",
    "beta",
    "capacity",
    "mais",
    "gamma",
    "cond11",
    "minrank_status",
    "kappa",
    "mds_length",
    "conjecture_value",
];

pub fn render_analysis_tsv(r: &AnalysisReport) -> String {
    let values = [
        r.k.to_string(),
        r.d.to_string(),
        r.u.to_string(),
        format_rational(&r.beta),
        format_rational(&r.capacity),
        r.mais.to_string(),
        r.gamma.to_string(),
        r.cond11.to_string(),
        r.minrank_status.to_string(),
        r.kappa.to_string(),
        r.mds_length.to_string(),
        r.conjecture_value.to_string(),
    ];
    format!("{}\n{}\n", ANALYSIS_COLUMNS.join("\t"), values.join("\t"))
}

fn receiver_range(receivers: &[usize]) -> String {
    match receivers {
        [] => String::new(),
        [one] => one.to_string(),
        [first, .., last] if last - first + 1 == receivers.len() => format!("{first}-{last}"),
        _ => receivers.iter().map(usize::to_string).collect::<Vec<_>>().join(","),
    }
}

/// Table of which code symbols each receiver adds up.
pub fn render_plan_tsv(plan: &DecodePlan) -> String {
    let mut out = String::from("receivers\tsymbols\n");
    for row in plan.table_rows() {
        let symbols: Vec<String> = row.symbols.iter().map(|t| format!("c{t}")).collect();
        out.push_str(&format!("{}\t{}\n", receiver_range(&row.receivers), symbols.join(",")));
    }
    out
}
