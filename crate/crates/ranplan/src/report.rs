//! The report document produced by a pipeline run, plus CSV export.
//!
//! Reports are deterministic: map sections use ordered keys, floats are
//! rendered with Rust's shortest-round-trip formatting, and the optional
//! timestamp is the only field that can differ between identical runs.

use crate::overhead::AppliedPenalty;
use crate::packing::{DuSummary, Objective, TopologyViolation};
use crate::slicing::PowerCapRecord;
use crate::spectrum::FrequencyRange;
use crate::Verdict;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io;
use std::path::{Path, PathBuf};

pub const REPORT_SCHEMA_VERSION: &str = "1";

/// One failed or warned check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub verdict: Verdict,
    pub failures: Vec<Finding>,
    pub warnings: Vec<Finding>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run_index: usize,
    pub band: String,
    pub f_low_mhz: f64,
    pub f_high_mhz: f64,
    pub bandwidth_mhz: f64,
    pub blocks: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CarrierRecord {
    pub id: String,
    pub band: String,
    pub fr: FrequencyRange,
    pub f_low_mhz: f64,
    pub f_high_mhz: f64,
    pub bandwidth_mhz: f64,
    pub aggregated: bool,
    pub members: Vec<String>,
    pub profit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSection {
    pub runs: Vec<RunRecord>,
    pub carriers: Vec<CarrierRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingSection {
    pub objective: Objective,
    pub du_budget: usize,
    pub dus_used: usize,
    pub objective_value: f64,
    pub exact: bool,
    pub assignments: BTreeMap<String, usize>,
    pub disabled: Vec<String>,
    pub dus: Vec<DuSummary>,
    pub topology_violations: Vec<TopologyViolation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AddressRecord {
    pub du_index: usize,
    pub band_class: String,
    pub gnb_id: String,
    pub packed_decimal: Option<u32>,
    pub packed_hex: Option<String>,
    pub packing_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AddressingSection {
    pub market: u32,
    pub vcu: u32,
    pub entries: Vec<AddressRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathRecord {
    pub id: String,
    pub fr: FrequencyRange,
    pub fiber_km: f64,
    pub hops: u32,
    pub one_way_us: f64,
    pub round_trip_us: f64,
    pub crypto_us: f64,
    pub budget_us: f64,
    pub required_compute_us: f64,
    pub compute_slack_us: f64,
    pub binding_term: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatencySection {
    pub paths: Vec<PathRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThroughputRecord {
    pub cc_id: String,
    pub bandwidth_mhz: f64,
    pub nominal_mbps: f64,
    pub effective_mbps: f64,
    pub applied_penalties: Vec<AppliedPenalty>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThroughputSection {
    pub nominal_se_bps_hz: f64,
    pub entries: Vec<ThroughputRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceSection {
    pub name: String,
    pub p_max: f64,
    pub converged: bool,
    pub lambda: f64,
    pub objective: f64,
    pub iterations: usize,
    pub kkt_residual: f64,
    pub total_power: f64,
    pub power_caps: Vec<PowerCapRecord>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostSample {
    pub tau_months: f64,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DelayCostReport {
    pub base_cost: f64,
    pub tau_c_months: f64,
    pub requested: Vec<CostSample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClockReport {
    pub config: crate::dynamics::ClockConfig,
    pub verdict: Verdict,
    pub horizon_threshold_years: f64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarietyReport {
    pub internal_states: u64,
    pub external_states: u64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GovernanceSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delay_cost: Option<DelayCostReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clocks: Option<ClockReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variety: Option<VarietyReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlackSample {
    pub path_id: String,
    pub fiber_km: f64,
    pub compute_slack_us: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PlotsSection {
    pub delay_cost_curve: Vec<CostSample>,
    pub slack_vs_distance: Vec<SlackSample>,
}

/// The full report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    /// SHA-256 of the input document.
    pub input_digest: String,
    /// RFC 3339 generation time; omitted in deterministic runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<String>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub packing: Option<PackingSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub addressing: Option<AddressingSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub latency: Option<LatencySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub throughput: Option<ThroughputSection>,
    pub slices: Vec<SliceSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub governance: Option<GovernanceSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plots: Option<PlotsSection>,
}

impl ReportDocument {
    /// Pretty JSON with a trailing newline; the canonical render.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serialization is total");
        out.push('\n');
        out
    }
}

fn fmt_f64(value: f64) -> String {
    format!("{value}")
}

fn write_csv(
    dir: &Path,
    name: &str,
    header: &[&str],
    rows: Vec<Vec<String>>,
    written: &mut Vec<PathBuf>,
) -> io::Result<()> {
    let path = dir.join(name);
    let mut writer = csv::Writer::from_path(&path)?;
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(&row)?;
    }
    writer.flush()?;
    written.push(path);
    Ok(())
}

/// Writes one CSV file per tabular report section into `dir` (which must
/// exist) and returns the paths written. Sections absent from the report
/// produce no file.
pub fn write_csv_sections(report: &ReportDocument, dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut written = Vec::new();

    {
        let mut rows = vec![vec![
            "overall".to_string(),
            report.summary.verdict.to_string(),
            String::new(),
        ]];
        for finding in &report.summary.failures {
            rows.push(vec![
                "failure".to_string(),
                finding.check.clone(),
                finding.detail.clone(),
            ]);
        }
        for finding in &report.summary.warnings {
            rows.push(vec![
                "warning".to_string(),
                finding.check.clone(),
                finding.detail.clone(),
            ]);
        }
        write_csv(
            dir,
            "summary.csv",
            &["kind", "check", "detail"],
            rows,
            &mut written,
        )?;
    }

    if let Some(spectrum) = &report.spectrum {
        let rows = spectrum
            .runs
            .iter()
            .map(|run| {
                vec![
                    run.run_index.to_string(),
                    run.band.clone(),
                    fmt_f64(run.f_low_mhz),
                    fmt_f64(run.f_high_mhz),
                    fmt_f64(run.bandwidth_mhz),
                    run.blocks.join("|"),
                ]
            })
            .collect();
        write_csv(
            dir,
            "runs.csv",
            &[
                "run_index",
                "band",
                "f_low_mhz",
                "f_high_mhz",
                "bandwidth_mhz",
                "blocks",
            ],
            rows,
            &mut written,
        )?;

        let rows = spectrum
            .carriers
            .iter()
            .map(|carrier| {
                vec![
                    carrier.id.clone(),
                    carrier.band.clone(),
                    carrier.fr.label().to_string(),
                    fmt_f64(carrier.f_low_mhz),
                    fmt_f64(carrier.f_high_mhz),
                    fmt_f64(carrier.bandwidth_mhz),
                    carrier.aggregated.to_string(),
                    carrier.members.join("|"),
                    fmt_f64(carrier.profit),
                ]
            })
            .collect();
        write_csv(
            dir,
            "carriers.csv",
            &[
                "id",
                "band",
                "fr",
                "f_low_mhz",
                "f_high_mhz",
                "bandwidth_mhz",
                "aggregated",
                "members",
                "profit",
            ],
            rows,
            &mut written,
        )?;
    }

    if let Some(packing) = &report.packing {
        let rows = packing
            .assignments
            .iter()
            .map(|(cc, du)| vec![cc.clone(), du.to_string()])
            .chain(
                packing
                    .disabled
                    .iter()
                    .map(|cc| vec![cc.clone(), "disabled".to_string()]),
            )
            .collect();
        write_csv(dir, "assignments.csv", &["cc_id", "du"], rows, &mut written)?;

        let rows = packing
            .dus
            .iter()
            .map(|du| {
                vec![
                    du.du_index.to_string(),
                    du.cc_ids.join("|"),
                    du.cells_used.to_string(),
                    fmt_f64(du.abw_fr1_mhz),
                    fmt_f64(du.abw_fr2_mhz),
                ]
            })
            .collect();
        write_csv(
            dir,
            "dus.csv",
            &[
                "du_index",
                "cc_ids",
                "cells_used",
                "abw_fr1_mhz",
                "abw_fr2_mhz",
            ],
            rows,
            &mut written,
        )?;
    }

    if let Some(addressing) = &report.addressing {
        let rows = addressing
            .entries
            .iter()
            .map(|entry| {
                vec![
                    entry.du_index.to_string(),
                    entry.band_class.clone(),
                    entry.gnb_id.clone(),
                    entry
                        .packed_decimal
                        .map_or(String::new(), |v| v.to_string()),
                    entry.packed_hex.clone().unwrap_or_default(),
                    entry.packing_error.clone().unwrap_or_default(),
                ]
            })
            .collect();
        write_csv(
            dir,
            "addressing.csv",
            &[
                "du_index",
                "band_class",
                "gnb_id",
                "packed_decimal",
                "packed_hex",
                "packing_error",
            ],
            rows,
            &mut written,
        )?;
    }

    if let Some(latency) = &report.latency {
        let rows = latency
            .paths
            .iter()
            .map(|p| {
                vec![
                    p.id.clone(),
                    p.fr.label().to_string(),
                    fmt_f64(p.fiber_km),
                    p.hops.to_string(),
                    fmt_f64(p.one_way_us),
                    fmt_f64(p.round_trip_us),
                    fmt_f64(p.crypto_us),
                    fmt_f64(p.budget_us),
                    fmt_f64(p.required_compute_us),
                    fmt_f64(p.compute_slack_us),
                    p.binding_term.clone(),
                    p.verdict.to_string(),
                ]
            })
            .collect();
        write_csv(
            dir,
            "latency.csv",
            &[
                "id",
                "fr",
                "fiber_km",
                "hops",
                "one_way_us",
                "round_trip_us",
                "crypto_us",
                "budget_us",
                "required_compute_us",
                "compute_slack_us",
                "binding_term",
                "verdict",
            ],
            rows,
            &mut written,
        )?;
    }

    if let Some(throughput) = &report.throughput {
        let rows = throughput
            .entries
            .iter()
            .map(|t| {
                let penalties = t
                    .applied_penalties
                    .iter()
                    .map(|p| format!("{}={}", p.name, p.fraction))
                    .collect::<Vec<_>>()
                    .join("|");
                vec![
                    t.cc_id.clone(),
                    fmt_f64(t.bandwidth_mhz),
                    fmt_f64(t.nominal_mbps),
                    fmt_f64(t.effective_mbps),
                    penalties,
                ]
            })
            .collect();
        write_csv(
            dir,
            "throughput.csv",
            &[
                "cc_id",
                "bandwidth_mhz",
                "nominal_mbps",
                "effective_mbps",
                "applied_penalties",
            ],
            rows,
            &mut written,
        )?;
    }

    if !report.slices.is_empty() {
        let mut rows = Vec::new();
        for slice in &report.slices {
            for cap in &slice.power_caps {
                rows.push(vec![
                    slice.name.clone(),
                    cap.ue.clone(),
                    fmt_f64(cap.power_cap),
                    cap.served.to_string(),
                    cap.intent.clone().unwrap_or_default(),
                    slice.converged.to_string(),
                ]);
            }
        }
        write_csv(
            dir,
            "slice_power_caps.csv",
            &["slice", "ue", "power_cap", "served", "intent", "converged"],
            rows,
            &mut written,
        )?;
    }

    if let Some(governance) = &report.governance {
        let mut rows = Vec::new();
        if let Some(clocks) = &governance.clocks {
            rows.push(vec![
                "clock_hierarchy".to_string(),
                clocks.verdict.to_string(),
                format!("threshold {} years", clocks.horizon_threshold_years),
            ]);
            for warning in &clocks.warnings {
                rows.push(vec![
                    "clock_cadence".to_string(),
                    "WARN".to_string(),
                    warning.clone(),
                ]);
            }
        }
        if let Some(variety) = &governance.variety {
            rows.push(vec![
                "requisite_variety".to_string(),
                variety.verdict.to_string(),
                format!(
                    "internal {} vs external {}",
                    variety.internal_states, variety.external_states
                ),
            ]);
        }
        if let Some(delay) = &governance.delay_cost {
            for sample in &delay.requested {
                rows.push(vec![
                    "delay_cost".to_string(),
                    String::new(),
                    format!("tau {} months costs {}", sample.tau_months, sample.cost),
                ]);
            }
        }
        write_csv(
            dir,
            "governance.csv",
            &["check", "verdict", "detail"],
            rows,
            &mut written,
        )?;
    }

    if let Some(plots) = &report.plots {
        if !plots.delay_cost_curve.is_empty() {
            let rows = plots
                .delay_cost_curve
                .iter()
                .map(|s| vec![fmt_f64(s.tau_months), fmt_f64(s.cost)])
                .collect();
            write_csv(
                dir,
                "delay_cost_curve.csv",
                &["tau_months", "cost"],
                rows,
                &mut written,
            )?;
        }
        if !plots.slack_vs_distance.is_empty() {
            let rows = plots
                .slack_vs_distance
                .iter()
                .map(|s| {
                    vec![
                        s.path_id.clone(),
                        fmt_f64(s.fiber_km),
                        fmt_f64(s.compute_slack_us),
                    ]
                })
                .collect();
            write_csv(
                dir,
                "slack_vs_distance.csv",
                &["path_id", "fiber_km", "compute_slack_us"],
                rows,
                &mut written,
            )?;
        }
    }

    Ok(written)
}
