//! One plan document through the whole pipeline.
//!
//! Builds the document a deployment engineer would write — spectrum
//! holdings, DU profile, addressing, fronthaul paths, security posture,
//! a slice problem and governance inputs — runs every analysis, and
//! prints the deterministic JSON report plus its CSV projection.
//!
//! Run with: cargo run --example end_to_end_plan

use ranplan::pipeline::{run_plan, RunOptions};
use ranplan::plan::parse_plan;
use ranplan::report::write_csv_sections;
use ranplan::Verdict;

const PLAN: &str = r#"{
  "holdings": [
    {"carrier_label": "c1", "band": "n4", "f_low_mhz": 2110.0, "f_high_mhz": 2120.0, "profit": 3.0},
    {"carrier_label": "c2", "band": "n4", "f_low_mhz": 2120.0, "f_high_mhz": 2130.0, "profit": 3.0},
    {"carrier_label": "c3", "band": "n4", "f_low_mhz": 2130.0, "f_high_mhz": 2135.0, "profit": 1.0},
    {"carrier_label": "c7", "band": "n7", "f_low_mhz": 2675.0, "f_high_mhz": 2690.0, "profit": 2.0},
    {"carrier_label": "uw", "band": "n261", "f_low_mhz": 28000.0, "f_high_mhz": 28400.0, "profit": 8.0}
  ],
  "solver": {"objective": "min_dus", "du_budget": 4},
  "site_topology": {"vdus_per_site": 4, "sites_per_vcu": 2500},
  "addressing": {"market": 12, "vcu": 34},
  "fronthaul_paths": [
    {"id": "ring-a", "fiber_km": 8.0, "hops": 3, "per_km_delay_us": 2.5},
    {"id": "spur-b", "fiber_km": 18.0, "hops": 1}
  ],
  "security": {
    "cipher": {"mode": "hw_offload"},
    "dss": {"mode": "on"},
    "crypto_latency_us": 12.0
  },
  "slices": [
    {"name": "metro-embb", "p_max": 10.0, "users": [
      {"label": "ue-a", "gain": 4.0, "intent": "video"},
      {"label": "ue-b", "gain": 1.0, "intent": "bulk"}
    ]}
  ],
  "governance": {
    "delay_cost": {"base_cost": 250.0, "tau_c_months": 9.0, "deferral_months": [0.0, 9.0, 18.0]},
    "clocks": {"horizon_tech_years": 5.0, "horizon_build_years": 1.5},
    "variety": {"internal_states": 40, "external_states": 25}
  }
}"#;

fn main() {
    let plan = parse_plan(PLAN).expect("plan is well-formed");

    // No timestamp: identical inputs give byte-identical reports.
    let options = RunOptions::default();
    let report = run_plan(&plan, &options).expect("inputs are valid");

    println!("{}", report.to_json());

    println!("---- summary ----");
    println!("verdict: {}", report.summary.verdict);
    let packing = report.packing.as_ref().unwrap();
    println!(
        "carriers: {}   DUs used: {}/{}",
        report.spectrum.as_ref().unwrap().carriers.len(),
        packing.dus_used,
        packing.du_budget
    );
    for entry in &report.addressing.as_ref().unwrap().entries {
        println!(
            "DU{} -> {} ({})",
            entry.du_index,
            entry.gnb_id,
            entry.packed_hex.clone().unwrap_or_else(|| format!(
                "unpacked: {}",
                entry.packing_error.as_deref().unwrap()
            ))
        );
    }
    for path in &report.latency.as_ref().unwrap().paths {
        println!(
            "path {}: slack {} us -> {}",
            path.id, path.compute_slack_us, path.verdict
        );
    }
    assert_eq!(report.summary.verdict, Verdict::Pass);

    // The same report as spreadsheet-ready CSV files.
    let dir = std::env::temp_dir().join("ranplan-example-report");
    std::fs::create_dir_all(&dir).unwrap();
    let written = write_csv_sections(&report, &dir).unwrap();
    println!("\nCSV projection:");
    for path in written {
        println!("  {}", path.display());
    }

    // Determinism, demonstrated rather than claimed.
    let again = run_plan(&plan, &options).unwrap();
    assert_eq!(report.to_json(), again.to_json());
    println!("\nre-run produced byte-identical JSON");
}
