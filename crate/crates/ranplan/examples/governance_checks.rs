//! Governance screens: deferred-fix cost growth, planning-clock
//! hierarchy, and requisite variety.
//!
//! Three cheap checks that catch expensive organizational mistakes:
//! remediation cost compounds exponentially with deferral time, a
//! technology horizon shorter than the build/refresh clocks means
//! planning for gear that outlives the plan, and a control loop with
//! fewer response states than its environment has disturbance states
//! cannot keep up.
//!
//! Run with: cargo run --example governance_checks

use ranplan::dynamics::{
    check_clock_hierarchy, check_requisite_variety, corrective_cost, ClockConfig, DelayCostModel,
    VarietyLedger,
};
use ranplan::Verdict;

fn main() {
    // A fix costing 100 today, with a 6-month cost-doubling-ish constant.
    let model = DelayCostModel::new(100.0, 6.0).unwrap();
    println!("cost of deferring a 100-unit fix (tau_c = 6 months):");
    for tau in [0.0, 3.0, 6.0, 12.0, 18.0, 24.0] {
        let cost = corrective_cost(&model, tau).unwrap();
        println!("  {tau:>4} months -> {cost:>9.1}");
    }
    let at_tau_c = corrective_cost(&model, 6.0).unwrap();
    assert!((at_tau_c - 100.0 * std::f64::consts::E).abs() < 1e-9);

    // Clock hierarchy: the tech horizon must cover both the build horizon
    // and two node refresh cycles.
    println!("\nclock hierarchy:");
    let healthy = ClockConfig::default();
    let diagnosis = check_clock_hierarchy(&healthy);
    println!(
        "  5-year roadmap vs {}-year threshold -> {}",
        diagnosis.horizon_threshold_years, diagnosis.verdict
    );
    assert_eq!(diagnosis.verdict, Verdict::Pass);

    let myopic = ClockConfig {
        horizon_tech_years: 1.0,
        ..ClockConfig::default()
    };
    let diagnosis = check_clock_hierarchy(&myopic);
    println!(
        "  1-year roadmap vs {}-year threshold -> {}",
        diagnosis.horizon_threshold_years, diagnosis.verdict
    );
    assert_eq!(diagnosis.verdict, Verdict::Fail);

    // Cadence ordering is advisory: violations warn, they do not fail.
    let inverted = ClockConfig {
        v_build: 2.0, // slower than the 4/yr standards cadence
        ..ClockConfig::default()
    };
    let diagnosis = check_clock_hierarchy(&inverted);
    println!(
        "  inverted cadences -> {} with warnings:",
        diagnosis.verdict
    );
    for warning in &diagnosis.warnings {
        println!("    - {warning}");
    }
    assert_eq!(diagnosis.verdict, Verdict::Pass);
    assert!(!diagnosis.warnings.is_empty());

    // Requisite variety: responses must at least match disturbances.
    println!("\nrequisite variety:");
    for (internal, external) in [(12_u64, 9_u64), (6, 9)] {
        let ledger = VarietyLedger {
            internal_states: internal,
            external_states: external,
        };
        println!(
            "  {internal} response states vs {external} disturbance states -> {}",
            check_requisite_variety(&ledger)
        );
    }
}
