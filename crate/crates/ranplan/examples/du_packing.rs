//! Component carriers -> virtual DUs: the cellular knapsack.
//!
//! A DU hosts at most `max_cells` cells, strictly less than 160 MHz of
//! aggregated FR1 bandwidth, and at most 400 MHz of FR2. This example
//! packs the same demand set under both objectives and cross-checks the
//! solver against the independent brute-force enumerator.
//!
//! Run with: cargo run --example du_packing

use ranplan::packing::{
    brute_force_pack, pack, CellDemand, DuProfile, Objective, PackingError, PackingPlan,
};
use ranplan::spectrum::FrequencyRange;

fn demand(cc_id: &str, bandwidth_mhz: f64, fr: FrequencyRange, profit: f64) -> CellDemand {
    CellDemand {
        cc_id: cc_id.into(),
        bandwidth_mhz,
        fr,
        profit,
        cells_required: 1,
    }
}

fn show(plan: &PackingPlan) {
    println!(
        "   objective value {} using {} DU(s) ({})",
        plan.objective_value,
        plan.dus_used,
        if plan.exact {
            "exact search"
        } else {
            "heuristic"
        }
    );
    for du in &plan.dus {
        println!(
            "   DU{}: [{}]  cells {}  FR1 {} MHz  FR2 {} MHz",
            du.du_index,
            du.cc_ids.join(", "),
            du.cells_used,
            du.abw_fr1_mhz,
            du.abw_fr2_mhz
        );
    }
    if !plan.disabled.is_empty() {
        println!("   disabled: [{}]", plan.disabled.join(", "));
    }
}

fn main() {
    let profile = DuProfile::default();
    println!(
        "DU profile: {} cells, FR1 < {} MHz (exclusive), FR2 <= {} MHz\n",
        profile.max_cells, profile.max_abw_fr1_mhz, profile.max_abw_fr2_mhz
    );

    // Four 100 MHz mmWave carriers: 400 MHz sits exactly on the FR2
    // ceiling, so one DU takes all four.
    let mmwave: Vec<CellDemand> = (1..=4)
        .map(|k| demand(&format!("c{k}01"), 100.0, FrequencyRange::Fr2, 1.0))
        .collect();
    println!("== Four 100 MHz FR2 carriers, minimize DUs");
    let plan = pack(&mmwave, &profile, 4, Objective::MinDus).unwrap();
    show(&plan);
    assert_eq!(plan.dus_used, 1, "400 MHz FR2 is a boundary fit");

    // FR1 is exclusive: two 80 MHz carriers reach 160 and must split.
    let fr1_pair = vec![
        demand("a", 80.0, FrequencyRange::Fr1, 1.0),
        demand("b", 80.0, FrequencyRange::Fr1, 1.0),
    ];
    println!("\n== Two 80 MHz FR1 carriers (sum reaches the exclusive ceiling)");
    let plan = pack(&fr1_pair, &profile, 4, Objective::MinDus).unwrap();
    show(&plan);
    assert_eq!(plan.dus_used, 2);

    // Profit mode on a tight box: max_cells 2, one DU. Keeping the 10 and
    // 15 MHz carriers (profits 3 + 4) beats any pairing with the 5 MHz one.
    let tight = DuProfile {
        max_cells: 2,
        ..DuProfile::default()
    };
    let scenario2 = vec![
        demand("c101", 10.0, FrequencyRange::Fr1, 3.0),
        demand("c201", 5.0, FrequencyRange::Fr1, 1.0),
        demand("c301", 15.0, FrequencyRange::Fr1, 4.0),
    ];
    println!("\n== Three carriers, two cell slots, maximize profit");
    let plan = pack(&scenario2, &tight, 1, Objective::MaxProfit).unwrap();
    show(&plan);
    assert_eq!(plan.objective_value, 7.0);
    assert_eq!(plan.disabled, vec!["c201".to_string()]);

    // The independent oracle enumerates every keep-set x assignment and
    // must land on the same objective.
    let oracle = brute_force_pack(&scenario2, &tight, 1, Objective::MaxProfit).unwrap();
    assert_eq!(oracle.objective_value, plan.objective_value);
    assert_eq!(oracle.assignments, plan.assignments);
    println!(
        "   brute-force oracle agrees: profit {}",
        oracle.objective_value
    );

    // When nothing fits, the report names the binding ceiling.
    println!("\n== Infeasible: five boundary-width FR2 carriers, budget 4");
    let five: Vec<CellDemand> = (1..=5)
        .map(|k| demand(&format!("w{k}"), 400.0, FrequencyRange::Fr2, 1.0))
        .collect();
    match pack(&five, &profile, 4, Objective::MinDus) {
        Err(PackingError::Infeasible { du_budget, binding }) => {
            println!("   no plan within {du_budget} DUs; binding constraint: {binding}");
        }
        other => panic!("expected infeasibility, got {other:?}"),
    }
}
