//! Slice power allocation by dual ascent on the Lagrangian.
//!
//! Maximize the sum of log rates over UEs subject to a slice power
//! budget. The dual method prices power at lambda, lets each UE maximize
//! ln R(p) - lambda p independently, and adjusts the price until the
//! budget binds. The result is cross-checked against a brute-force grid
//! search that shares no machinery with the solver.
//!
//! Run with: cargo run --example slice_power_allocation

use ranplan::slicing::{
    dual_ascent, emit_power_caps, grid_oracle, DualAscentOptions, ShannonRate, SliceProblem,
    UeEntry,
};

fn ue(label: &str, gain: f64, intent: &str) -> UeEntry {
    UeEntry {
        label: label.into(),
        gain,
        weight: 1.0,
        intent: Some(intent.into()),
    }
}

fn main() {
    // Three UEs with very different link quality share 12 W.
    let problem = SliceProblem {
        users: vec![
            ue("ue-near", 8.0, "video"),
            ue("ue-mid", 2.0, "telemetry"),
            ue("ue-far", 0.5, "voice"),
        ],
        p_max: 12.0,
    };

    let allocation = dual_ascent(&problem, &ShannonRate, &DualAscentOptions::default()).unwrap();
    println!(
        "converged in {} iterations: lambda {:.6}, objective {:.6}",
        allocation.iterations, allocation.lambda, allocation.objective
    );
    println!(
        "budget used {:.9} of {}  (KKT residual {:.2e})\n",
        allocation.p.iter().sum::<f64>(),
        problem.p_max,
        allocation.kkt_residual
    );

    // Log utility is a fairness prior: the far UE gets the most power,
    // the near UE the least, and nobody is starved.
    for record in emit_power_caps(&problem, &allocation) {
        println!(
            "  {:<8} cap {:>8.4} W  served: {}  intent: {}",
            record.ue,
            record.power_cap,
            record.served,
            record.intent.as_deref().unwrap_or("-")
        );
    }
    let p = &allocation.p;
    assert!(p[2] > p[1] && p[1] > p[0], "weaker links draw more power");

    // Independent check: exhaustive grid search lands on the same point.
    let oracle = grid_oracle(&problem, &ShannonRate, 0.01).unwrap();
    let max_gap = p
        .iter()
        .zip(&oracle.p)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0_f64, f64::max);
    println!("\ngrid oracle at 0.01 W resolution:");
    println!(
        "  objective {:.6} vs solver {:.6}",
        oracle.objective, allocation.objective
    );
    println!("  largest per-UE deviation {max_gap:.4} W");
    assert!((oracle.objective - allocation.objective).abs() <= 1e-3);
    assert!(max_gap <= 0.02);

    // The shadow price is actionable: it is the marginal utility of one
    // more watt of budget. Doubling the budget lowers the price.
    let richer = SliceProblem {
        p_max: 24.0,
        ..problem.clone()
    };
    let with_more = dual_ascent(&richer, &ShannonRate, &DualAscentOptions::default()).unwrap();
    println!(
        "\nshadow price: {:.6} at 12 W -> {:.6} at 24 W",
        allocation.lambda, with_more.lambda
    );
    assert!(with_more.lambda < allocation.lambda);

    // Equal links split the budget exactly evenly.
    let symmetric = SliceProblem {
        users: (1..=4)
            .map(|k| ue(&format!("ue{k}"), 1.5, "generic"))
            .collect(),
        p_max: 8.0,
    };
    let even = dual_ascent(&symmetric, &ShannonRate, &DualAscentOptions::default()).unwrap();
    println!("\nfour identical UEs on 8 W:");
    for (u, p) in symmetric.users.iter().zip(&even.p) {
        println!("  {:<5} {:.6} W", u.label, p);
        assert!((p - 2.0).abs() < 1e-5);
    }
}
