//! Fronthaul delay vs HARQ deadlines: how far can a DU sit from its RUs?
//!
//! The HARQ loop gives FR1 500 µs and FR2 250 µs of round-trip headroom.
//! Fiber propagation, switch hops and inline crypto all eat into it; what
//! remains is the compute slack the DU gets for PHY processing.
//!
//! Run with: cargo run --example harq_budget

use ranplan::latency::{check_placement, FronthaulPath, HarqBudget, URBAN_RING_PER_KM_DELAY_US};
use ranplan::Verdict;

fn main() {
    let fr1 = HarqBudget::fr1();
    let fr2 = HarqBudget::fr2();
    println!(
        "budgets: FR1 {} us, FR2 {} us round trip\n",
        fr1.total_us, fr2.total_us
    );

    // A metro ring: 10 km of fiber, three switch hops, fast urban fiber.
    let ring = FronthaulPath::new(10.0, 3).with_per_km(URBAN_RING_PER_KM_DELAY_US);
    let report = check_placement(&ring, &fr1, 200.0, 0.0);
    println!("metro ring, 10 km / 3 hops:");
    println!(
        "  one-way {} us, round trip {} us",
        report.one_way_us, report.round_trip_us
    );
    println!(
        "  slack {} us vs {} us required -> {}  (binding term: {})",
        report.compute_slack_us, report.required_compute_us, report.verdict, report.binding_term
    );
    assert_eq!(report.compute_slack_us, 210.0);
    assert_eq!(report.verdict, Verdict::Pass);

    // Same path with per-PDU software crypto in line: 60 us of the loop.
    let report = check_placement(&ring, &fr1, 200.0, 60.0);
    println!("\nsame ring with 60 us inline crypto:");
    println!(
        "  slack {} us -> {}  (binding term: {})",
        report.compute_slack_us, report.verdict, report.binding_term
    );
    assert_eq!(report.verdict, Verdict::Fail);

    // FR2 halves the budget; the placement that passed FR1 fails.
    let report = check_placement(&ring, &fr2, 200.0, 0.0);
    println!("\nsame ring against the FR2 budget:");
    println!(
        "  slack {} us -> {}",
        report.compute_slack_us, report.verdict
    );

    // Reach table: how compute slack decays with distance on default
    // fiber (5 us/km) with two hops.
    println!("\nreach on default fiber, 2 hops, FR1, 200 us compute:");
    println!("  {:>5}  {:>9}  {:>7}", "km", "slack us", "verdict");
    for km in (0..=40).step_by(5) {
        let path = FronthaulPath::new(km as f64, 2);
        let r = check_placement(&path, &fr1, 200.0, 0.0);
        println!(
            "  {:>5}  {:>9}  {:>7}",
            km,
            r.compute_slack_us,
            r.verdict.to_string()
        );
    }
}
