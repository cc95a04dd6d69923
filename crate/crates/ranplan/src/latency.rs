//! Fronthaul delay accounting against HARQ round-trip deadlines.
//!
//! A split-RAN placement lives or dies by whether the DU's HARQ response
//! makes it back before the air-interface deadline. The model here is the
//! standard linear one: propagation over fibre plus a fixed cost per
//! switching hop, doubled for the round trip, plus any inline crypto cost,
//! leaving the remainder as compute slack for the DU itself.

use crate::spectrum::FrequencyRange;
use crate::Verdict;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Typical per-hop switching delay for fronthaul-class gear, µs.
pub const DEFAULT_PER_HOP_DELAY_US: f64 = 40.0;
/// Conservative planning figure for fibre propagation, µs/km.
pub const DEFAULT_PER_KM_DELAY_US: f64 = 5.0;
/// Effective per-km figure implied by measured urban ring deployments
/// (shorter glass paths than the route-km suggest).
pub const URBAN_RING_PER_KM_DELAY_US: f64 = 2.5;

#[derive(Debug, Error, PartialEq)]
pub enum LatencyError {
    #[error("{field} must be finite and non-negative, got {value}")]
    InvalidField { field: &'static str, value: f64 },
}

/// One fronthaul path between a cell site and its DU pool.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FronthaulPath {
    pub fiber_km: f64,
    pub hops: u32,
    #[serde(default = "default_per_km")]
    pub per_km_delay_us: f64,
    #[serde(default = "default_per_hop")]
    pub per_hop_delay_us: f64,
}

fn default_per_km() -> f64 {
    DEFAULT_PER_KM_DELAY_US
}

fn default_per_hop() -> f64 {
    DEFAULT_PER_HOP_DELAY_US
}

impl FronthaulPath {
    /// A path with the default delay constants.
    pub fn new(fiber_km: f64, hops: u32) -> Self {
        FronthaulPath {
            fiber_km,
            hops,
            per_km_delay_us: DEFAULT_PER_KM_DELAY_US,
            per_hop_delay_us: DEFAULT_PER_HOP_DELAY_US,
        }
    }

    pub fn with_per_km(mut self, per_km_delay_us: f64) -> Self {
        self.per_km_delay_us = per_km_delay_us;
        self
    }

    pub fn with_per_hop(mut self, per_hop_delay_us: f64) -> Self {
        self.per_hop_delay_us = per_hop_delay_us;
        self
    }

    pub fn validate(&self) -> Result<(), LatencyError> {
        let fields = [
            ("fiber_km", self.fiber_km),
            ("per_km_delay_us", self.per_km_delay_us),
            ("per_hop_delay_us", self.per_hop_delay_us),
        ];
        for (field, value) in fields {
            if !value.is_finite() || value < 0.0 {
                return Err(LatencyError::InvalidField { field, value });
            }
        }
        Ok(())
    }
}

/// HARQ round-trip deadline for one numerology.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarqBudget {
    pub fr: FrequencyRange,
    pub total_us: f64,
}

impl HarqBudget {
    /// FR1 deadline: four 125 µs slots (30 kHz subcarrier spacing).
    pub const FR1_US: f64 = 4.0 * 125.0;
    /// FR2 deadline: tighter numerology halves the window.
    pub const FR2_US: f64 = 250.0;

    pub fn fr1() -> Self {
        HarqBudget {
            fr: FrequencyRange::Fr1,
            total_us: Self::FR1_US,
        }
    }

    pub fn fr2() -> Self {
        HarqBudget {
            fr: FrequencyRange::Fr2,
            total_us: Self::FR2_US,
        }
    }

    pub fn for_range(fr: FrequencyRange) -> Self {
        match fr {
            FrequencyRange::Fr1 => Self::fr1(),
            FrequencyRange::Fr2 => Self::fr2(),
        }
    }
}

/// Outcome of checking one path against one HARQ budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub one_way_us: f64,
    pub round_trip_us: f64,
    pub crypto_us: f64,
    pub required_compute_us: f64,
    pub budget_us: f64,
    /// Time left for DU processing after transport and crypto.
    pub compute_slack_us: f64,
    pub verdict: Verdict,
    /// Largest round-trip contributor: `propagation`, `switching`,
    /// `crypto`, or `none` when all are zero.
    pub binding_term: String,
}

/// One-way transport delay of a path, µs.
pub fn one_way_delay(path: &FronthaulPath) -> f64 {
    path.fiber_km * path.per_km_delay_us + path.hops as f64 * path.per_hop_delay_us
}

/// Checks a DU placement: transport round trip plus crypto must leave at
/// least `required_compute_us` of the HARQ budget as compute slack.
///
/// `crypto_us` is the one-time processing cost of inline payload
/// protection on the round trip (zero when ciphering is off or fully
/// offloaded out of the latency path).
pub fn check_placement(
    path: &FronthaulPath,
    budget: &HarqBudget,
    required_compute_us: f64,
    crypto_us: f64,
) -> BudgetReport {
    let one_way_us = one_way_delay(path);
    let round_trip_us = 2.0 * one_way_us;
    let compute_slack_us = budget.total_us - round_trip_us - crypto_us;

    let propagation = 2.0 * path.fiber_km * path.per_km_delay_us;
    let switching = 2.0 * path.hops as f64 * path.per_hop_delay_us;
    let terms = [
        ("propagation", propagation),
        ("switching", switching),
        ("crypto", crypto_us),
    ];
    let binding = terms
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .filter(|(_, v)| *v > 0.0)
        .map_or("none", |(name, _)| name);

    BudgetReport {
        one_way_us,
        round_trip_us,
        crypto_us,
        required_compute_us,
        budget_us: budget.total_us,
        compute_slack_us,
        verdict: Verdict::from_bool(compute_slack_us >= required_compute_us),
        binding_term: binding.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn budgets_match_the_numerology() {
        assert_eq!(HarqBudget::fr1().total_us, 500.0);
        assert_eq!(HarqBudget::fr2().total_us, 250.0);
        assert_eq!(
            HarqBudget::for_range(FrequencyRange::Fr1).total_us,
            4.0 * 125.0
        );
    }

    #[test]
    fn urban_ring_path_fits_fr1_with_headroom() {
        // 10 km metro ring, 3 switching hops, measured effective fibre
        // delay: 25 + 120 = 145 µs one way.
        let path = FronthaulPath::new(10.0, 3).with_per_km(URBAN_RING_PER_KM_DELAY_US);
        assert_eq!(one_way_delay(&path), 145.0);

        let report = check_placement(&path, &HarqBudget::fr1(), 200.0, 0.0);
        assert_eq!(report.round_trip_us, 290.0);
        assert_eq!(report.compute_slack_us, 210.0);
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.binding_term, "switching");
    }

    #[test]
    fn rural_span_is_propagation_dominated() {
        // 20 km of fibre at the conservative 5 µs/km, no switching.
        let path = FronthaulPath::new(20.0, 0);
        assert_eq!(one_way_delay(&path), 100.0);
        let report = check_placement(&path, &HarqBudget::fr1(), 200.0, 0.0);
        assert_eq!(report.compute_slack_us, 300.0);
        assert_eq!(report.binding_term, "propagation");
    }

    #[test]
    fn zero_length_path_has_zero_delay() {
        let path = FronthaulPath::new(0.0, 0);
        assert_eq!(one_way_delay(&path), 0.0);
        let report = check_placement(&path, &HarqBudget::fr1(), 200.0, 0.0);
        assert_eq!(report.compute_slack_us, 500.0);
        assert_eq!(report.binding_term, "none");
    }

    #[test]
    fn inline_crypto_can_flip_the_verdict() {
        let path = FronthaulPath::new(10.0, 3).with_per_km(URBAN_RING_PER_KM_DELAY_US);
        let ok = check_placement(&path, &HarqBudget::fr1(), 200.0, 10.0);
        assert_eq!(ok.verdict, Verdict::Pass);
        assert_eq!(ok.compute_slack_us, 200.0);

        let fail = check_placement(&path, &HarqBudget::fr1(), 200.0, 60.0);
        assert_eq!(fail.verdict, Verdict::Fail);
        assert_eq!(fail.compute_slack_us, 150.0);
        // 60 µs of crypto still trails the 240 µs switching term.
        assert_eq!(fail.binding_term, "switching");
    }

    #[test]
    fn fr2_budget_is_strictly_tighter() {
        let path = FronthaulPath::new(10.0, 3).with_per_km(URBAN_RING_PER_KM_DELAY_US);
        let report = check_placement(&path, &HarqBudget::fr2(), 200.0, 0.0);
        assert_eq!(report.compute_slack_us, -40.0);
        assert_eq!(report.verdict, Verdict::Fail);
    }

    #[test]
    fn boundary_slack_passes() {
        // slack == required_compute exactly.
        let path = FronthaulPath::new(10.0, 0); // 100 µs round trip
        let report = check_placement(&path, &HarqBudget::fr1(), 400.0, 0.0);
        assert_eq!(report.compute_slack_us, 400.0);
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn crypto_can_be_the_binding_term() {
        let path = FronthaulPath::new(1.0, 0);
        let report = check_placement(&path, &HarqBudget::fr1(), 200.0, 55.0);
        assert_eq!(report.binding_term, "crypto");
    }

    #[test]
    fn validate_rejects_negative_and_non_finite_fields() {
        assert!(FronthaulPath::new(10.0, 3).validate().is_ok());
        assert!(FronthaulPath::new(-1.0, 0).validate().is_err());
        assert!(FronthaulPath::new(f64::NAN, 0).validate().is_err());
        assert!(FronthaulPath::new(1.0, 0)
            .with_per_hop(-2.0)
            .validate()
            .is_err());
    }

    proptest! {
        /// Delay is linear in distance and hops; exact on integer inputs.
        #[test]
        fn delay_is_linear(
            km in 0_u32..500,
            hops in 0_u32..50,
            per_km in 1_u32..10,
            per_hop in 1_u32..100,
        ) {
            let base = FronthaulPath::new(km as f64, hops)
                .with_per_km(per_km as f64)
                .with_per_hop(per_hop as f64);
            let expected = (km * per_km + hops * per_hop) as f64;
            prop_assert_eq!(one_way_delay(&base), expected);

            let doubled = FronthaulPath::new(2.0 * km as f64, 2 * hops)
                .with_per_km(per_km as f64)
                .with_per_hop(per_hop as f64);
            prop_assert_eq!(one_way_delay(&doubled), 2.0 * expected);
        }

        /// Budget is conserved: slack + round trip + crypto == budget,
        /// exactly on the integer grid.
        #[test]
        fn slack_conserves_the_budget(
            km in 0_u32..60,
            hops in 0_u32..6,
            crypto in 0_u32..80,
        ) {
            let path = FronthaulPath::new(km as f64, hops);
            for budget in [HarqBudget::fr1(), HarqBudget::fr2()] {
                let report = check_placement(&path, &budget, 200.0, crypto as f64);
                prop_assert_eq!(
                    report.compute_slack_us + report.round_trip_us + report.crypto_us,
                    budget.total_us
                );
            }
        }

        /// Longer paths never pass where shorter ones fail (monotonicity).
        #[test]
        fn verdict_is_monotone_in_distance(
            km in 0_u32..100,
            extra in 1_u32..100,
            hops in 0_u32..6,
        ) {
            let near = FronthaulPath::new(km as f64, hops);
            let far = FronthaulPath::new((km + extra) as f64, hops);
            let budget = HarqBudget::fr1();
            let near_report = check_placement(&near, &budget, 200.0, 0.0);
            let far_report = check_placement(&far, &budget, 200.0, 0.0);
            if near_report.verdict == Verdict::Fail {
                prop_assert_eq!(far_report.verdict, Verdict::Fail);
            }
            prop_assert!(far_report.compute_slack_us <= near_report.compute_slack_us);
        }
    }
}
