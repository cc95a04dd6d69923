//! Governance checks rooted in systems dynamics: remediation cost growth,
//! planning-clock alignment and control-loop variety.
//!
//! These are coarse screens, not forecasts. They catch programmes whose
//! technology refresh horizon is shorter than the build they are paying
//! for, or whose operational control loops are slower than the
//! environment they must absorb.

use crate::Verdict;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Node hardware/platform refresh cycle, years (roughly 10.5 months).
pub const DEFAULT_NODE_CYCLE_YEARS: f64 = 0.875;
/// Healthy standards-track velocity, spec drops per year.
pub const TARGET_TECH_VELOCITY: f64 = 4.0;
/// Tolerated relative deviation from the target tech velocity before a
/// warning is raised.
pub const TECH_VELOCITY_TOLERANCE: f64 = 0.5;

#[derive(Debug, Error, PartialEq)]
pub enum DynamicsError {
    #[error("{field} must be finite and positive, got {value}")]
    InvalidField { field: &'static str, value: f64 },
    #[error("deferral time must be finite and non-negative, got {0}")]
    NegativeDeferral(f64),
}

/// Exponential remediation-cost model: deferring a correction for time
/// `tau` multiplies its cost by `e^(tau / tau_c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelayCostModel {
    /// Cost of correcting immediately, in whatever unit the caller uses.
    pub base_cost: f64,
    /// Characteristic deferral time: one `tau_c` of delay costs a factor
    /// of `e`.
    pub tau_c_months: f64,
}

impl DelayCostModel {
    pub fn new(base_cost: f64, tau_c_months: f64) -> Result<Self, DynamicsError> {
        let model = DelayCostModel {
            base_cost,
            tau_c_months,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<(), DynamicsError> {
        for (field, value) in [
            ("base_cost", self.base_cost),
            ("tau_c_months", self.tau_c_months),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(DynamicsError::InvalidField { field, value });
            }
        }
        Ok(())
    }
}

/// Cost of a correction deferred by `tau_months`.
pub fn corrective_cost(model: &DelayCostModel, tau_months: f64) -> Result<f64, DynamicsError> {
    model.validate()?;
    if !tau_months.is_finite() || tau_months < 0.0 {
        return Err(DynamicsError::NegativeDeferral(tau_months));
    }
    Ok(model.base_cost * (tau_months / model.tau_c_months).exp())
}

/// Planning horizons and cadences of the three clocks a deployment runs
/// on: technology standardisation, market build-out, operations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ClockConfig {
    /// Technology planning horizon, years (roadmap length).
    pub horizon_tech_years: f64,
    /// Market build-out horizon, years.
    pub horizon_build_years: f64,
    /// Node refresh cycle, years.
    pub node_cycle_years: f64,
    /// Standards cadence, spec drops per year.
    pub v_tech: f64,
    /// Build cadence, market decision cycles per year.
    pub v_build: f64,
    /// Operations cadence, control-loop executions per year.
    pub v_ops: f64,
}

impl Default for ClockConfig {
    fn default() -> Self {
        // A 5-year roadmap over yearly market builds with daily ops
        // reviews and the ~10.5-month node refresh cycle.
        ClockConfig {
            horizon_tech_years: 5.0,
            horizon_build_years: 1.0,
            node_cycle_years: DEFAULT_NODE_CYCLE_YEARS,
            v_tech: TARGET_TECH_VELOCITY,
            v_build: 12.0,
            v_ops: 365.0,
        }
    }
}

impl ClockConfig {
    pub fn validate(&self) -> Result<(), DynamicsError> {
        for (field, value) in [
            ("horizon_tech_years", self.horizon_tech_years),
            ("horizon_build_years", self.horizon_build_years),
            ("node_cycle_years", self.node_cycle_years),
            ("v_tech", self.v_tech),
            ("v_build", self.v_build),
            ("v_ops", self.v_ops),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(DynamicsError::InvalidField { field, value });
            }
        }
        Ok(())
    }
}

/// Outcome of the clock-hierarchy screen.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClockDiagnosis {
    pub verdict: Verdict,
    /// Minimum acceptable technology horizon:
    /// `max(horizon_build, 2 * node_cycle)`.
    pub horizon_threshold_years: f64,
    /// Soft findings that do not fail the check on their own.
    pub warnings: Vec<String>,
}

/// Screens the planning clocks.
///
/// Hard failure: the technology horizon is shorter than the build horizon
/// or shorter than two node refresh cycles — the plan would be obsolete
/// before it amortises. Soft warnings: cadences out of their natural
/// `tech < build < ops` order, or a standards velocity far from the
/// healthy ~4 drops/year.
pub fn check_clock_hierarchy(config: &ClockConfig) -> ClockDiagnosis {
    let threshold = config
        .horizon_build_years
        .max(2.0 * config.node_cycle_years);
    let verdict = Verdict::from_bool(config.horizon_tech_years >= threshold);

    let mut warnings = Vec::new();
    if !(config.v_tech < config.v_build && config.v_build < config.v_ops) {
        warnings.push(format!(
            "cadence ordering violated: expected v_tech < v_build < v_ops, \
             got {} / {} / {} per year",
            config.v_tech, config.v_build, config.v_ops
        ));
    }
    let deviation = (config.v_tech - TARGET_TECH_VELOCITY).abs() / TARGET_TECH_VELOCITY;
    if deviation > TECH_VELOCITY_TOLERANCE {
        warnings.push(format!(
            "standards velocity {} drops/yr deviates more than {:.0}% from the \
             healthy {} drops/yr",
            config.v_tech,
            TECH_VELOCITY_TOLERANCE * 100.0,
            TARGET_TECH_VELOCITY
        ));
    }

    ClockDiagnosis {
        verdict,
        horizon_threshold_years: threshold,
        warnings,
    }
}

/// Counts of distinct states the operation can respond with versus the
/// distinct disturbance states the environment throws at it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyLedger {
    pub internal_states: u64,
    pub external_states: u64,
}

/// Requisite-variety screen: the controller must have at least as many
/// response states as the environment has disturbance states.
pub fn check_requisite_variety(ledger: &VarietyLedger) -> Verdict {
    Verdict::from_bool(ledger.internal_states >= ledger.external_states)
}
