//! The JSON plan document: everything the pipeline needs to evaluate one
//! deployment, in one file.
//!
//! Parsing is strict — unknown fields are rejected, and
//! [`parse_plan`] reports the JSON path of whatever failed. Semantic
//! validation beyond shapes (value ranges, cross-references) lives in
//! [`PlanDocument::validate`].

use crate::addressing::{AddressError, GnbId};
use crate::dynamics::{ClockConfig, DelayCostModel, VarietyLedger};
use crate::latency::FronthaulPath;
use crate::overhead::{CipherMode, DssMode};
use crate::packing::{DuProfile, Objective, SiteTopology};
use crate::slicing::{DualAscentOptions, SliceProblem, UeEntry};
use crate::spectrum::{classify_band, FrequencyRange, SpectrumBlock};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default inline-crypto round-trip cost when a cipher is enabled but no
/// explicit figure is given: midpoint of the measured 35-60 µs span.
pub const DEFAULT_CRYPTO_LATENCY_US: f64 = 47.5;
/// Default spectral efficiency for nominal throughput estimates, bps/Hz.
pub const DEFAULT_NOMINAL_SE_BPS_HZ: f64 = 10.0;
/// Default compute-time reservation for DU processing, µs.
pub const DEFAULT_REQUIRED_COMPUTE_US: f64 = 200.0;

#[derive(Debug, Error)]
pub enum PlanError {
    #[error("plan schema violation at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("invalid plan ({context}): {message}")]
    Invalid { context: String, message: String },
}

impl PlanError {
    pub fn invalid(context: impl Into<String>, err: impl std::fmt::Display) -> Self {
        PlanError::Invalid {
            context: context.into(),
            message: err.to_string(),
        }
    }
}

/// Top-level plan document.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PlanDocument {
    /// Licensed spectrum blocks.
    pub holdings: Vec<HoldingBlock>,
    /// Capacity envelope of the DU flavour being deployed.
    pub du_profile: DuProfile,
    /// Packing objective and DU budget.
    pub solver: SolverConfig,
    /// Declared site fan-out, checked against platform limits.
    pub site_topology: Option<SiteTopology>,
    /// Market / vCU numbering for gNB identifier assignment.
    pub addressing: Option<AddressingConfig>,
    /// Fronthaul paths to check against HARQ budgets.
    pub fronthaul_paths: Vec<FronthaulSpec>,
    /// Cipher and spectrum-sharing configuration.
    pub security: SecurityConfig,
    /// Slice power-allocation problems.
    pub slices: Vec<SliceSpec>,
    /// Governance screens.
    pub governance: Option<GovernanceInputs>,
}

/// One licensed block as it appears in the plan file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HoldingBlock {
    pub carrier_label: String,
    pub band: String,
    pub f_low_mhz: f64,
    pub f_high_mhz: f64,
    /// Revenue weight spread over the carriers built from this block.
    #[serde(default = "default_profit")]
    pub profit: f64,
}

fn default_profit() -> f64 {
    1.0
}

impl HoldingBlock {
    pub fn to_block(&self) -> SpectrumBlock {
        SpectrumBlock {
            carrier_label: self.carrier_label.clone(),
            band: self.band.clone(),
            f_low_mhz: self.f_low_mhz,
            f_high_mhz: self.f_high_mhz,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverConfig {
    pub objective: Objective,
    pub du_budget: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            objective: Objective::MinDus,
            du_budget: 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AddressingConfig {
    pub market: u32,
    pub vcu: u32,
}

impl Default for AddressingConfig {
    fn default() -> Self {
        AddressingConfig { market: 1, vcu: 1 }
    }
}

/// One fronthaul path as declared in the plan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FronthaulSpec {
    pub id: String,
    pub fiber_km: f64,
    pub hops: u32,
    #[serde(default = "default_per_km")]
    pub per_km_delay_us: f64,
    #[serde(default = "default_per_hop")]
    pub per_hop_delay_us: f64,
    /// Which HARQ budget applies.
    #[serde(default = "default_fr")]
    pub fr: FrequencyRange,
    #[serde(default = "default_required_compute")]
    pub required_compute_us: f64,
    /// Per-path override of the security section's crypto latency.
    #[serde(default)]
    pub crypto_latency_us: Option<f64>,
}

fn default_per_km() -> f64 {
    crate::latency::DEFAULT_PER_KM_DELAY_US
}

fn default_per_hop() -> f64 {
    crate::latency::DEFAULT_PER_HOP_DELAY_US
}

fn default_fr() -> FrequencyRange {
    FrequencyRange::Fr1
}

fn default_required_compute() -> f64 {
    DEFAULT_REQUIRED_COMPUTE_US
}

impl FronthaulSpec {
    pub fn to_path(&self) -> FronthaulPath {
        FronthaulPath {
            fiber_km: self.fiber_km,
            hops: self.hops,
            per_km_delay_us: self.per_km_delay_us,
            per_hop_delay_us: self.per_hop_delay_us,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SecurityConfig {
    pub cipher: CipherMode,
    pub dss: DssMode,
    /// Inline crypto cost charged against HARQ budgets, µs. `None` means
    /// zero when the cipher is off and [`DEFAULT_CRYPTO_LATENCY_US`] when
    /// it is on.
    pub crypto_latency_us: Option<f64>,
    /// Spectral efficiency used to turn carrier bandwidth into nominal
    /// throughput, bps/Hz.
    pub nominal_se_bps_hz: f64,
}

impl Default for SecurityConfig {
    fn default() -> Self {
        SecurityConfig {
            cipher: CipherMode::None,
            dss: DssMode::Off,
            crypto_latency_us: None,
            nominal_se_bps_hz: DEFAULT_NOMINAL_SE_BPS_HZ,
        }
    }
}

impl SecurityConfig {
    /// Crypto latency to charge against HARQ budgets.
    pub fn effective_crypto_latency_us(&self) -> f64 {
        match self.crypto_latency_us {
            Some(us) => us,
            None => match self.cipher {
                CipherMode::None => 0.0,
                _ => DEFAULT_CRYPTO_LATENCY_US,
            },
        }
    }
}

/// One slice power-allocation problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceSpec {
    pub name: String,
    pub p_max: f64,
    pub users: Vec<UeEntry>,
    #[serde(default)]
    pub step: Option<f64>,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
}

fn default_tol() -> f64 {
    1e-6
}

fn default_max_iter() -> usize {
    10_000
}

impl SliceSpec {
    pub fn to_problem(&self) -> SliceProblem {
        SliceProblem {
            users: self.users.clone(),
            p_max: self.p_max,
        }
    }

    pub fn options(&self) -> DualAscentOptions {
        DualAscentOptions {
            step: self.step,
            tol: self.tol,
            max_iter: self.max_iter,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GovernanceInputs {
    pub delay_cost: Option<DelayCostInputs>,
    pub clocks: Option<ClockConfig>,
    pub variety: Option<VarietyLedger>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DelayCostInputs {
    pub base_cost: f64,
    pub tau_c_months: f64,
    /// Specific deferral times to price, months.
    #[serde(default)]
    pub deferral_months: Vec<f64>,
}

impl DelayCostInputs {
    pub fn to_model(&self) -> Result<DelayCostModel, crate::dynamics::DynamicsError> {
        DelayCostModel::new(self.base_cost, self.tau_c_months)
    }
}

/// Parses a plan document, reporting the JSON path of any violation.
pub fn parse_plan(json: &str) -> Result<PlanDocument, PlanError> {
    let mut deserializer = serde_json::Deserializer::from_str(json);
    let plan: PlanDocument =
        serde_path_to_error::deserialize(&mut deserializer).map_err(|err| PlanError::Schema {
            path: err.path().to_string(),
            message: err.inner().to_string(),
        })?;
    plan.validate()?;
    Ok(plan)
}

/// The JSON Schema describing [`PlanDocument`], as served by the
/// `schema` CLI subcommand.
pub fn schema_json() -> &'static str {
    include_str!("plan_schema.json")
}

impl PlanDocument {
    /// Range and cross-reference checks that JSON shape validation cannot
    /// express.
    pub fn validate(&self) -> Result<(), PlanError> {
        let mut labels = std::collections::BTreeSet::new();
        for (i, holding) in self.holdings.iter().enumerate() {
            let context = format!("holdings[{i}]");
            if !labels.insert(holding.carrier_label.as_str()) {
                return Err(PlanError::invalid(
                    &context,
                    format!("duplicate carrier_label {:?}", holding.carrier_label),
                ));
            }
            let block = holding.to_block();
            block
                .validate()
                .map_err(|e| PlanError::invalid(&context, e))?;
            classify_band(&block).map_err(|e| PlanError::invalid(&context, e))?;
            if !holding.profit.is_finite() || holding.profit < 0.0 {
                return Err(PlanError::invalid(
                    &context,
                    format!("profit must be non-negative, got {}", holding.profit),
                ));
            }
        }
        self.du_profile
            .validate()
            .map_err(|e| PlanError::invalid("du_profile", e))?;
        if self.solver.du_budget == 0 {
            return Err(PlanError::invalid("solver.du_budget", "must be at least 1"));
        }
        if let Some(addressing) = &self.addressing {
            // vDU 0 as a probe: the market/vCU ranges are what matter.
            GnbId::new(addressing.market, addressing.vcu, 0)
                .map_err(|e: AddressError| PlanError::invalid("addressing", e))?;
        }
        let mut path_ids = std::collections::BTreeSet::new();
        for (i, spec) in self.fronthaul_paths.iter().enumerate() {
            let context = format!("fronthaul_paths[{i}]");
            if !path_ids.insert(spec.id.as_str()) {
                return Err(PlanError::invalid(
                    &context,
                    format!("duplicate path id {:?}", spec.id),
                ));
            }
            spec.to_path()
                .validate()
                .map_err(|e| PlanError::invalid(&context, e))?;
            if !spec.required_compute_us.is_finite() || spec.required_compute_us < 0.0 {
                return Err(PlanError::invalid(
                    &context,
                    format!(
                        "required_compute_us must be non-negative, got {}",
                        spec.required_compute_us
                    ),
                ));
            }
            if let Some(us) = spec.crypto_latency_us {
                if !us.is_finite() || us < 0.0 {
                    return Err(PlanError::invalid(
                        &context,
                        format!("crypto_latency_us must be non-negative, got {us}"),
                    ));
                }
            }
        }
        self.security
            .cipher
            .penalty()
            .map_err(|e| PlanError::invalid("security.cipher", e))?;
        self.security
            .dss
            .penalty()
            .map_err(|e| PlanError::invalid("security.dss", e))?;
        if let Some(us) = self.security.crypto_latency_us {
            if !us.is_finite() || us < 0.0 {
                return Err(PlanError::invalid(
                    "security.crypto_latency_us",
                    format!("must be non-negative, got {us}"),
                ));
            }
        }
        if !self.security.nominal_se_bps_hz.is_finite() || self.security.nominal_se_bps_hz <= 0.0 {
            return Err(PlanError::invalid(
                "security.nominal_se_bps_hz",
                format!("must be positive, got {}", self.security.nominal_se_bps_hz),
            ));
        }
        let mut slice_names = std::collections::BTreeSet::new();
        for (i, slice) in self.slices.iter().enumerate() {
            let context = format!("slices[{i}]");
            if !slice_names.insert(slice.name.as_str()) {
                return Err(PlanError::invalid(
                    &context,
                    format!("duplicate slice name {:?}", slice.name),
                ));
            }
            slice
                .to_problem()
                .validate()
                .map_err(|e| PlanError::invalid(&context, e))?;
            if slice.tol <= 0.0 || !slice.tol.is_finite() {
                return Err(PlanError::invalid(
                    &context,
                    format!("tol must be positive, got {}", slice.tol),
                ));
            }
            if let Some(step) = slice.step {
                if step <= 0.0 || !step.is_finite() {
                    return Err(PlanError::invalid(
                        &context,
                        format!("step must be positive, got {step}"),
                    ));
                }
            }
            if slice.max_iter == 0 {
                return Err(PlanError::invalid(&context, "max_iter must be at least 1"));
            }
        }
        if let Some(governance) = &self.governance {
            if let Some(delay_cost) = &governance.delay_cost {
                delay_cost
                    .to_model()
                    .map_err(|e| PlanError::invalid("governance.delay_cost", e))?;
                for (i, tau) in delay_cost.deferral_months.iter().enumerate() {
                    if !tau.is_finite() || *tau < 0.0 {
                        return Err(PlanError::invalid(
                            format!("governance.delay_cost.deferral_months[{i}]"),
                            format!("must be non-negative, got {tau}"),
                        ));
                    }
                }
            }
            if let Some(clocks) = &governance.clocks {
                clocks
                    .validate()
                    .map_err(|e| PlanError::invalid("governance.clocks", e))?;
            }
        }
        Ok(())
    }
}
