//! Throughput penalties from payload ciphering and dynamic spectrum
//! sharing.
//!
//! Both effects are modelled as fractional penalties composed
//! multiplicatively: each active mechanism scales throughput by
//! `1 - penalty`. Penalties are configurable within measured ranges;
//! values outside their range are configuration errors, not clamps.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Measured penalty range for per-PDU software ciphering.
pub const PER_PDU_PENALTY_RANGE: (f64, f64) = (0.07, 0.12);
/// Default per-PDU software penalty: midpoint of the measured range.
pub const DEFAULT_PER_PDU_PENALTY: f64 = 0.095;
/// Interface-level enforcement observed at the top of fronthaul links.
pub const INTERFACE_LEVEL_PENALTY: f64 = 0.08;
/// Hardware offload keeps the hit at or under this.
pub const HW_OFFLOAD_PENALTY_MAX: f64 = 0.03;
pub const DEFAULT_HW_OFFLOAD_PENALTY: f64 = 0.03;
/// Capacity loss range when a carrier is shared between two RATs.
pub const DSS_PENALTY_RANGE: (f64, f64) = (0.20, 0.40);
pub const DEFAULT_DSS_PENALTY: f64 = 0.25;

#[derive(Debug, Error, PartialEq)]
pub enum OverheadError {
    #[error("{mechanism} penalty {value} outside [{lo}, {hi}]")]
    PenaltyOutOfRange {
        mechanism: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("nominal throughput must be finite and non-negative, got {0}")]
    InvalidNominal(f64),
}

/// Payload ciphering deployment mode.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CipherMode {
    /// No payload protection beyond transport defaults.
    #[default]
    None,
    /// Per-PDU ciphering in software on the DU host.
    PerPduSoftware {
        #[serde(default = "default_per_pdu")]
        penalty: f64,
    },
    /// Ciphering offloaded to NIC/accelerator hardware.
    HwOffload {
        #[serde(default = "default_hw")]
        penalty: f64,
    },
}

fn default_per_pdu() -> f64 {
    DEFAULT_PER_PDU_PENALTY
}

fn default_hw() -> f64 {
    DEFAULT_HW_OFFLOAD_PENALTY
}

impl CipherMode {
    pub fn per_pdu_default() -> Self {
        CipherMode::PerPduSoftware {
            penalty: DEFAULT_PER_PDU_PENALTY,
        }
    }

    pub fn hw_offload_default() -> Self {
        CipherMode::HwOffload {
            penalty: DEFAULT_HW_OFFLOAD_PENALTY,
        }
    }

    /// Named preset for interface-level (link) enforcement.
    pub fn interface_preset() -> Self {
        CipherMode::PerPduSoftware {
            penalty: INTERFACE_LEVEL_PENALTY,
        }
    }

    /// Validated penalty fraction for this mode.
    pub fn penalty(&self) -> Result<f64, OverheadError> {
        match *self {
            CipherMode::None => Ok(0.0),
            CipherMode::PerPduSoftware { penalty } => {
                let (lo, hi) = PER_PDU_PENALTY_RANGE;
                if !(lo..=hi).contains(&penalty) {
                    return Err(OverheadError::PenaltyOutOfRange {
                        mechanism: "per-PDU software cipher",
                        value: penalty,
                        lo,
                        hi,
                    });
                }
                Ok(penalty)
            }
            CipherMode::HwOffload { penalty } => {
                if !(0.0..=HW_OFFLOAD_PENALTY_MAX).contains(&penalty) {
                    return Err(OverheadError::PenaltyOutOfRange {
                        mechanism: "hardware-offload cipher",
                        value: penalty,
                        lo: 0.0,
                        hi: HW_OFFLOAD_PENALTY_MAX,
                    });
                }
                Ok(penalty)
            }
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CipherMode::None => "cipher:none",
            CipherMode::PerPduSoftware { .. } => "cipher:per_pdu_software",
            CipherMode::HwOffload { .. } => "cipher:hw_offload",
        }
    }
}

/// Dynamic spectrum sharing state for a carrier.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum DssMode {
    #[default]
    Off,
    On {
        #[serde(default = "default_dss")]
        penalty: f64,
    },
}

fn default_dss() -> f64 {
    DEFAULT_DSS_PENALTY
}

impl DssMode {
    pub fn on_default() -> Self {
        DssMode::On {
            penalty: DEFAULT_DSS_PENALTY,
        }
    }

    pub fn penalty(&self) -> Result<f64, OverheadError> {
        match *self {
            DssMode::Off => Ok(0.0),
            DssMode::On { penalty } => {
                let (lo, hi) = DSS_PENALTY_RANGE;
                if !(lo..=hi).contains(&penalty) {
                    return Err(OverheadError::PenaltyOutOfRange {
                        mechanism: "dynamic spectrum sharing",
                        value: penalty,
                        lo,
                        hi,
                    });
                }
                Ok(penalty)
            }
        }
    }
}

/// One penalty that was actually applied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AppliedPenalty {
    pub name: String,
    pub fraction: f64,
}

/// Effective throughput after all configured penalties.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThroughputEstimate {
    pub nominal_mbps: f64,
    pub effective_mbps: f64,
    /// Non-zero penalties, in the canonical composition order.
    pub applied_penalties: Vec<AppliedPenalty>,
}

/// Multiplies `1 - f` factors in a canonical order (largest fraction
/// first, name as tie-break), so the result is independent of the order
/// penalties were supplied in — exactly, not just up to rounding.
pub fn compose_penalties(nominal_mbps: f64, penalties: &[AppliedPenalty]) -> f64 {
    let mut ordered: Vec<&AppliedPenalty> = penalties.iter().collect();
    ordered.sort_by(|a, b| {
        b.fraction
            .total_cmp(&a.fraction)
            .then_with(|| a.name.cmp(&b.name))
    });
    ordered
        .iter()
        .fold(nominal_mbps, |acc, p| acc * (1.0 - p.fraction))
}

/// Applies cipher and sharing penalties to a nominal throughput.
pub fn apply_penalties(
    nominal_mbps: f64,
    cipher: &CipherMode,
    dss: &DssMode,
) -> Result<ThroughputEstimate, OverheadError> {
    if !nominal_mbps.is_finite() || nominal_mbps < 0.0 {
        return Err(OverheadError::InvalidNominal(nominal_mbps));
    }
    let mut applied = Vec::new();
    let cipher_penalty = cipher.penalty()?;
    if cipher_penalty > 0.0 {
        applied.push(AppliedPenalty {
            name: cipher.label().to_string(),
            fraction: cipher_penalty,
        });
    }
    let dss_penalty = dss.penalty()?;
    if dss_penalty > 0.0 {
        applied.push(AppliedPenalty {
            name: "dss".to_string(),
            fraction: dss_penalty,
        });
    }
    applied.sort_by(|a, b| {
        b.fraction
            .total_cmp(&a.fraction)
            .then_with(|| a.name.cmp(&b.name))
    });
    let effective_mbps = compose_penalties(nominal_mbps, &applied);
    Ok(ThroughputEstimate {
        nominal_mbps,
        effective_mbps,
        applied_penalties: applied,
    })
}
