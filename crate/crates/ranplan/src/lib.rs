//! Planning and validation toolkit for virtualized RAN deployments.
//!
//! The crate covers the numeric groundwork a deployment engineer needs
//! before any hardware is racked:
//!
//! - [`spectrum`]: licensed-block bookkeeping, band classification,
//!   contiguity analysis and component-carrier formation.
//! - [`packing`]: assignment of component carriers to virtual DUs under
//!   cell-count and aggregated-bandwidth ceilings.
//! - [`addressing`]: hierarchical market/vCU/vDU identifiers in both the
//!   11-digit decimal form and the packed 32-bit form.
//! - [`latency`]: fronthaul delay accounting against HARQ round-trip
//!   deadlines.
//! - [`overhead`]: multiplicative throughput-penalty models for cipher
//!   enforcement and dynamic spectrum sharing.
//! - [`slicing`]: log-utility power allocation across UEs by dual ascent.
//! - [`dynamics`]: governance checks on remediation cost growth, planning
//!   clocks and control-loop variety.
//! - [`plan`] / [`pipeline`] / [`report`]: a JSON plan document in, a
//!   deterministic JSON/CSV report out.
//!
//! Each module is usable on its own; `pipeline::run_plan` wires them into
//! the end-to-end flow used by the `ranplan` binary. The `examples/`
//! directory contains one runnable walkthrough per module.

use serde::{Deserialize, Serialize};
use std::fmt;

pub mod addressing;
pub mod dynamics;
pub mod latency;
pub mod overhead;
pub mod packing;
pub mod pipeline;
pub mod plan;
pub mod report;
pub mod slicing;
pub mod spectrum;

/// Binary outcome of a budget or governance check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }

    /// `Pass` when `ok`, `Fail` otherwise.
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}
