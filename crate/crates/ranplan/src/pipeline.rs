//! End-to-end evaluation of a plan document into a report.
//!
//! The pipeline runs every analysis the plan provides inputs for:
//! spectrum partitioning and carrier formation, DU packing, gNB
//! addressing, HARQ budget checks, throughput penalties, slice power
//! allocation, and governance screens. Analysis failures (a budget
//! missed, an infeasible packing) become findings in the report summary
//! with an overall FAIL verdict; only malformed input is an error.

use crate::addressing::{pack_32, GnbId};
use crate::dynamics::{check_clock_hierarchy, check_requisite_variety, corrective_cost};
use crate::latency::{check_placement, FronthaulPath, HarqBudget};
use crate::overhead::apply_penalties;
use crate::packing::{pack, validate_topology, CellDemand, PackingError, PackingPlan};
use crate::plan::{PlanDocument, PlanError};
use crate::report::*;
use crate::slicing::{dual_ascent, emit_power_caps, ShannonRate, SliceError};
use crate::spectrum::{
    channelize_from, classify_range, contiguity_partition, BandClass, ComponentCarrier,
};
use crate::Verdict;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

/// Run-level switches that do not belong in the plan document itself.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Treat warnings as failures in the overall verdict.
    pub strict: bool,
    /// RFC 3339 generation timestamp; `None` keeps the report
    /// byte-deterministic.
    pub timestamp: Option<String>,
    /// Digest of the raw input bytes; when `None` the canonical JSON
    /// serialization of the plan is hashed instead.
    pub input_digest: Option<String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// A carrier annotated with everything downstream stages need.
struct PlannedCarrier {
    carrier: ComponentCarrier,
    band: String,
    class: BandClass,
    fr: crate::spectrum::FrequencyRange,
    profit: f64,
}

fn build_carriers(plan: &PlanDocument) -> Result<(Vec<RunRecord>, Vec<PlannedCarrier>), PlanError> {
    let blocks: Vec<_> = plan.holdings.iter().map(|h| h.to_block()).collect();
    let runs = contiguity_partition(&blocks).map_err(|e| PlanError::invalid("holdings", e))?;
    let profit_by_label: BTreeMap<&str, f64> = plan
        .holdings
        .iter()
        .map(|h| (h.carrier_label.as_str(), h.profit))
        .collect();

    let mut run_records = Vec::new();
    let mut carriers = Vec::new();
    let mut ordinal = 1;
    for (run_index, run) in runs.iter().enumerate() {
        let classification = classify_range(run[0].f_low_mhz)
            .map_err(|e| PlanError::invalid(format!("holdings run {run_index}"), e))?;
        let cap = plan.du_profile.cc_cap_for(classification.fr);
        let run_carriers = channelize_from(run, cap, ordinal)
            .map_err(|e| PlanError::invalid(format!("holdings run {run_index}"), e))?;
        ordinal += run_carriers.len();

        run_records.push(RunRecord {
            run_index,
            band: run[0].band.clone(),
            f_low_mhz: run[0].f_low_mhz,
            f_high_mhz: run.last().unwrap().f_high_mhz,
            bandwidth_mhz: run.iter().map(|b| b.bandwidth_mhz()).sum(),
            blocks: run.iter().map(|b| b.carrier_label.clone()).collect(),
        });

        for carrier in run_carriers {
            // Profit: each block's weight, split over carriers in
            // proportion to the spectrum they take from it.
            let profit = run
                .iter()
                .map(|block| {
                    let overlap = (carrier.f_high_mhz.min(block.f_high_mhz)
                        - carrier.f_low_mhz.max(block.f_low_mhz))
                    .max(0.0);
                    profit_by_label[block.carrier_label.as_str()] * overlap / block.bandwidth_mhz()
                })
                .sum();
            carriers.push(PlannedCarrier {
                band: run[0].band.clone(),
                class: classification.class,
                fr: classification.fr,
                profit,
                carrier,
            });
        }
    }
    Ok((run_records, carriers))
}

fn band_class_label(class: BandClass) -> &'static str {
    match class {
        BandClass::Low => "low",
        BandClass::Mid => "mid",
        BandClass::High => "high",
    }
}

/// vDU numbering convention: thousands digit by band class served.
fn vdu_band_digit(classes: &[BandClass]) -> u32 {
    if classes.contains(&BandClass::High) {
        9
    } else if classes.contains(&BandClass::Mid) {
        7
    } else {
        4
    }
}

fn addressing_section(
    plan: &PlanDocument,
    packing: &PackingPlan,
    carriers: &[PlannedCarrier],
    failures: &mut Vec<Finding>,
) -> Option<AddressingSection> {
    let config = plan.addressing.as_ref()?;
    let class_by_cc: BTreeMap<&str, BandClass> = carriers
        .iter()
        .map(|c| (c.carrier.id.as_str(), c.class))
        .collect();

    let mut entries = Vec::new();
    for du in &packing.dus {
        let classes: Vec<BandClass> = du
            .cc_ids
            .iter()
            .filter_map(|cc| class_by_cc.get(cc.as_str()).copied())
            .collect();
        let digit = vdu_band_digit(&classes);
        let ordinal = du.du_index as u32 + 1;
        let vdu = digit * 1_000 + ordinal;
        match GnbId::new(config.market, config.vcu, vdu) {
            Ok(id) => {
                let (packed_decimal, packed_hex, packing_error) = match pack_32(&id) {
                    Ok(packed) => (Some(packed.0), Some(packed.hex()), None),
                    Err(err) => (None, None, Some(err.to_string())),
                };
                entries.push(AddressRecord {
                    du_index: du.du_index,
                    band_class: band_class_label(
                        classes.first().copied().unwrap_or(BandClass::Low),
                    )
                    .to_string(),
                    gnb_id: id.to_string(),
                    packed_decimal,
                    packed_hex,
                    packing_error,
                });
            }
            Err(err) => {
                failures.push(Finding {
                    check: format!("addressing:du{}", du.du_index),
                    detail: err.to_string(),
                });
            }
        }
    }
    Some(AddressingSection {
        market: config.market,
        vcu: config.vcu,
        entries,
    })
}

/// Evaluates a plan into a report. Errors only on inputs the document
/// validation could not accept; every analysis verdict, including
/// infeasible packings and missed budgets, lands in the report summary.
pub fn run_plan(plan: &PlanDocument, options: &RunOptions) -> Result<ReportDocument, PlanError> {
    plan.validate()?;

    let input_digest = match &options.input_digest {
        Some(digest) => digest.clone(),
        None => {
            let canonical = serde_json::to_vec(plan).map_err(|e| PlanError::invalid("plan", e))?;
            sha256_hex(&canonical)
        }
    };

    let mut failures: Vec<Finding> = Vec::new();
    let mut warnings: Vec<Finding> = Vec::new();

    // Spectrum: holdings -> contiguous runs -> component carriers.
    let (run_records, carriers) = build_carriers(plan)?;
    let spectrum = SpectrumSection {
        runs: run_records,
        carriers: carriers
            .iter()
            .map(|c| CarrierRecord {
                id: c.carrier.id.clone(),
                band: c.band.clone(),
                fr: c.fr,
                f_low_mhz: c.carrier.f_low_mhz,
                f_high_mhz: c.carrier.f_high_mhz,
                bandwidth_mhz: c.carrier.bandwidth_mhz(),
                aggregated: c.carrier.aggregated,
                members: c.carrier.members.clone(),
                profit: c.profit,
            })
            .collect(),
    };

    // Packing: carriers become cell demands.
    let demands: Vec<CellDemand> = carriers
        .iter()
        .map(|c| CellDemand {
            cc_id: c.carrier.id.clone(),
            bandwidth_mhz: c.carrier.bandwidth_mhz(),
            fr: c.fr,
            profit: c.profit,
            cells_required: 1,
        })
        .collect();
    let packing_result = pack(
        &demands,
        &plan.du_profile,
        plan.solver.du_budget,
        plan.solver.objective,
    );
    let packing_plan = match packing_result {
        Ok(plan_out) => Some(plan_out),
        Err(err @ (PackingError::Infeasible { .. } | PackingError::OversizedDemand { .. })) => {
            failures.push(Finding {
                check: "du_packing".into(),
                detail: err.to_string(),
            });
            None
        }
        Err(err) => return Err(PlanError::invalid("solver", err)),
    };

    let packing_section = packing_plan.as_ref().map(|p| {
        let topology_violations = plan
            .site_topology
            .map(|topology| validate_topology(p, &topology))
            .unwrap_or_default();
        for violation in &topology_violations {
            failures.push(Finding {
                check: format!("site_topology:{}", violation.constraint),
                detail: violation.detail.clone(),
            });
        }
        PackingSection {
            objective: plan.solver.objective,
            du_budget: plan.solver.du_budget,
            dus_used: p.dus_used,
            objective_value: p.objective_value,
            exact: p.exact,
            assignments: p.assignments.clone(),
            disabled: p.disabled.clone(),
            dus: p.dus.clone(),
            topology_violations,
        }
    });

    // Addressing needs a packing to number DUs from.
    let addressing = packing_plan
        .as_ref()
        .and_then(|p| addressing_section(plan, p, &carriers, &mut failures));

    // HARQ budgets per fronthaul path.
    let default_crypto_us = plan.security.effective_crypto_latency_us();
    let latency = if plan.fronthaul_paths.is_empty() {
        None
    } else {
        let mut paths = Vec::new();
        for spec in &plan.fronthaul_paths {
            let path = spec.to_path();
            let budget = HarqBudget::for_range(spec.fr);
            let crypto_us = spec.crypto_latency_us.unwrap_or(default_crypto_us);
            let report = check_placement(&path, &budget, spec.required_compute_us, crypto_us);
            if report.verdict == Verdict::Fail {
                failures.push(Finding {
                    check: format!("harq_budget:{}", spec.id),
                    detail: format!(
                        "slack {} µs under the required {} µs (binding term: {})",
                        report.compute_slack_us, report.required_compute_us, report.binding_term
                    ),
                });
            }
            paths.push(PathRecord {
                id: spec.id.clone(),
                fr: spec.fr,
                fiber_km: spec.fiber_km,
                hops: spec.hops,
                one_way_us: report.one_way_us,
                round_trip_us: report.round_trip_us,
                crypto_us: report.crypto_us,
                budget_us: report.budget_us,
                required_compute_us: report.required_compute_us,
                compute_slack_us: report.compute_slack_us,
                binding_term: report.binding_term,
                verdict: report.verdict,
            });
        }
        Some(LatencySection { paths })
    };

    // Throughput per carrier under the security configuration.
    let throughput = if carriers.is_empty() {
        None
    } else {
        let mut entries = Vec::new();
        for c in &carriers {
            let nominal = c.carrier.bandwidth_mhz() * plan.security.nominal_se_bps_hz;
            let estimate = apply_penalties(nominal, &plan.security.cipher, &plan.security.dss)
                .map_err(|e| PlanError::invalid("security", e))?;
            entries.push(ThroughputRecord {
                cc_id: c.carrier.id.clone(),
                bandwidth_mhz: c.carrier.bandwidth_mhz(),
                nominal_mbps: estimate.nominal_mbps,
                effective_mbps: estimate.effective_mbps,
                applied_penalties: estimate.applied_penalties,
            });
        }
        Some(ThroughputSection {
            nominal_se_bps_hz: plan.security.nominal_se_bps_hz,
            entries,
        })
    };

    // Slice power allocations.
    let mut slices = Vec::new();
    for spec in &plan.slices {
        let problem = spec.to_problem();
        let section = match dual_ascent(&problem, &ShannonRate, &spec.options()) {
            Ok(allocation) => SliceSection {
                name: spec.name.clone(),
                p_max: spec.p_max,
                converged: true,
                lambda: allocation.lambda,
                objective: allocation.objective,
                iterations: allocation.iterations,
                kkt_residual: allocation.kkt_residual,
                total_power: allocation.p.iter().sum(),
                power_caps: emit_power_caps(&problem, &allocation),
                error: None,
            },
            Err(SliceError::NoConvergence {
                iterations,
                residual,
                last,
            }) => {
                failures.push(Finding {
                    check: format!("slice:{}", spec.name),
                    detail: format!(
                        "no convergence in {iterations} iterations (violation {residual:.3e})"
                    ),
                });
                SliceSection {
                    name: spec.name.clone(),
                    p_max: spec.p_max,
                    converged: false,
                    lambda: last.lambda,
                    objective: last.objective,
                    iterations: last.iterations,
                    kkt_residual: last.kkt_residual,
                    total_power: last.p.iter().sum(),
                    power_caps: emit_power_caps(&problem, &last),
                    error: Some(format!(
                        "did not converge (budget violation {residual:.3e})"
                    )),
                }
            }
            Err(err) => return Err(PlanError::invalid(format!("slices:{}", spec.name), err)),
        };
        slices.push(section);
    }

    // Governance screens.
    let governance = match &plan.governance {
        None => None,
        Some(inputs) => {
            let delay_cost = match &inputs.delay_cost {
                None => None,
                Some(spec) => {
                    let model = spec
                        .to_model()
                        .map_err(|e| PlanError::invalid("governance.delay_cost", e))?;
                    let mut requested = Vec::new();
                    for &tau in &spec.deferral_months {
                        let cost = corrective_cost(&model, tau)
                            .map_err(|e| PlanError::invalid("governance.delay_cost", e))?;
                        requested.push(CostSample {
                            tau_months: tau,
                            cost,
                        });
                    }
                    Some(DelayCostReport {
                        base_cost: spec.base_cost,
                        tau_c_months: spec.tau_c_months,
                        requested,
                    })
                }
            };
            let clocks = inputs.clocks.as_ref().map(|config| {
                let diagnosis = check_clock_hierarchy(config);
                if diagnosis.verdict == Verdict::Fail {
                    failures.push(Finding {
                        check: "clock_hierarchy".into(),
                        detail: format!(
                            "technology horizon {} years is under the {} year threshold",
                            config.horizon_tech_years, diagnosis.horizon_threshold_years
                        ),
                    });
                }
                for warning in &diagnosis.warnings {
                    warnings.push(Finding {
                        check: "clock_cadence".into(),
                        detail: warning.clone(),
                    });
                }
                ClockReport {
                    config: *config,
                    verdict: diagnosis.verdict,
                    horizon_threshold_years: diagnosis.horizon_threshold_years,
                    warnings: diagnosis.warnings,
                }
            });
            let variety = inputs.variety.as_ref().map(|ledger| {
                let verdict = check_requisite_variety(ledger);
                if verdict == Verdict::Fail {
                    failures.push(Finding {
                        check: "requisite_variety".into(),
                        detail: format!(
                            "internal variety {} cannot absorb external variety {}",
                            ledger.internal_states, ledger.external_states
                        ),
                    });
                }
                VarietyReport {
                    internal_states: ledger.internal_states,
                    external_states: ledger.external_states,
                    verdict,
                }
            });
            Some(GovernanceSection {
                delay_cost,
                clocks,
                variety,
            })
        }
    };

    // Plot data for downstream tooling.
    let mut plots = PlotsSection::default();
    if let Some(inputs) = &plan.governance {
        if let Some(spec) = &inputs.delay_cost {
            let model = spec
                .to_model()
                .map_err(|e| PlanError::invalid("governance.delay_cost", e))?;
            for k in 0..=16 {
                let tau = spec.tau_c_months * k as f64 / 4.0;
                let cost = corrective_cost(&model, tau)
                    .map_err(|e| PlanError::invalid("governance.delay_cost", e))?;
                plots.delay_cost_curve.push(CostSample {
                    tau_months: tau,
                    cost,
                });
            }
        }
    }
    for spec in &plan.fronthaul_paths {
        let budget = HarqBudget::for_range(spec.fr);
        let crypto_us = spec.crypto_latency_us.unwrap_or(default_crypto_us);
        for km in (0..=30).step_by(2) {
            let path = FronthaulPath {
                fiber_km: km as f64,
                ..spec.to_path()
            };
            let report = check_placement(&path, &budget, spec.required_compute_us, crypto_us);
            plots.slack_vs_distance.push(SlackSample {
                path_id: spec.id.clone(),
                fiber_km: path.fiber_km,
                compute_slack_us: report.compute_slack_us,
            });
        }
    }
    let plots = if plots.delay_cost_curve.is_empty() && plots.slack_vs_distance.is_empty() {
        None
    } else {
        Some(plots)
    };

    let failed = !failures.is_empty() || (options.strict && !warnings.is_empty());
    Ok(ReportDocument {
        schema_version: REPORT_SCHEMA_VERSION.into(),
        input_digest,
        generated_at: options.timestamp.clone(),
        summary: Summary {
            verdict: Verdict::from_bool(!failed),
            failures,
            warnings,
        },
        spectrum: Some(spectrum),
        packing: packing_section,
        addressing,
        latency,
        throughput,
        slices,
        governance,
        plots,
    })
}
