//! Assignment of component carriers to virtual DUs.
//!
//! Each DU instance can host a limited number of cells and a limited
//! aggregate bandwidth per frequency range. Given the carriers produced by
//! spectrum planning, [`pack`] decides which DU hosts which carrier —
//! either minimising the DU count with everything served
//! ([`Objective::MinDus`]) or maximising served profit within a fixed DU
//! budget, disabling what does not pay its way
//! ([`Objective::MaxProfit`]).
//!
//! Instances up to [`EXACT_SEARCH_MAX_DEMANDS`] demands are solved
//! exactly by branch-and-bound; larger ones fall back to a first-fit
//! heuristic with local search, and the resulting plan says so via
//! [`PackingPlan::exact`]. [`brute_force_pack`] is a deliberately naive
//! exhaustive solver kept around as an independent cross-check on the
//! optimiser; it shares no search code with [`pack`].

use crate::spectrum::FrequencyRange;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use thiserror::Error;

/// Largest instance [`pack`] solves exactly.
pub const EXACT_SEARCH_MAX_DEMANDS: usize = 12;
/// Instance caps for [`brute_force_pack`].
pub const BRUTE_FORCE_MAX_DEMANDS: usize = 12;
pub const BRUTE_FORCE_MAX_BUDGET: usize = 4;

/// Platform ceiling on DUs colocated at one cell site.
pub const MAX_VDUS_PER_SITE: u32 = 4;
/// Platform ceiling on sites homed to one CU.
pub const MAX_SITES_PER_VCU: u32 = 10_000;

#[derive(Debug, Error, PartialEq)]
pub enum PackingError {
    #[error("invalid DU profile: {0}")]
    InvalidProfile(String),
    #[error("invalid demand {cc_id}: {reason}")]
    InvalidDemand { cc_id: String, reason: String },
    #[error("demand {cc_id} exceeds a per-DU ceiling: {reason}")]
    OversizedDemand { cc_id: String, reason: String },
    #[error("no feasible assignment within {du_budget} DUs (binding: {binding})")]
    Infeasible { du_budget: usize, binding: String },
    #[error(
        "instance too large for exhaustive search: {demands} demands / budget {du_budget} \
         (limits {BRUTE_FORCE_MAX_DEMANDS} / {BRUTE_FORCE_MAX_BUDGET})"
    )]
    InstanceTooLarge { demands: usize, du_budget: usize },
    #[error("du_budget must be at least 1")]
    ZeroBudget,
}

/// Capacity envelope of one DU instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DuProfile {
    /// Cells one DU can host.
    pub max_cells: u32,
    /// Aggregated FR1 bandwidth ceiling, MHz. Exclusive: a DU must stay
    /// strictly below it.
    pub max_abw_fr1_mhz: f64,
    /// Aggregated FR2 bandwidth ceiling, MHz. Inclusive.
    pub max_abw_fr2_mhz: f64,
    /// Channelization cap for FR1 carriers, MHz.
    pub cc_cap_fr1_mhz: f64,
    /// Channelization cap for FR2 carriers, MHz.
    pub cc_cap_fr2_mhz: f64,
    /// Relative cost of running one DU (used by reports, not the solver).
    pub cost: f64,
}

impl Default for DuProfile {
    fn default() -> Self {
        DuProfile {
            max_cells: 18,
            max_abw_fr1_mhz: 160.0,
            max_abw_fr2_mhz: 400.0,
            cc_cap_fr1_mhz: 100.0,
            cc_cap_fr2_mhz: 100.0,
            cost: 1.0,
        }
    }
}

impl DuProfile {
    pub fn validate(&self) -> Result<(), PackingError> {
        if self.max_cells == 0 {
            return Err(PackingError::InvalidProfile(
                "max_cells must be at least 1".into(),
            ));
        }
        for (name, value) in [
            ("max_abw_fr1_mhz", self.max_abw_fr1_mhz),
            ("max_abw_fr2_mhz", self.max_abw_fr2_mhz),
            ("cc_cap_fr1_mhz", self.cc_cap_fr1_mhz),
            ("cc_cap_fr2_mhz", self.cc_cap_fr2_mhz),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(PackingError::InvalidProfile(format!(
                    "{name} must be finite and positive, got {value}"
                )));
            }
        }
        if !self.cost.is_finite() || self.cost < 0.0 {
            return Err(PackingError::InvalidProfile(format!(
                "cost must be finite and non-negative, got {}",
                self.cost
            )));
        }
        Ok(())
    }

    pub fn cc_cap_for(&self, fr: FrequencyRange) -> f64 {
        match fr {
            FrequencyRange::Fr1 => self.cc_cap_fr1_mhz,
            FrequencyRange::Fr2 => self.cc_cap_fr2_mhz,
        }
    }
}

/// One carrier asking to be hosted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellDemand {
    pub cc_id: String,
    pub bandwidth_mhz: f64,
    pub fr: FrequencyRange,
    /// Revenue weight under [`Objective::MaxProfit`].
    #[serde(default = "default_profit")]
    pub profit: f64,
    /// Cells this carrier occupies on its DU.
    #[serde(default = "default_cells")]
    pub cells_required: u32,
}

fn default_profit() -> f64 {
    1.0
}

fn default_cells() -> u32 {
    1
}

/// What the solver optimises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// Serve every demand with as few DUs as possible.
    MinDus,
    /// Maximise served profit within the DU budget; unprofitable demands
    /// may be disabled. Ties prefer fewer DUs, so zero-profit demands are
    /// dropped when that saves a DU.
    MaxProfit,
}

/// Load summary of one DU in a finished plan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DuSummary {
    pub du_index: usize,
    pub cc_ids: Vec<String>,
    pub cells_used: u32,
    pub abw_fr1_mhz: f64,
    pub abw_fr2_mhz: f64,
}

/// A complete assignment decision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingPlan {
    /// cc_id -> DU index. DU indices are canonical: DUs are numbered in
    /// order of first use when demands are visited in cc_id order.
    pub assignments: BTreeMap<String, usize>,
    /// Demands left unserved (only under [`Objective::MaxProfit`]).
    pub disabled: Vec<String>,
    pub dus_used: usize,
    pub objective: Objective,
    /// DU count for [`Objective::MinDus`], served profit for
    /// [`Objective::MaxProfit`].
    pub objective_value: f64,
    pub dus: Vec<DuSummary>,
    /// False when the plan came from the heuristic rather than exhaustive
    /// search.
    pub exact: bool,
}

#[derive(Clone, Copy, Default, PartialEq, Debug)]
struct DuLoad {
    cells: u32,
    abw_fr1_mhz: f64,
    abw_fr2_mhz: f64,
}

impl DuLoad {
    fn fits(&self, demand: &CellDemand, profile: &DuProfile) -> bool {
        if self.cells + demand.cells_required > profile.max_cells {
            return false;
        }
        match demand.fr {
            FrequencyRange::Fr1 => {
                self.abw_fr1_mhz + demand.bandwidth_mhz < profile.max_abw_fr1_mhz
            }
            FrequencyRange::Fr2 => {
                self.abw_fr2_mhz + demand.bandwidth_mhz <= profile.max_abw_fr2_mhz
            }
        }
    }

    fn add(&mut self, demand: &CellDemand) {
        self.cells += demand.cells_required;
        match demand.fr {
            FrequencyRange::Fr1 => self.abw_fr1_mhz += demand.bandwidth_mhz,
            FrequencyRange::Fr2 => self.abw_fr2_mhz += demand.bandwidth_mhz,
        }
    }
}

fn validate_demands(demands: &[CellDemand], profile: &DuProfile) -> Result<(), PackingError> {
    let mut seen = std::collections::BTreeSet::new();
    for demand in demands {
        if !seen.insert(demand.cc_id.as_str()) {
            return Err(PackingError::InvalidDemand {
                cc_id: demand.cc_id.clone(),
                reason: "duplicate cc_id".into(),
            });
        }
        if !demand.bandwidth_mhz.is_finite() || demand.bandwidth_mhz <= 0.0 {
            return Err(PackingError::InvalidDemand {
                cc_id: demand.cc_id.clone(),
                reason: format!("bandwidth must be positive, got {}", demand.bandwidth_mhz),
            });
        }
        if !demand.profit.is_finite() || demand.profit < 0.0 {
            return Err(PackingError::InvalidDemand {
                cc_id: demand.cc_id.clone(),
                reason: format!("profit must be non-negative, got {}", demand.profit),
            });
        }
        if demand.cells_required == 0 {
            return Err(PackingError::InvalidDemand {
                cc_id: demand.cc_id.clone(),
                reason: "cells_required must be at least 1".into(),
            });
        }
        if !DuLoad::default().fits(demand, profile) {
            let reason = if demand.cells_required > profile.max_cells {
                format!(
                    "needs {} cells, DU hosts {}",
                    demand.cells_required, profile.max_cells
                )
            } else {
                match demand.fr {
                    FrequencyRange::Fr1 => format!(
                        "{} MHz reaches the exclusive FR1 ceiling {} MHz",
                        demand.bandwidth_mhz, profile.max_abw_fr1_mhz
                    ),
                    FrequencyRange::Fr2 => format!(
                        "{} MHz exceeds the FR2 ceiling {} MHz",
                        demand.bandwidth_mhz, profile.max_abw_fr2_mhz
                    ),
                }
            };
            return Err(PackingError::OversizedDemand {
                cc_id: demand.cc_id.clone(),
                reason,
            });
        }
    }
    Ok(())
}

/// Sorted view of the demands, the canonical enumeration order.
fn by_cc_id(demands: &[CellDemand]) -> Vec<CellDemand> {
    let mut sorted = demands.to_vec();
    sorted.sort_by(|a, b| a.cc_id.cmp(&b.cc_id));
    sorted
}

/// Strict "is `a` a better outcome than `b`" for one objective;
/// assignment vectors break exact ties so the optimum is unique.
fn candidate_better(
    objective: Objective,
    a: (f64, usize, &[Option<usize>]),
    b: (f64, usize, &[Option<usize>]),
) -> bool {
    let by_dus_then_lex = |a: (f64, usize, &[Option<usize>]), b: (f64, usize, &[Option<usize>])| {
        match a.1.cmp(&b.1) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => a.2 < b.2,
        }
    };
    match objective {
        Objective::MinDus => by_dus_then_lex(a, b),
        Objective::MaxProfit => {
            if a.0 != b.0 {
                a.0 > b.0
            } else {
                by_dus_then_lex(a, b)
            }
        }
    }
}

fn served_profit(demands: &[CellDemand], assignment: &[Option<usize>]) -> f64 {
    demands
        .iter()
        .zip(assignment)
        .filter(|(_, slot)| slot.is_some())
        .map(|(d, _)| d.profit)
        .sum()
}

/// Names the dimension whose lower bound best explains an infeasibility.
fn infeasibility_binding(demands: &[CellDemand], profile: &DuProfile, budget: usize) -> String {
    let total_cells: u32 = demands.iter().map(|d| d.cells_required).sum();
    let lb_cells = total_cells.div_ceil(profile.max_cells) as usize;

    let total_fr1: f64 = demands
        .iter()
        .filter(|d| d.fr == FrequencyRange::Fr1)
        .map(|d| d.bandwidth_mhz)
        .sum();
    // The FR1 ceiling is exclusive, so k DUs carry strictly less than
    // k * max; the bound needs total < k * max.
    let mut lb_fr1 = 0;
    while lb_fr1 as f64 * profile.max_abw_fr1_mhz <= total_fr1 {
        lb_fr1 += 1;
        if lb_fr1 > demands.len() + 1 {
            break;
        }
    }
    if total_fr1 == 0.0 {
        lb_fr1 = 0;
    }

    let total_fr2: f64 = demands
        .iter()
        .filter(|d| d.fr == FrequencyRange::Fr2)
        .map(|d| d.bandwidth_mhz)
        .sum();
    let lb_fr2 = (total_fr2 / profile.max_abw_fr2_mhz).ceil() as usize;

    let bounds = [
        ("max_cells", lb_cells),
        ("max_abw_fr1_mhz", lb_fr1),
        ("max_abw_fr2_mhz", lb_fr2),
    ];
    let (name, bound) = bounds.iter().max_by_key(|(_, b)| *b).unwrap();
    if *bound > budget {
        name.to_string()
    } else {
        "placement fragmentation".to_string()
    }
}

fn build_plan(
    demands_sorted: &[CellDemand],
    assignment: &[Option<usize>],
    objective: Objective,
    exact: bool,
) -> PackingPlan {
    // Relabel DUs in order of first use over the cc_id-sorted demands so
    // equivalent plans always render identically.
    let mut relabel: BTreeMap<usize, usize> = BTreeMap::new();
    let mut canonical: Vec<Option<usize>> = Vec::with_capacity(assignment.len());
    for slot in assignment {
        canonical.push(slot.map(|du| {
            let next = relabel.len();
            *relabel.entry(du).or_insert(next)
        }));
    }
    let dus_used = relabel.len();

    let mut assignments = BTreeMap::new();
    let mut disabled = Vec::new();
    let mut dus: Vec<DuSummary> = (0..dus_used)
        .map(|du_index| DuSummary {
            du_index,
            cc_ids: Vec::new(),
            cells_used: 0,
            abw_fr1_mhz: 0.0,
            abw_fr2_mhz: 0.0,
        })
        .collect();
    for (demand, slot) in demands_sorted.iter().zip(&canonical) {
        match slot {
            Some(du) => {
                assignments.insert(demand.cc_id.clone(), *du);
                let summary = &mut dus[*du];
                summary.cc_ids.push(demand.cc_id.clone());
                summary.cells_used += demand.cells_required;
                match demand.fr {
                    FrequencyRange::Fr1 => summary.abw_fr1_mhz += demand.bandwidth_mhz,
                    FrequencyRange::Fr2 => summary.abw_fr2_mhz += demand.bandwidth_mhz,
                }
            }
            None => disabled.push(demand.cc_id.clone()),
        }
    }

    let objective_value = match objective {
        Objective::MinDus => dus_used as f64,
        Objective::MaxProfit => served_profit(demands_sorted, &canonical),
    };
    PackingPlan {
        assignments,
        disabled,
        dus_used,
        objective,
        objective_value,
        dus,
        exact,
    }
}

/// Optimal (or, above [`EXACT_SEARCH_MAX_DEMANDS`] demands, heuristic)
/// assignment of demands to at most `du_budget` DUs.
pub fn pack(
    demands: &[CellDemand],
    profile: &DuProfile,
    du_budget: usize,
    objective: Objective,
) -> Result<PackingPlan, PackingError> {
    profile.validate()?;
    if du_budget == 0 {
        return Err(PackingError::ZeroBudget);
    }
    validate_demands(demands, profile)?;
    let sorted = by_cc_id(demands);
    if sorted.is_empty() {
        return Ok(build_plan(&sorted, &[], objective, true));
    }
    if sorted.len() <= EXACT_SEARCH_MAX_DEMANDS {
        exact_pack(&sorted, profile, du_budget, objective)
    } else {
        heuristic_pack(&sorted, profile, du_budget, objective)
    }
}

struct ExactSearch<'a> {
    demands: &'a [CellDemand],
    profile: &'a DuProfile,
    budget: usize,
    objective: Objective,
    suffix_profit: Vec<f64>,
    loads: Vec<DuLoad>,
    assignment: Vec<Option<usize>>,
    kept_profit: f64,
    best: Option<(f64, usize, Vec<Option<usize>>)>,
}

impl ExactSearch<'_> {
    fn run(&mut self) {
        self.descend(0);
    }

    fn descend(&mut self, i: usize) {
        if i == self.demands.len() {
            let candidate = (self.kept_profit, self.loads.len(), self.assignment.clone());
            let better = match &self.best {
                None => true,
                Some(best) => candidate_better(
                    self.objective,
                    (candidate.0, candidate.1, &candidate.2),
                    (best.0, best.1, &best.2),
                ),
            };
            if better {
                self.best = Some(candidate);
            }
            return;
        }
        if let Some(best) = &self.best {
            match self.objective {
                // More DUs already open than the incumbent uses: the
                // subtree cannot win or tie.
                Objective::MinDus => {
                    if self.loads.len() > best.1 {
                        return;
                    }
                }
                // Even keeping every remaining demand cannot reach the
                // incumbent's profit.
                Objective::MaxProfit => {
                    if self.kept_profit + self.suffix_profit[i] < best.0 {
                        return;
                    }
                }
            }
        }

        let demand = &self.demands[i];
        for du in 0..self.loads.len() {
            if self.loads[du].fits(demand, self.profile) {
                let saved = self.loads[du];
                self.loads[du].add(demand);
                self.assignment[i] = Some(du);
                self.kept_profit += demand.profit;
                self.descend(i + 1);
                self.kept_profit -= demand.profit;
                self.assignment[i] = None;
                self.loads[du] = saved;
            }
        }
        if self.loads.len() < self.budget {
            let mut load = DuLoad::default();
            load.add(demand);
            self.loads.push(load);
            self.assignment[i] = Some(self.loads.len() - 1);
            self.kept_profit += demand.profit;
            self.descend(i + 1);
            self.kept_profit -= demand.profit;
            self.assignment[i] = None;
            self.loads.pop();
        }
        if self.objective == Objective::MaxProfit {
            // Leaving the demand unserved is always an option.
            self.descend(i + 1);
        }
    }
}

fn exact_pack(
    sorted: &[CellDemand],
    profile: &DuProfile,
    du_budget: usize,
    objective: Objective,
) -> Result<PackingPlan, PackingError> {
    let n = sorted.len();
    let mut suffix_profit = vec![0.0; n + 1];
    for i in (0..n).rev() {
        suffix_profit[i] = suffix_profit[i + 1] + sorted[i].profit;
    }
    let mut search = ExactSearch {
        demands: sorted,
        profile,
        budget: du_budget.min(n),
        objective,
        suffix_profit,
        loads: Vec::new(),
        assignment: vec![None; n],
        kept_profit: 0.0,
        best: None,
    };
    search.run();
    match search.best {
        Some((_, _, assignment)) => Ok(build_plan(sorted, &assignment, objective, true)),
        None => Err(PackingError::Infeasible {
            du_budget,
            binding: infeasibility_binding(sorted, profile, du_budget),
        }),
    }
}

/// First-fit-decreasing plus local search; used above the exact-search
/// size limit. May report infeasibility for instances an exact solver
/// could still pack — the `exact` flag on returned plans is `false` so
/// callers can tell.
fn heuristic_pack(
    sorted: &[CellDemand],
    profile: &DuProfile,
    du_budget: usize,
    objective: Objective,
) -> Result<PackingPlan, PackingError> {
    match objective {
        Objective::MinDus => {
            let mut assignment = ffd_assignment(sorted, profile, usize::MAX);
            shrink_dus(sorted, profile, &mut assignment);
            let used = count_dus(&assignment);
            if used > du_budget {
                return Err(PackingError::Infeasible {
                    du_budget,
                    binding: infeasibility_binding(sorted, profile, du_budget),
                });
            }
            Ok(build_plan(sorted, &assignment, objective, false))
        }
        Objective::MaxProfit => {
            let mut best: Option<(f64, usize, Vec<Option<usize>>)> = None;
            for budget in 1..=du_budget.min(sorted.len()) {
                let mut assignment = profit_greedy_assignment(sorted, profile, budget);
                improve_profit(sorted, profile, &mut assignment);
                let profit = served_profit(sorted, &assignment);
                let candidate = (profit, count_dus(&assignment), assignment);
                let better = match &best {
                    None => true,
                    Some(b) => candidate_better(
                        objective,
                        (candidate.0, candidate.1, &candidate.2),
                        (b.0, b.1, &b.2),
                    ),
                };
                if better {
                    best = Some(candidate);
                }
            }
            let (_, _, assignment) = best.expect("du_budget >= 1 always yields a candidate");
            Ok(build_plan(sorted, &assignment, objective, false))
        }
    }
}

fn count_dus(assignment: &[Option<usize>]) -> usize {
    let mut seen = std::collections::BTreeSet::new();
    for slot in assignment.iter().flatten() {
        seen.insert(*slot);
    }
    seen.len()
}

fn load_of(du: usize, sorted: &[CellDemand], assignment: &[Option<usize>]) -> DuLoad {
    let mut load = DuLoad::default();
    for (demand, slot) in sorted.iter().zip(assignment) {
        if *slot == Some(du) {
            load.add(demand);
        }
    }
    load
}

/// First-fit decreasing by (bandwidth, cells) into at most `budget` DUs;
/// demands that fit nowhere stay unassigned.
fn ffd_assignment(sorted: &[CellDemand], profile: &DuProfile, budget: usize) -> Vec<Option<usize>> {
    let mut order: Vec<usize> = (0..sorted.len()).collect();
    order.sort_by(|&a, &b| {
        sorted[b]
            .bandwidth_mhz
            .total_cmp(&sorted[a].bandwidth_mhz)
            .then(sorted[b].cells_required.cmp(&sorted[a].cells_required))
            .then(sorted[a].cc_id.cmp(&sorted[b].cc_id))
    });
    let mut loads: Vec<DuLoad> = Vec::new();
    let mut assignment = vec![None; sorted.len()];
    for i in order {
        let demand = &sorted[i];
        let slot = loads.iter().position(|load| load.fits(demand, profile));
        match slot {
            Some(du) => {
                loads[du].add(demand);
                assignment[i] = Some(du);
            }
            None if loads.len() < budget => {
                let mut load = DuLoad::default();
                load.add(demand);
                loads.push(load);
                assignment[i] = Some(loads.len() - 1);
            }
            None => {}
        }
    }
    assignment
}

/// Tries to empty lightly-loaded DUs by relocating their demands.
fn shrink_dus(sorted: &[CellDemand], profile: &DuProfile, assignment: &mut Vec<Option<usize>>) {
    loop {
        let used: Vec<usize> = {
            let mut dus = std::collections::BTreeSet::new();
            for slot in assignment.iter().flatten() {
                dus.insert(*slot);
            }
            dus.into_iter().collect()
        };
        if used.len() <= 1 {
            return;
        }
        // Candidate to eliminate: the DU with the fewest demands
        // (ties: highest index, i.e. opened last).
        let victim = *used
            .iter()
            .min_by_key(|&&du| {
                let count = assignment.iter().filter(|s| **s == Some(du)).count();
                (count, usize::MAX - du)
            })
            .unwrap();

        let mut trial = assignment.clone();
        let mut loads: BTreeMap<usize, DuLoad> = used
            .iter()
            .filter(|&&du| du != victim)
            .map(|&du| (du, load_of(du, sorted, assignment)))
            .collect();
        let mut moved_all = true;
        for (i, demand) in sorted.iter().enumerate() {
            if trial[i] != Some(victim) {
                continue;
            }
            let target = loads
                .iter()
                .find(|(_, load)| load.fits(demand, profile))
                .map(|(&du, _)| du);
            match target {
                Some(du) => {
                    loads.get_mut(&du).unwrap().add(demand);
                    trial[i] = Some(du);
                }
                None => {
                    moved_all = false;
                    break;
                }
            }
        }
        if moved_all {
            *assignment = trial;
        } else {
            return;
        }
    }
}

/// Greedy profit packing: highest profit first, first fit, disable on
/// overflow.
fn profit_greedy_assignment(
    sorted: &[CellDemand],
    profile: &DuProfile,
    budget: usize,
) -> Vec<Option<usize>> {
    let mut order: Vec<usize> = (0..sorted.len()).collect();
    order.sort_by(|&a, &b| {
        sorted[b]
            .profit
            .total_cmp(&sorted[a].profit)
            .then(sorted[a].bandwidth_mhz.total_cmp(&sorted[b].bandwidth_mhz))
            .then(sorted[a].cc_id.cmp(&sorted[b].cc_id))
    });
    let mut loads: Vec<DuLoad> = Vec::new();
    let mut assignment = vec![None; sorted.len()];
    for i in order {
        let demand = &sorted[i];
        if demand.profit == 0.0 {
            continue;
        }
        if let Some(du) = loads.iter().position(|load| load.fits(demand, profile)) {
            loads[du].add(demand);
            assignment[i] = Some(du);
        } else if loads.len() < budget {
            let mut load = DuLoad::default();
            load.add(demand);
            loads.push(load);
            assignment[i] = Some(loads.len() - 1);
        }
    }
    assignment
}

/// Single-move / single-swap improvement: bring a disabled demand in,
/// either directly or by evicting one cheaper demand.
fn improve_profit(sorted: &[CellDemand], profile: &DuProfile, assignment: &mut [Option<usize>]) {
    let max_rounds = 4 * sorted.len() * sorted.len() + 4;
    for _ in 0..max_rounds {
        let used: Vec<usize> = {
            let mut dus = std::collections::BTreeSet::new();
            for slot in assignment.iter().flatten() {
                dus.insert(*slot);
            }
            dus.into_iter().collect()
        };
        let mut improved = false;
        'outer: for i in 0..sorted.len() {
            if assignment[i].is_some() || sorted[i].profit == 0.0 {
                continue;
            }
            let incoming = &sorted[i];
            // Direct move.
            for &du in &used {
                if load_of(du, sorted, assignment).fits(incoming, profile) {
                    assignment[i] = Some(du);
                    improved = true;
                    break 'outer;
                }
            }
            // Swap with one strictly cheaper resident.
            for j in 0..sorted.len() {
                let Some(du) = assignment[j] else { continue };
                if sorted[j].profit >= incoming.profit {
                    continue;
                }
                let mut load = DuLoad::default();
                for (k, slot) in assignment.iter().enumerate() {
                    if *slot == Some(du) && k != j {
                        load.add(&sorted[k]);
                    }
                }
                if load.fits(incoming, profile) {
                    assignment[j] = None;
                    assignment[i] = Some(du);
                    improved = true;
                    break 'outer;
                }
            }
        }
        if !improved {
            return;
        }
    }
}

/// Exhaustive reference solver for oracle tests.
///
/// Enumerates every assignment of demands to DUs (canonical first-use DU
/// numbering, plus the disable option under [`Objective::MaxProfit`])
/// with no bounding or ordering tricks, keeping the best complete
/// assignment under the same tie-break rule as [`pack`]. Capped at
/// [`BRUTE_FORCE_MAX_DEMANDS`] demands and [`BRUTE_FORCE_MAX_BUDGET`]
/// DUs because the state space is exponential.
pub fn brute_force_pack(
    demands: &[CellDemand],
    profile: &DuProfile,
    du_budget: usize,
    objective: Objective,
) -> Result<PackingPlan, PackingError> {
    profile.validate()?;
    if du_budget == 0 {
        return Err(PackingError::ZeroBudget);
    }
    if demands.len() > BRUTE_FORCE_MAX_DEMANDS || du_budget > BRUTE_FORCE_MAX_BUDGET {
        return Err(PackingError::InstanceTooLarge {
            demands: demands.len(),
            du_budget,
        });
    }
    validate_demands(demands, profile)?;
    let sorted = by_cc_id(demands);
    if sorted.is_empty() {
        return Ok(build_plan(&sorted, &[], objective, true));
    }

    // Plain recursion over explicit state keeps the oracle obviously
    // correct; bundling the arguments would only add indirection.
    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        i: usize,
        sorted: &[CellDemand],
        profile: &DuProfile,
        budget: usize,
        objective: Objective,
        loads: &mut Vec<DuLoad>,
        assignment: &mut Vec<Option<usize>>,
        best: &mut Option<(f64, usize, Vec<Option<usize>>)>,
    ) {
        if i == sorted.len() {
            let profit = served_profit(sorted, assignment);
            let candidate = (profit, loads.len(), assignment.clone());
            let better = match best {
                None => true,
                Some(b) => candidate_better(
                    objective,
                    (candidate.0, candidate.1, &candidate.2),
                    (b.0, b.1, &b.2),
                ),
            };
            if better {
                *best = Some(candidate);
            }
            return;
        }
        let demand = &sorted[i];
        for du in 0..loads.len() {
            if loads[du].fits(demand, profile) {
                let saved = loads[du];
                loads[du].add(demand);
                assignment[i] = Some(du);
                enumerate(
                    i + 1,
                    sorted,
                    profile,
                    budget,
                    objective,
                    loads,
                    assignment,
                    best,
                );
                assignment[i] = None;
                loads[du] = saved;
            }
        }
        if loads.len() < budget {
            let mut load = DuLoad::default();
            load.add(demand);
            loads.push(load);
            assignment[i] = Some(loads.len() - 1);
            enumerate(
                i + 1,
                sorted,
                profile,
                budget,
                objective,
                loads,
                assignment,
                best,
            );
            assignment[i] = None;
            loads.pop();
        }
        if objective == Objective::MaxProfit {
            enumerate(
                i + 1,
                sorted,
                profile,
                budget,
                objective,
                loads,
                assignment,
                best,
            );
        }
    }

    let mut best = None;
    let mut loads = Vec::new();
    let mut assignment = vec![None; sorted.len()];
    enumerate(
        0,
        &sorted,
        profile,
        du_budget.min(sorted.len()),
        objective,
        &mut loads,
        &mut assignment,
        &mut best,
    );
    match best {
        Some((_, _, assignment)) => Ok(build_plan(&sorted, &assignment, objective, true)),
        None => Err(PackingError::Infeasible {
            du_budget,
            binding: infeasibility_binding(&sorted, profile, du_budget),
        }),
    }
}

/// Re-checks a finished plan against the demands and profile: every
/// demand assigned or disabled exactly once, every DU within its
/// ceilings, counts and objective value consistent.
pub fn verify_plan(
    plan: &PackingPlan,
    demands: &[CellDemand],
    profile: &DuProfile,
) -> Result<(), PackingError> {
    let sorted = by_cc_id(demands);
    for demand in &sorted {
        let assigned = plan.assignments.contains_key(&demand.cc_id);
        let disabled = plan.disabled.contains(&demand.cc_id);
        if assigned == disabled {
            return Err(PackingError::InvalidDemand {
                cc_id: demand.cc_id.clone(),
                reason: "must be assigned or disabled exactly once".into(),
            });
        }
        if disabled && plan.objective == Objective::MinDus {
            return Err(PackingError::InvalidDemand {
                cc_id: demand.cc_id.clone(),
                reason: "min-DU plans may not disable demands".into(),
            });
        }
    }
    if plan.assignments.len() + plan.disabled.len() != sorted.len() {
        return Err(PackingError::InvalidProfile(
            "plan covers a different demand set".into(),
        ));
    }
    let mut loads: BTreeMap<usize, DuLoad> = BTreeMap::new();
    for demand in &sorted {
        if let Some(&du) = plan.assignments.get(&demand.cc_id) {
            loads.entry(du).or_default().add(demand);
        }
    }
    for (du, load) in &loads {
        let within = load.cells <= profile.max_cells
            && load.abw_fr1_mhz < profile.max_abw_fr1_mhz
            && load.abw_fr2_mhz <= profile.max_abw_fr2_mhz;
        if !within {
            return Err(PackingError::InvalidProfile(format!(
                "DU {du} exceeds its capacity envelope"
            )));
        }
    }
    if loads.len() != plan.dus_used {
        return Err(PackingError::InvalidProfile(format!(
            "plan says {} DUs but uses {}",
            plan.dus_used,
            loads.len()
        )));
    }
    let expected = match plan.objective {
        Objective::MinDus => plan.dus_used as f64,
        Objective::MaxProfit => sorted
            .iter()
            .filter(|d| plan.assignments.contains_key(&d.cc_id))
            .map(|d| d.profit)
            .sum(),
    };
    if expected != plan.objective_value {
        return Err(PackingError::InvalidProfile(format!(
            "objective value {} does not match recomputed {}",
            plan.objective_value, expected
        )));
    }
    Ok(())
}

/// Declared fan-out of the deployment around one CU.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SiteTopology {
    pub vdus_per_site: u32,
    pub sites_per_vcu: u32,
}

impl Default for SiteTopology {
    fn default() -> Self {
        SiteTopology {
            vdus_per_site: MAX_VDUS_PER_SITE,
            sites_per_vcu: MAX_SITES_PER_VCU,
        }
    }
}

/// One broken topology constraint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologyViolation {
    pub constraint: String,
    pub detail: String,
}

/// Checks the declared topology against platform limits and the plan's
/// DU usage against the per-site complement. Empty result means valid.
pub fn validate_topology(plan: &PackingPlan, topology: &SiteTopology) -> Vec<TopologyViolation> {
    let mut violations = Vec::new();
    if topology.vdus_per_site > MAX_VDUS_PER_SITE {
        violations.push(TopologyViolation {
            constraint: "vdus_per_site".into(),
            detail: format!(
                "declared {} vDUs per site, platform supports {}",
                topology.vdus_per_site, MAX_VDUS_PER_SITE
            ),
        });
    }
    if topology.sites_per_vcu > MAX_SITES_PER_VCU {
        violations.push(TopologyViolation {
            constraint: "sites_per_vcu".into(),
            detail: format!(
                "declared {} sites per vCU, platform supports {}",
                topology.sites_per_vcu, MAX_SITES_PER_VCU
            ),
        });
    }
    if plan.dus_used as u32 > topology.vdus_per_site.min(MAX_VDUS_PER_SITE) {
        violations.push(TopologyViolation {
            constraint: "vdus_per_site".into(),
            detail: format!(
                "plan uses {} DUs on one site, complement is {}",
                plan.dus_used,
                topology.vdus_per_site.min(MAX_VDUS_PER_SITE)
            ),
        });
    }
    violations
}
