//! Power allocation across slice users by Lagrangian dual ascent.
//!
//! Given per-UE link gains and a total transmit-power budget, the planner
//! maximises a proportional-fairness objective — the sum of log rates —
//! subject to `sum(p) <= p_max`:
//!
//! ```text
//! maximise   sum_u ln R_u(p_u)
//! subject to sum_u p_u <= p_max,   p_u >= p_floor
//! ```
//!
//! The Lagrangian `L(p, λ) = sum_u ln R_u(p_u) - λ (sum_u p_u - p_max)`
//! separates per user, so for a fixed price λ each UE solves a 1-D
//! concave problem (`log_rate_slope(p) = λ`, found by bisection), and the
//! price follows the projected subgradient update
//!
//! ```text
//! λ ← max(0, λ + step · (sum_u p_u - p_max))
//! ```
//!
//! until the budget violation falls below tolerance. The default rate
//! model is Shannon capacity `R = W log2(1 + g p)`; anything with
//! diminishing returns (strictly decreasing [`RateModel::log_rate_slope`])
//! plugs in the same way.
//!
//! [`grid_oracle`] solves tiny instances by brute-force grid search and
//! exists purely to cross-check the solver; it shares none of its
//! machinery.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Power floor as a fraction of the budget: UEs are never switched
/// entirely off, which keeps every log term finite.
pub const POWER_FLOOR_FRACTION: f64 = 1e-9;
/// Per-UE search ceiling as a multiple of the budget, bounding the inner
/// maximisation when the price is very low.
pub const SEARCH_CAP_FACTOR: f64 = 4.0;
/// Grid search is only viable for a handful of users.
pub const GRID_ORACLE_MAX_UES: usize = 3;

#[derive(Debug, Error)]
pub enum SliceError {
    #[error("invalid slice problem: {0}")]
    Config(String),
    #[error(
        "dual ascent did not converge in {iterations} iterations \
         (budget violation {residual:.3e}); last iterate attached"
    )]
    NoConvergence {
        iterations: usize,
        residual: f64,
        last: Box<SliceAllocation>,
    },
    #[error("grid oracle supports at most {max} UEs, got {got}")]
    InstanceTooLarge { got: usize, max: usize },
}

/// Achievable-rate model with diminishing returns.
///
/// Implementations must make `log_rate_slope` — the derivative of
/// `ln(rate)` in `p` — strictly decreasing and positive on `p > 0`;
/// that is what makes the per-UE subproblem concave and the bisection
/// well-defined.
pub trait RateModel {
    fn rate(&self, gain: f64, weight: f64, p: f64) -> f64;
    fn log_rate_slope(&self, gain: f64, weight: f64, p: f64) -> f64;
}

/// Shannon capacity `R = W log2(1 + g p)`; `weight` is the bandwidth W.
///
/// The slope `g / ((1 + g p) ln(1 + g p))` does not depend on W, which is
/// why allocations are invariant under rescaling all weights.
#[derive(Debug, Clone, Copy, Default)]
pub struct ShannonRate;

impl RateModel for ShannonRate {
    fn rate(&self, gain: f64, weight: f64, p: f64) -> f64 {
        weight * (gain * p).ln_1p() / std::f64::consts::LN_2
    }

    fn log_rate_slope(&self, gain: f64, _weight: f64, p: f64) -> f64 {
        gain / ((1.0 + gain * p) * (gain * p).ln_1p())
    }
}

/// One slice user.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UeEntry {
    pub label: String,
    /// Effective link gain (SNR per unit power).
    pub gain: f64,
    /// Rate weight (bandwidth share); cancels out of the allocation.
    #[serde(default = "default_weight")]
    pub weight: f64,
    /// Free-form service intent, echoed into policy records.
    #[serde(default)]
    pub intent: Option<String>,
}

fn default_weight() -> f64 {
    1.0
}

/// A slice admission problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceProblem {
    pub users: Vec<UeEntry>,
    pub p_max: f64,
}

impl SliceProblem {
    pub fn validate(&self) -> Result<(), SliceError> {
        if self.users.is_empty() {
            return Err(SliceError::Config("no users".into()));
        }
        if !self.p_max.is_finite() || self.p_max <= 0.0 {
            return Err(SliceError::Config(format!(
                "p_max must be finite and positive, got {}",
                self.p_max
            )));
        }
        let mut labels = std::collections::BTreeSet::new();
        for ue in &self.users {
            if !labels.insert(ue.label.as_str()) {
                return Err(SliceError::Config(format!(
                    "duplicate UE label {:?}",
                    ue.label
                )));
            }
            if !ue.gain.is_finite() || ue.gain <= 0.0 {
                return Err(SliceError::Config(format!(
                    "UE {}: gain must be finite and positive, got {}",
                    ue.label, ue.gain
                )));
            }
            if !ue.weight.is_finite() || ue.weight <= 0.0 {
                return Err(SliceError::Config(format!(
                    "UE {}: weight must be finite and positive, got {}",
                    ue.label, ue.weight
                )));
            }
        }
        Ok(())
    }

    pub fn p_floor(&self) -> f64 {
        POWER_FLOOR_FRACTION * self.p_max
    }
}

/// Solver knobs. `step: None` derives the initial step from the problem
/// scale (`λ_0 / p_max`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualAscentOptions {
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

impl Default for DualAscentOptions {
    fn default() -> Self {
        DualAscentOptions {
            step: None,
            tol: default_tol(),
            max_iter: default_max_iter(),
        }
    }
}

/// A converged (or, inside [`SliceError::NoConvergence`], last-iterate)
/// allocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceAllocation {
    /// Per-UE power, in the order of `problem.users`.
    pub p: Vec<f64>,
    /// Final shadow price of the power budget.
    pub lambda: f64,
    /// Sum of log rates at `p`.
    pub objective: f64,
    pub iterations: usize,
    /// Stationarity defect `max_u |slope_u(p_u) - λ|`, relative to λ;
    /// floor-clamped users only count slope in excess of λ.
    pub kkt_residual: f64,
    /// Budget violation `|sum(p) - p_max|` per iteration, for debugging;
    /// not serialized.
    #[serde(skip)]
    pub residual_trace: Vec<f64>,
}

/// Per-UE maximiser of `ln R(p) - λ p` on `[floor, cap]`, by bisection on
/// the slope. Returns the power and whether the search cap clipped it.
fn maximize_ue(
    model: &impl RateModel,
    gain: f64,
    weight: f64,
    lambda: f64,
    floor: f64,
    cap: f64,
) -> (f64, bool) {
    if model.log_rate_slope(gain, weight, floor) <= lambda {
        return (floor, false);
    }
    if model.log_rate_slope(gain, weight, cap) >= lambda {
        return (cap, true);
    }
    // slope(floor) > λ > slope(cap) and the slope is strictly
    // decreasing: bisect.
    let mut lo = floor;
    let mut hi = cap;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if model.log_rate_slope(gain, weight, mid) > lambda {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi), false)
}

fn evaluate(
    problem: &SliceProblem,
    model: &impl RateModel,
    p: &[f64],
    lambda: f64,
    iterations: usize,
    residual_trace: Vec<f64>,
) -> SliceAllocation {
    let objective = problem
        .users
        .iter()
        .zip(p)
        .map(|(ue, &p_u)| model.rate(ue.gain, ue.weight, p_u).ln())
        .sum();
    let floor = problem.p_floor();
    let kkt_abs = problem
        .users
        .iter()
        .zip(p)
        .map(|(ue, &p_u)| {
            let slope = model.log_rate_slope(ue.gain, ue.weight, p_u);
            if p_u <= floor {
                // At the floor the KKT condition is slope <= λ.
                (slope - lambda).max(0.0)
            } else {
                (slope - lambda).abs()
            }
        })
        .fold(0.0_f64, f64::max);
    let kkt_residual = if lambda > 0.0 {
        kkt_abs / lambda
    } else {
        kkt_abs
    };
    SliceAllocation {
        p: p.to_vec(),
        lambda,
        objective,
        iterations,
        kkt_residual,
        residual_trace,
    }
}

/// Projected-subgradient dual ascent for the slice power problem.
///
/// The price update is `λ ← max(0, λ + step (sum p - p_max))`. The step
/// starts at `λ_0 / p_max` (or the caller's value) and halves whenever
/// the budget violation changes sign — overshoot shows up as price
/// oscillation, and halving on each flip lands the step inside the
/// stable region within a few iterations, after which convergence is
/// geometric.
pub fn dual_ascent(
    problem: &SliceProblem,
    model: &impl RateModel,
    options: &DualAscentOptions,
) -> Result<SliceAllocation, SliceError> {
    problem.validate()?;
    if options.tol <= 0.0 || !options.tol.is_finite() {
        return Err(SliceError::Config(format!(
            "tol must be finite and positive, got {}",
            options.tol
        )));
    }
    if options.max_iter == 0 {
        return Err(SliceError::Config("max_iter must be at least 1".into()));
    }
    if let Some(step) = options.step {
        if step <= 0.0 || !step.is_finite() {
            return Err(SliceError::Config(format!(
                "step must be finite and positive, got {step}"
            )));
        }
    }

    let n = problem.users.len();
    let floor = problem.p_floor();
    let cap = SEARCH_CAP_FACTOR * problem.p_max;
    let equal_share = problem.p_max / n as f64;
    let lambda0 = problem
        .users
        .iter()
        .map(|ue| model.log_rate_slope(ue.gain, ue.weight, equal_share))
        .sum::<f64>()
        / n as f64;
    if !lambda0.is_finite() || lambda0 <= 0.0 {
        return Err(SliceError::Config(format!(
            "rate model produced a degenerate initial price {lambda0}"
        )));
    }

    let mut lambda = lambda0;
    let mut step = options.step.unwrap_or(lambda0 / problem.p_max);
    let mut p = vec![0.0; n];
    let mut residual_trace = Vec::new();
    let mut prev_violation: Option<f64> = None;

    for iteration in 1..=options.max_iter {
        let mut any_capped = false;
        for (slot, ue) in p.iter_mut().zip(&problem.users) {
            let (p_u, capped) = maximize_ue(model, ue.gain, ue.weight, lambda, floor, cap);
            *slot = p_u;
            any_capped |= capped;
        }
        let violation = p.iter().sum::<f64>() - problem.p_max;
        residual_trace.push(violation.abs());

        if violation.abs() <= options.tol * problem.p_max {
            return Ok(evaluate(
                problem,
                model,
                &p,
                lambda,
                iteration,
                residual_trace,
            ));
        }
        // Complementary slackness: a free price with a slack budget is
        // already optimal (possible only for saturating rate models).
        if lambda == 0.0 && violation <= 0.0 && !any_capped {
            return Ok(evaluate(
                problem,
                model,
                &p,
                lambda,
                iteration,
                residual_trace,
            ));
        }

        if let Some(prev) = prev_violation {
            if prev * violation < 0.0 {
                step *= 0.5;
            }
        }
        prev_violation = Some(violation);
        lambda = (lambda + step * violation).max(0.0);
    }

    let residual = residual_trace.last().copied().unwrap_or(f64::INFINITY);
    let last = evaluate(problem, model, &p, lambda, options.max_iter, residual_trace);
    Err(SliceError::NoConvergence {
        iterations: options.max_iter,
        residual,
        last: Box::new(last),
    })
}

/// [`dual_ascent`] with default options.
pub fn solve(
    problem: &SliceProblem,
    model: &impl RateModel,
) -> Result<SliceAllocation, SliceError> {
    dual_ascent(problem, model, &DualAscentOptions::default())
}

/// Brute-force reference: evaluates the objective on a uniform grid over
/// the budget simplex (the last user takes the exact remainder) and
/// returns the best point. Only for cross-checking [`dual_ascent`] on
/// instances of at most [`GRID_ORACLE_MAX_UES`] users.
pub fn grid_oracle(
    problem: &SliceProblem,
    model: &impl RateModel,
    resolution: f64,
) -> Result<SliceAllocation, SliceError> {
    problem.validate()?;
    if resolution <= 0.0 || !resolution.is_finite() {
        return Err(SliceError::Config(format!(
            "resolution must be finite and positive, got {resolution}"
        )));
    }
    let n = problem.users.len();
    if n > GRID_ORACLE_MAX_UES {
        return Err(SliceError::InstanceTooLarge {
            got: n,
            max: GRID_ORACLE_MAX_UES,
        });
    }
    let steps = (problem.p_max / resolution).floor() as u64;
    if steps.saturating_pow((n - 1) as u32) > 200_000_000 {
        return Err(SliceError::Config(format!(
            "resolution {resolution} needs more than 2e8 grid evaluations"
        )));
    }
    let floor = problem.p_floor();

    let objective_at = |p: &[f64]| -> f64 {
        problem
            .users
            .iter()
            .zip(p)
            .map(|(ue, &p_u)| model.rate(ue.gain, ue.weight, p_u).ln())
            .sum()
    };

    let mut best_p: Option<Vec<f64>> = None;
    let mut best_obj = f64::NEG_INFINITY;
    let mut evaluations = 0_usize;
    let mut consider = |p: Vec<f64>, obj: f64| {
        if obj > best_obj {
            best_obj = obj;
            best_p = Some(p);
        }
    };

    match n {
        1 => {
            // Rates increase in p, so the whole budget goes to the user.
            let p = vec![problem.p_max];
            let obj = objective_at(&p);
            evaluations = 1;
            consider(p, obj);
        }
        2 => {
            for i in 0..=steps {
                let p0 = (i as f64 * resolution).max(floor);
                let p1 = (problem.p_max - p0).max(floor);
                if p0 + p1 > problem.p_max + 2.0 * floor {
                    continue;
                }
                let p = vec![p0, p1];
                let obj = objective_at(&p);
                evaluations += 1;
                consider(p, obj);
            }
        }
        3 => {
            for i in 0..=steps {
                let p0 = (i as f64 * resolution).max(floor);
                for j in 0..=(steps - i) {
                    let p1 = (j as f64 * resolution).max(floor);
                    let p2 = (problem.p_max - p0 - p1).max(floor);
                    if p0 + p1 + p2 > problem.p_max + 3.0 * floor {
                        continue;
                    }
                    let p = vec![p0, p1, p2];
                    let obj = objective_at(&p);
                    evaluations += 1;
                    consider(p, obj);
                }
            }
        }
        _ => unreachable!("guarded above"),
    }

    let p = best_p.expect("grid always contains at least one point");
    let mean_slope = problem
        .users
        .iter()
        .zip(&p)
        .map(|(ue, &p_u)| model.log_rate_slope(ue.gain, ue.weight, p_u))
        .sum::<f64>()
        / n as f64;
    let mut allocation = evaluate(problem, model, &p, mean_slope, evaluations, Vec::new());
    allocation.objective = best_obj;
    Ok(allocation)
}

/// Per-UE enforcement record derived from an allocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerCapRecord {
    pub ue: String,
    pub power_cap: f64,
    pub intent: Option<String>,
    /// False when the UE sits at the power floor (effectively unserved).
    pub served: bool,
}

/// Renders an allocation as per-UE power-cap policy records.
pub fn emit_power_caps(
    problem: &SliceProblem,
    allocation: &SliceAllocation,
) -> Vec<PowerCapRecord> {
    let floor = problem.p_floor();
    problem
        .users
        .iter()
        .zip(&allocation.p)
        .map(|(ue, &p_u)| PowerCapRecord {
            ue: ue.label.clone(),
            power_cap: p_u,
            intent: ue.intent.clone(),
            served: p_u > floor,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ue(label: &str, gain: f64) -> UeEntry {
        UeEntry {
            label: label.into(),
            gain,
            weight: 1.0,
            intent: None,
        }
    }

    fn problem(gains: &[f64], p_max: f64) -> SliceProblem {
        SliceProblem {
            users: gains
                .iter()
                .enumerate()
                .map(|(i, &g)| ue(&format!("ue{i}"), g))
                .collect(),
            p_max,
        }
    }

    #[test]
    fn single_user_takes_the_whole_budget() {
        let prob = problem(&[2.0], 10.0);
        let alloc = solve(&prob, &ShannonRate).unwrap();
        assert!((alloc.p[0] - 10.0).abs() <= 1e-5 * 10.0);
        assert!(alloc.kkt_residual <= 1e-4);
    }

    #[test]
    fn symmetric_users_split_evenly() {
        let prob = problem(&[1.5, 1.5, 1.5, 1.5], 8.0);
        let alloc = solve(&prob, &ShannonRate).unwrap();
        for &p in &alloc.p {
            assert!(
                (p - 2.0).abs() <= 1e-6 * 2.0,
                "expected even split, got {:?}",
                alloc.p
            );
        }
        let total: f64 = alloc.p.iter().sum();
        assert!((total - 8.0).abs() <= 1e-6 * 8.0);
    }

    #[test]
    fn stronger_user_gets_less_power_under_log_utility() {
        // Proportional fairness: the log utility compresses the strong
        // user's marginal value, so the weak user draws more power.
        let prob = problem(&[8.0, 0.5], 10.0);
        let alloc = solve(&prob, &ShannonRate).unwrap();
        assert!(alloc.p[0] < alloc.p[1], "allocation {:?}", alloc.p);
    }

    #[test]
    fn converged_solution_satisfies_kkt() {
        let prob = problem(&[0.3, 1.0, 4.0, 9.0], 25.0);
        let alloc = solve(&prob, &ShannonRate).unwrap();
        assert!(alloc.kkt_residual <= 1e-4, "kkt {}", alloc.kkt_residual);
        let total: f64 = alloc.p.iter().sum();
        assert!((total - 25.0).abs() <= 1e-6 * 25.0);
        assert!(alloc.lambda > 0.0);
        // Residual trace ends at least as small as it started.
        assert!(alloc.residual_trace.last().unwrap() <= alloc.residual_trace.first().unwrap());
    }

    #[test]
    fn allocation_is_invariant_under_weight_rescaling() {
        let base = problem(&[0.8, 2.0, 5.0], 12.0);
        let mut scaled = base.clone();
        for ue in &mut scaled.users {
            ue.weight *= 37.5;
        }
        let a = solve(&base, &ShannonRate).unwrap();
        let b = solve(&scaled, &ShannonRate).unwrap();
        assert_eq!(a.p, b.p, "weights must cancel out of the allocation");
        assert_eq!(a.lambda, b.lambda);
        // Objectives differ by exactly n * ln(c).
        let shift = 3.0 * 37.5_f64.ln();
        assert!((b.objective - a.objective - shift).abs() < 1e-9);
    }

    #[test]
    fn matches_grid_oracle_on_two_users() {
        let prob = problem(&[0.5, 3.0], 10.0);
        let alloc = solve(&prob, &ShannonRate).unwrap();
        let oracle = grid_oracle(&prob, &ShannonRate, 10.0 / 2000.0).unwrap();
        assert!(
            (alloc.objective - oracle.objective).abs() <= 1e-3,
            "dual {} vs grid {}",
            alloc.objective,
            oracle.objective
        );
        for (a, b) in alloc.p.iter().zip(&oracle.p) {
            assert!((a - b).abs() <= 2.0 * 10.0 / 2000.0);
        }
    }

    #[test]
    fn matches_grid_oracle_on_three_users() {
        let prob = problem(&[0.4, 1.0, 6.0], 9.0);
        let alloc = solve(&prob, &ShannonRate).unwrap();
        let oracle = grid_oracle(&prob, &ShannonRate, 9.0 / 400.0).unwrap();
        assert!(
            (alloc.objective - oracle.objective).abs() <= 1e-3,
            "dual {} vs grid {}",
            alloc.objective,
            oracle.objective
        );
    }

    #[test]
    fn grid_oracle_guards_its_domain() {
        let prob = problem(&[1.0, 1.0, 1.0, 1.0], 4.0);
        assert!(matches!(
            grid_oracle(&prob, &ShannonRate, 0.1),
            Err(SliceError::InstanceTooLarge { got: 4, .. })
        ));
        let prob = problem(&[1.0, 1.0], 4.0);
        assert!(matches!(
            grid_oracle(&prob, &ShannonRate, 0.0),
            Err(SliceError::Config(_))
        ));
        assert!(matches!(
            grid_oracle(&prob, &ShannonRate, 1e-12),
            Err(SliceError::Config(_))
        ));
    }

    #[test]
    fn rejects_degenerate_problems() {
        let empty = SliceProblem {
            users: vec![],
            p_max: 1.0,
        };
        assert!(matches!(
            solve(&empty, &ShannonRate),
            Err(SliceError::Config(_))
        ));
        assert!(matches!(
            solve(&problem(&[0.0], 1.0), &ShannonRate),
            Err(SliceError::Config(_))
        ));
        assert!(matches!(
            solve(&problem(&[-2.0], 1.0), &ShannonRate),
            Err(SliceError::Config(_))
        ));
        assert!(matches!(
            solve(&problem(&[1.0], 0.0), &ShannonRate),
            Err(SliceError::Config(_))
        ));
        let mut duplicated = problem(&[1.0, 2.0], 1.0);
        duplicated.users[1].label = duplicated.users[0].label.clone();
        assert!(matches!(
            solve(&duplicated, &ShannonRate),
            Err(SliceError::Config(_))
        ));
    }

    #[test]
    fn non_convergence_carries_the_last_iterate() {
        let prob = problem(&[1.0, 5.0], 10.0);
        let options = DualAscentOptions {
            max_iter: 2,
            tol: 1e-12,
            step: Some(1e-9), // far too small to get anywhere in 2 steps
        };
        match dual_ascent(&prob, &ShannonRate, &options) {
            Err(SliceError::NoConvergence {
                iterations, last, ..
            }) => {
                assert_eq!(iterations, 2);
                assert_eq!(last.p.len(), 2);
                assert_eq!(last.residual_trace.len(), 2);
            }
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn power_cap_records_echo_labels_and_intents() {
        let prob = SliceProblem {
            users: vec![
                UeEntry {
                    label: "embb-1".into(),
                    gain: 2.0,
                    weight: 1.0,
                    intent: Some("embb".into()),
                },
                UeEntry {
                    label: "iot-7".into(),
                    gain: 0.4,
                    weight: 1.0,
                    intent: None,
                },
            ],
            p_max: 6.0,
        };
        let alloc = solve(&prob, &ShannonRate).unwrap();
        let records = emit_power_caps(&prob, &alloc);
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].ue, "embb-1");
        assert_eq!(records[0].intent.as_deref(), Some("embb"));
        assert_eq!(records[0].power_cap, alloc.p[0]);
        assert!(records.iter().all(|r| r.served));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// The solver converges on a wide spread of instances and
        /// produces a feasible, KKT-consistent allocation.
        #[test]
        fn converges_across_scales(
            gains in proptest::collection::vec(0.05_f64..20.0, 1..=8),
            p_max in 0.5_f64..200.0,
        ) {
            let prob = problem(&gains, p_max);
            let alloc = solve(&prob, &ShannonRate).unwrap();
            let total: f64 = alloc.p.iter().sum();
            prop_assert!((total - p_max).abs() <= 1e-6 * p_max);
            prop_assert!(alloc.kkt_residual <= 1e-4);
            prop_assert!(alloc.p.iter().all(|&p| p >= prob.p_floor() && p <= p_max * (1.0 + 1e-9)));
        }

        /// No feasible point beats the converged objective (weak duality
        /// made concrete by sampling).
        #[test]
        fn no_sampled_point_beats_the_optimum(
            gains in proptest::collection::vec(0.1_f64..10.0, 2..=4),
            raw in proptest::collection::vec(0.01_f64..1.0, 2..=4),
            p_max in 1.0_f64..50.0,
        ) {
            let n = gains.len().min(raw.len());
            let gains = &gains[..n];
            let raw = &raw[..n];
            let prob = problem(gains, p_max);
            let alloc = solve(&prob, &ShannonRate).unwrap();

            let scale: f64 = raw.iter().sum();
            let q: Vec<f64> = raw.iter().map(|r| r / scale * p_max).collect();
            let obj_q: f64 = prob
                .users
                .iter()
                .zip(&q)
                .map(|(ue, &p)| ShannonRate.rate(ue.gain, ue.weight, p).ln())
                .sum();
            prop_assert!(
                obj_q <= alloc.objective + 1e-5 * alloc.objective.abs().max(1.0),
                "sampled {} beats solver {}",
                obj_q,
                alloc.objective
            );
        }
    }
}
