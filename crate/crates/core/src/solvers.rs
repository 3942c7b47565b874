//! Exact optimal solvers: an exhaustive horizon-bounded oracle, enumeration
//! of non-jumping orders in the dominant-deterioration regime, and a
//! dispatcher that picks the provably optimal policy for the scenario's
//! regime.

use crate::analysis::{
    classify_regime, max_repair_bound_over, survival_count, RegimeReport,
};
use crate::model::{
    big_to_u64, initial_state, reward, simulate_sequence, step, step_mut, steps_to_full, Action,
    ControlSequence, Health, NodeId, NodeStatus, Scenario, SystemState, Weight,
};
use crate::policies::{simulate_policy, PolicyKind};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// How a solve was performed. The policy variants are only emitted when
/// their optimality conditions were verified on the scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    BruteForce,
    NonJumpEnum,
    Theorem3Policy,
    Theorem5Policy,
    Prop1Policy,
}

impl SolveMethod {
    pub fn name(self) -> &'static str {
        match self {
            SolveMethod::BruteForce => "brute-force",
            SolveMethod::NonJumpEnum => "nonjump-enum",
            SolveMethod::Theorem3Policy => "theorem3",
            SolveMethod::Theorem5Policy => "theorem5",
            SolveMethod::Prop1Policy => "prop1",
        }
    }
}

/// Best reward found, a witnessing sequence, and how it was obtained.
/// Re-simulating `sequence` reproduces `reward` and `repaired_set` exactly;
/// the constructors assert this.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub reward: Weight,
    pub sequence: ControlSequence,
    pub repaired_set: BTreeSet<NodeId>,
    pub method: SolveMethod,
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverError {
    NodeCapExceeded { n: usize, cap: usize },
    HorizonCapExceeded { horizon: u64, cap: u64 },
    TooManyNodes { n: usize },
    Precondition(String),
    GapBeyondCaps { regime: RegimeReport, n: usize, horizon: u64 },
    Internal(String),
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::NodeCapExceeded { n, cap } => {
                write!(f, "{n} nodes exceed the brute-force cap of {cap}")
            }
            SolverError::HorizonCapExceeded { horizon, cap } => {
                write!(f, "horizon {horizon} exceeds the brute-force cap of {cap}")
            }
            SolverError::TooManyNodes { n } => {
                write!(f, "{n} nodes exceed the enumeration limit of 64")
            }
            SolverError::Precondition(msg) => write!(f, "{msg}"),
            SolverError::GapBeyondCaps { regime, n, horizon } => write!(
                f,
                "no characterized policy applies (regime: {}) and the instance \
                 (N = {n}, horizon = {horizon}) exceeds the brute-force caps",
                regime.name()
            ),
            SolverError::Internal(msg) => write!(f, "internal solver defect: {msg}"),
        }
    }
}

impl std::error::Error for SolverError {}

/// Size limits for the exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceLimits {
    pub node_cap: usize,
    pub horizon_cap: u64,
}

impl Default for BruteForceLimits {
    fn default() -> Self {
        BruteForceLimits {
            node_cap: 4,
            horizon_cap: 60,
        }
    }
}

/// Default search horizon: enough steps for any non-jumping completion plus
/// the longest untreated survival.
pub fn default_brute_horizon(scenario: &Scenario) -> u64 {
    let repair_total: u64 = scenario
        .nodes()
        .iter()
        .filter(|n| !n.inc.is_zero())
        .map(|n| steps_to_full(&Rational::zero(), n.inc.as_ratio()))
        .sum();
    let longest_survival = scenario
        .nodes()
        .iter()
        .filter(|n| !n.dec.is_zero())
        .map(|n| big_to_u64(&(n.v0.as_ratio() / n.dec.as_ratio()).ceil().to_integer()))
        .max()
        .unwrap_or(0);
    repair_total.saturating_add(longest_survival)
}

#[derive(PartialEq, Eq, Hash)]
struct MemoKey {
    healths: Vec<Health>,
    statuses: Vec<NodeStatus>,
    budget: u64,
}

struct BruteSearch<'a> {
    scenario: &'a Scenario,
    memo: HashMap<MemoKey, Rational>,
    truncated: bool,
}

impl<'a> BruteSearch<'a> {
    /// Maximum additional reward collectible from `state` within `budget`
    /// steps. Actions range over active nodes only: a step spent on an
    /// absorbed node leaves every health weakly lower than skipping it, so
    /// some optimum never does it.
    fn value(&mut self, state: &SystemState, budget: u64) -> Rational {
        if state.all_absorbed() {
            return Rational::zero();
        }
        if budget == 0 {
            self.truncated = true;
            return Rational::zero();
        }
        let key = MemoKey {
            healths: state.healths().to_vec(),
            statuses: state.statuses().to_vec(),
            budget,
        };
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut best = Rational::zero();
        for id in state.active_ids().collect::<Vec<_>>() {
            let next = step(state, self.scenario, Action::new(id)).expect("active target");
            let mut total = self.value(&next, budget - 1);
            if next.status(id) == NodeStatus::Repaired {
                total += self.scenario.node(id).unwrap().w.as_ratio();
            }
            if total > best {
                best = total;
            }
        }
        self.memo.insert(key, best.clone());
        best
    }

    /// Replays the search greedily over memoized child values; ties fall to
    /// the lowest node id, matching the search's strict-improvement order.
    fn reconstruct(&self, horizon: u64) -> Vec<Action> {
        let mut actions = Vec::new();
        let mut state = initial_state(self.scenario);
        let mut budget = horizon;
        while !state.all_absorbed() && budget > 0 {
            let mut best: Option<(Rational, Action, SystemState)> = None;
            for id in state.active_ids().collect::<Vec<_>>() {
                let next = step(&state, self.scenario, Action::new(id)).expect("active target");
                let mut total = self.child_value(&next, budget - 1);
                if next.status(id) == NodeStatus::Repaired {
                    total += self.scenario.node(id).unwrap().w.as_ratio();
                }
                match &best {
                    None => best = Some((total, Action::new(id), next)),
                    Some((b, _, _)) if total > *b => best = Some((total, Action::new(id), next)),
                    _ => {}
                }
            }
            let (value, action, next) = best.expect("active node exists");
            if value.is_zero() {
                break;
            }
            actions.push(action);
            state = next;
            budget -= 1;
        }
        actions
    }

    fn child_value(&self, state: &SystemState, budget: u64) -> Rational {
        if state.all_absorbed() || budget == 0 {
            return Rational::zero();
        }
        let key = MemoKey {
            healths: state.healths().to_vec(),
            statuses: state.statuses().to_vec(),
            budget,
        };
        self.memo
            .get(&key)
            .expect("child explored during search")
            .clone()
    }
}

fn finish_result(
    scenario: &Scenario,
    actions: Vec<Action>,
    expected_reward: &Rational,
    method: SolveMethod,
    exhaustive: bool,
) -> Result<SolveResult, SolverError> {
    let sequence = ControlSequence { actions };
    let trace = simulate_sequence(scenario, &sequence, sequence.len() as u64)
        .map_err(|e| SolverError::Internal(e.to_string()))?;
    let report = reward(scenario, &trace);
    if report.reward.as_ratio() != expected_reward {
        return Err(SolverError::Internal(format!(
            "witness sequence yields {}, solver claimed {}",
            report.reward.as_ratio(),
            expected_reward
        )));
    }
    Ok(SolveResult {
        reward: report.reward,
        repaired_set: report.repaired_set,
        sequence,
        method,
        exhaustive,
    })
}

/// Exhaustive depth-first search over action trees, memoized on the exact
/// state plus remaining budget.
///
/// The memo key includes the budget: with commensurate rates the state
/// graph has zero-reward cycles, and a state's value under a path-dependent
/// visited set is not intrinsic, so budget-indexed values are used instead.
/// `exhaustive` is true iff no branch was cut off by the horizon; when
/// false, the result is still optimal among plays of at most `horizon`
/// steps.
pub fn brute_force_optimal(
    scenario: &Scenario,
    horizon: u64,
    limits: &BruteForceLimits,
) -> Result<SolveResult, SolverError> {
    if scenario.len() > limits.node_cap {
        return Err(SolverError::NodeCapExceeded {
            n: scenario.len(),
            cap: limits.node_cap,
        });
    }
    if horizon > limits.horizon_cap {
        return Err(SolverError::HorizonCapExceeded {
            horizon,
            cap: limits.horizon_cap,
        });
    }
    let mut search = BruteSearch {
        scenario,
        memo: HashMap::new(),
        truncated: false,
    };
    let best = search.value(&initial_state(scenario), horizon);
    let actions = search.reconstruct(horizon);
    finish_result(
        scenario,
        actions,
        &best,
        SolveMethod::BruteForce,
        !search.truncated,
    )
}

/// Enumerates non-jumping orders over `roster`, depth-first in ascending id
/// order, pruning extensions whose repaired set was already reached no
/// later. Evaluation is the exact entry-health recursion; only feasible
/// prefixes are extended, since any order is matched by the subsequence of
/// nodes it actually repairs.
fn enumerate_over(scenario: &Scenario, roster: &[NodeId]) -> Result<SolveResult, SolverError> {
    if scenario.len() > 64 {
        return Err(SolverError::TooManyNodes { n: scenario.len() });
    }
    let bound = max_repair_bound_over(scenario, roster)
        .map_err(|e| SolverError::Precondition(e.to_string()))?;
    struct Dfs<'a> {
        scenario: &'a Scenario,
        roster: &'a [NodeId],
        depth_cap: usize,
        best_reward: Rational,
        best_order: Vec<NodeId>,
        reached: HashMap<u64, u64>,
    }
    impl Dfs<'_> {
        fn run(&mut self, prefix: &mut Vec<NodeId>, mask: u64, elapsed: u64, total: &Rational) {
            if *total > self.best_reward {
                self.best_reward = total.clone();
                self.best_order = prefix.clone();
            }
            if prefix.len() >= self.depth_cap {
                return;
            }
            for &id in self.roster {
                let bit = 1u64 << (id - 1);
                if mask & bit != 0 {
                    continue;
                }
                let node = self.scenario.node(id).unwrap();
                let entry = node.v0.as_ratio()
                    - node.dec.as_ratio() * Rational::from_integer(BigInt::from(elapsed));
                if !entry.is_positive() {
                    continue;
                }
                let t = steps_to_full(&entry, node.inc.as_ratio());
                let reached_at = elapsed + t;
                let next_mask = mask | bit;
                if let Some(&seen) = self.reached.get(&next_mask) {
                    if seen <= reached_at {
                        continue;
                    }
                }
                self.reached.insert(next_mask, reached_at);
                prefix.push(id);
                let next_total = total + node.w.as_ratio();
                self.run(prefix, next_mask, reached_at, &next_total);
                prefix.pop();
            }
        }
    }
    let mut dfs = Dfs {
        scenario,
        roster,
        depth_cap: bound.l,
        best_reward: Rational::zero(),
        best_order: Vec::new(),
        reached: HashMap::new(),
    };
    dfs.run(&mut Vec::new(), 0, 0, &Rational::zero());

    // Expand the winning order into per-step actions.
    let mut state = initial_state(scenario);
    let mut actions = Vec::new();
    for &id in &dfs.best_order {
        while state.status(id).is_active() {
            step_mut(&mut state, scenario, Action::new(id))
                .map_err(|e| SolverError::Internal(e.to_string()))?;
            actions.push(Action::new(id));
        }
        if state.status(id) != NodeStatus::Repaired {
            return Err(SolverError::Internal(format!(
                "enumerated order loses node {id} when executed"
            )));
        }
    }
    finish_result(
        scenario,
        actions,
        &dfs.best_reward,
        SolveMethod::NonJumpEnum,
        true,
    )
}

/// Optimal solver for the dominant-deterioration regime: enumerates
/// non-jumping orders up to the repair-count bound. Requires
/// dec >= inc > 0 on every node.
pub fn enumerate_nonjumping_optimal(scenario: &Scenario) -> Result<SolveResult, SolverError> {
    for node in scenario.nodes() {
        if node.inc.is_zero() {
            return Err(SolverError::Precondition(format!(
                "node {}: repair rate must be positive for non-jumping enumeration",
                node.id
            )));
        }
        if node.dec.as_ratio() < node.inc.as_ratio() {
            return Err(SolverError::Precondition(format!(
                "node {}: non-jumping enumeration requires dec >= inc on every node",
                node.id
            )));
        }
    }
    let roster: Vec<NodeId> = scenario.ids().collect();
    enumerate_over(scenario, &roster)
}

/// Solver selection for count maximization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountMethod {
    BruteForce { horizon: u64, limits: BruteForceLimits },
    NonJumpEnum,
}

/// Maximizes the number of repaired nodes by solving a weight-erased copy
/// (every weight 1); the returned reward is therefore the count.
pub fn max_count_sequence(
    scenario: &Scenario,
    method: &CountMethod,
) -> Result<SolveResult, SolverError> {
    let erased = scenario.erase_weights();
    match method {
        CountMethod::BruteForce { horizon, limits } => {
            brute_force_optimal(&erased, *horizon, limits)
        }
        CountMethod::NonJumpEnum => enumerate_nonjumping_optimal(&erased),
    }
}

fn policy_solve(
    scenario: &Scenario,
    kind: PolicyKind,
    horizon: u64,
    method: SolveMethod,
) -> Result<SolveResult, SolverError> {
    let trace = simulate_policy(scenario, &kind, horizon)
        .map_err(|e| SolverError::Internal(e.to_string()))?;
    if trace.truncated {
        return Err(SolverError::Internal(format!(
            "{} policy run did not settle within {horizon} steps",
            method.name()
        )));
    }
    let report = reward(scenario, &trace);
    finish_result(
        scenario,
        trace.actions().actions,
        &report.reward.as_ratio().clone(),
        method,
        true,
    )
}

/// Steps sufficient for the healthiest-first policy to absorb everything:
/// it never abandons a target, so each repair costs at most ceil(1/inc).
fn theorem3_horizon(scenario: &Scenario) -> u64 {
    scenario
        .nodes()
        .iter()
        .map(|n| steps_to_full(&Rational::zero(), n.inc.as_ratio()))
        .sum::<u64>()
        .saturating_add(1)
}

/// Steps sufficient for the least-modified-health policy over `members`:
/// every non-repairing step raises the members' health total by at least
/// delta = min(inc - sum of others' dec), and repairs add less than 1 each
/// to the remaining deficit.
fn least_modified_horizon(scenario: &Scenario, members: &[NodeId]) -> Result<u64, SolverError> {
    let z = members.len();
    let mut delta: Option<Rational> = None;
    for &id in members {
        let node = scenario.node(id).unwrap();
        let others: Rational = members
            .iter()
            .filter(|&&k| k != id)
            .map(|&k| scenario.node(k).unwrap().dec.as_ratio().clone())
            .fold(Rational::zero(), |a, b| a + b);
        let margin = node.inc.as_ratio() - others;
        if !margin.is_positive() {
            return Err(SolverError::Internal(format!(
                "node {id} has no repair margin; policy horizon undefined"
            )));
        }
        delta = Some(match delta {
            None => margin,
            Some(d) => d.min(margin),
        });
    }
    let delta = delta.ok_or_else(|| SolverError::Internal("empty member set".into()))?;
    let slack = Rational::from_integer(BigInt::from(2 * z)) / delta;
    Ok(big_to_u64(&slack.ceil().to_integer()) + z as u64 + 1)
}

/// Picks the provably optimal method for the scenario's regime.
///
/// - healthiest-first when its homogeneity conditions hold;
/// - non-jumping enumeration in the remaining dominant-deterioration cases
///   (nodes with repair rate 0 are unrepairable and excluded from orders);
/// - the least-modified-health policies in their strong-repair regimes;
/// - otherwise brute force within the default caps, or an error.
pub fn solve_auto(scenario: &Scenario) -> Result<SolveResult, SolverError> {
    match classify_regime(scenario) {
        RegimeReport::Theorem3Applicable { .. } => policy_solve(
            scenario,
            PolicyKind::HealthiestFirst,
            theorem3_horizon(scenario),
            SolveMethod::Theorem3Policy,
        ),
        RegimeReport::DecGeInc => {
            let roster: Vec<NodeId> = scenario
                .nodes()
                .iter()
                .filter(|n| !n.inc.is_zero())
                .map(|n| n.id)
                .collect();
            enumerate_over(scenario, &roster)
        }
        RegimeReport::Theorem5Applicable { x, z } => {
            let horizon = least_modified_horizon(scenario, &z)?;
            let set: BTreeSet<NodeId> = z.iter().copied().collect();
            let result = policy_solve(
                scenario,
                PolicyKind::LeastModifiedHealthInSet(set.clone()),
                horizon,
                SolveMethod::Theorem5Policy,
            )?;
            if result.repaired_set != set {
                return Err(SolverError::Internal(format!(
                    "target-set policy repaired {:?}, expected {:?} (x = {x})",
                    result.repaired_set, set
                )));
            }
            Ok(result)
        }
        RegimeReport::Prop1Applicable => {
            let all: Vec<NodeId> = scenario.ids().collect();
            let horizon = least_modified_horizon(scenario, &all)?;
            let result = policy_solve(
                scenario,
                PolicyKind::LeastModifiedHealthGlobal,
                horizon,
                SolveMethod::Prop1Policy,
            )?;
            let expected = survival_count(scenario);
            if result.repaired_set.len() != expected {
                return Err(SolverError::Internal(format!(
                    "global policy repaired {} nodes, expected {expected}",
                    result.repaired_set.len()
                )));
            }
            Ok(result)
        }
        regime @ RegimeReport::Gap => {
            let limits = BruteForceLimits::default();
            let horizon = default_brute_horizon(scenario);
            if scenario.len() > limits.node_cap || horizon > limits.horizon_cap {
                return Err(SolverError::GapBeyondCaps {
                    regime,
                    n: scenario.len(),
                    horizon,
                });
            }
            brute_force_optimal(scenario, horizon, &limits)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::parse_rational;

    fn rat(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn default_brute(s: &Scenario) -> SolveResult {
        brute_force_optimal(s, default_brute_horizon(s), &BruteForceLimits::default()).unwrap()
    }

    #[test]
    fn brute_force_fixture_rewards() {
        let s = fixtures::two_node_decay_dominant();
        let r = default_brute(&s);
        assert_eq!(r.reward.as_ratio(), &rat("2"));
        assert_eq!(r.sequence.actions[0].target, 2);
        assert!(r.exhaustive);

        let s = fixtures::two_node_weighted();
        let r = default_brute(&s);
        assert_eq!(r.reward.as_ratio(), &rat("2"));

        let s = fixtures::scenario(&[("0.4", "3", "0.2", "0.5")]);
        let r = default_brute(&s);
        assert_eq!(r.reward.as_ratio(), &rat("3"));
        assert!(r.sequence.actions.iter().all(|a| a.target == 1));
    }

    #[test]
    fn brute_force_respects_caps() {
        let s = fixtures::fifteen_identical();
        assert!(matches!(
            brute_force_optimal(&s, 10, &BruteForceLimits::default()),
            Err(SolverError::NodeCapExceeded { .. })
        ));
        let s = fixtures::two_node_weighted();
        assert!(matches!(
            brute_force_optimal(&s, 1000, &BruteForceLimits::default()),
            Err(SolverError::HorizonCapExceeded { .. })
        ));
    }

    // The active-only pruning and the budget-keyed memo against a search
    // with no pruning, no memo, and absorbed targets allowed.
    #[test]
    fn brute_force_matches_unpruned_search() {
        fn unpruned(s: &Scenario, state: &SystemState, budget: u64) -> Rational {
            if budget == 0 {
                return Rational::zero();
            }
            let mut best = Rational::zero();
            for id in s.ids() {
                let next = step(state, s, Action::new(id)).unwrap();
                let mut total = unpruned(s, &next, budget - 1);
                if state.status(id).is_active() && next.status(id) == NodeStatus::Repaired {
                    total += s.node(id).unwrap().w.as_ratio();
                }
                if total > best {
                    best = total;
                }
            }
            best
        }
        let mut rng = crate::rng::SplitMix64::new(11);
        for _ in 0..25 {
            let q = 2 + rng.below(3); // denominators 2..=4
            let mk = |rng: &mut crate::rng::SplitMix64| {
                (
                    format!("{}/{}", 1 + rng.below(q - 1).min(q - 1), q),
                    format!("{}", 1 + rng.below(3)),
                    format!("{}/{}", 1 + rng.below(q), q),
                    format!("{}/{}", rng.below(q + 1), q),
                )
            };
            let a = mk(&mut rng);
            let b = mk(&mut rng);
            let rows = [
                (a.0.as_str(), a.1.as_str(), a.2.as_str(), a.3.as_str()),
                (b.0.as_str(), b.1.as_str(), b.2.as_str(), b.3.as_str()),
            ];
            let s = fixtures::scenario(&rows);
            let horizon = 7;
            let fast = brute_force_optimal(&s, horizon, &BruteForceLimits::default()).unwrap();
            let slow = unpruned(&s, &initial_state(&s), horizon);
            assert_eq!(fast.reward.as_ratio(), &slow, "scenario {rows:?}");
        }
    }

    #[test]
    fn enumeration_fixture_results() {
        let s = fixtures::two_node_decay_dominant();
        let r = enumerate_nonjumping_optimal(&s).unwrap();
        assert_eq!(r.reward.as_ratio(), &rat("2"));
        assert_eq!(r.repaired_set.len(), 2);
        assert_eq!(r.sequence.actions[0].target, 2);

        let r = enumerate_nonjumping_optimal(&fixtures::fifteen_identical()).unwrap();
        assert_eq!(r.reward.as_ratio(), &rat("7"));
        assert_eq!(r.repaired_set.len(), 7);

        assert!(matches!(
            enumerate_nonjumping_optimal(&fixtures::three_node_gap()),
            Err(SolverError::Precondition(_))
        ));
    }

    #[test]
    fn count_maximization() {
        let s = fixtures::two_node_weighted();
        let horizon = default_brute_horizon(&s);
        let r = max_count_sequence(
            &s,
            &CountMethod::BruteForce { horizon, limits: BruteForceLimits::default() },
        )
        .unwrap();
        assert_eq!(r.reward.as_ratio(), &rat("1"));
        assert_eq!(r.repaired_set.len(), 1);

        let r = max_count_sequence(&fixtures::fifteen_identical(), &CountMethod::NonJumpEnum)
            .unwrap();
        assert_eq!(r.repaired_set.len(), 7);
    }

    #[test]
    fn auto_dispatch_fixtures() {
        let r = solve_auto(&fixtures::three_node_weighted()).unwrap();
        assert_eq!(r.method, SolveMethod::Theorem5Policy);
        assert_eq!(r.reward.as_ratio(), &rat("4"));
        assert_eq!(r.repaired_set.iter().copied().collect::<Vec<_>>(), [1, 2]);

        let r = solve_auto(&fixtures::fifteen_staircase()).unwrap();
        assert_eq!(r.method, SolveMethod::Prop1Policy);
        assert_eq!(r.repaired_set.len(), 15);

        let r = solve_auto(&fixtures::fifteen_identical()).unwrap();
        assert_eq!(r.method, SolveMethod::Theorem3Policy);
        assert_eq!(r.repaired_set.len(), 7);

        let r = solve_auto(&fixtures::two_node_decay_dominant()).unwrap();
        assert_eq!(r.method, SolveMethod::NonJumpEnum);
        assert_eq!(r.reward.as_ratio(), &rat("2"));

        assert!(matches!(
            solve_auto(&fixtures::three_node_gap()),
            Err(SolverError::GapBeyondCaps { .. })
        ));
    }

    #[test]
    fn auto_excludes_unrepairable_nodes() {
        let s = fixtures::scenario(&[
            ("0.9", "1", "0", "0.1"),
            ("0.9", "1", "0.1", "0.1"),
        ]);
        let r = solve_auto(&s).unwrap();
        assert_eq!(r.method, SolveMethod::NonJumpEnum);
        assert_eq!(r.repaired_set.iter().copied().collect::<Vec<_>>(), [2]);
    }

    #[test]
    fn results_resimulate_exactly() {
        for s in [
            fixtures::two_node_decay_dominant(),
            fixtures::two_node_weighted(),
            fixtures::three_node_weighted(),
            fixtures::fifteen_staircase(),
        ] {
            let r = solve_auto(&s).unwrap();
            let trace = simulate_sequence(&s, &r.sequence, r.sequence.len() as u64).unwrap();
            let report = reward(&s, &trace);
            assert_eq!(report.reward, r.reward);
            assert_eq!(report.repaired_set, r.repaired_set);
        }
    }
}
