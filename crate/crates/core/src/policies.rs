//! Feedback policies, sequence executors, and seeded random baselines.

use crate::model::{
    default_horizon, initial_state, modified_health, step_mut, Action, ModelError, NodeId,
    NodeStatus, Scenario, SystemState, Trace, TraceBuilder,
};
use crate::rng::SplitMix64;
use std::collections::BTreeSet;
use std::fmt;

/// Selector for a feedback policy or baseline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolicyKind {
    /// Target the active node with the largest health; ties to lowest id.
    HealthiestFirst,
    /// Target the active node minimizing health minus deterioration rate.
    LeastModifiedHealthGlobal,
    /// Same, restricted to a fixed target set.
    LeastModifiedHealthInSet(BTreeSet<NodeId>),
    /// Work through a fixed order, finishing each node before the next;
    /// nodes that failed before being reached are skipped.
    NonJumpingOrder(Vec<NodeId>),
    /// Uniformly random active node each step.
    RandomAny { seed: u64 },
    /// Uniformly random active node, kept until permanently repaired.
    RandomNonJumping { seed: u64 },
}

/// A policy either picks an action or abstains because no selectable node
/// remains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyDecision {
    Act(Action),
    Abstain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolicyError {
    EmptyTargetSet,
    UnknownNode(NodeId),
    DuplicateNode(NodeId),
    Model(ModelError),
}

impl fmt::Display for PolicyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolicyError::EmptyTargetSet => write!(f, "policy target set is empty"),
            PolicyError::UnknownNode(id) => write!(f, "policy references unknown node {id}"),
            PolicyError::DuplicateNode(id) => write!(f, "node {id} listed twice"),
            PolicyError::Model(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for PolicyError {}

impl From<ModelError> for PolicyError {
    fn from(e: ModelError) -> Self {
        PolicyError::Model(e)
    }
}

fn argmax_health(state: &SystemState, ids: impl Iterator<Item = NodeId>) -> Option<NodeId> {
    let mut best: Option<NodeId> = None;
    for id in ids {
        match best {
            None => best = Some(id),
            Some(b) if state.health(id) > state.health(b) => best = Some(id),
            _ => {}
        }
    }
    best
}

/// Largest-health active node, ties to lowest id.
pub fn healthiest_first(state: &SystemState, _scenario: &Scenario) -> PolicyDecision {
    match argmax_health(state, state.active_ids()) {
        Some(id) => PolicyDecision::Act(Action::new(id)),
        None => PolicyDecision::Abstain,
    }
}

fn argmin_modified(
    state: &SystemState,
    scenario: &Scenario,
    ids: impl Iterator<Item = NodeId>,
) -> Option<NodeId> {
    let mut best: Option<(NodeId, crate::rational::Rational)> = None;
    for id in ids {
        let m = modified_health(state, scenario, id);
        match &best {
            None => best = Some((id, m)),
            Some((_, bm)) if m < *bm => best = Some((id, m)),
            _ => {}
        }
    }
    best.map(|(id, _)| id)
}

/// Least modified health among all active nodes, ties to lowest id.
pub fn least_modified_health_global(state: &SystemState, scenario: &Scenario) -> PolicyDecision {
    match argmin_modified(state, scenario, state.active_ids()) {
        Some(id) => PolicyDecision::Act(Action::new(id)),
        None => PolicyDecision::Abstain,
    }
}

/// Least modified health among the active members of `set`.
pub fn least_modified_health_in_set(
    state: &SystemState,
    scenario: &Scenario,
    set: &BTreeSet<NodeId>,
) -> Result<PolicyDecision, PolicyError> {
    if set.is_empty() {
        return Err(PolicyError::EmptyTargetSet);
    }
    for &id in set {
        if scenario.node(id).is_none() {
            return Err(PolicyError::UnknownNode(id));
        }
    }
    let ids = set.iter().copied().filter(|&id| state.status(id).is_active());
    Ok(match argmin_modified(state, scenario, ids) {
        Some(id) => PolicyDecision::Act(Action::new(id)),
        None => PolicyDecision::Abstain,
    })
}

/// First node in `order` that is neither repaired nor failed; abstains when
/// the order is exhausted.
pub fn non_jumping_executor(
    state: &SystemState,
    _scenario: &Scenario,
    order: &[NodeId],
) -> PolicyDecision {
    for &id in order {
        match state.status(id) {
            NodeStatus::Active => return PolicyDecision::Act(Action::new(id)),
            NodeStatus::Repaired | NodeStatus::Failed => continue,
        }
    }
    PolicyDecision::Abstain
}

/// Uniform choice over active nodes; consumes exactly one draw per call.
pub fn random_any(
    state: &SystemState,
    _scenario: &Scenario,
    rng: &mut SplitMix64,
) -> PolicyDecision {
    let active: Vec<NodeId> = state.active_ids().collect();
    if active.is_empty() {
        return PolicyDecision::Abstain;
    }
    let pick = rng.below(active.len() as u64) as usize;
    PolicyDecision::Act(Action::new(active[pick]))
}

/// Keeps targeting the committed node while it is active; otherwise draws a
/// fresh uniform choice and commits to it. No draw happens while committed.
pub fn random_non_jumping(
    state: &SystemState,
    scenario: &Scenario,
    rng: &mut SplitMix64,
    memory: &mut Option<NodeId>,
) -> PolicyDecision {
    if let Some(id) = *memory {
        if state.status(id).is_active() {
            return PolicyDecision::Act(Action::new(id));
        }
        *memory = None;
    }
    match random_any(state, scenario, rng) {
        PolicyDecision::Act(a) => {
            *memory = Some(a.target);
            PolicyDecision::Act(a)
        }
        PolicyDecision::Abstain => PolicyDecision::Abstain,
    }
}

/// Per-run policy state: the kind plus any rng/commitment it owns.
pub struct PolicyRunner<'a> {
    kind: &'a PolicyKind,
    rng: Option<SplitMix64>,
    commitment: Option<NodeId>,
}

impl<'a> PolicyRunner<'a> {
    pub fn new(kind: &'a PolicyKind) -> Self {
        let rng = match kind {
            PolicyKind::RandomAny { seed } | PolicyKind::RandomNonJumping { seed } => {
                Some(SplitMix64::new(*seed))
            }
            _ => None,
        };
        PolicyRunner {
            kind,
            rng,
            commitment: None,
        }
    }

    /// Runner whose random state comes from an externally derived stream.
    pub fn with_rng(kind: &'a PolicyKind, rng: SplitMix64) -> Self {
        PolicyRunner {
            kind,
            rng: Some(rng),
            commitment: None,
        }
    }

    pub fn decide(
        &mut self,
        state: &SystemState,
        scenario: &Scenario,
    ) -> Result<PolicyDecision, PolicyError> {
        Ok(match self.kind {
            PolicyKind::HealthiestFirst => healthiest_first(state, scenario),
            PolicyKind::LeastModifiedHealthGlobal => least_modified_health_global(state, scenario),
            PolicyKind::LeastModifiedHealthInSet(set) => {
                least_modified_health_in_set(state, scenario, set)?
            }
            PolicyKind::NonJumpingOrder(order) => non_jumping_executor(state, scenario, order),
            PolicyKind::RandomAny { .. } => {
                random_any(state, scenario, self.rng.as_mut().expect("rng"))
            }
            PolicyKind::RandomNonJumping { .. } => random_non_jumping(
                state,
                scenario,
                self.rng.as_mut().expect("rng"),
                &mut self.commitment,
            ),
        })
    }
}

fn validate_kind(kind: &PolicyKind, scenario: &Scenario) -> Result<(), PolicyError> {
    let check_ids = |ids: &mut dyn Iterator<Item = NodeId>| -> Result<(), PolicyError> {
        let mut seen = BTreeSet::new();
        for id in ids {
            if scenario.node(id).is_none() {
                return Err(PolicyError::UnknownNode(id));
            }
            if !seen.insert(id) {
                return Err(PolicyError::DuplicateNode(id));
            }
        }
        Ok(())
    };
    match kind {
        PolicyKind::LeastModifiedHealthInSet(set) => {
            if set.is_empty() {
                return Err(PolicyError::EmptyTargetSet);
            }
            check_ids(&mut set.iter().copied())
        }
        PolicyKind::NonJumpingOrder(order) => check_ids(&mut order.iter().copied()),
        _ => Ok(()),
    }
}

/// Runs a feedback policy from the initial state.
///
/// Stops when every node is absorbed, when the policy abstains, or when the
/// horizon fires; only the last case marks the trace truncated.
pub fn simulate_policy(
    scenario: &Scenario,
    kind: &PolicyKind,
    horizon: u64,
) -> Result<Trace, PolicyError> {
    validate_kind(kind, scenario)?;
    let mut runner = PolicyRunner::new(kind);
    let mut state = initial_state(scenario);
    let mut builder = TraceBuilder::new(&state);
    let mut truncated = false;
    loop {
        if state.all_absorbed() {
            break;
        }
        let decision = runner.decide(&state, scenario)?;
        let action = match decision {
            PolicyDecision::Abstain => break,
            PolicyDecision::Act(a) => a,
        };
        if state.t >= horizon {
            truncated = true;
            break;
        }
        step_mut(&mut state, scenario, action)?;
        builder.push(&state, action);
    }
    Ok(builder.finish(truncated))
}

/// Random baseline family for experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Baseline {
    RandomAny,
    RandomNonJumping,
}

/// Number of permanently repaired nodes for each of `samples` seeded runs.
/// Sample i uses the rng stream derived from (seed, i), so results do not
/// depend on evaluation order.
pub fn sample_repaired_counts(
    scenario: &Scenario,
    baseline: Baseline,
    samples: u64,
    seed: u64,
    horizon: Option<u64>,
) -> Vec<usize> {
    let horizon = horizon.unwrap_or_else(|| default_horizon(scenario));
    let kind = match baseline {
        Baseline::RandomAny => PolicyKind::RandomAny { seed },
        Baseline::RandomNonJumping => PolicyKind::RandomNonJumping { seed },
    };
    (0..samples)
        .map(|i| {
            let mut runner = PolicyRunner::with_rng(&kind, SplitMix64::stream(seed, i));
            let mut state = initial_state(scenario);
            loop {
                if state.all_absorbed() || state.t >= horizon {
                    break;
                }
                match runner.decide(&state, scenario).expect("baseline policy") {
                    PolicyDecision::Abstain => break,
                    PolicyDecision::Act(a) => {
                        step_mut(&mut state, scenario, a).expect("valid action")
                    }
                }
            }
            state
                .statuses()
                .iter()
                .filter(|s| **s == NodeStatus::Repaired)
                .count()
        })
        .collect()
}
