//! System state, switched dynamics, and reward evaluation.

use crate::rational::{parse_rational, ParseError, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// Node identifier, 1-based as in scenario files.
pub type NodeId = usize;

/// Normalized node health, an exact rational in [0, 1].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Health(Rational);

impl Health {
    pub fn new(value: Rational) -> Result<Self, ParseError> {
        if value.is_negative() || value > Rational::one() {
            return Err(ParseError::OutOfRange {
                text: value.to_string(),
                expected: "health in [0, 1]",
            });
        }
        Ok(Health(value))
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Self::new(parse_rational(text)?)
    }

    /// Wraps a value already known to lie in [0, 1].
    pub(crate) fn raw(value: Rational) -> Self {
        debug_assert!(!value.is_negative() && value <= Rational::one());
        Health(value)
    }

    pub fn as_ratio(&self) -> &Rational {
        &self.0
    }

    pub fn is_full(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Per-step repair or deterioration rate, an exact rational in [0, 1].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rate(Rational);

impl Rate {
    pub fn new(value: Rational) -> Result<Self, ParseError> {
        if value.is_negative() || value > Rational::one() {
            return Err(ParseError::OutOfRange {
                text: value.to_string(),
                expected: "rate in [0, 1]",
            });
        }
        Ok(Rate(value))
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Self::new(parse_rational(text)?)
    }

    pub fn as_ratio(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Nonnegative node weight (reward units).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Rational);

impl Weight {
    pub fn new(value: Rational) -> Result<Self, ParseError> {
        if value.is_negative() {
            return Err(ParseError::OutOfRange {
                text: value.to_string(),
                expected: "weight >= 0",
            });
        }
        Ok(Weight(value))
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Self::new(parse_rational(text)?)
    }

    pub fn zero() -> Self {
        Weight(Rational::zero())
    }

    pub fn one() -> Self {
        Weight(Rational::one())
    }

    pub fn as_ratio(&self) -> &Rational {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScenarioError {
    Empty,
    BadIds,
    InitialHealthNotInterior { id: NodeId },
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioError::Empty => write!(f, "scenario has no nodes"),
            ScenarioError::BadIds => write!(f, "node ids must be 1..N with no duplicates"),
            ScenarioError::InitialHealthNotInterior { id } => {
                write!(f, "node {id}: initial health must lie strictly between 0 and 1")
            }
        }
    }
}

impl std::error::Error for ScenarioError {}

/// One node: initial health, weight, repair rate, deterioration rate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSpec {
    pub id: NodeId,
    pub v0: Health,
    pub w: Weight,
    pub inc: Rate,
    pub dec: Rate,
}

/// An ordered node roster. Ids are 1..N in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    nodes: Vec<NodeSpec>,
}

impl Scenario {
    pub fn new(nodes: Vec<NodeSpec>) -> Result<Self, ScenarioError> {
        if nodes.is_empty() {
            return Err(ScenarioError::Empty);
        }
        for (i, n) in nodes.iter().enumerate() {
            if n.id != i + 1 {
                return Err(ScenarioError::BadIds);
            }
            if n.v0.is_zero() || n.v0.is_full() {
                return Err(ScenarioError::InitialHealthNotInterior { id: n.id });
            }
        }
        Ok(Scenario { nodes })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[NodeSpec] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> Option<&NodeSpec> {
        if id >= 1 && id <= self.nodes.len() {
            Some(&self.nodes[id - 1])
        } else {
            None
        }
    }

    pub fn ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        1..=self.nodes.len()
    }

    /// Copy with every weight set to 1 (count-maximization form).
    pub fn erase_weights(&self) -> Scenario {
        let nodes = self
            .nodes
            .iter()
            .map(|n| NodeSpec { w: Weight::one(), ..n.clone() })
            .collect();
        Scenario { nodes }
    }
}

/// Absorbing status of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeStatus {
    Active,
    Repaired,
    Failed,
}

impl NodeStatus {
    pub fn is_active(self) -> bool {
        self == NodeStatus::Active
    }
}

impl fmt::Display for NodeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NodeStatus::Active => "active",
            NodeStatus::Repaired => "repaired",
            NodeStatus::Failed => "failed",
        };
        f.write_str(s)
    }
}

/// Full system state at one time step.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SystemState {
    pub t: u64,
    healths: Vec<Health>,
    statuses: Vec<NodeStatus>,
}

impl SystemState {
    pub fn healths(&self) -> &[Health] {
        &self.healths
    }

    pub fn statuses(&self) -> &[NodeStatus] {
        &self.statuses
    }

    pub fn health(&self, id: NodeId) -> &Health {
        &self.healths[id - 1]
    }

    pub fn status(&self, id: NodeId) -> NodeStatus {
        self.statuses[id - 1]
    }

    pub fn active_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.statuses
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_active())
            .map(|(i, _)| i + 1)
    }

    pub fn all_absorbed(&self) -> bool {
        self.statuses.iter().all(|s| !s.is_active())
    }
}

/// Targeting one node for one time step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Action {
    pub target: NodeId,
}

impl Action {
    pub fn new(target: NodeId) -> Self {
        Action { target }
    }
}

/// A finite list of per-step actions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ControlSequence {
    pub actions: Vec<Action>,
}

impl ControlSequence {
    pub fn from_ids(ids: impl IntoIterator<Item = NodeId>) -> Self {
        ControlSequence {
            actions: ids.into_iter().map(Action::new).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    NodeIdOutOfRange { id: NodeId, n: usize },
    StateMismatch { expected: usize, got: usize },
    HorizonOverflow,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::NodeIdOutOfRange { id, n } => {
                write!(f, "node id {id} out of range 1..={n}")
            }
            ModelError::StateMismatch { expected, got } => {
                write!(f, "state holds {got} nodes but scenario has {expected}")
            }
            ModelError::HorizonOverflow => write!(f, "time step count overflowed"),
        }
    }
}

impl std::error::Error for ModelError {}

/// State at t = 0: initial healths, everything active.
pub fn initial_state(scenario: &Scenario) -> SystemState {
    SystemState {
        t: 0,
        healths: scenario.nodes().iter().map(|n| n.v0.clone()).collect(),
        statuses: vec![NodeStatus::Active; scenario.len()],
    }
}

fn check_state(state: &SystemState, scenario: &Scenario) -> Result<(), ModelError> {
    if state.healths.len() != scenario.len() || state.statuses.len() != scenario.len() {
        return Err(ModelError::StateMismatch {
            expected: scenario.len(),
            got: state.healths.len(),
        });
    }
    Ok(())
}

/// Advances the state by one step in place.
///
/// The targeted active node gains its repair rate (capped at 1), every other
/// active node loses its deterioration rate (floored at 0); hitting 1 from
/// below absorbs as Repaired, hitting 0 from above absorbs as Failed.
/// Targeting an absorbed node is legal: nobody gains, all active nodes decay.
pub(crate) fn step_mut(
    state: &mut SystemState,
    scenario: &Scenario,
    action: Action,
) -> Result<(), ModelError> {
    check_state(state, scenario)?;
    if action.target < 1 || action.target > scenario.len() {
        return Err(ModelError::NodeIdOutOfRange {
            id: action.target,
            n: scenario.len(),
        });
    }
    let one = Rational::one();
    for (i, node) in scenario.nodes().iter().enumerate() {
        if !state.statuses[i].is_active() {
            continue;
        }
        if node.id == action.target {
            let raised = state.healths[i].as_ratio() + node.inc.as_ratio();
            if raised >= one {
                state.healths[i] = Health::raw(one.clone());
                state.statuses[i] = NodeStatus::Repaired;
            } else {
                state.healths[i] = Health::raw(raised);
            }
        } else {
            let lowered = state.healths[i].as_ratio() - node.dec.as_ratio();
            if lowered.is_negative() || lowered.is_zero() {
                state.healths[i] = Health::raw(Rational::zero());
                state.statuses[i] = NodeStatus::Failed;
            } else {
                state.healths[i] = Health::raw(lowered);
            }
        }
    }
    state.t += 1;
    Ok(())
}

/// One application of the switched dynamics; returns the successor state.
pub fn step(
    state: &SystemState,
    scenario: &Scenario,
    action: Action,
) -> Result<SystemState, ModelError> {
    let mut next = state.clone();
    step_mut(&mut next, scenario, action)?;
    Ok(next)
}

/// One recorded row of a simulation: the state at time `t` and the action
/// that produced it (`None` on the initial row).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRow {
    pub t: u64,
    pub action: Option<Action>,
    pub healths: Vec<Health>,
    pub statuses: Vec<NodeStatus>,
}

/// Per-step record of a simulation with repair/failure milestone times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub rows: Vec<TraceRow>,
    pub repair_time: Vec<Option<u64>>,
    pub fail_time: Vec<Option<u64>>,
    pub truncated: bool,
}

impl Trace {
    pub fn repaired_set(&self) -> BTreeSet<NodeId> {
        self.repair_time
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_some())
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// The actions taken, in order.
    pub fn actions(&self) -> ControlSequence {
        ControlSequence {
            actions: self.rows.iter().filter_map(|r| r.action).collect(),
        }
    }

    pub fn last_row(&self) -> &TraceRow {
        self.rows.last().expect("trace always has an initial row")
    }

    /// Time of the last permanent repair, if any node was repaired.
    pub fn last_repair_time(&self) -> Option<u64> {
        self.repair_time.iter().flatten().max().copied()
    }
}

pub(crate) struct TraceBuilder {
    rows: Vec<TraceRow>,
    repair_time: Vec<Option<u64>>,
    fail_time: Vec<Option<u64>>,
}

impl TraceBuilder {
    pub(crate) fn new(initial: &SystemState) -> Self {
        let n = initial.healths.len();
        TraceBuilder {
            rows: vec![TraceRow {
                t: initial.t,
                action: None,
                healths: initial.healths.clone(),
                statuses: initial.statuses.clone(),
            }],
            repair_time: vec![None; n],
            fail_time: vec![None; n],
        }
    }

    pub(crate) fn push(&mut self, state: &SystemState, action: Action) {
        let prev = &self.rows.last().expect("initial row").statuses;
        for (i, (before, after)) in prev.iter().zip(state.statuses.iter()).enumerate() {
            if before.is_active() && !after.is_active() {
                match after {
                    NodeStatus::Repaired => self.repair_time[i] = Some(state.t),
                    NodeStatus::Failed => self.fail_time[i] = Some(state.t),
                    NodeStatus::Active => unreachable!(),
                }
            }
        }
        self.rows.push(TraceRow {
            t: state.t,
            action: Some(action),
            healths: state.healths.clone(),
            statuses: state.statuses.clone(),
        });
    }

    pub(crate) fn finish(self, truncated: bool) -> Trace {
        Trace {
            rows: self.rows,
            repair_time: self.repair_time,
            fail_time: self.fail_time,
            truncated,
        }
    }
}

/// Replays an explicit action list from the initial state.
///
/// Stops after `min(sequence length, horizon)` steps, or earlier once every
/// node is absorbed. `truncated` is set only when the horizon cut off
/// remaining actions while active nodes were left.
pub fn simulate_sequence(
    scenario: &Scenario,
    sequence: &ControlSequence,
    horizon: u64,
) -> Result<Trace, ModelError> {
    let mut state = initial_state(scenario);
    let mut builder = TraceBuilder::new(&state);
    let mut truncated = false;
    for (i, &action) in sequence.actions.iter().enumerate() {
        if state.all_absorbed() {
            break;
        }
        if i as u64 >= horizon {
            truncated = true;
            break;
        }
        step_mut(&mut state, scenario, action)?;
        builder.push(&state, action);
    }
    Ok(builder.finish(truncated))
}

/// Sum of weights of the repaired nodes in a trace.
pub fn reward(scenario: &Scenario, trace: &Trace) -> RewardReport {
    let repaired_set = trace.repaired_set();
    let total = repaired_set
        .iter()
        .map(|&id| scenario.node(id).expect("trace node").w.as_ratio().clone())
        .fold(Rational::zero(), |acc, w| acc + w);
    RewardReport {
        repaired_set,
        reward: Weight::new(total).expect("sum of nonnegative weights"),
    }
}

/// Repaired node set and its exact weight sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewardReport {
    pub repaired_set: BTreeSet<NodeId>,
    pub reward: Weight,
}

/// Health minus the node's own deterioration rate; may be negative.
pub fn modified_health(state: &SystemState, scenario: &Scenario, id: NodeId) -> Rational {
    let node = scenario.node(id).expect("node id in range");
    state.health(id).as_ratio() - node.dec.as_ratio()
}

/// Ceiling of (1 - v) / inc: targeted steps needed to repair from health v.
/// Only meaningful for inc > 0 and v < 1.
pub(crate) fn steps_to_full(v: &Rational, inc: &Rational) -> u64 {
    debug_assert!(inc.is_positive());
    let q = (Rational::one() - v) / inc;
    big_to_u64(&q.ceil().to_integer())
}

pub(crate) fn big_to_u64(b: &BigInt) -> u64 {
    use num_traits::ToPrimitive;
    b.to_u64().expect("step count fits in u64")
}

/// Default simulation step cap: generous enough for any non-jumping
/// completion. 10 * sum of ceil(1/inc) when every repair rate is positive,
/// 10000 otherwise. Overridable by every caller.
pub fn default_horizon(scenario: &Scenario) -> u64 {
    if scenario.nodes().iter().any(|n| n.inc.is_zero()) {
        return 10_000;
    }
    let total: u64 = scenario
        .nodes()
        .iter()
        .map(|n| steps_to_full(&Rational::zero(), n.inc.as_ratio()))
        .sum();
    total.saturating_mul(10)
}
