//! Closed-form schedule evaluation, feasibility, repair-count bounds,
//! target-set construction, and regime classification.

use crate::model::{big_to_u64, steps_to_full, NodeId, NodeSpec, Scenario};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    UnknownNode(NodeId),
    DuplicateNode(NodeId),
    ZeroRepairRate(NodeId),
    RatePrecondition(String),
    TargetSetDefect { round: usize },
    FlattenPostcondition(String),
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::UnknownNode(id) => write!(f, "unknown node {id}"),
            AnalysisError::DuplicateNode(id) => write!(f, "node {id} listed twice"),
            AnalysisError::ZeroRepairRate(id) => {
                write!(f, "node {id} has repair rate 0 and can never be repaired")
            }
            AnalysisError::RatePrecondition(msg) => write!(f, "{msg}"),
            AnalysisError::TargetSetDefect { round } => {
                write!(f, "no eligible node at round {round}; survival count is inconsistent")
            }
            AnalysisError::FlattenPostcondition(msg) => {
                write!(f, "jump removal failed its postcondition: {msg}")
            }
        }
    }
}

impl std::error::Error for AnalysisError {}

/// Targeted steps needed to raise health `v` to 1 at rate `inc`:
/// ceil((1 - v) / inc), exactly.
pub fn repair_time(v: &Rational, inc: &Rational) -> Result<u64, AnalysisError> {
    if !inc.is_positive() {
        return Err(AnalysisError::RatePrecondition(
            "repair time undefined for repair rate 0".into(),
        ));
    }
    Ok(steps_to_full(v, inc))
}

/// Closed-form evaluation of a non-jumping order.
///
/// `entry_healths[k]` is the health of the k-th listed node at the moment
/// every earlier listed node has just been repaired, and `durations[k]` the
/// targeted steps it then takes to repair it. Evaluation stops at the first
/// node whose entry health is not positive; its 1-based position lands in
/// `violation` and the node is excluded from both lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderEvaluation {
    pub order: Vec<NodeId>,
    pub entry_healths: Vec<Rational>,
    pub durations: Vec<u64>,
    pub violation: Option<usize>,
}

impl OrderEvaluation {
    pub fn feasible(&self) -> bool {
        self.violation.is_none()
    }

    /// Cumulative repair completion times.
    pub fn milestones(&self) -> Vec<u64> {
        self.durations
            .iter()
            .scan(0u64, |acc, d| {
                *acc += d;
                Some(*acc)
            })
            .collect()
    }

    pub fn total_time(&self) -> u64 {
        self.durations.iter().sum()
    }
}

fn check_order(scenario: &Scenario, order: &[NodeId]) -> Result<(), AnalysisError> {
    let mut seen = BTreeSet::new();
    for &id in order {
        if scenario.node(id).is_none() {
            return Err(AnalysisError::UnknownNode(id));
        }
        if !seen.insert(id) {
            return Err(AnalysisError::DuplicateNode(id));
        }
    }
    Ok(())
}

/// Evaluates a duplicate-free order under the recursion
/// entry(k) = v0(k) - dec(k) * (total time spent repairing nodes 1..k-1),
/// with each duration the exact ceiling of (1 - entry) / inc.
///
/// Deterioration is per-node, so heterogeneous rates are supported; the
/// recursion-versus-simulation agreement suite pins this generalization.
pub fn evaluate_order(
    scenario: &Scenario,
    order: &[NodeId],
) -> Result<OrderEvaluation, AnalysisError> {
    check_order(scenario, order)?;
    for &id in order {
        if scenario.node(id).unwrap().inc.is_zero() {
            return Err(AnalysisError::ZeroRepairRate(id));
        }
    }
    let mut entry_healths = Vec::new();
    let mut durations = Vec::new();
    let mut violation = None;
    let mut elapsed = Rational::zero();
    for (pos, &id) in order.iter().enumerate() {
        let node = scenario.node(id).unwrap();
        let entry = node.v0.as_ratio() - node.dec.as_ratio() * &elapsed;
        if !entry.is_positive() {
            violation = Some(pos + 1);
            break;
        }
        let t = steps_to_full(&entry, node.inc.as_ratio());
        elapsed += Rational::from_integer(BigInt::from(t));
        entry_healths.push(entry);
        durations.push(t);
    }
    Ok(OrderEvaluation {
        order: order.to_vec(),
        entry_healths,
        durations,
        violation,
    })
}

/// Whether a non-jumping order repairs every listed node, and if not, the
/// 1-based position of the first node that is lost.
pub fn nonjumping_feasible(
    scenario: &Scenario,
    order: &[NodeId],
) -> Result<(bool, Option<usize>), AnalysisError> {
    let eval = evaluate_order(scenario, order)?;
    Ok((eval.feasible(), eval.violation))
}

/// Upper bound on how many nodes any non-jumping sequence can repair when
/// deterioration dominates repair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    /// min over nodes of floor(dec / inc); at least 1 in this regime.
    pub n: u64,
    /// The repair-count bound, at most N.
    pub l: usize,
}

pub fn max_repair_bound(scenario: &Scenario) -> Result<BoundReport, AnalysisError> {
    let roster: Vec<NodeId> = scenario.ids().collect();
    max_repair_bound_over(scenario, &roster)
}

/// Bound restricted to a roster of repairable nodes.
pub(crate) fn max_repair_bound_over(
    scenario: &Scenario,
    roster: &[NodeId],
) -> Result<BoundReport, AnalysisError> {
    if roster.is_empty() {
        return Ok(BoundReport { n: 1, l: 0 });
    }
    for &id in roster {
        let node = scenario.node(id).ok_or(AnalysisError::UnknownNode(id))?;
        if node.inc.is_zero() {
            return Err(AnalysisError::ZeroRepairRate(id));
        }
        if node.dec.as_ratio() < node.inc.as_ratio() {
            return Err(AnalysisError::RatePrecondition(format!(
                "node {id}: deterioration rate must be >= repair rate for this bound"
            )));
        }
    }
    let node = |id: NodeId| scenario.node(id).unwrap();
    let n_big = roster
        .iter()
        .map(|&id| (node(id).dec.as_ratio() / node(id).inc.as_ratio()).floor().to_integer())
        .min()
        .unwrap();
    let n = big_to_u64(&n_big);
    let min_dec = roster
        .iter()
        .map(|&id| node(id).dec.as_ratio())
        .min()
        .unwrap();
    // Largest k with (1+n)^k <= n / min_dec + 1, found by exact integer
    // search; evaluating the logarithm in floats can land on the wrong side
    // of an integer crossover.
    let target = Rational::from_integer(n_big.clone()) / min_dec + Rational::one();
    let base = Rational::from_integer(n_big + BigInt::one());
    let mut power = base.clone();
    let mut k = 0usize;
    while power <= target {
        power *= &base;
        k += 1;
    }
    Ok(BoundReport {
        n,
        l: roster.len().min(k + 1),
    })
}

fn survival_ceiling(node: &NodeSpec) -> Option<BigInt> {
    // Steps a node survives untreated: ceil(v0 / dec); None when dec = 0
    // (it survives forever).
    if node.dec.is_zero() {
        None
    } else {
        Some((node.v0.as_ratio() / node.dec.as_ratio()).ceil().to_integer())
    }
}

/// Largest x such that some x-subset, suitably ordered, satisfies
/// v0 > (x - j) * dec for each of its members.
///
/// Greedy: repeatedly take the node with the smallest survival ceiling
/// strictly exceeding the count picked so far.
pub fn survival_count(scenario: &Scenario) -> usize {
    let mut remaining: Vec<(Option<BigInt>, NodeId)> = scenario
        .nodes()
        .iter()
        .map(|n| (survival_ceiling(n), n.id))
        .collect();
    let mut x = 0usize;
    loop {
        let mut pick: Option<usize> = None;
        for (i, (ceil, _)) in remaining.iter().enumerate() {
            let qualifies = match ceil {
                None => true,
                Some(c) => *c > BigInt::from(x),
            };
            if !qualifies {
                continue;
            }
            pick = match pick {
                None => Some(i),
                Some(best) => {
                    // Finite ceilings order before unbounded ones; ties keep
                    // the lower node id, which comes first in the vector.
                    let better = match (&remaining[i].0, &remaining[best].0) {
                        (Some(a), Some(b)) => a < b,
                        (Some(_), None) => true,
                        (None, _) => false,
                    };
                    Some(if better { i } else { best })
                }
            };
        }
        match pick {
            None => return x,
            Some(i) => {
                remaining.remove(i);
                x += 1;
            }
        }
    }
}

/// Ordered target set of `x` nodes: round r admits nodes with
/// v0 > (x - r) * dec and takes the heaviest (ties to lowest id).
pub fn build_target_set(scenario: &Scenario, x: usize) -> Result<Vec<NodeId>, AnalysisError> {
    let mut remaining: Vec<NodeId> = scenario.ids().collect();
    let mut z = Vec::with_capacity(x);
    for r in 1..=x {
        let slack = BigInt::from(x - r);
        let mut pick: Option<NodeId> = None;
        for &id in &remaining {
            let node = scenario.node(id).unwrap();
            if *node.v0.as_ratio() <= node.dec.as_ratio() * Rational::from_integer(slack.clone()) {
                continue;
            }
            pick = match pick {
                None => Some(id),
                Some(best) => {
                    let heavier = scenario.node(id).unwrap().w.as_ratio()
                        > scenario.node(best).unwrap().w.as_ratio();
                    Some(if heavier { id } else { best })
                }
            };
        }
        match pick {
            None => return Err(AnalysisError::TargetSetDefect { round: r }),
            Some(id) => {
                remaining.retain(|&j| j != id);
                z.push(id);
            }
        }
    }
    Ok(z)
}

/// Human-readable reason a set of policy conditions fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionFailure(pub String);

impl fmt::Display for ConditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Data extracted when the healthiest-first optimality conditions hold:
/// homogeneous rates and weights, dec = n * inc for integer n >= 1, and
/// each 1 - v0 an integer multiple m of inc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem3Data {
    pub n: u64,
    pub m: Vec<u64>,
}

pub fn theorem3_conditions(scenario: &Scenario) -> Result<Theorem3Data, ConditionFailure> {
    let first = &scenario.nodes()[0];
    for node in scenario.nodes() {
        if node.inc != first.inc || node.dec != first.dec {
            return Err(ConditionFailure(format!(
                "node {}: rates are not homogeneous",
                node.id
            )));
        }
        if node.w != first.w {
            return Err(ConditionFailure(format!(
                "node {}: weights are not homogeneous",
                node.id
            )));
        }
    }
    if first.inc.is_zero() {
        return Err(ConditionFailure("repair rate is 0".into()));
    }
    let ratio = first.dec.as_ratio() / first.inc.as_ratio();
    if !ratio.is_integer() || !ratio.is_positive() {
        return Err(ConditionFailure(format!(
            "dec/inc = {} is not a positive integer",
            ratio
        )));
    }
    let n = big_to_u64(&ratio.to_integer());
    let mut m = Vec::with_capacity(scenario.len());
    for node in scenario.nodes() {
        let gap = (Rational::one() - node.v0.as_ratio()) / first.inc.as_ratio();
        if !gap.is_integer() || !gap.is_positive() {
            return Err(ConditionFailure(format!(
                "node {}: (1 - v0)/inc = {} is not a positive integer",
                node.id, gap
            )));
        }
        m.push(big_to_u64(&gap.to_integer()));
    }
    Ok(Theorem3Data { n, m })
}

/// Conditions under which the least-modified-health policy over the target
/// set `z` (|z| = x) provably repairs all of it: each member's repair rate
/// must exceed both (x-1) times its own deterioration rate and the summed
/// deterioration rates of the other members.
pub fn theorem5_conditions(scenario: &Scenario, z: &[NodeId]) -> Result<(), ConditionFailure> {
    if z.is_empty() {
        return Err(ConditionFailure("target set is empty".into()));
    }
    for &id in z {
        if scenario.node(id).is_none() {
            return Err(ConditionFailure(format!("unknown node {id} in target set")));
        }
    }
    let x = z.len();
    let factor = Rational::from_integer(BigInt::from(x - 1));
    for &id in z {
        let node = scenario.node(id).unwrap();
        let own = node.dec.as_ratio() * &factor;
        if *node.inc.as_ratio() <= own {
            return Err(ConditionFailure(format!(
                "node {id}: inc = {} is not > (x-1)*dec = {}",
                node.inc.as_ratio(),
                own
            )));
        }
        let others: Rational = z
            .iter()
            .filter(|&&k| k != id)
            .map(|&k| scenario.node(k).unwrap().dec.as_ratio().clone())
            .fold(Rational::zero(), |a, b| a + b);
        if *node.inc.as_ratio() <= others {
            return Err(ConditionFailure(format!(
                "node {id}: inc = {} is not > sum of other dec = {}",
                node.inc.as_ratio(),
                others
            )));
        }
    }
    Ok(())
}

/// Set-independent version: homogeneous weights and, for every node, repair
/// rate above both (N-1) times its own deterioration rate and the summed
/// deterioration rates of all other nodes.
pub fn prop1_conditions(scenario: &Scenario) -> Result<(), ConditionFailure> {
    let first = &scenario.nodes()[0];
    for node in scenario.nodes() {
        if node.w != first.w {
            return Err(ConditionFailure(format!(
                "node {}: weights are not homogeneous",
                node.id
            )));
        }
    }
    let all: Vec<NodeId> = scenario.ids().collect();
    theorem5_conditions(scenario, &all)
}

/// Which explicitly solved regime a scenario falls into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegimeReport {
    /// Deterioration dominates repair on every node; non-jumping sequences
    /// are optimal but no closed-form ordering applies.
    DecGeInc,
    /// Healthiest-first is optimal (homogeneous rates/weights, dec = n*inc,
    /// integral repair gaps).
    Theorem3Applicable { n: u64, m: Vec<u64> },
    /// Least-modified-health over the constructed target set is optimal.
    Theorem5Applicable { x: usize, z: Vec<NodeId> },
    /// Least-modified-health over all nodes is optimal.
    Prop1Applicable,
    /// No characterized policy applies.
    Gap,
}

impl RegimeReport {
    pub fn name(&self) -> &'static str {
        match self {
            RegimeReport::DecGeInc => "dec-ge-inc",
            RegimeReport::Theorem3Applicable { .. } => "theorem3",
            RegimeReport::Theorem5Applicable { .. } => "theorem5",
            RegimeReport::Prop1Applicable => "prop1",
            RegimeReport::Gap => "gap",
        }
    }
}

/// Dispatch: the dominant-deterioration side refines to the healthiest-first
/// regime when its conditions hold; otherwise the global least-modified
/// policy is preferred over the set-restricted one when both apply, and
/// anything left is the open gap.
pub fn classify_regime(scenario: &Scenario) -> RegimeReport {
    let dec_ge_inc = scenario
        .nodes()
        .iter()
        .all(|n| n.dec.as_ratio() >= n.inc.as_ratio());
    if dec_ge_inc {
        return match theorem3_conditions(scenario) {
            Ok(data) => RegimeReport::Theorem3Applicable { n: data.n, m: data.m },
            Err(_) => RegimeReport::DecGeInc,
        };
    }
    if prop1_conditions(scenario).is_ok() {
        return RegimeReport::Prop1Applicable;
    }
    let x = survival_count(scenario);
    if let Ok(z) = build_target_set(scenario, x) {
        if theorem5_conditions(scenario, &z).is_ok() {
            return RegimeReport::Theorem5Applicable { x, z };
        }
    }
    RegimeReport::Gap
}
