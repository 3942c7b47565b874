//! Constructive removal of jumps from a control sequence.
//!
//! A jump is switching targets before the currently targeted node is
//! permanently repaired. When deterioration dominates repair, a sequence
//! with jumps can always be rewritten into a non-jumping one that repairs
//! at least the same set no later: drop every wasted step, then repeatedly
//! take the last jump, and replace everything from the start of the
//! abandoned node's targeting run with the non-jumping order that does the
//! intermediate nodes first, the abandoned node next, and the remainder
//! after. The transform asserts those guarantees on its output and reports
//! a postcondition error if they do not hold (possible on inputs outside
//! the dominant-deterioration regime).

use crate::analysis::AnalysisError;
use crate::model::{
    default_horizon, initial_state, simulate_sequence, step_mut, Action, ControlSequence,
    ModelError, NodeId, Scenario, SystemState,
};
use crate::policies::{non_jumping_executor, PolicyDecision};
use std::collections::BTreeSet;

impl From<ModelError> for AnalysisError {
    fn from(e: ModelError) -> Self {
        AnalysisError::RatePrecondition(e.to_string())
    }
}

/// 0-based step indices at which a sequence jumps: the previous action's
/// target is still active below full health and the target changes.
pub fn jump_steps(scenario: &Scenario, seq: &ControlSequence) -> Result<Vec<usize>, ModelError> {
    let trace = simulate_sequence(scenario, seq, seq.len() as u64)?;
    let mut jumps = Vec::new();
    // rows[i] holds the state right after actions[i - 1].
    for i in 1..trace.rows.len() {
        if i >= seq.actions.len() {
            break;
        }
        let prev_target = seq.actions[i - 1].target;
        let cur_target = seq.actions[i].target;
        if cur_target != prev_target && !trace.rows[i].healths[prev_target - 1].is_full() {
            jumps.push(i);
        }
    }
    Ok(jumps)
}

/// Expands a non-jumping order into per-step actions starting from `state`,
/// skipping members that fail before being reached.
fn expand_order_from(
    state: &SystemState,
    scenario: &Scenario,
    order: &[NodeId],
    cap: u64,
) -> Result<Vec<Action>, AnalysisError> {
    let mut state = state.clone();
    let mut actions = Vec::new();
    loop {
        match non_jumping_executor(&state, scenario, order) {
            PolicyDecision::Abstain => break,
            PolicyDecision::Act(a) => {
                if actions.len() as u64 >= cap {
                    return Err(AnalysisError::FlattenPostcondition(
                        "order expansion exceeded its step cap".into(),
                    ));
                }
                step_mut(&mut state, scenario, a)?;
                actions.push(a);
            }
        }
    }
    Ok(actions)
}

/// Drops steps whose target is already absorbed when the step executes.
/// Deleting a step only raises later healths, so this never loses repairs.
fn drop_wasted_steps(
    scenario: &Scenario,
    mut actions: Vec<Action>,
) -> Result<Vec<Action>, AnalysisError> {
    loop {
        let seq = ControlSequence { actions: actions.clone() };
        let trace = simulate_sequence(scenario, &seq, actions.len() as u64)?;
        let wasted = (0..actions.len()).find(|&i| {
            let target = actions[i].target;
            !trace.rows[i].statuses[target - 1].is_active()
        });
        match wasted {
            Some(i) => {
                actions.remove(i);
            }
            None => return Ok(actions),
        }
    }
}

/// Maximal runs of equal consecutive targets.
fn runs(actions: &[Action]) -> Vec<(NodeId, usize)> {
    let mut out: Vec<(NodeId, usize)> = Vec::new();
    for a in actions {
        match out.last_mut() {
            Some((id, len)) if *id == a.target => *len += 1,
            _ => out.push((a.target, 1)),
        }
    }
    out
}

/// Rewrites `sequence` into a non-jumping sequence that repairs a superset
/// of its repaired set and completes no later.
pub fn flatten_jumps(
    scenario: &Scenario,
    sequence: &ControlSequence,
) -> Result<ControlSequence, AnalysisError> {
    let input_trace = simulate_sequence(scenario, sequence, sequence.len() as u64)?;
    let repaired: BTreeSet<NodeId> = input_trace.repaired_set();
    let input_completion = input_trace.last_repair_time();

    // Keep only steps that target eventually-repaired nodes, then drop any
    // step that targets an already absorbed node.
    let kept: Vec<Action> = sequence
        .actions
        .iter()
        .copied()
        .filter(|a| repaired.contains(&a.target))
        .collect();
    let mut actions = drop_wasted_steps(scenario, kept)?;

    let expansion_cap = default_horizon(scenario).max(sequence.len() as u64) + 1;
    let max_rounds = jump_steps(scenario, &ControlSequence { actions: actions.clone() })?
        .len()
        .saturating_add(1);
    for _ in 0..max_rounds {
        let seq = ControlSequence { actions: actions.clone() };
        let jumps = jump_steps(scenario, &seq)?;
        let last_jump = match jumps.last() {
            None => break,
            Some(&t) => t,
        };
        let abandoned = actions[last_jump - 1].target;
        // Start of the consecutive run of the abandoned node ending at the
        // jump; the whole run moves into the suffix being replaced.
        let mut run_start = last_jump;
        while run_start > 0 && actions[run_start - 1].target == abandoned {
            run_start -= 1;
        }
        let suffix_runs = runs(&actions[run_start..]);
        debug_assert_eq!(suffix_runs[0].0, abandoned);
        let back = suffix_runs[1..]
            .iter()
            .position(|&(id, _)| id == abandoned)
            .ok_or_else(|| {
                AnalysisError::FlattenPostcondition(
                    "abandoned node never revisited in a cleaned sequence".into(),
                )
            })?;
        // Intermediates first, the abandoned node after them, remainder last.
        let mut order: Vec<NodeId> = suffix_runs[1..=back].iter().map(|&(id, _)| id).collect();
        order.push(abandoned);
        order.extend(suffix_runs[back + 2..].iter().map(|&(id, _)| id));

        let mut state = initial_state(scenario);
        for a in &actions[..run_start] {
            step_mut(&mut state, scenario, *a)?;
        }
        let replacement = expand_order_from(&state, scenario, &order, expansion_cap)?;
        actions.truncate(run_start);
        actions.extend(replacement);
        actions = drop_wasted_steps(scenario, actions)?;
    }

    let out = ControlSequence { actions };
    let out_trace = simulate_sequence(scenario, &out, out.len() as u64)?;
    if !jump_steps(scenario, &out)?.is_empty() {
        return Err(AnalysisError::FlattenPostcondition(
            "output still contains a jump".into(),
        ));
    }
    let out_repaired = out_trace.repaired_set();
    if !repaired.is_subset(&out_repaired) {
        return Err(AnalysisError::FlattenPostcondition(format!(
            "output repairs {out_repaired:?}, input repaired {repaired:?}"
        )));
    }
    if let (Some(output), Some(input)) = (out_trace.last_repair_time(), input_completion) {
        if output > input {
            return Err(AnalysisError::FlattenPostcondition(format!(
                "output completes at {output}, later than input at {input}"
            )));
        }
    }
    Ok(out)
}
