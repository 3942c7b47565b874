//! Exact toolkit for scheduling repairs after a disruption.
//!
//! A set of nodes (infrastructure segments, servers, fire regions) comes out
//! of a disruption with health values strictly between 0 and 1. At each
//! discrete time step a single crew targets one node: the targeted node's
//! health rises by its repair rate, every other still-active node's health
//! falls by its deterioration rate. Health 1 (permanently repaired) and
//! health 0 (permanently failed) are absorbing. The goal is a targeting
//! sequence that maximizes the total weight of permanently repaired nodes.
//!
//! All health values, rates, and weights are exact rationals; threshold
//! comparisons against exactly 0 and exactly 1 decide absorption, which
//! makes floating point unusable here.
//!
//! The crate is split into:
//! - [`model`]: state, switched dynamics, sequence/policy simulation, reward;
//! - [`policies`]: the feedback policies and seeded random baselines;
//! - [`analysis`]: closed-form schedule evaluation, feasibility, repair-count
//!   bounds, target-set construction, regime classification, and the
//!   jump-removal transform;
//! - [`solvers`]: an exhaustive oracle, the non-jumping enumeration, and a
//!   regime-dispatching auto solver;
//! - [`fixtures`]: small built-in scenarios used by the CLI and tests.

pub mod analysis;
pub mod fixtures;
pub mod flatten;
pub mod model;
pub mod policies;
pub mod rational;
pub mod rng;
pub mod solvers;

pub use analysis::{
    build_target_set, classify_regime, evaluate_order, max_repair_bound, nonjumping_feasible,
    prop1_conditions, repair_time, survival_count, theorem3_conditions, theorem5_conditions,
    AnalysisError, BoundReport, ConditionFailure, OrderEvaluation, RegimeReport, Theorem3Data,
};
pub use flatten::{flatten_jumps, jump_steps};
pub use model::{
    default_horizon, initial_state, modified_health, reward, simulate_sequence, step, Action,
    ControlSequence, Health, ModelError, NodeId, NodeSpec, NodeStatus, Rate, RewardReport,
    Scenario, ScenarioError, SystemState, Trace, TraceRow, Weight,
};
pub use policies::{
    sample_repaired_counts, simulate_policy, Baseline, PolicyDecision, PolicyError, PolicyKind,
    PolicyRunner,
};
pub use rational::{parse_rational, render_rational, ParseError, Rational};
pub use rng::SplitMix64;
pub use solvers::{
    brute_force_optimal, default_brute_horizon, enumerate_nonjumping_optimal, max_count_sequence,
    solve_auto, BruteForceLimits, CountMethod, SolveMethod, SolveResult, SolverError,
};
