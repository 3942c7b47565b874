//! Deterministic random-instance generators shared by the integration
//! suites. Everything is seeded SplitMix64, so failures replay exactly.
#![allow(dead_code)] // each test target uses a different subset

use recov_core::fixtures::scenario;
use recov_core::{ControlSequence, NodeId, Scenario, SplitMix64};

pub fn build(rows: Vec<(String, String, String, String)>) -> Scenario {
    let rows: Vec<(&str, &str, &str, &str)> = rows
        .iter()
        .map(|(a, b, c, d)| (a.as_str(), b.as_str(), c.as_str(), d.as_str()))
        .collect();
    scenario(&rows)
}

/// Homogeneous rates and weights with dec = n * inc and every repair gap an
/// integer multiple of inc: the healthiest-first regime. Small denominators
/// keep the exhaustive oracle's state space tiny.
pub fn gen_theorem3(rng: &mut SplitMix64) -> Scenario {
    let n_nodes = 2 + rng.below(2) as usize;
    let q = 3 + rng.below(6); // denominator 3..=8
    let n = 1 + rng.below(3.min(q)); // dec = n * inc <= 1
    let rows = (0..n_nodes)
        .map(|_| {
            let m = 1 + rng.below(q - 1); // v0 = 1 - m/q in (0, 1)
            (
                format!("{}/{}", q - m, q),
                "1".to_string(),
                format!("1/{q}"),
                format!("{n}/{q}"),
            )
        })
        .collect();
    build(rows)
}

/// Strong-repair instances with heterogeneous weights: repair rates large
/// enough that the target-set policy conditions always hold, weights forced
/// heterogeneous so the global-policy regime does not swallow them.
pub fn gen_theorem5(rng: &mut SplitMix64) -> Scenario {
    let n_nodes = 2 + rng.below(2) as usize;
    let rows = (0..n_nodes)
        .map(|i| {
            let v0 = 1 + rng.below(19); // k/20
            let inc = 12 + rng.below(8); // 0.6..=0.95
            let dec = 2 + rng.below(4); // 0.02..=0.05
            let w = if i < 2 { i + 1 } else { 1 + rng.below(3) as usize };
            (
                format!("{v0}/20"),
                format!("{w}"),
                format!("{inc}/20"),
                format!("{dec}/100"),
            )
        })
        .collect();
    build(rows)
}

/// Deterioration dominates repair on every node; rates, healths, and
/// weights otherwise heterogeneous.
pub fn gen_decgeinc(rng: &mut SplitMix64, max_nodes: u64) -> Scenario {
    let n_nodes = 2 + rng.below(max_nodes - 1) as usize;
    let q = 3 + rng.below(6); // denominator 3..=8
    let rows = (0..n_nodes)
        .map(|_| {
            let inc = 1 + rng.below(q - 1);
            let dec = inc + rng.below(q - inc + 1);
            let v0 = 1 + rng.below(q - 1);
            (
                format!("{v0}/{q}"),
                format!("{}", 1 + rng.below(3)),
                format!("{inc}/{q}"),
                format!("{dec}/{q}"),
            )
        })
        .collect();
    build(rows)
}

/// Unconstrained rate mix with weights in 1..=5, sized for the exhaustive
/// oracle.
pub fn gen_weighted(rng: &mut SplitMix64) -> Scenario {
    let n_nodes = 2 + rng.below(2) as usize;
    let q = 3 + rng.below(4); // denominator 3..=6
    let rows = (0..n_nodes)
        .map(|_| {
            let inc = 1 + rng.below(q);
            let dec = rng.below(q + 1);
            let v0 = 1 + rng.below(q - 1);
            (
                format!("{v0}/{q}"),
                format!("{}", 1 + rng.below(5)),
                format!("{inc}/{q}"),
                format!("{dec}/{q}"),
            )
        })
        .collect();
    build(rows)
}

/// Instances for the survival-count cross-check; rates vary freely and
/// deterioration may be zero.
pub fn gen_survival(rng: &mut SplitMix64) -> Scenario {
    let n_nodes = 2 + rng.below(5) as usize; // 2..=6
    let rows = (0..n_nodes)
        .map(|_| {
            let v0 = 1 + rng.below(11); // /12
            let dec = rng.below(7); // /12, may be 0
            (
                format!("{v0}/12"),
                "1".to_string(),
                "1/2".to_string(),
                format!("{dec}/12"),
            )
        })
        .collect();
    build(rows)
}

/// Heterogeneous-rate instances for the recursion-vs-simulation agreement
/// suite; repair rates are always positive, deterioration may be zero or
/// dominate.
pub fn gen_mixed_rates(rng: &mut SplitMix64) -> Scenario {
    let n_nodes = 2 + rng.below(4) as usize; // 2..=5
    let rows = (0..n_nodes)
        .map(|_| {
            let q = 5 + rng.below(9); // per-node denominator 5..=13
            let v0 = 1 + rng.below(q - 1);
            let inc = 1 + rng.below(q);
            let dec = rng.below(q + 1);
            (
                format!("{v0}/{q}"),
                "1".to_string(),
                format!("{inc}/{q}"),
                format!("{dec}/{q}"),
            )
        })
        .collect();
    build(rows)
}

/// Duplicate-free random order over a random subset of the nodes.
pub fn gen_order(rng: &mut SplitMix64, scenario: &Scenario) -> Vec<NodeId> {
    let mut ids: Vec<NodeId> = (1..=scenario.len()).collect();
    // Fisher-Yates.
    for i in (1..ids.len()).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        ids.swap(i, j);
    }
    let len = 1 + rng.below(ids.len() as u64) as usize;
    ids.truncate(len);
    ids
}

/// Random action list (jumps allowed, wasted steps allowed).
pub fn gen_sequence(rng: &mut SplitMix64, scenario: &Scenario, max_len: u64) -> ControlSequence {
    let len = 1 + rng.below(max_len) as usize;
    ControlSequence::from_ids(
        (0..len).map(|_| 1 + rng.below(scenario.len() as u64) as usize),
    )
}
