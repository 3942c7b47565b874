//! Built-in scenarios used by the CLI reproduction command and the tests.

use crate::model::{Health, NodeSpec, Rate, Scenario, Weight};

/// Builds a scenario from (v0, w, inc, dec) string rows; ids are assigned
/// 1..N in order. Panics on invalid rows, so only use with literals.
pub fn scenario(rows: &[(&str, &str, &str, &str)]) -> Scenario {
    let nodes = rows
        .iter()
        .enumerate()
        .map(|(i, (v0, w, inc, dec))| NodeSpec {
            id: i + 1,
            v0: Health::parse(v0).expect("fixture v0"),
            w: Weight::parse(w).expect("fixture w"),
            inc: Rate::parse(inc).expect("fixture inc"),
            dec: Rate::parse(dec).expect("fixture dec"),
        })
        .collect();
    Scenario::new(nodes).expect("fixture scenario")
}

/// Two equal-weight nodes where deterioration outpaces repair; only the
/// order (2, 1) repairs both.
pub fn two_node_decay_dominant() -> Scenario {
    scenario(&[("0.95", "1", "0.6", "0.7"), ("0.6", "1", "0.6", "0.7")])
}

/// Two nodes with equal rates but unequal weights; chasing the healthiest
/// node forfeits the heavier reward.
pub fn two_node_weighted() -> Scenario {
    scenario(&[("0.5", "1", "0.1", "0.1"), ("0.4", "2", "0.1", "0.1")])
}

/// Two equal-weight nodes where the less healthy node repairs much faster;
/// starting with the healthiest loses node 2.
pub fn two_node_fast_second() -> Scenario {
    scenario(&[("0.9", "1", "0.1", "0.6"), ("0.4", "1", "0.6", "0.6")])
}

/// Three weighted nodes with strong repair rates. The survivable target
/// set is {2, 1}; greedy-by-modified-health over it earns reward 4.
pub fn three_node_weighted() -> Scenario {
    scenario(&[
        ("0.3", "3", "0.9", "0.4"),
        ("0.5", "1", "0.85", "0.3"),
        ("0.2", "2", "0.95", "0.4"),
    ])
}

/// Three identical-weight nodes in the open regime dec < inc < (N-1)*dec.
/// The non-jumping order (1, 2, 3) repairs all three; (1, 3, 2) and the
/// least-healthy feedback policy do not.
pub fn three_node_gap() -> Scenario {
    scenario(&[
        ("0.8", "1", "0.025", "0.02"),
        ("0.52", "1", "0.025", "0.02"),
        ("0.73", "1", "0.025", "0.02"),
    ])
}

/// Fifteen identical nodes at health 0.99 with inc = dec = 0.01. Any
/// non-jumping sequence repairs exactly 7 of them.
pub fn fifteen_identical() -> Scenario {
    let rows: Vec<_> = (0..15).map(|_| ("0.99", "1", "0.01", "0.01")).collect();
    scenario(&rows)
}

/// Fifteen nodes at healths 0.05, 0.10, ..., 0.75 with inc = 0.75 far above
/// dec = 0.03; the least-modified-health policy repairs all of them.
pub fn fifteen_staircase() -> Scenario {
    let healths = [
        "0.05", "0.1", "0.15", "0.2", "0.25", "0.3", "0.35", "0.4", "0.45", "0.5", "0.55",
        "0.6", "0.65", "0.7", "0.75",
    ];
    let rows: Vec<_> = healths.iter().map(|&v| (v, "1", "0.75", "0.03")).collect();
    scenario(&rows)
}
