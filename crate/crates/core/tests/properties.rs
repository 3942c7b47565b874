//! Property suites for the model invariants and the characterization
//! results that are not part of the acceptance gate.

mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use recov_core::fixtures;
use recov_core::*;

/// All orders over all subsets of a deterioration-dominant scenario repair
/// at most L nodes (bound soundness, checked exhaustively for N <= 6).
#[test]
fn repair_bound_is_sound_for_all_orders() {
    fn all_orders(ids: &[NodeId], prefix: &mut Vec<NodeId>, visit: &mut dyn FnMut(&[NodeId])) {
        visit(prefix);
        for (i, &id) in ids.iter().enumerate() {
            let mut rest = ids.to_vec();
            rest.remove(i);
            prefix.push(id);
            all_orders(&rest, prefix, visit);
            prefix.pop();
        }
    }
    let mut rng = SplitMix64::new(2042);
    for _ in 0..20 {
        let s = common::gen_decgeinc(&mut rng, 6);
        let bound = max_repair_bound(&s).unwrap();
        let ids: Vec<NodeId> = (1..=s.len()).collect();
        let mut checked = 0usize;
        all_orders(&ids, &mut Vec::new(), &mut |order| {
            if order.is_empty() {
                return;
            }
            let (feasible, _) = nonjumping_feasible(&s, order).unwrap();
            if feasible {
                assert!(
                    order.len() <= bound.l,
                    "order {order:?} repairs {} > L = {} in {s:?}",
                    order.len(),
                    bound.l
                );
            }
            checked += 1;
        });
        assert!(checked > 0);
    }
}

/// The open-regime witness: brute force repairs all three gap-trio nodes,
/// while both greedy feedback policies fall short.
#[test]
fn gap_regime_witness() {
    let s = fixtures::three_node_gap();
    let limits = BruteForceLimits { node_cap: 4, horizon_cap: 100 };
    let brute = brute_force_optimal(&s, 75, &limits).unwrap();
    assert_eq!(brute.reward.as_ratio(), &parse_rational("3").unwrap());
    assert_eq!(brute.repaired_set.len(), 3);

    let healthiest = simulate_policy(&s, &PolicyKind::HealthiestFirst, 400).unwrap();
    assert!(reward(&s, &healthiest).reward.as_ratio() < brute.reward.as_ratio());
    let least = simulate_policy(&s, &PolicyKind::LeastModifiedHealthGlobal, 400).unwrap();
    assert!(reward(&s, &least).reward.as_ratio() < brute.reward.as_ratio());
}

/// Simulating the gap trio's feasible order only ever produces healths on
/// the lattice generated by the two rates (multiples of 1/200).
#[test]
fn gap_trio_healths_stay_on_lattice() {
    let s = fixtures::three_node_gap();
    let trace =
        simulate_policy(&s, &PolicyKind::NonJumpingOrder(vec![1, 2, 3]), 10_000).unwrap();
    let lattice = BigInt::from(200);
    for row in &trace.rows {
        for h in &row.healths {
            assert!(
                lattice.is_multiple_of(h.as_ratio().denom()),
                "health {} off the 1/200 lattice at t = {}",
                render_rational(h.as_ratio()),
                row.t
            );
        }
    }
    assert_eq!(trace.rows.len(), 73);
}

/// The order executor never jumps on any trace it generates.
#[test]
fn executor_traces_contain_no_jumps() {
    let mut rng = SplitMix64::new(99);
    for _ in 0..100 {
        let s = common::gen_mixed_rates(&mut rng);
        let order = common::gen_order(&mut rng, &s);
        let trace = simulate_policy(
            &s,
            &PolicyKind::NonJumpingOrder(order),
            default_horizon(&s),
        )
        .unwrap();
        let seq = trace.actions();
        assert!(jump_steps(&s, &seq).unwrap().is_empty());
    }
}

/// With homogeneous deterioration the least-modified-health choice is the
/// least-health choice (argmin is invariant under a constant shift).
#[test]
fn least_modified_equals_least_health_when_dec_homogeneous() {
    let mut rng = SplitMix64::new(404);
    for _ in 0..50 {
        let n_nodes = 2 + rng.below(3) as usize;
        let dec = rng.below(4); // shared /8, may be 0
        let rows: Vec<(String, String, String, String)> = (0..n_nodes)
            .map(|_| {
                (
                    format!("{}/8", 1 + rng.below(7)),
                    "1".to_string(),
                    format!("{}/8", 1 + rng.below(8)),
                    format!("{dec}/8"),
                )
            })
            .collect();
        let s = common::build(rows);
        let trace = simulate_policy(&s, &PolicyKind::LeastModifiedHealthGlobal, 60).unwrap();
        for pair in trace.rows.windows(2) {
            let (prev, row) = (&pair[0], &pair[1]);
            let chosen = row.action.unwrap().target;
            let min_health = prev
                .healths
                .iter()
                .zip(prev.statuses.iter())
                .filter(|(_, st)| st.is_active())
                .map(|(h, _)| h)
                .min()
                .unwrap();
            assert_eq!(&prev.healths[chosen - 1], min_health);
        }
    }
}

/// Every solver path hands back a sequence that re-simulates to its claimed
/// reward and repaired set.
#[test]
fn solver_witnesses_resimulate() {
    let mut rng = SplitMix64::new(7777);
    for _ in 0..40 {
        let s = common::gen_weighted(&mut rng);
        let r = match solve_auto(&s) {
            Ok(r) => r,
            Err(SolverError::GapBeyondCaps { .. }) => continue,
            Err(e) => panic!("{e}"),
        };
        let trace = simulate_sequence(&s, &r.sequence, r.sequence.len() as u64).unwrap();
        let report = reward(&s, &trace);
        assert_eq!(report.reward, r.reward);
        assert_eq!(report.repaired_set, r.repaired_set);
    }
}

fn scenario_strategy() -> impl Strategy<Value = Scenario> {
    // Rows of (v0, inc, dec) as eighths; weights 1..=3.
    prop::collection::vec((1u8..8, 0u8..=8, 0u8..=8, 1u8..=3), 1..5).prop_map(|rows| {
        let rows: Vec<(String, String, String, String)> = rows
            .into_iter()
            .map(|(v0, inc, dec, w)| {
                (
                    format!("{v0}/8"),
                    format!("{w}"),
                    format!("{inc}/8"),
                    format!("{dec}/8"),
                )
            })
            .collect();
        common::build(rows)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Absorption, boundedness, and per-step monotonicity over random
    /// scenarios and action lists.
    #[test]
    fn trace_invariants(
        (s, raw_actions) in scenario_strategy().prop_flat_map(|s| {
            let n = s.len();
            (Just(s), prop::collection::vec(1..=n, 0..40))
        })
    ) {
        let seq = ControlSequence::from_ids(raw_actions);
        let trace = simulate_sequence(&s, &seq, 100).unwrap();
        let one = Rational::one();
        for row in &trace.rows {
            for (h, st) in row.healths.iter().zip(row.statuses.iter()) {
                let v = h.as_ratio();
                prop_assert!(v >= &Rational::zero() && v <= &one);
                match st {
                    NodeStatus::Repaired => prop_assert!(v.is_one()),
                    NodeStatus::Failed => prop_assert!(v.is_zero()),
                    NodeStatus::Active => {}
                }
            }
        }
        for pair in trace.rows.windows(2) {
            let (prev, row) = (&pair[0], &pair[1]);
            let target = row.action.unwrap().target;
            for id in 1..=s.len() {
                let before = &prev.healths[id - 1];
                let after = &row.healths[id - 1];
                if !prev.statuses[id - 1].is_active() {
                    // Absorbed nodes never change again.
                    prop_assert_eq!(before, after);
                    prop_assert_eq!(prev.statuses[id - 1], row.statuses[id - 1]);
                } else if id == target {
                    prop_assert!(after >= before);
                } else {
                    prop_assert!(after <= before);
                }
            }
        }
    }

    /// Identical inputs give bit-identical traces.
    #[test]
    fn simulation_is_deterministic(
        (s, raw_actions) in scenario_strategy().prop_flat_map(|s| {
            let n = s.len();
            (Just(s), prop::collection::vec(1..=n, 0..25))
        })
    ) {
        let seq = ControlSequence::from_ids(raw_actions);
        let a = simulate_sequence(&s, &seq, 50).unwrap();
        let b = simulate_sequence(&s, &seq, 50).unwrap();
        prop_assert_eq!(a, b);
    }
}
