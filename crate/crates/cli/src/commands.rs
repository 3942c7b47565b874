//! Implementations of the CLI subcommands. Each returns the process exit
//! code: 0 success, 2 input error, 3 horizon truncation with active nodes
//! remaining, 4 solver limitation.

use crate::histogram::Histogram;
use crate::scenario::{load_scenario, save_scenario};
use crate::trace_csv::save_trace;
use crate::CliError;
use recov_core::fixtures;
use recov_core::*;
use serde::Serialize;
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

pub const HORIZON_ENV: &str = "RECOV_MAX_HORIZON";

/// --horizon beats the RECOV_MAX_HORIZON environment variable, which beats
/// the scenario's default guard.
pub fn resolve_horizon(explicit: Option<u64>, scenario: &Scenario) -> Result<u64, CliError> {
    if let Some(h) = explicit {
        return Ok(h);
    }
    match std::env::var(HORIZON_ENV) {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map_err(|_| CliError::Input(format!("{HORIZON_ENV}={text:?} is not a step count"))),
        Err(_) => Ok(default_horizon(scenario)),
    }
}

fn parse_order_list(text: &str) -> Result<Vec<NodeId>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .map(|part| {
            part.parse::<NodeId>()
                .map_err(|_| CliError::Input(format!("bad node id {part:?} in order list")))
        })
        .collect()
}

/// Policy names accepted on the command line: healthiest-first,
/// least-mod-global, least-mod-in-z, `order:<comma list>`, random,
/// random-nonjumping.
pub fn parse_policy(name: &str, seed: u64, scenario: &Scenario) -> Result<PolicyKind, CliError> {
    match name {
        "healthiest-first" => Ok(PolicyKind::HealthiestFirst),
        "least-mod-global" => Ok(PolicyKind::LeastModifiedHealthGlobal),
        "least-mod-in-z" => {
            let x = survival_count(scenario);
            let z = build_target_set(scenario, x).map_err(|e| CliError::Input(e.to_string()))?;
            Ok(PolicyKind::LeastModifiedHealthInSet(z.into_iter().collect()))
        }
        "random" => Ok(PolicyKind::RandomAny { seed }),
        "random-nonjumping" => Ok(PolicyKind::RandomNonJumping { seed }),
        other => match other.strip_prefix("order:") {
            Some(list) => Ok(PolicyKind::NonJumpingOrder(parse_order_list(list)?)),
            None => Err(CliError::Input(format!(
                "unknown policy {other:?}; expected healthiest-first, least-mod-global, \
                 least-mod-in-z, order:<list>, random, or random-nonjumping"
            ))),
        },
    }
}

pub fn cmd_simulate(
    scenario_path: &Path,
    policy: Option<&str>,
    order: Option<&str>,
    horizon: Option<u64>,
    seed: u64,
    trace_out: Option<&Path>,
) -> Result<i32, CliError> {
    let scenario = load_scenario(scenario_path)?;
    let kind = match (policy, order) {
        (Some(name), None) => parse_policy(name, seed, &scenario)?,
        (None, Some(list)) => PolicyKind::NonJumpingOrder(parse_order_list(list)?),
        _ => return Err(CliError::Input("give exactly one of --policy or --order".into())),
    };
    let horizon = resolve_horizon(horizon, &scenario)?;
    let trace = simulate_policy(&scenario, &kind, horizon)
        .map_err(|e| CliError::Input(e.to_string()))?;
    if let Some(path) = trace_out {
        save_trace(path, &scenario, &trace)?;
    }
    let report = reward(&scenario, &trace);
    let repaired: Vec<String> = report.repaired_set.iter().map(|id| id.to_string()).collect();
    println!("repaired_set: {}", repaired.join(","));
    println!("reward: {}", render_rational(report.reward.as_ratio()));
    println!("steps: {}", trace.rows.last().map_or(0, |r| r.t));
    println!("truncated: {}", trace.truncated);
    Ok(if trace.truncated { 3 } else { 0 })
}

#[derive(Serialize)]
struct SolveResultFile {
    reward: String,
    sequence: Vec<NodeId>,
    repaired_set: Vec<NodeId>,
    method: String,
    exhaustive: bool,
}

pub fn cmd_solve(
    scenario_path: &Path,
    method: &str,
    horizon: Option<u64>,
    out: Option<&Path>,
) -> Result<i32, CliError> {
    let scenario = load_scenario(scenario_path)?;
    let result = match method {
        "auto" => solve_auto(&scenario),
        "brute" => {
            // An explicit --horizon is the caller's own budget choice, so it
            // raises the horizon cap with it; the node cap stays.
            let mut limits = BruteForceLimits::default();
            let horizon = match horizon {
                Some(h) => {
                    limits.horizon_cap = limits.horizon_cap.max(h);
                    h
                }
                None => default_brute_horizon(&scenario),
            };
            brute_force_optimal(&scenario, horizon, &limits)
        }
        "nonjump-enum" => enumerate_nonjumping_optimal(&scenario),
        other => {
            return Err(CliError::Input(format!(
                "unknown method {other:?}; expected auto, brute, or nonjump-enum"
            )))
        }
    }
    .map_err(|e| CliError::Solver(e.to_string()))?;
    let file = SolveResultFile {
        reward: render_rational(result.reward.as_ratio()),
        sequence: result.sequence.actions.iter().map(|a| a.target).collect(),
        repaired_set: result.repaired_set.iter().copied().collect(),
        method: result.method.name().to_string(),
        exhaustive: result.exhaustive,
    };
    let json = serde_json::to_string_pretty(&file).expect("result serializes");
    match out {
        Some(path) => {
            std::fs::write(path, json + "\n")?;
            println!(
                "method: {}\nreward: {}\nrepaired: {}",
                file.method,
                file.reward,
                file.repaired_set.len()
            );
        }
        None => println!("{json}"),
    }
    Ok(0)
}

fn verdict(out: &mut String, label: &str, result: Result<String, ConditionFailure>) {
    match result {
        Ok(extra) if extra.is_empty() => out.push_str(&format!("{label}: yes\n")),
        Ok(extra) => out.push_str(&format!("{label}: yes ({extra})\n")),
        Err(why) => out.push_str(&format!("{label}: no ({why})\n")),
    }
}

/// Renders the full analysis report for a scenario.
pub fn analysis_report(scenario: &Scenario) -> String {
    let mut out = String::new();
    let regime = classify_regime(scenario);
    out.push_str(&format!("nodes: {}\n", scenario.len()));
    out.push_str(&format!("regime: {}\n", regime.name()));
    let x = survival_count(scenario);
    out.push_str(&format!("x: {x}\n"));
    match build_target_set(scenario, x) {
        Ok(z) => {
            let ids: Vec<String> = z.iter().map(|id| id.to_string()).collect();
            out.push_str(&format!("Z: {}\n", ids.join(",")));
        }
        Err(e) => out.push_str(&format!("Z: unavailable ({e})\n")),
    }
    match max_repair_bound(scenario) {
        Ok(b) => out.push_str(&format!("L: {} (n = {})\n", b.l, b.n)),
        Err(e) => out.push_str(&format!("L: not applicable ({e})\n")),
    }
    verdict(
        &mut out,
        "theorem3",
        theorem3_conditions(scenario).map(|d| {
            let m: Vec<String> = d.m.iter().map(|m| m.to_string()).collect();
            format!("n = {}, m = {}", d.n, m.join(","))
        }),
    );
    let t5 = build_target_set(scenario, x)
        .map_err(|e| ConditionFailure(e.to_string()))
        .and_then(|z| theorem5_conditions(scenario, &z).map(|()| String::new()));
    verdict(&mut out, "theorem5", t5);
    verdict(&mut out, "prop1", prop1_conditions(scenario).map(|()| String::new()));
    out
}

pub fn cmd_analyze(scenario_path: &Path) -> Result<i32, CliError> {
    let scenario = load_scenario(scenario_path)?;
    print!("{}", analysis_report(&scenario));
    Ok(0)
}

pub fn cmd_experiment(
    scenario_path: &Path,
    baseline: &str,
    samples: u64,
    seed: u64,
    out: &Path,
) -> Result<i32, CliError> {
    let scenario = load_scenario(scenario_path)?;
    let baseline = match baseline {
        "random" => Baseline::RandomAny,
        "random-nonjumping" => Baseline::RandomNonJumping,
        other => {
            return Err(CliError::Input(format!(
                "unknown baseline {other:?}; expected random or random-nonjumping"
            )))
        }
    };
    if samples == 0 {
        return Err(CliError::Input("--samples must be at least 1".into()));
    }
    let horizon = resolve_horizon(None, &scenario)?;
    let counts = sample_repaired_counts(&scenario, baseline, samples, seed, Some(horizon));
    let hist = Histogram::from_counts(&counts);
    hist.save(out)?;
    println!("samples: {}", hist.samples);
    println!("mean: {}", hist.mean());
    println!("mode: {}", hist.mode());
    Ok(0)
}

struct Reproduction<'a> {
    out_dir: &'a Path,
    failures: usize,
}

impl<'a> Reproduction<'a> {
    fn check(&mut self, what: &str, ok: bool, detail: String) {
        if ok {
            println!("ok: {what}");
        } else {
            println!("FAIL: {what}: {detail}");
            self.failures += 1;
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }
}

fn expect_rows(trace: &Trace, expected: &[(u64, [&str; 3])]) -> Result<(), String> {
    for (t, healths) in expected {
        let row = trace
            .rows
            .iter()
            .find(|r| r.t == *t)
            .ok_or(format!("no row at t = {t}"))?;
        for (got, want) in row.healths.iter().zip(healths.iter()) {
            if got.as_ratio() != &parse_rational(want).unwrap() {
                return Err(format!(
                    "t = {t}: health {} != {want}",
                    render_rational(got.as_ratio())
                ));
            }
        }
    }
    Ok(())
}

fn reproduce_case1(r: &mut Reproduction) -> Result<(), CliError> {
    let s = fixtures::fifteen_identical();
    save_scenario(&r.path("case1.json"), &s)?;
    let horizon = default_horizon(&s);

    let trace = simulate_policy(&s, &PolicyKind::HealthiestFirst, horizon)
        .map_err(|e| CliError::Input(e.to_string()))?;
    save_trace(&r.path("case1_healthiest_first.csv"), &s, &trace)?;
    let repaired = trace.repaired_set().len();
    r.check(
        "case 1: healthiest-first repairs 7 of 15",
        repaired == 7,
        format!("repaired {repaired}"),
    );

    match max_repair_bound(&s) {
        Ok(b) => r.check(
            "case 1: repair-count bound L = 7 with n = 1",
            b.l == 7 && b.n == 1,
            format!("{b:?}"),
        ),
        Err(e) => r.check("case 1: repair-count bound L = 7 with n = 1", false, e.to_string()),
    }

    match enumerate_nonjumping_optimal(&s) {
        Ok(res) => r.check(
            "case 1: non-jumping enumeration repairs 7",
            res.repaired_set.len() == 7,
            format!("repaired {}", res.repaired_set.len()),
        ),
        Err(e) => r.check("case 1: non-jumping enumeration repairs 7", false, e.to_string()),
    }

    let counts = sample_repaired_counts(&s, Baseline::RandomAny, 1000, 42, Some(horizon));
    let hist = Histogram::from_counts(&counts);
    hist.save(&r.path("case1_random.csv"))?;
    r.check(
        "case 1: random baseline mode is 2",
        hist.mode() == 2,
        format!("mode {}", hist.mode()),
    );

    let counts = sample_repaired_counts(&s, Baseline::RandomNonJumping, 1000, 42, Some(horizon));
    let hist = Histogram::from_counts(&counts);
    hist.save(&r.path("case1_random_nonjumping.csv"))?;
    r.check(
        "case 1: every random non-jumping run repairs 7",
        hist.frequencies.len() == 1 && hist.frequencies.contains_key(&7),
        format!("{:?}", hist.frequencies),
    );
    Ok(())
}

fn reproduce_case2(r: &mut Reproduction) -> Result<(), CliError> {
    let s = fixtures::fifteen_staircase();
    save_scenario(&r.path("case2.json"), &s)?;
    let horizon = default_horizon(&s);

    let trace = simulate_policy(&s, &PolicyKind::LeastModifiedHealthGlobal, horizon)
        .map_err(|e| CliError::Input(e.to_string()))?;
    save_trace(&r.path("case2_least_modified.csv"), &s, &trace)?;
    let repaired = trace.repaired_set().len();
    r.check(
        "case 2: least-modified-health repairs all 15",
        repaired == 15,
        format!("repaired {repaired}"),
    );

    let counts = sample_repaired_counts(&s, Baseline::RandomAny, 1000, 42, Some(horizon));
    let hist = Histogram::from_counts(&counts);
    hist.save(&r.path("case2_random.csv"))?;
    let total: usize = counts.iter().sum();
    r.check(
        "case 2: random baseline mean within 11 +/- 1",
        (10_000..=12_000).contains(&total),
        format!("mean {}", hist.mean()),
    );
    Ok(())
}

fn reproduce_tables(r: &mut Reproduction) -> Result<(), CliError> {
    let s = fixtures::three_node_weighted();
    save_scenario(&r.path("weighted_trio.json"), &s)?;
    let x = survival_count(&s);
    let z: BTreeSet<NodeId> = build_target_set(&s, x)
        .map_err(|e| CliError::Input(e.to_string()))?
        .into_iter()
        .collect();
    let trace = simulate_policy(&s, &PolicyKind::LeastModifiedHealthInSet(z), 10)
        .map_err(|e| CliError::Input(e.to_string()))?;
    save_trace(&r.path("weighted_trio_target_set.csv"), &s, &trace)?;
    let rows = expect_rows(
        &trace,
        &[
            (0, ["0.3", "0.5", "0.2"]),
            (1, ["1", "0.2", "0"]),
            (2, ["1", "1", "0"]),
        ],
    );
    let report = reward(&s, &trace);
    r.check(
        "weighted trio: target-set policy trace and reward 4",
        rows.is_ok() && report.reward.as_ratio() == &parse_rational("4").unwrap(),
        rows.err().unwrap_or_else(|| {
            format!("reward {}", render_rational(report.reward.as_ratio()))
        }),
    );

    let s = fixtures::three_node_gap();
    save_scenario(&r.path("gap_trio.json"), &s)?;
    let horizon = default_horizon(&s);
    let good = simulate_policy(&s, &PolicyKind::NonJumpingOrder(vec![1, 2, 3]), horizon)
        .map_err(|e| CliError::Input(e.to_string()))?;
    save_trace(&r.path("gap_trio_order_123.csv"), &s, &good)?;
    let rows = expect_rows(
        &good,
        &[
            (0, ["0.8", "0.52", "0.73"]),
            (8, ["1", "0.36", "0.57"]),
            (34, ["1", "1", "0.05"]),
            (72, ["1", "1", "1"]),
        ],
    );
    r.check(
        "gap trio: order (1,2,3) milestones at t = 8, 34, 72",
        rows.is_ok() && good.repair_time == vec![Some(8), Some(34), Some(72)],
        rows.err().unwrap_or_else(|| format!("{:?}", good.repair_time)),
    );

    let bad = simulate_policy(&s, &PolicyKind::NonJumpingOrder(vec![1, 3, 2]), horizon)
        .map_err(|e| CliError::Input(e.to_string()))?;
    save_trace(&r.path("gap_trio_order_132.csv"), &s, &bad)?;
    r.check(
        "gap trio: order (1,3,2) loses node 2 at t = 26",
        bad.repair_time[2] == Some(26) && bad.fail_time[1] == Some(26),
        format!("repair {:?} fail {:?}", bad.repair_time, bad.fail_time),
    );

    let least = simulate_policy(&s, &PolicyKind::LeastModifiedHealthGlobal, 400)
        .map_err(|e| CliError::Input(e.to_string()))?;
    save_trace(&r.path("gap_trio_least_modified.csv"), &s, &least)?;
    let rows = expect_rows(
        &least,
        &[
            (1, ["0.78", "0.545", "0.71"]),
            (2, ["0.76", "0.57", "0.69"]),
            (3, ["0.74", "0.595", "0.67"]),
        ],
    );
    r.check(
        "gap trio: least-modified prefix rows and node 2 loss",
        rows.is_ok() && least.fail_time[1].is_some_and(|t| t <= 134),
        rows.err().unwrap_or_else(|| format!("fail {:?}", least.fail_time)),
    );
    Ok(())
}

pub fn cmd_reproduce(case: &str, out_dir: &Path) -> Result<i32, CliError> {
    std::fs::create_dir_all(out_dir)?;
    let mut r = Reproduction { out_dir, failures: 0 };
    match case {
        "1" => reproduce_case1(&mut r)?,
        "2" => reproduce_case2(&mut r)?,
        "tables" => reproduce_tables(&mut r)?,
        "all" => {
            reproduce_case1(&mut r)?;
            reproduce_case2(&mut r)?;
            reproduce_tables(&mut r)?;
        }
        other => {
            return Err(CliError::Input(format!(
                "unknown case {other:?}; expected 1, 2, tables, or all"
            )))
        }
    }
    Ok(if r.failures == 0 { 0 } else { 1 })
}
